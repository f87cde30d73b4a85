//! Truncated power series with exact coefficients, the four partition
//! kernels, and their leading-order asymptotics.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric;
use crate::par::{self, Execution};

/// Which partition kernel an encoding convolves against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelKind {
    /// `q(n)`: partitions into distinct parts, `prod (1 + x^m)`.
    Q,
    /// `q*(n)`: `prod (1 + x^m)^{-1}`.
    QStar,
    /// `p*(n)`: `prod (1 - x^m)`.
    PStar,
    /// `p(n)`: all partitions, `prod (1 - x^m)^{-1}`.
    P,
}

impl KernelKind {
    /// In encoding order c1, c2, c3, c4.
    pub const ALL: [KernelKind; 4] = [KernelKind::Q, KernelKind::QStar, KernelKind::PStar, KernelKind::P];

    /// The kind whose series is the Cauchy reciprocal of this one.
    pub fn reciprocal(self) -> KernelKind {
        match self {
            KernelKind::Q => KernelKind::QStar,
            KernelKind::QStar => KernelKind::Q,
            KernelKind::PStar => KernelKind::P,
            KernelKind::P => KernelKind::PStar,
        }
    }

    /// 1 through 4, matching the c1..c4 naming of the encodings.
    pub fn encoding_index(self) -> usize {
        match self {
            KernelKind::Q => 1,
            KernelKind::QStar => 2,
            KernelKind::PStar => 3,
            KernelKind::P => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            KernelKind::Q => "q",
            KernelKind::QStar => "qstar",
            KernelKind::PStar => "pstar",
            KernelKind::P => "p",
        }
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "q" | "c1" => Ok(KernelKind::Q),
            "qstar" | "q*" | "c2" => Ok(KernelKind::QStar),
            "pstar" | "p*" | "c3" => Ok(KernelKind::PStar),
            "p" | "c4" => Ok(KernelKind::P),
            _ => Err(Error::Name(s.to_string())),
        }
    }
}

/// Coefficients `a(0..=N)` of a truncated power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCoefficients {
    coeffs: Vec<BigInt>,
    kind: Option<KernelKind>,
}

impl SeriesCoefficients {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a truncated series needs its constant term".into()));
        }
        Ok(SeriesCoefficients { coeffs, kind: None })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().copied().map(BigInt::from).collect())
    }

    pub fn with_kind(mut self, kind: KernelKind) -> Self {
        self.kind = Some(kind);
        self
    }

    pub fn kind(&self) -> Option<KernelKind> {
        self.kind
    }

    /// Highest retained power `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn get(&self, i: usize) -> Option<&BigInt> {
        self.coeffs.get(i)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficients `0..=order`.
    pub fn truncated(&self, order: usize) -> Self {
        SeriesCoefficients {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
            kind: self.kind,
        }
    }
}

/// Expands `prod_{m=1}^{N} (1 + sign x^m)` to order `N`.
fn product_expansion(order: usize, sign: i8) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    coeffs[0] = BigInt::one();
    for m in 1..=order {
        for i in (m..=order).rev() {
            let (lo, hi) = coeffs.split_at_mut(i);
            let src = &lo[i - m];
            if src.is_zero() {
                continue;
            }
            if sign > 0 {
                hi[0] += src;
            } else {
                hi[0] -= src;
            }
        }
    }
    coeffs
}

/// Exact kernel coefficients `0..=order`.
///
/// `Q` and `PStar` come from expanding their finite products directly; the
/// inverse-power kernels are series reciprocals of those.
pub fn kernel_coefficients(kind: KernelKind, order: usize) -> SeriesCoefficients {
    let coeffs = match kind {
        KernelKind::Q => product_expansion(order, 1),
        KernelKind::PStar => product_expansion(order, -1),
        KernelKind::QStar | KernelKind::P => {
            let direct = kernel_coefficients(kind.reciprocal(), order);
            series_reciprocal(&direct)
                .expect("partition products have constant term 1")
                .into_coeffs()
        }
    };
    SeriesCoefficients { coeffs, kind: Some(kind) }
}

/// `p(0..=order)` from the sparse relation `sum_j p*(j) p(n - j) = 0`, where
/// `p*` is supported on the generalized pentagonal numbers `k(3k ∓ 1)/2` with
/// sign `(-1)^k`.
pub fn p_pentagonal_recurrence(order: usize) -> SeriesCoefficients {
    let mut p: Vec<BigInt> = Vec::with_capacity(order + 1);
    p.push(BigInt::one());
    for n in 1..=order {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let lower = k * (3 * k - 1) / 2;
            if lower > n {
                break;
            }
            let upper = k * (3 * k + 1) / 2;
            let add = k % 2 == 1;
            for pent in [lower, upper] {
                if pent > n {
                    continue;
                }
                if add {
                    acc += &p[n - pent];
                } else {
                    acc -= &p[n - pent];
                }
            }
        }
        p.push(acc);
    }
    SeriesCoefficients { coeffs: p, kind: Some(KernelKind::P) }
}

/// The series `b` with `sum_j a(j) b(n - j) = [n = 0]` through the same order.
pub fn series_reciprocal(a: &SeriesCoefficients) -> Result<SeriesCoefficients> {
    let lead = &a.coeffs[0];
    if !lead.abs().is_one() {
        return Err(Error::NonUnitLeadingCoefficient(lead.clone()));
    }
    let support: Vec<usize> = (1..a.coeffs.len()).filter(|&j| !a.coeffs[j].is_zero()).collect();
    let mut b: Vec<BigInt> = Vec::with_capacity(a.coeffs.len());
    b.push(lead.clone());
    for n in 1..a.coeffs.len() {
        let mut acc = BigInt::zero();
        for &j in &support {
            if j > n {
                break;
            }
            acc += &a.coeffs[j] * &b[n - j];
        }
        // 1/lead = lead for a unit
        b.push(-(lead * acc));
    }
    Ok(SeriesCoefficients {
        coeffs: b,
        kind: a.kind.map(KernelKind::reciprocal),
    })
}

/// Cauchy product truncated to the shorter order.
pub fn cauchy_product(a: &SeriesCoefficients, b: &SeriesCoefficients) -> SeriesCoefficients {
    let order = a.order().min(b.order());
    let coeffs = (0..=order)
        .map(|n| (0..=n).map(|j| &a.coeffs[j] * &b.coeffs[n - j]).sum())
        .collect();
    SeriesCoefficients { coeffs, kind: None }
}

/// All four kernels at a common order.
#[derive(Clone, Debug)]
pub struct KernelSet {
    q: SeriesCoefficients,
    qstar: SeriesCoefficients,
    pstar: SeriesCoefficients,
    p: SeriesCoefficients,
}

impl KernelSet {
    pub fn build(order: usize, exec: Execution) -> Self {
        let ((q, qstar), (pstar, p)) = par::join(
            exec,
            || {
                let q = kernel_coefficients(KernelKind::Q, order);
                let qstar = series_reciprocal(&q).expect("unit constant term");
                (q, qstar)
            },
            || {
                let pstar = kernel_coefficients(KernelKind::PStar, order);
                (pstar, p_pentagonal_recurrence(order))
            },
        );
        KernelSet { q, qstar, pstar, p }
    }

    pub fn order(&self) -> usize {
        self.q.order()
    }

    pub fn get(&self, kind: KernelKind) -> &SeriesCoefficients {
        match kind {
            KernelKind::Q => &self.q,
            KernelKind::QStar => &self.qstar,
            KernelKind::PStar => &self.pstar,
            KernelKind::P => &self.p,
        }
    }
}

/// Shared read-only kernels of order at least `order`.
///
/// The largest set built so far is kept and handed out for every smaller
/// request.
pub fn kernel_set(order: usize) -> Arc<KernelSet> {
    static CACHE: OnceLock<Mutex<Option<Arc<KernelSet>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(None));
    let mut slot = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(set) = slot.as_ref() {
        if set.order() >= order {
            return Arc::clone(set);
        }
    }
    let set = Arc::new(KernelSet::build(order, Execution::default()));
    *slot = Some(Arc::clone(&set));
    set
}

/// Which constants to use in the leading-order formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaVariant {
    /// `q(n) ~ 3^{3/4} / (4 * 3^{1/4} n^{3/4}) exp(pi sqrt(n/3))`, constant as it is commonly misprinted.
    AsPrinted,
    /// `q(n) ~ exp(pi sqrt(n/3)) / (4 * 3^{1/4} n^{3/4})`.
    StandardLiterature,
}

impl FormulaVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            FormulaVariant::AsPrinted => "as-printed",
            FormulaVariant::StandardLiterature => "standard-literature",
        }
    }
}

impl fmt::Display for FormulaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-printed" => Ok(FormulaVariant::AsPrinted),
            "standard-literature" => Ok(FormulaVariant::StandardLiterature),
            _ => Err(Error::Name(s.to_string())),
        }
    }
}

/// Exact value against its leading-order estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticReport {
    pub kind: KernelKind,
    pub variant: FormulaVariant,
    pub n: usize,
    pub exact_value: BigInt,
    pub estimate: f64,
    pub ratio: f64,
    /// `exact / shape(n)`, where `shape` is the formula without its constant.
    pub fitted_constant: f64,
    /// The constant the chosen variant multiplies `shape(n)` by.
    pub variant_constant: f64,
}

/// Leading constant of the formula for `kind` under `variant`.
pub fn leading_constant(kind: KernelKind, variant: FormulaVariant) -> Result<f64> {
    match kind {
        KernelKind::Q => Ok(match variant {
            FormulaVariant::AsPrinted => 3f64.powf(0.75) / (4.0 * 3f64.powf(0.25)),
            FormulaVariant::StandardLiterature => 1.0 / (4.0 * 3f64.powf(0.25)),
        }),
        KernelKind::QStar => Ok(1.0 / (2.0 * 24f64.powf(0.25))),
        KernelKind::P => Ok(1.0 / (4.0 * 3f64.sqrt())),
        KernelKind::PStar => Err(Error::UnsupportedKind(kind)),
    }
}

/// `(sign, ln |shape(n)|)` for the constant-free part of each formula.
fn log_shape(kind: KernelKind, n: usize) -> (f64, f64) {
    let x = n as f64;
    match kind {
        KernelKind::Q => (1.0, PI * (x / 3.0).sqrt() - 0.75 * x.ln()),
        KernelKind::QStar => {
            let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            (sign, PI * (x / 6.0).sqrt() - 0.75 * x.ln())
        }
        KernelKind::P => (1.0, PI * (2.0 * x / 3.0).sqrt() - x.ln()),
        KernelKind::PStar => unreachable!("rejected by leading_constant"),
    }
}

/// Compares `kind(n)` with its leading-order asymptotic.
pub fn asymptotic_estimate(kind: KernelKind, n: usize, variant: FormulaVariant) -> Result<AsymptoticReport> {
    asymptotic_reports(kind, &[n], variant).map(|mut v| v.remove(0))
}

/// [`asymptotic_estimate`] for several `n`, sharing one kernel expansion.
pub fn asymptotic_reports(kind: KernelKind, ns: &[usize], variant: FormulaVariant) -> Result<Vec<AsymptoticReport>> {
    let constant = leading_constant(kind, variant)?;
    if let Some(&bad) = ns.iter().find(|&&n| n < 2) {
        return Err(Error::Domain(format!("asymptotic comparison needs n >= 2, got {bad}")));
    }
    let Some(&max_n) = ns.iter().max() else {
        return Ok(Vec::new());
    };
    let series = if kind == KernelKind::P {
        p_pentagonal_recurrence(max_n)
    } else {
        kernel_set(max_n).get(kind).truncated(max_n)
    };
    Ok(ns
        .iter()
        .map(|&n| {
            let exact_value = series.coeffs[n].clone();
            let (sign, log_shape) = log_shape(kind, n);
            let log_exact = numeric::ln_abs(&exact_value);
            let exact_sign = if exact_value.is_negative() { -1.0 } else { 1.0 };
            let estimate = sign * constant * log_shape.exp();
            let (ratio, fitted_constant) = if exact_value.is_zero() {
                (0.0, 0.0)
            } else {
                let rel = exact_sign * sign;
                (
                    rel * (log_exact - log_shape - constant.ln()).exp(),
                    rel * (log_exact - log_shape).exp(),
                )
            };
            AsymptoticReport {
                kind,
                variant,
                n,
                exact_value,
                estimate,
                ratio,
                fitted_constant,
                variant_constant: constant,
            }
        })
        .collect())
}

/// Coefficients of `prod (1 - x^m)^{-1}` over odd `m` only: partitions into odd parts.
pub fn odd_parts_counts(order: usize) -> SeriesCoefficients {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    coeffs[0] = BigInt::one();
    for m in (1..=order).step_by(2) {
        for i in m..=order {
            let (lo, hi) = coeffs.split_at_mut(i);
            hi[0] += &lo[i - m];
        }
    }
    SeriesCoefficients { coeffs, kind: None }
}
