//! Sign conventions, sign-change counting and the onset detectors used to
//! check eventual alternation / eventual constancy on a finite prefix.
//!
//! Two zero conventions coexist. [`sign_change_count`] skips zeros entirely;
//! the onset detectors use [`sgn`], which maps zero to `+1`.

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use crate::arith::ArithmeticSequence;
use crate::encoding::EncodedSequence;
use crate::error::{Error, Result};
use crate::numeric;
use crate::series::{KernelKind, SeriesCoefficients};

/// `-1` for negative values, `+1` otherwise (including zero).
pub fn sgn(x: &BigInt) -> i8 {
    if x.sign() == Sign::Minus {
        -1
    } else {
        1
    }
}

/// Number of sign changes among the nonzero terms `s(1..=y)`.
pub fn sign_change_count(s: &ArithmeticSequence, y: usize) -> Result<usize> {
    if y == 0 || y > s.len() {
        return Err(Error::Shape(format!("Y = {y} outside 1..={}", s.len())));
    }
    let mut last: Option<Sign> = None;
    let mut changes = 0;
    for v in &s.values()[..y] {
        if v.is_zero() {
            continue;
        }
        if last.is_some_and(|prev| prev != v.sign()) {
            changes += 1;
        }
        last = Some(v.sign());
    }
    Ok(changes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignProperty {
    Alternating,
    ConstantSign,
}

impl SignProperty {
    pub fn as_str(self) -> &'static str {
        match self {
            SignProperty::Alternating => "alternating",
            SignProperty::ConstantSign => "constant-sign",
        }
    }
}

/// Where a sign property starts holding within a finite prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignReport {
    pub property: SignProperty,
    /// Smallest index from which the property holds through `horizon`.
    pub onset: Option<usize>,
    pub horizon: usize,
    pub holds_at_horizon: bool,
    /// `sgn` of the last term.
    pub final_sign: i8,
}

/// Smallest `o` such that `related(sgn s(i), sgn s(i+1))` for all `o <= i < horizon`.
fn scan_onset(s: &ArithmeticSequence, related: impl Fn(i8, i8) -> bool) -> usize {
    let signs: Vec<i8> = s.values().iter().map(sgn).collect();
    let mut onset = signs.len();
    while onset > 1 && related(signs[onset - 2], signs[onset - 1]) {
        onset -= 1;
    }
    onset
}

/// Onset of strict sign alternation under `sgn(0) = +1`.
///
/// An onset is only reported when at least one alternating pair witnesses it,
/// so a sequence whose last two signs agree has none.
pub fn alternation_onset(s: &ArithmeticSequence) -> Result<SignReport> {
    if s.len() < 2 {
        return Err(Error::Shape("alternation needs at least two terms".into()));
    }
    let horizon = s.len();
    let onset = scan_onset(s, |a, b| a == -b);
    let onset = (onset < horizon).then_some(onset);
    Ok(SignReport {
        property: SignProperty::Alternating,
        onset,
        horizon,
        holds_at_horizon: onset.is_some(),
        final_sign: sgn(s.at(horizon)),
    })
}

/// Onset of constant sign under `sgn(0) = +1`.
///
/// The final term on its own is always sign-constant, so an onset always
/// exists; `holds_at_horizon` additionally requires a witnessing pair.
pub fn constant_sign_onset(s: &ArithmeticSequence) -> SignReport {
    let horizon = s.len();
    let onset = scan_onset(s, |a, b| a == b);
    SignReport {
        property: SignProperty::ConstantSign,
        onset: Some(onset),
        horizon,
        holds_at_horizon: onset < horizon || horizon == 1,
        final_sign: sgn(s.at(horizon)),
    }
}

/// One point of the difference-relation diagnostic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DiffPoint {
    /// `(c(n+1) + c(n)) / c(n)`
    Ratio { n: usize, ratio: f64 },
    /// `c(n) = 0`, no ratio defined.
    Gap { n: usize },
}

impl DiffPoint {
    pub fn n(&self) -> usize {
        match *self {
            DiffPoint::Ratio { n, .. } | DiffPoint::Gap { n } => n,
        }
    }

    pub fn ratio(&self) -> Option<f64> {
        match *self {
            DiffPoint::Ratio { ratio, .. } => Some(ratio),
            DiffPoint::Gap { .. } => None,
        }
    }
}

/// `r(n) = (c(n+1) + c(n)) / c(n)` for `1 <= n < len`.
///
/// `r(n) -> 0` is the same statement as `c(n+1)/c(n) -> -1`.
pub fn difference_relation_diagnostic(c2: &EncodedSequence) -> Result<Vec<DiffPoint>> {
    if c2.kernel() != KernelKind::QStar {
        return Err(Error::Domain(format!(
            "difference diagnostic expects a q* encoding, got {}",
            c2.kernel()
        )));
    }
    let c = c2.values();
    if c.len() < 2 {
        return Err(Error::Shape("difference diagnostic needs at least two terms".into()));
    }
    Ok((1..c.len())
        .map(|n| {
            let cur = c.at(n);
            if cur.is_zero() {
                DiffPoint::Gap { n }
            } else {
                DiffPoint::Ratio {
                    n,
                    ratio: numeric::ratio(&(c.at(n + 1) + cur), cur),
                }
            }
        })
        .collect())
}

/// `f^{-1}(n+1) / c2(n)`, reported without any claim about its limit.
pub fn inverse_to_encoding_ratio(finv: &ArithmeticSequence, c2: &EncodedSequence) -> Result<Vec<DiffPoint>> {
    let c = c2.values();
    if finv.len() != c.len() {
        return Err(Error::Shape("inverse and encoding lengths differ".into()));
    }
    Ok((1..c.len())
        .map(|n| {
            if c.at(n).is_zero() {
                DiffPoint::Gap { n }
            } else {
                DiffPoint::Ratio {
                    n,
                    ratio: numeric::ratio(finv.at(n + 1), c.at(n)),
                }
            }
        })
        .collect())
}

/// Finite-range check of the positivity and growth hypotheses.
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisVerdict {
    pub positivity_ok: bool,
    pub growth_ok: bool,
    /// `max |f(n)| / |q*(n)|` over the examined tail.
    pub fitted_c: f64,
    /// First index with `f(n) < 1`.
    pub first_violation: Option<usize>,
    /// Where the running maximum was attained.
    pub argmax: Option<usize>,
}

/// First index of the tail used for the growth fit.
pub const GROWTH_TAIL_START: usize = 16;

/// Checks `f(n) >= 1` and fits `C = max_{n >= 16} |f(n)| / |q*(n)|`.
///
/// Growth passes when `C` is finite and the maximum is not attained in the
/// last quarter of the range, i.e. the running maximum has stabilized.
pub fn hypothesis_check(f: &ArithmeticSequence, qstar: &SeriesCoefficients) -> Result<HypothesisVerdict> {
    if qstar.order() < f.len() {
        return Err(Error::Shape(format!(
            "q* has order {} but f has {} terms",
            qstar.order(),
            f.len()
        )));
    }
    let first_violation = f.iter().find(|(_, v)| *v < &BigInt::from(1)).map(|(n, _)| n);

    let mut fitted_c = f64::NEG_INFINITY;
    let mut argmax = None;
    for n in GROWTH_TAIL_START..=f.len() {
        let q = &qstar.coeffs()[n];
        if q.is_zero() {
            continue;
        }
        let ratio = numeric::ratio(&f.at(n).abs(), &q.abs());
        if ratio > fitted_c {
            fitted_c = ratio;
            argmax = Some(n);
        }
    }
    let stable_before = f.len() - (f.len() - GROWTH_TAIL_START + 1) / 4;
    let growth_ok = fitted_c.is_finite() && argmax.is_some_and(|n| n <= stable_before);
    Ok(HypothesisVerdict {
        positivity_ok: first_violation.is_none(),
        growth_ok,
        fitted_c,
        first_violation,
        argmax,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{registry_lookup, summatory_sequence};
    use crate::series::kernel_set;
    use proptest::prelude::*;

    fn seq(values: &[i64]) -> ArithmeticSequence {
        ArithmeticSequence::from_i64s(values).unwrap()
    }

    #[test]
    fn sgn_examples() {
        assert_eq!(sgn(&BigInt::from(-7)), -1);
        assert_eq!(sgn(&BigInt::from(0)), 1);
        assert_eq!(sgn(&BigInt::from(15)), 1);
    }

    #[test]
    fn sign_change_examples() {
        let mertens = summatory_sequence(&registry_lookup("mobius", 10).unwrap());
        assert_eq!(sign_change_count(&mertens, 10).unwrap(), 1);
        assert_eq!(sign_change_count(&seq(&[1; 20]), 20).unwrap(), 0);
        assert_eq!(sign_change_count(&seq(&[1, -1, 1, -1]), 4).unwrap(), 3);
        assert_eq!(sign_change_count(&seq(&[1, 0, 0, -2, 0, 3]), 6).unwrap(), 2);
        assert!(matches!(sign_change_count(&seq(&[1, 2]), 3), Err(Error::Shape(_))));
    }

    #[test]
    fn alternation_examples() {
        let c2 = seq(&[1, -2, -1, 0, -1, 6, -7, 8, -5, 15]);
        let report = alternation_onset(&c2).unwrap();
        assert_eq!(report.onset, Some(3));
        assert!(report.holds_at_horizon);
        assert_eq!(report.horizon, 10);

        assert_eq!(alternation_onset(&seq(&[1, -1, 1, -1])).unwrap().onset, Some(1));

        let flat = alternation_onset(&seq(&[1, 1, 1])).unwrap();
        assert_eq!(flat.onset, None);
        assert!(!flat.holds_at_horizon);

        assert!(alternation_onset(&seq(&[1])).is_err());
    }

    #[test]
    fn constant_sign_examples() {
        let c1 = seq(&[1, 0, -2, -2, -7, -6, -13, -20, -23, -31]);
        let report = constant_sign_onset(&c1);
        assert_eq!(report.onset, Some(3));
        assert_eq!(report.final_sign, -1);
        assert!(report.holds_at_horizon);

        assert_eq!(constant_sign_onset(&seq(&[-3, -1, -4])).onset, Some(1));
        let late = constant_sign_onset(&seq(&[-1, 1, -1]));
        assert_eq!(late.onset, Some(3));
        assert!(!late.holds_at_horizon);
        assert!(constant_sign_onset(&seq(&[5])).holds_at_horizon);
    }

    #[test]
    fn difference_diagnostic_examples() {
        let c2 = seq(&[1, -2, -1, 0, -1, 6, -7, 8, -5, 15]);
        let points = difference_relation_diagnostic(&EncodedSequence::new(c2, "phi^-1", KernelKind::QStar)).unwrap();
        assert_eq!(points.len(), 9);
        assert_eq!(points[8], DiffPoint::Ratio { n: 9, ratio: -2.0 });
        assert_eq!(points[3], DiffPoint::Gap { n: 4 });

        let geometric = ArithmeticSequence::from_fn(30, |n| BigInt::from(-2).pow(n as u32)).unwrap();
        let points = difference_relation_diagnostic(&EncodedSequence::new(geometric, "g", KernelKind::QStar)).unwrap();
        assert!(points.iter().all(|p| p.ratio() == Some(-1.0)));

        let wrong = EncodedSequence::new(seq(&[1, 2]), "x", KernelKind::Q);
        assert!(difference_relation_diagnostic(&wrong).is_err());
    }

    #[test]
    fn inverse_ratio_reports_gaps() {
        let finv = seq(&[1, -1, -2, -1]);
        let c2 = EncodedSequence::new(seq(&[1, -2, 0, 3]), "x", KernelKind::QStar);
        let points = inverse_to_encoding_ratio(&finv, &c2).unwrap();
        assert_eq!(points[0], DiffPoint::Ratio { n: 1, ratio: -1.0 });
        assert_eq!(points[2], DiffPoint::Gap { n: 3 });
    }

    #[test]
    fn hypothesis_examples() {
        let n = 400;
        let qstar = kernel_set(n).get(KernelKind::QStar).truncated(n);
        let phi = hypothesis_check(&registry_lookup("phi", n).unwrap(), &qstar).unwrap();
        assert!(phi.positivity_ok && phi.growth_ok);
        assert!(phi.fitted_c.is_finite());

        let q = hypothesis_check(&registry_lookup("qstar_seq", n).unwrap(), &qstar).unwrap();
        assert!(!q.positivity_ok);
        assert_eq!(q.first_violation, Some(1));

        let dfo = hypothesis_check(&registry_lookup("double_factorial_odd", n).unwrap(), &qstar).unwrap();
        assert!(!dfo.growth_ok);

        let short = kernel_set(8).get(KernelKind::QStar).truncated(8);
        assert!(hypothesis_check(&registry_lookup("phi", 20).unwrap(), &short).is_err());
    }

    fn signed_sequence() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-5i64..=5, 1..80)
    }

    proptest! {
        #[test]
        fn sign_changes_are_monotone_and_symmetric(values in signed_sequence(), scale in 1i64..50) {
            let s = seq(&values);
            let scaled = seq(&values.iter().map(|v| v * scale).collect::<Vec<_>>());
            let mut last = 0;
            for y in 1..=s.len() {
                let v = sign_change_count(&s, y).unwrap();
                prop_assert!(v >= last);
                prop_assert_eq!(v, sign_change_count(&s.negated(), y).unwrap());
                prop_assert_eq!(v, sign_change_count(&scaled, y).unwrap());
                last = v;
            }
        }

        #[test]
        fn detectors_do_not_share_an_onset(values in proptest::collection::vec(-5i64..=5, 2..60)) {
            let s = seq(&values);
            let alt = alternation_onset(&s).unwrap();
            let con = constant_sign_onset(&s);
            if let (Some(a), Some(c)) = (alt.onset, con.onset) {
                prop_assert!(a != c || s.len() - a < 1);
            }
        }
    }
}
