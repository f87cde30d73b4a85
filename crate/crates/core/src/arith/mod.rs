//! Exact arithmetic functions and Dirichlet convolution.
//!
//! Sequences are 1-indexed prefixes `f(1), ..., f(N)` of exact integers.
//! Nothing here rounds.

mod inverse;
mod registry;

pub use inverse::{
    dirichlet_inverse_neumann, dirichlet_inverse_neumann_with, dirichlet_inverse_partition_formula,
    dirichlet_inverse_printed_neumann, dirichlet_inverse_recursive, PartitionFormulaReport,
    PARTITION_FORMULA_BOUND,
};
pub use registry::{registry_lookup, FunctionName};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// A finite prefix `f(1..=N)` of an integer-valued arithmetic function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticSequence {
    values: Vec<BigInt>,
    name: Option<String>,
}

impl ArithmeticSequence {
    /// `values[0]` holds `f(1)`.
    pub fn new(values: Vec<BigInt>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("an arithmetic sequence needs at least f(1)".into()));
        }
        Ok(ArithmeticSequence { values, name: None })
    }

    pub fn from_i64s(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().copied().map(BigInt::from).collect())
    }

    /// Builds `f(1..=len)` from a closure over the 1-based index.
    pub fn from_fn<F: FnMut(usize) -> BigInt>(len: usize, mut f: F) -> Result<Self> {
        Self::new((1..=len).map(&mut f).collect())
    }

    /// The convolution identity: `1, 0, 0, ...`.
    pub fn epsilon(len: usize) -> Result<Self> {
        Self::from_fn(len, |n| if n == 1 { BigInt::one() } else { BigInt::zero() })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// `f(n)` for `1 <= n <= len`.
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    /// `f(n)`, panicking outside `1..=len`.
    pub fn at(&self, n: usize) -> &BigInt {
        &self.values[n - 1]
    }

    pub fn leading(&self) -> &BigInt {
        &self.values[0]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigInt> {
        self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.values.iter().enumerate().map(|(i, v)| (i + 1, v))
    }

    /// The first `len` terms.
    pub fn prefix(&self, len: usize) -> Result<Self> {
        if len == 0 || len > self.len() {
            return Err(Error::Shape(format!(
                "prefix length {len} outside 1..={}",
                self.len()
            )));
        }
        Ok(ArithmeticSequence {
            values: self.values[..len].to_vec(),
            name: self.name.clone(),
        })
    }

    /// `alpha * self + beta * other`, termwise.
    pub fn linear_combination(&self, alpha: &BigInt, other: &Self, beta: &BigInt) -> Result<Self> {
        same_length(self, other)?;
        Self::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| alpha * a + beta * b)
                .collect(),
        )
    }

    pub fn negated(&self) -> Self {
        ArithmeticSequence {
            values: self.values.iter().map(|v| -v).collect(),
            name: self.name.clone(),
        }
    }

    pub fn is_epsilon(&self) -> bool {
        self.values[0].is_one() && self.values[1..].iter().all(Zero::is_zero)
    }
}

fn same_length(f: &ArithmeticSequence, g: &ArithmeticSequence) -> Result<()> {
    if f.len() != g.len() {
        return Err(Error::Shape(format!(
            "sequence lengths differ: {} vs {}",
            f.len(),
            g.len()
        )));
    }
    Ok(())
}

/// Divisor lists for every `n` in `1..=N`, built with the multiples sieve.
#[derive(Clone, Debug)]
pub struct DivisorTable {
    offsets: Vec<usize>,
    divisors: Vec<u32>,
}

impl DivisorTable {
    pub fn new(limit: usize) -> Self {
        let mut counts = vec![0usize; limit + 1];
        for d in 1..=limit {
            for m in (d..=limit).step_by(d) {
                counts[m] += 1;
            }
        }
        let mut offsets = vec![0usize; limit + 2];
        for n in 1..=limit {
            offsets[n + 1] = offsets[n] + counts[n];
        }
        let mut fill = offsets.clone();
        let mut divisors = vec![0u32; offsets[limit + 1]];
        for d in 1..=limit {
            for m in (d..=limit).step_by(d) {
                divisors[fill[m]] = d as u32;
                fill[m] += 1;
            }
        }
        DivisorTable { offsets, divisors }
    }

    pub fn limit(&self) -> usize {
        self.offsets.len() - 2
    }

    /// Divisors of `n` in increasing order.
    pub fn of(&self, n: usize) -> &[u32] {
        &self.divisors[self.offsets[n]..self.offsets[n + 1]]
    }
}

/// Distinct and total prime-factor counts of a positive integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FactorCounts {
    /// ω(n)
    pub little_omega: u32,
    /// Ω(n)
    pub big_omega: u32,
}

/// ω(n) and Ω(n) by trial division.
pub fn prime_factor_counts(n: u64) -> Result<FactorCounts> {
    if n == 0 {
        return Err(Error::Domain("prime factor counts need n >= 1".into()));
    }
    let mut rest = n;
    let mut counts = FactorCounts { little_omega: 0, big_omega: 0 };
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            counts.little_omega += 1;
            while rest.is_multiple_of(p) {
                rest /= p;
                counts.big_omega += 1;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        counts.little_omega += 1;
        counts.big_omega += 1;
    }
    Ok(counts)
}

/// Ω(n) for every `n` in `0..=limit` from a smallest-prime-factor sieve.
pub(crate) fn big_omega_table(limit: usize) -> Vec<u32> {
    let spf = smallest_prime_factors(limit);
    let mut omega = vec![0u32; limit + 1];
    for n in 2..=limit {
        omega[n] = omega[n / spf[n]] + 1;
    }
    omega
}

pub(crate) fn smallest_prime_factors(limit: usize) -> Vec<usize> {
    let mut spf: Vec<usize> = (0..=limit).collect();
    let mut p = 2;
    while p * p <= limit {
        if spf[p] == p {
            for m in (p * p..=limit).step_by(p) {
                if spf[m] == m {
                    spf[m] = p;
                }
            }
        }
        p += 1;
    }
    spf
}

/// `(f * g)(n) = sum over d | n of f(d) g(n/d)`.
pub fn dirichlet_convolve(f: &ArithmeticSequence, g: &ArithmeticSequence) -> Result<ArithmeticSequence> {
    dirichlet_convolve_with(f, g, Execution::default())
}

pub fn dirichlet_convolve_with(
    f: &ArithmeticSequence,
    g: &ArithmeticSequence,
    exec: Execution,
) -> Result<ArithmeticSequence> {
    same_length(f, g)?;
    let divisors = DivisorTable::new(f.len());
    convolve_with_table(f, g, &divisors, exec)
}

pub(crate) fn convolve_with_table(
    f: &ArithmeticSequence,
    g: &ArithmeticSequence,
    divisors: &DivisorTable,
    exec: Execution,
) -> Result<ArithmeticSequence> {
    let values = par::map_range(exec, 1..f.len() + 1, |n| {
        let mut acc = BigInt::zero();
        for &d in divisors.of(n) {
            let d = d as usize;
            let fd = f.at(d);
            if fd.is_zero() {
                continue;
            }
            let gq = g.at(n / d);
            if !gq.is_zero() {
                acc += fd * gq;
            }
        }
        acc
    });
    ArithmeticSequence::new(values)
}

/// `[g]_{*m}`: `g` convolved with itself `m` times; `m = 0` gives ε.
pub fn m_fold_convolution(g: &ArithmeticSequence, m: usize) -> Result<ArithmeticSequence> {
    let mut acc = ArithmeticSequence::epsilon(g.len())?;
    if m == 0 {
        return Ok(acc);
    }
    let divisors = DivisorTable::new(g.len());
    acc = g.clone();
    for _ in 1..m {
        acc = convolve_with_table(&acc, g, &divisors, Execution::default())?;
    }
    Ok(acc)
}

/// `S_f(x) = f(1) + ... + f(x)`.
pub fn summatory(f: &ArithmeticSequence, x: usize) -> Result<BigInt> {
    if x == 0 || x > f.len() {
        return Err(Error::Shape(format!("x = {x} outside 1..={}", f.len())));
    }
    Ok(f.values[..x].iter().sum())
}

/// The whole prefix-sum sequence `S_f(1), ..., S_f(N)`.
pub fn summatory_sequence(f: &ArithmeticSequence) -> ArithmeticSequence {
    let mut running = BigInt::zero();
    let values = f
        .values
        .iter()
        .map(|v| {
            running += v;
            running.clone()
        })
        .collect();
    let seq = ArithmeticSequence { values, name: None };
    match f.name() {
        Some(name) => seq.with_name(format!("S[{name}]")),
        None => seq,
    }
}

/// The leading value as `+1`/`-1`, or the matching error.
pub(crate) fn unit_leading(f: &ArithmeticSequence) -> Result<BigInt> {
    let lead = f.leading();
    if lead.is_zero() {
        Err(Error::NotInvertible)
    } else if lead.abs().is_one() {
        Ok(lead.clone())
    } else {
        Err(Error::NonUnitLeadingValue(lead.clone()))
    }
}
