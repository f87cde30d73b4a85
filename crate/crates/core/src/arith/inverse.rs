//! Dirichlet inverses by three independent routes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{big_omega_table, convolve_with_table, unit_leading, ArithmeticSequence, DivisorTable};
use crate::error::{Error, Result};
use crate::par::Execution;

/// Largest `n` accepted by [`dirichlet_inverse_partition_formula`].
pub const PARTITION_FORMULA_BOUND: usize = 30;

/// `f^{-1}(1) = 1/f(1)`, `f^{-1}(n) = -1/f(1) * sum_{d | n, d > 1} f(d) f^{-1}(n/d)`.
///
/// Requires `f(1) = ±1` so every term stays an integer.
pub fn dirichlet_inverse_recursive(f: &ArithmeticSequence) -> Result<ArithmeticSequence> {
    let unit = unit_leading(f)?;
    let len = f.len();
    let divisors = DivisorTable::new(len);
    let mut inv: Vec<BigInt> = Vec::with_capacity(len);
    inv.push(unit.clone());
    for n in 2..=len {
        let mut acc = BigInt::zero();
        for &d in &divisors.of(n)[1..] {
            let d = d as usize;
            let fd = f.at(d);
            if fd.is_zero() {
                continue;
            }
            let tail = &inv[n / d - 1];
            if !tail.is_zero() {
                acc += fd * tail;
            }
        }
        inv.push(-(&unit * acc));
    }
    let seq = ArithmeticSequence::new(inv)?;
    Ok(name_inverse(seq, f))
}

/// Neumann-series inverse. With `u = f(1) = ±1` and `h = u (f - u ε)`,
///
/// `f^{-1} = u * sum_{m >= 0} (-1)^m [h]_{*m}`.
///
/// `h(1) = 0`, so `[h]_{*m}(n)` vanishes once `m > Ω(n)` and the sum is finite.
pub fn dirichlet_inverse_neumann(f: &ArithmeticSequence) -> Result<ArithmeticSequence> {
    dirichlet_inverse_neumann_with(f, Execution::default())
}

pub fn dirichlet_inverse_neumann_with(f: &ArithmeticSequence, exec: Execution) -> Result<ArithmeticSequence> {
    let unit = unit_leading(f)?;
    let len = f.len();
    let divisors = DivisorTable::new(len);
    let max_order = big_omega_table(len).into_iter().max().unwrap_or(0) as usize;

    let mut h: Vec<BigInt> = f.values().iter().map(|v| &unit * v).collect();
    h[0] = BigInt::zero();
    let h = ArithmeticSequence::new(h)?;

    let mut power = ArithmeticSequence::epsilon(len)?;
    let mut total: Vec<BigInt> = power.values().to_vec();
    for m in 1..=max_order {
        power = convolve_with_table(&power, &h, &divisors, exec)?;
        let odd = m % 2 == 1;
        for (acc, term) in total.iter_mut().zip(power.values()) {
            if odd {
                *acc -= term;
            } else {
                *acc += term;
            }
        }
    }
    for v in &mut total {
        *v *= &unit;
    }
    Ok(name_inverse(ArithmeticSequence::new(total)?, f))
}

/// The m-fold identity exactly as it is usually typeset:
///
/// `ε(n)/f(1) + sum_{j=0}^{⌊Ω(n)/2⌋} ([g]_{*(2j+1)}(n) - f(1) [g]_{*2j}(n)) / f(1)^{2j+1}`
///
/// with `g = f - f(1) ε` and `[g]_{*0} = ε`. This does not reproduce `f^{-1}`
/// (it gives `0` at `n = 1` when `f(1) = 1`); it exists so the discrepancy
/// with [`dirichlet_inverse_neumann`] can be reported.
pub fn dirichlet_inverse_printed_neumann(f: &ArithmeticSequence) -> Result<ArithmeticSequence> {
    let unit = unit_leading(f)?;
    let len = f.len();
    let divisors = DivisorTable::new(len);
    let omega = big_omega_table(len);
    let max_pairs = omega.iter().copied().max().unwrap_or(0) as usize / 2;

    let mut g = f.values().to_vec();
    g[0] = BigInt::zero();
    let g = ArithmeticSequence::new(g)?;

    // powers[m] = [g]_{*m}
    let mut powers = vec![ArithmeticSequence::epsilon(len)?];
    for _ in 0..2 * max_pairs + 1 {
        let next = convolve_with_table(powers.last().unwrap(), &g, &divisors, Execution::default())?;
        powers.push(next);
    }

    let values = (1..=len)
        .map(|n| {
            let mut acc = if n == 1 { unit.clone() } else { BigInt::zero() };
            for j in 0..=(omega[n] as usize / 2) {
                // 1 / f(1)^{2j+1} = f(1) for a unit
                acc += (powers[2 * j + 1].at(n) - &unit * powers[2 * j].at(n)) * &unit;
            }
            acc
        })
        .collect();
    ArithmeticSequence::new(values)
}

fn name_inverse(seq: ArithmeticSequence, f: &ArithmeticSequence) -> ArithmeticSequence {
    match f.name() {
        Some(name) => seq.with_name(format!("{name}^-1")),
        None => seq,
    }
}

/// Outcome of evaluating the divisor-constrained partition expansion at one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionFormulaReport {
    pub n: usize,
    /// The expansion's value; the printed weights are not always integral.
    pub value: BigRational,
    /// `f^{-1}(n)` from the recursive algorithm.
    pub expected: BigInt,
    pub matches: bool,
}

/// Evaluates, for `n >= 2`,
///
/// `sum_{k=1}^{Ω(n)} (-1)^k sum (λ1+...+λk)! / (1! 2! ... k!) * f(λ1) f(λ2)^2 ... f(λk)^k`
///
/// over tuples of positive divisors `λi | n` with `λ1 + 2λ2 + ... + kλk = n`,
/// and compares the result against the recursive inverse.
pub fn dirichlet_inverse_partition_formula(f: &ArithmeticSequence, n: usize) -> Result<PartitionFormulaReport> {
    if !f.leading().is_one() {
        return Err(Error::Domain("the partition expansion assumes f(1) = 1".into()));
    }
    if n < 2 {
        return Err(Error::Domain("the partition expansion is stated for n >= 2".into()));
    }
    if n > PARTITION_FORMULA_BOUND {
        return Err(Error::Resource { n, bound: PARTITION_FORMULA_BOUND });
    }
    if n > f.len() {
        return Err(Error::Shape(format!("n = {n} beyond sequence length {}", f.len())));
    }

    let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let max_k = big_omega_table(n)[n] as usize;
    let mut value = BigRational::zero();
    for k in 1..=max_k {
        let mut denominator = BigInt::one();
        for i in 1..=k {
            denominator *= factorial(i);
        }
        let mut tuple = Vec::with_capacity(k);
        let mut inner = BigInt::zero();
        enumerate_tuples(f, &divisors, k, n, &mut tuple, &mut inner);
        let term = BigRational::new(inner, denominator);
        if k % 2 == 1 {
            value -= term;
        } else {
            value += term;
        }
    }

    let expected = dirichlet_inverse_recursive(&f.prefix(n)?)?.at(n).clone();
    let matches = value == BigRational::from_integer(expected.clone());
    Ok(PartitionFormulaReport { n, value, expected, matches })
}

/// Accumulates `(sum λ)! * prod f(λi)^i` over tuples with `sum i*λi = remaining`.
fn enumerate_tuples(
    f: &ArithmeticSequence,
    divisors: &[usize],
    k: usize,
    remaining: usize,
    tuple: &mut Vec<usize>,
    acc: &mut BigInt,
) {
    let position = tuple.len() + 1;
    if position > k {
        if remaining == 0 {
            let parts: usize = tuple.iter().sum();
            let mut weight = factorial(parts);
            for (i, &lambda) in tuple.iter().enumerate() {
                weight *= f.at(lambda).pow(i as u32 + 1);
            }
            *acc += weight;
        }
        return;
    }
    // every later position needs at least its own weight j * 1
    let reserve: usize = (position + 1..=k).sum();
    for &lambda in divisors {
        let used = position * lambda;
        if used + reserve > remaining {
            break;
        }
        tuple.push(lambda);
        enumerate_tuples(f, divisors, k, remaining - used, tuple, acc);
        tuple.pop();
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}
