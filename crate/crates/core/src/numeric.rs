//! Floating-point views of exact integers that may exceed `f64` range.

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

/// `ln |x|`; `-inf` for zero.
pub fn ln_abs(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 960 {
        return x.abs().to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let mantissa = (x.abs() >> shift).to_f64().expect("64-bit mantissa");
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `a / b` in floating point, accurate even when `a` and `b` individually overflow.
pub fn ratio(a: &BigInt, b: &BigInt) -> f64 {
    if b.is_zero() {
        return if a.is_zero() { f64::NAN } else { f64::INFINITY * sign_of(a) };
    }
    if a.is_zero() {
        return 0.0;
    }
    let (abits, bbits) = (a.bits() as i64, b.bits() as i64);
    if abits - bbits > 1100 {
        return f64::INFINITY * sign_of(a) * sign_of(b);
    }
    if bbits - abits > 1100 {
        return 0.0;
    }
    // common shift keeps both operands inside f64 range
    let shift = abits.max(bbits).saturating_sub(960).max(0) as u64;
    let (x, y) = ((a >> shift).to_f64(), (b >> shift).to_f64());
    match (x, y) {
        (Some(x), Some(y)) if y != 0.0 => x / y,
        _ => sign_of(a) * sign_of(b) * (ln_abs(a) - ln_abs(b)).exp(),
    }
}

fn sign_of(x: &BigInt) -> f64 {
    if x.sign() == Sign::Minus {
        -1.0
    } else {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_of_small_and_huge_values() {
        assert_eq!(ratio(&BigInt::from(10), &BigInt::from(-4)), -2.5);
        assert_eq!(ratio(&BigInt::from(0), &BigInt::from(3)), 0.0);
        let huge = BigInt::from(3).pow(5000);
        let r = ratio(&(&huge * 7), &(&huge * -2));
        assert!((r + 3.5).abs() < 1e-12, "{r}");
        assert!((ln_abs(&huge) - 5000.0 * 3f64.ln()).abs() < 1e-9);
        assert!(ratio(&huge, &BigInt::from(1)).is_infinite());
    }
}
