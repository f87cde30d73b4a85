use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{smallest_prime_factors, ArithmeticSequence, DivisorTable};
use crate::error::{Error, Result};
use crate::series::{kernel_coefficients, p_pentagonal_recurrence, KernelKind};

/// The named arithmetic functions available to tables and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionName {
    One,
    Id,
    Epsilon,
    Mobius,
    Liouville,
    Phi,
    DivisorCount,
    OmegaPlusOne,
    SquareIndicator,
    /// `n -> (2n - 1)!!`, i.e. 1, 3, 15, 105, ...
    DoubleFactorialOdd,
    /// `n -> q*(n)`, the Cauchy reciprocal of the distinct-parts series.
    QStarSeq,
    /// `n -> p(n)`.
    PartitionSeq,
}

impl FunctionName {
    pub const ALL: [FunctionName; 12] = [
        FunctionName::One,
        FunctionName::Id,
        FunctionName::Epsilon,
        FunctionName::Mobius,
        FunctionName::Liouville,
        FunctionName::Phi,
        FunctionName::DivisorCount,
        FunctionName::OmegaPlusOne,
        FunctionName::SquareIndicator,
        FunctionName::DoubleFactorialOdd,
        FunctionName::QStarSeq,
        FunctionName::PartitionSeq,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FunctionName::One => "one",
            FunctionName::Id => "id",
            FunctionName::Epsilon => "epsilon",
            FunctionName::Mobius => "mobius",
            FunctionName::Liouville => "liouville",
            FunctionName::Phi => "phi",
            FunctionName::DivisorCount => "divisor_count",
            FunctionName::OmegaPlusOne => "omega_plus_one",
            FunctionName::SquareIndicator => "sq_indicator",
            FunctionName::DoubleFactorialOdd => "double_factorial_odd",
            FunctionName::QStarSeq => "qstar_seq",
            FunctionName::PartitionSeq => "partition_seq",
        }
    }

    /// The first `len` values, labelled with the registry name.
    pub fn sequence(self, len: usize) -> Result<ArithmeticSequence> {
        if len == 0 {
            return Err(Error::Domain("registry prefixes need N >= 1".into()));
        }
        let values = match self {
            FunctionName::One => vec![BigInt::one(); len],
            FunctionName::Id => (1..=len).map(BigInt::from).collect(),
            FunctionName::Epsilon => (1..=len).map(|n| BigInt::from(u8::from(n == 1))).collect(),
            FunctionName::Mobius => multiplicative_from_factors(len, |factors| {
                if factors.iter().any(|&(_, e)| e > 1) {
                    BigInt::zero()
                } else {
                    parity_sign(factors.len())
                }
            }),
            FunctionName::Liouville => {
                multiplicative_from_factors(len, |factors| parity_sign(factors.iter().map(|&(_, e)| e).sum()))
            }
            FunctionName::Phi => multiplicative_from_factors(len, |factors| {
                factors
                    .iter()
                    .map(|&(p, e)| BigInt::from(p - 1) * BigInt::from(p).pow(e as u32 - 1))
                    .product()
            }),
            FunctionName::DivisorCount => {
                let divisors = DivisorTable::new(len);
                (1..=len).map(|n| BigInt::from(divisors.of(n).len())).collect()
            }
            FunctionName::OmegaPlusOne => multiplicative_from_factors(len, |factors| BigInt::from(factors.len() + 1)),
            FunctionName::SquareIndicator => (1..=len)
                .map(|n| {
                    let r = n.isqrt();
                    BigInt::from(u8::from(r * r == n))
                })
                .collect(),
            FunctionName::DoubleFactorialOdd => {
                let mut acc = BigInt::one();
                (1..=len)
                    .map(|n| {
                        acc *= 2 * n - 1;
                        acc.clone()
                    })
                    .collect()
            }
            FunctionName::QStarSeq => kernel_coefficients(KernelKind::QStar, len).into_coeffs().split_off(1),
            FunctionName::PartitionSeq => p_pentagonal_recurrence(len).into_coeffs().split_off(1),
        };
        Ok(ArithmeticSequence::new(values)?.with_name(self.as_str()))
    }
}

impl fmt::Display for FunctionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FunctionName::ALL
            .into_iter()
            .find(|name| name.as_str() == s)
            .ok_or_else(|| Error::Name(s.to_string()))
    }
}

/// First `len` values of the named function.
pub fn registry_lookup(name: &str, len: usize) -> Result<ArithmeticSequence> {
    name.parse::<FunctionName>()?.sequence(len)
}

fn parity_sign(count: usize) -> BigInt {
    if count.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Evaluates `value` on the prime factorization `[(p, e), ...]` of each `n`.
fn multiplicative_from_factors<F>(len: usize, value: F) -> Vec<BigInt>
where
    F: Fn(&[(usize, usize)]) -> BigInt,
{
    let spf = smallest_prime_factors(len);
    let mut factors = Vec::new();
    (1..=len)
        .map(|n| {
            factors.clear();
            let mut rest = n;
            while rest > 1 {
                let p = spf[rest];
                let mut e = 0;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
            value(&factors)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(name: &str, len: usize) -> Vec<i64> {
        registry_lookup(name, len)
            .unwrap()
            .values()
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn registry_examples() {
        assert_eq!(values("phi", 10), [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]);
        assert_eq!(values("epsilon", 5), [1, 0, 0, 0, 0]);
        assert_eq!(values("double_factorial_odd", 6), [1, 3, 15, 105, 945, 10395]);
        assert_eq!(values("omega_plus_one", 6), [1, 2, 2, 2, 2, 3]);
        assert_eq!(values("divisor_count", 10), [1, 2, 2, 3, 2, 4, 2, 4, 3, 4]);
        assert_eq!(values("qstar_seq", 10), [-1, 0, -1, 1, -1, 1, -1, 2, -2, 2]);
        assert_eq!(values("partition_seq", 10), [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(values("mobius", 10), [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
        assert_eq!(values("liouville", 10), [1, -1, -1, 1, -1, 1, -1, -1, 1, 1]);
        assert_eq!(values("sq_indicator", 10), [1, 0, 0, 1, 0, 0, 0, 0, 1, 0]);
        assert_eq!(values("id", 4), [1, 2, 3, 4]);
        assert_eq!(values("one", 3), [1, 1, 1]);
    }

    #[test]
    fn registry_errors() {
        assert!(matches!(registry_lookup("zeta", 5), Err(Error::Name(n)) if n == "zeta"));
        assert!(matches!(registry_lookup("phi", 0), Err(Error::Domain(_))));
    }

    #[test]
    fn names_round_trip() {
        for name in FunctionName::ALL {
            assert_eq!(name.as_str().parse::<FunctionName>().unwrap(), name);
            assert_eq!(name.sequence(3).unwrap().name(), Some(name.as_str()));
        }
    }

    #[test]
    fn phi_matches_the_definition() {
        let phi = registry_lookup("phi", 200).unwrap();
        for n in 1..=200usize {
            let count = (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count();
            assert_eq!(phi.at(n), &BigInt::from(count));
        }
    }
}
