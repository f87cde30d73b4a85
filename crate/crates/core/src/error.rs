use num_bigint::BigInt;
use thiserror::Error;

use crate::series::KernelKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown function name `{0}`")]
    Name(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("sequence is not Dirichlet invertible: f(1) = 0")]
    NotInvertible,

    #[error("f(1) = {0} is not a unit; exact-integer inversion needs f(1) = +1 or -1")]
    NonUnitLeadingValue(BigInt),

    #[error("series leading coefficient {0} is not a unit")]
    NonUnitLeadingCoefficient(BigInt),

    #[error("n = {n} exceeds the enumeration bound {bound}")]
    Resource { n: usize, bound: usize },

    #[error("no asymptotic formula for kernel {0}")]
    UnsupportedKind(KernelKind),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
