//! Exact Dirichlet-inverse and partition-kernel convolution experiments.
//!
//! * [`arith`]: arithmetic-function registry, Dirichlet convolution and three
//!   routes to the Dirichlet inverse.
//! * [`series`]: the partition kernels `q`, `q*`, `p*`, `p`, series
//!   reciprocals and leading-order asymptotics.
//! * [`encoding`]: the invertible encodings `c1..c4` and experiment tables.
//! * [`sign`]: sign-change counting and eventual-sign onset detection.
//! * [`verify`]: the invariant suites behind `pfsign verify`.
//!
//! Per-index sums run on rayon when the `parallel` feature is enabled (the
//! default); see [`par::Execution`].

pub mod arith;
pub mod encoding;
pub mod error;
pub mod golden;
pub mod numeric;
pub mod par;
pub mod render;
pub mod series;
pub mod sign;
pub mod verify;

pub use arith::{ArithmeticSequence, FactorCounts, FunctionName};
pub use encoding::{EncodedSequence, TableArtifact};
pub use error::{Error, Result};
pub use par::Execution;
pub use series::{KernelKind, SeriesCoefficients};
pub use sign::{HypothesisVerdict, SignReport};
