//! Exact arithmetic foundation: big rationals, real quadratic extensions,
//! Laurent polynomials in `q`, integer matrices with Smith normal form, and
//! quasi-polynomial point-count functions.

pub mod countfn;
pub mod intmat;
pub mod qpoly;
pub mod quad;
pub mod ratfn;

pub use countfn::{CenterTerm, CountFn};
pub use intmat::{IntMat, SnfResult};
pub use qpoly::QPoly;
pub use quad::QuadNum;
pub use ratfn::RatFn;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational, the coefficient field for Cartan coordinates.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("polynomial division is not exact (nonzero remainder)")]
    DivisionNotExact,
    #[error("evaluation point {0} violates the validity assumption (bad characteristic)")]
    BadCharacteristic(u64),
    #[error("mixed quadratic radicands: {0} vs {1}")]
    MixedRadicands(u64, u64),
    #[error("result is not a polynomial: remainder denominator {0}")]
    NonPolynomialResult(String),
}
