//! Exact arithmetic and multivariate polynomial algebra.
//!
//! Terms are ordered graded-lexicographically with respect to the declared
//! variable order; every normalization (monic gcds, printed forms) refers to it.
//!
//! Resultants use the Sylvester matrix with the coefficients of the first
//! argument in the top rows, so `Res_y(y^2 - x, y - 1) = 1 - x` and
//! `Res_y(y^2 + b y + c, 2y + b) = -(b^2 - 4c)`.

pub mod binary;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod multipoly;
pub mod upoly;

pub use binary::BinaryForm;
pub use field::{rat, ratio, FieldElement, NumberField, Rational};
pub use multipoly::{Mono, MultiPoly, Ring, WeightSystem, WeightedDegree};
pub use upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("towers of algebraic extensions are not supported")]
    Tower,
    #[error("{0}")]
    BadMinimalPolynomial(String),
    #[error("variable-count mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("weights must be positive")]
    NonPositiveWeights,
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("{0}")]
    Precondition(String),
}
