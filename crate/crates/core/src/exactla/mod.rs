//! Exact scalars, dense matrices and univariate polynomials.

pub mod expr;
mod matrix;
mod poly;
mod scalar;

pub use matrix::{Matrix, Solution, Vector};
pub use poly::Polynomial;
pub use scalar::{join_discriminant, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("mixed quadratic fields sqrt({0}) and sqrt({1})")]
    MixedDiscriminant(u64, u64),
    #[error("{0} is not square-free")]
    NotSquareFree(u64),
    #[error("matrix is singular")]
    Singular,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Common field of a collection of scalars.
pub fn common_discriminant<'a, I>(xs: I) -> Result<u64, LinAlgError>
where
    I: IntoIterator<Item = &'a Scalar>,
{
    xs.into_iter()
        .try_fold(1, |d, x| join_discriminant(d, x.discriminant()))
}
