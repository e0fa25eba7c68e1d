use thiserror::Error;

use crate::exactla::expr::ExprError;
use crate::exactla::LinAlgError;
use crate::jordan::JordanError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Jordan(#[from] JordanError),
    #[error("expression: {0}")]
    Expr(#[from] ExprError),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("Jacobi identity fails for basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("structure constants are not antisymmetric at ({0}, {1})")]
    Antisymmetry(usize, usize),
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("nilpotent algebras of dimension {0} are not identified")]
    UnknownAtThisDimension(usize),
    #[error("affine algebra has a nontrivial center")]
    CenterNotTrivial,
    #[error("no element of the affine algebra has the requested adjoint")]
    AdjointSolveFailed,
    #[error("matrix is not a derivation: {0}")]
    NotADerivation(String),
    #[error("no verified splitting complement found: {0}")]
    ComplementSearchFailed(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("span of nilpotent parts is not closed under the bracket")]
    ClosureFailed,
    #[error("unsupported target algebra {0}")]
    UnsupportedTarget(String),
    #[error("cannot factor {0} into linear and quadratic factors over the rationals")]
    UnfactorablePolynomial(String),
    #[error("parameters outside the domain of {0}: {1}")]
    OutOfDomain(String, String),
    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
