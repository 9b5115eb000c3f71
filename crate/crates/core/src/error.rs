use thiserror::Error;

use crate::scalar::ComplexScalar;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("defect parameter must be nonzero")]
    ZeroOmega,

    #[error("omega = 1 is the homogeneous walk, which has no eigenvalues")]
    HomogeneousOmega,

    #[error("spectral parameter lambda must be nonzero")]
    ZeroLambda,

    #[error("{lambda} is not an eigenvalue for omega = {omega} (nearest is {nearest})")]
    NotAnEigenvalue {
        omega: f64,
        lambda: ComplexScalar,
        nearest: ComplexScalar,
    },

    #[error("eigenvalue index must be in 1..=4, got {0}")]
    BadIndex(usize),

    #[error("window must be at least {min}, got {got}")]
    WindowTooSmall { min: usize, got: usize },

    #[error("dense operator of dimension {dim} exceeds the budget of {max} rows")]
    Capacity { dim: usize, max: usize },

    #[error("degenerate value: {0}")]
    Degenerate(&'static str),

    #[error("invalid argument: {0}")]
    Invalid(String),
}
