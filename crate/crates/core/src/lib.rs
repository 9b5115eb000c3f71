//! Spectral toolkit for the one-defect discrete-time quantum walk `U = SC`.
//!
//! The coin is the Hadamard-type matrix `(1/√2)[[1, -1], [1, 1]]` on every
//! site except the origin, where it is multiplied by a real parameter `ω ≠ 0`.
//! For `ω ∉ {0, 1}` the walk has exactly four eigenvalues, given in closed
//! form by [`spectrum::eigenvalues`], and the exponentially localized
//! eigenvectors are produced by [`spectrum::eigenvector`].
//!
//! Everything closed-form is re-derived numerically by the [`oracle`] module:
//! Newton iteration on the transfer-matrix dependence determinants, power
//! iteration on the truncated operator and an extended-precision identity
//! check. [`validation`] strings those together into a pass/fail report.

pub mod error;
pub mod oracle;
pub mod scalar;
pub mod spectrum;
pub mod tolerance;
pub mod validation;
pub mod walk;

pub use error::{Error, Result};
pub use scalar::ComplexScalar;
pub use spectrum::{
    DefectParameter, EigenBranch, EigenvectorProfile, Family, RegionLabel, SignChoice,
    SpectralQuadruple, TransferMatrix,
};
pub use tolerance::Tolerances;
pub use walk::{CoinMatrix, InitialState, Trajectory, WaveFunction};
