//! Independent numerical checks of the closed forms.
//!
//! Nothing here calls back into the closed-form eigenvalue or eigenvector
//! routines to produce its answer; comparisons happen in the callers.

pub mod dense;
pub mod fixed;
pub mod highprec;
pub mod newton;
pub mod power;
pub mod residual;

use serde::{Deserialize, Serialize};

pub use dense::{build_dense, DenseOperator};
pub use highprec::{highprec_check, HighPrecReport, IdentityCheck};
pub use newton::{
    find_eigenvalues_numeric, GridSpec, NewtonConfig, NumericSpectrum, RootFindResult,
};
pub use power::{dominant_eigenvalue, DominantEstimate};
pub use residual::{residual_decay, DecayFit};

/// Deliberate corruption of the closed form under test, used to show that the
/// validation suite notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Evaluate `R₋` with the `+ω(ω-1)²` term, i.e. the formula of `R₊`.
    RMinusSign,
}
