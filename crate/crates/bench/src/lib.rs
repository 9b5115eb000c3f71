//! Shared fixtures for the benchmarks under `benches/`.

use defectwalk_core::DefectParameter;

/// Defect parameters used across benchmark groups.
pub const OMEGAS: [f64; 4] = [-1.0, 0.5, 0.9, 2.0];

pub fn omega(w: f64) -> DefectParameter {
    DefectParameter::new(w).expect("benchmark omegas are nonzero")
}
