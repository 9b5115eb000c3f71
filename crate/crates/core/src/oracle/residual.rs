//! Truncation error of the closed-form eigenvector.
//!
//! On `[-N, N]` the closed-form vector satisfies the eigen-equation exactly at
//! every site with `|x| < N`; the only defect is at the two boundary sites,
//! where the truncated operator drops the inflow from outside the window.
//! That boundary residual is proportional to `|Ψ(±N)| ~ r^N` with `r` the
//! tail ratio, so `ln(residual)` is linear in `N` with slope `ln r`. The
//! interior part is pure roundoff and is left out of the fit, otherwise
//! fast-decaying cases would flatten at `1e-16` long before `N = 128`.
//!
//! Residuals are divided by the norm of the untruncated vector on all of `ℤ`,
//! which does not depend on `N`. Dividing by the truncated norm instead bends
//! the fit for slowly decaying cases (`ω` near 1), where `‖Ψ_N‖` is still
//! growing across the fitted windows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{DefectParameter, EigenvectorProfile};
use crate::walk::eigen_residual;

pub const DEFAULT_WINDOWS: [usize; 4] = [16, 32, 64, 128];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayPoint {
    pub window: usize,
    /// Boundary residual over `‖Ψ‖` on `ℤ`.
    pub residual: f64,
    /// Interior residual over `‖Ψ‖` on `ℤ`.
    pub interior: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub omega: f64,
    pub index: usize,
    pub points: Vec<DecayPoint>,
    /// `exp` of the least-squares slope of `ln(residual)` against `N`.
    pub fitted_ratio: f64,
    /// Per-site tail ratio of the eigenvector.
    pub predicted_ratio: f64,
    /// `|slope - ln(predicted)| / |ln(predicted)|`
    pub relative_slope_error: f64,
}

impl DecayFit {
    pub fn within(&self, relative: f64) -> bool {
        self.relative_slope_error <= relative
    }

    /// Residuals strictly decrease with the window.
    pub fn is_decreasing(&self) -> bool {
        self.points
            .windows(2)
            .all(|w| w[1].residual < w[0].residual)
    }
}

pub fn residual_decay(omega: DefectParameter, index: usize, windows: &[usize]) -> Result<DecayFit> {
    let omega = omega.require_defect()?;
    let mut sizes = windows.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 2 {
        return Err(Error::Invalid(
            "decay fit needs at least two distinct windows".into(),
        ));
    }
    if sizes[0] < 2 {
        return Err(Error::WindowTooSmall {
            min: 2,
            got: sizes[0],
        });
    }
    let profile = EigenvectorProfile::new(omega, index)?;
    let norm = profile.lattice_norm_sqr().sqrt();
    let mut points = Vec::with_capacity(sizes.len());
    for &n in &sizes {
        let psi = profile.wave(n)?;
        let r = eigen_residual(&psi, omega, profile.lambda);
        if r.edge == 0.0 || !r.edge.is_finite() {
            return Err(Error::Degenerate("boundary residual underflowed"));
        }
        points.push(DecayPoint {
            window: n,
            residual: r.edge / norm,
            interior: r.interior / norm,
        });
    }

    let xs: Vec<f64> = points.iter().map(|p| p.window as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.residual.ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;

    let predicted = profile.decay_ratio();
    let target = predicted.ln();
    Ok(DecayFit {
        omega: omega.value(),
        index,
        points,
        fitted_ratio: slope.exp(),
        predicted_ratio: predicted,
        relative_slope_error: ((slope - target) / target).abs(),
    })
}
