//! Eigenvalues as zeros of the dependence determinants.
//!
//! A polar grid of seeds covers the annulus `r_min ≤ |λ| ≤ r_max` in each
//! half-plane. Right-half seeds run Newton on `det[T_λ(0)χ₊, χ₋]`, left-half
//! seeds on `det[T_λ(0)χ₋, χ₊]`. Both determinants are analytic away from
//! `iℝ ∪ Σ`, where `√(λ² + λ⁻²)` changes sheet, so seeds keep a clearance
//! from that set and an iterate that jumps across it restarts from a
//! perturbed seed.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scalar::ComplexScalar;
use crate::spectrum::{
    classify, dependence_det_minus, dependence_det_plus, distance_to_sigma, DefectParameter,
    Family, RegionLabel,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub radial: usize,
    pub angular: usize,
    pub r_min: f64,
    pub r_max: f64,
    /// Seeds closer than this to `iℝ ∪ Σ` are skipped.
    pub clearance: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            radial: 60,
            angular: 60,
            r_min: 0.2,
            r_max: 3.0,
            clearance: 0.05,
        }
    }
}

impl GridSpec {
    pub fn square(resolution: usize) -> Self {
        Self {
            radial: resolution,
            angular: resolution,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonConfig {
    pub max_iterations: usize,
    /// Step of the central difference used for the derivative.
    pub fd_step: f64,
    /// Converged once `|D(λ)|` falls below this.
    pub residual_tol: f64,
    /// Newton steps are clipped to this fraction of `|λ|`.
    pub max_step_fraction: f64,
    pub max_restarts: usize,
    /// Converged roots closer than this are merged.
    pub merge_radius: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            max_iterations: 80,
            fd_step: 1e-7,
            residual_tol: 1e-13,
            max_step_fraction: 0.5,
            max_restarts: 3,
            merge_radius: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootFindResult {
    pub root: ComplexScalar,
    /// `|D(root)|`
    pub residual: f64,
    pub iterations: usize,
    pub seed: ComplexScalar,
    pub converged: bool,
    /// Which determinant was driven to zero.
    pub condition: Family,
    pub region: Option<RegionLabel>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericSpectrum {
    pub omega: f64,
    /// Distinct converged roots, plus-condition roots first.
    pub roots: Vec<RootFindResult>,
    pub seeds_tried: usize,
    pub seeds_converged: usize,
    pub diagnostics: Vec<String>,
}

impl NumericSpectrum {
    pub fn roots_for(&self, condition: Family) -> impl Iterator<Item = &RootFindResult> {
        self.roots.iter().filter(move |r| r.condition == condition)
    }

    pub fn values(&self) -> Vec<ComplexScalar> {
        self.roots.iter().map(|r| r.root).collect()
    }
}

pub fn find_eigenvalues_numeric(
    omega: DefectParameter,
    grid: &GridSpec,
) -> Result<NumericSpectrum> {
    find_eigenvalues_numeric_with(omega, grid, &NewtonConfig::default())
}

pub fn find_eigenvalues_numeric_with(
    omega: DefectParameter,
    grid: &GridSpec,
    config: &NewtonConfig,
) -> Result<NumericSpectrum> {
    let omega = omega.require_defect()?;
    let mut roots = Vec::new();
    let mut diagnostics = Vec::new();
    let mut tried = 0;
    let mut converged = 0;

    for condition in [Family::PlusFamily, Family::MinusFamily] {
        let seeds = seeds(grid, condition);
        tried += seeds.len();
        let runs: Vec<RootFindResult> = seeds
            .par_iter()
            .map(|&seed| newton(omega, seed, condition, config))
            .collect();
        let good: Vec<_> = runs.into_iter().filter(|r| r.converged).collect();
        converged += good.len();
        if good.is_empty() {
            diagnostics.push(format!("{condition:?}: no seed converged"));
        }
        roots.extend(merge(good, config.merge_radius));
    }

    Ok(NumericSpectrum {
        omega: omega.value(),
        roots,
        seeds_tried: tried,
        seeds_converged: converged,
        diagnostics,
    })
}

fn seeds(grid: &GridSpec, condition: Family) -> Vec<ComplexScalar> {
    let offset = match condition {
        Family::PlusFamily => -FRAC_PI_2,
        Family::MinusFamily => FRAC_PI_2,
    };
    let radial = grid.radial.max(1);
    let angular = grid.angular.max(1);
    let dr = if radial > 1 {
        (grid.r_max - grid.r_min) / (radial - 1) as f64
    } else {
        0.0
    };
    let mut out = Vec::with_capacity(radial * angular);
    for i in 0..radial {
        let r = grid.r_min + i as f64 * dr;
        for k in 0..angular {
            let theta = offset + (k as f64 + 0.5) * PI / angular as f64;
            let z = Complex64::from_polar(r, theta);
            if z.re.abs() >= grid.clearance && distance_to_sigma(z) >= grid.clearance {
                out.push(z);
            }
        }
    }
    out
}

fn determinant(
    omega: DefectParameter,
    condition: Family,
    lambda: ComplexScalar,
) -> Option<ComplexScalar> {
    let d = match condition {
        Family::PlusFamily => dependence_det_plus(lambda, omega),
        Family::MinusFamily => dependence_det_minus(lambda, omega),
    };
    d.ok().filter(|v| v.re.is_finite() && v.im.is_finite())
}

/// Does the straight step `from → to` leave the sheet the iteration started on?
fn crosses_cut(from: ComplexScalar, to: ComplexScalar, condition: Family) -> bool {
    let wrong_half = match condition {
        Family::PlusFamily => to.re <= 0.0,
        Family::MinusFamily => to.re >= 0.0,
    };
    if wrong_half {
        return true;
    }
    let (a, b) = (from.norm() - 1.0, to.norm() - 1.0);
    if a * b > 0.0 {
        return false;
    }
    // locate the unit-circle crossing by bisection and test it against the arcs
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        let p = from + (to - from) * mid;
        if (p.norm() - 1.0) * a > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = from + (to - from) * hi;
    let theta = p.im.atan2(p.re).abs();
    (FRAC_PI_4..=3.0 * FRAC_PI_4).contains(&theta)
}

fn perturbed(seed: ComplexScalar, attempt: usize) -> ComplexScalar {
    let k = attempt as f64;
    seed * Complex64::from_polar(1.0 + 0.03 * k, 0.07 * k)
}

fn newton(
    omega: DefectParameter,
    seed: ComplexScalar,
    condition: Family,
    cfg: &NewtonConfig,
) -> RootFindResult {
    let mut z = seed;
    let mut restarts = 0;
    let mut iterations = 0;
    let h = cfg.fd_step;
    let fail = |z: ComplexScalar, iterations: usize, residual: f64| RootFindResult {
        root: z,
        residual,
        iterations,
        seed,
        converged: false,
        condition,
        region: None,
    };

    loop {
        let Some(d) = determinant(omega, condition, z) else {
            return fail(z, iterations, f64::INFINITY);
        };
        if d.norm() < cfg.residual_tol {
            return RootFindResult {
                root: z,
                residual: d.norm(),
                iterations,
                seed,
                converged: true,
                condition,
                region: classify(z).ok(),
            };
        }
        if iterations >= cfg.max_iterations {
            return fail(z, iterations, d.norm());
        }
        iterations += 1;

        let (Some(fp), Some(fm)) = (
            determinant(omega, condition, z + h),
            determinant(omega, condition, z - h),
        ) else {
            return fail(z, iterations, d.norm());
        };
        let slope = (fp - fm) / (2.0 * h);
        if slope.norm() == 0.0 {
            return fail(z, iterations, d.norm());
        }
        let mut step = d / slope;
        let cap = cfg.max_step_fraction * z.norm();
        if step.norm() > cap {
            step *= cap / step.norm();
        }
        let next = z - step;
        if crosses_cut(z, next, condition) {
            restarts += 1;
            if restarts > cfg.max_restarts {
                return fail(z, iterations, d.norm());
            }
            z = perturbed(seed, restarts);
            continue;
        }
        z = next;
    }
}

fn merge(results: Vec<RootFindResult>, radius: f64) -> Vec<RootFindResult> {
    let mut out: Vec<RootFindResult> = Vec::new();
    for r in results {
        match out.iter_mut().find(|o| (o.root - r.root).norm() < radius) {
            Some(existing) if r.residual < existing.residual => *existing = r,
            Some(_) => {}
            None => out.push(r),
        }
    }
    out.sort_by(|a, b| a.root.im.total_cmp(&b.root.im).reverse());
    out
}
