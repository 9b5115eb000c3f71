//! The full cross-check suite over a grid of defect parameters.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::oracle::highprec::{highprec_check_with, CheckKind};
use crate::oracle::newton::{find_eigenvalues_numeric_with, GridSpec, NewtonConfig};
use crate::oracle::residual::{residual_decay, DEFAULT_WINDOWS};
use crate::oracle::Fault;
use crate::spectrum::{
    eigenvalues, eigenvector_by_index, r_minus, r_plus, DefectParameter, Family, RegionLabel,
    SpectralQuadruple,
};
use crate::tolerance::Tolerances;
use crate::walk::eigen_residual;

pub const DEFAULT_OMEGA_GRID: [f64; 9] = [-3.0, -2.0, -1.0, -0.5, 0.5, 0.9, 1.5, 2.0, 3.0];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationConfig {
    pub omegas: Vec<f64>,
    pub grid: GridSpec,
    pub newton: NewtonConfig,
    pub tolerances: Tolerances,
    /// Window for the eigenvector residual check.
    pub residual_window: usize,
    /// Bound on the interior residual at `residual_window`.
    pub residual_tol: f64,
    pub decay_windows: Vec<usize>,
    /// Allowed relative error of the fitted decay slope.
    pub decay_tol: f64,
    pub fault: Option<Fault>,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            omegas: DEFAULT_OMEGA_GRID.to_vec(),
            grid: GridSpec::default(),
            newton: NewtonConfig::default(),
            tolerances: Tolerances::default(),
            residual_window: 64,
            residual_tol: 1e-10,
            decay_windows: DEFAULT_WINDOWS.to_vec(),
            decay_tol: 0.1,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub omega: f64,
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    fn below(omega: f64, name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            omega,
            name: name.into(),
            passed: value < tolerance,
            value,
            tolerance,
            detail: None,
        }
    }

    fn failed(omega: f64, name: impl Into<String>, detail: String) -> Self {
        Self {
            omega,
            name: name.into(),
            passed: false,
            value: f64::NAN,
            tolerance: f64::NAN,
            detail: Some(detail),
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckRecord>,
    pub all_passed: bool,
}

impl ValidationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Validates every `ω` in the config; per-`ω` work runs in parallel but the
/// records come back in grid order.
pub fn run_validation(config: &ValidationConfig) -> Result<ValidationReport> {
    let omegas: Vec<DefectParameter> = config
        .omegas
        .iter()
        .map(|&w| DefectParameter::spectral(w))
        .collect::<Result<_>>()?;
    let checks: Vec<CheckRecord> = omegas
        .par_iter()
        .map(|&w| validate_omega(w, config))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(ValidationReport { checks, all_passed })
}

/// Closed-form quadruple, corrupted when a fault is injected.
fn closed_form(omega: DefectParameter, fault: Option<Fault>) -> Result<SpectralQuadruple> {
    match fault {
        None => eigenvalues(omega),
        Some(Fault::RMinusSign) => Ok(SpectralQuadruple::from_parts(
            omega,
            r_plus(omega),
            r_plus(omega),
        )),
    }
}

/// Symmetric set distance; infinite when the sizes differ.
fn set_distance(a: &[crate::ComplexScalar], b: &[crate::ComplexScalar]) -> f64 {
    if a.len() != b.len() || a.is_empty() {
        return f64::INFINITY;
    }
    let one_way = |x: &[crate::ComplexScalar], y: &[crate::ComplexScalar]| {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|q| (p - q).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

fn validate_omega(omega: DefectParameter, config: &ValidationConfig) -> Vec<CheckRecord> {
    let w = omega.value();
    let mut out = Vec::new();

    match highprec_check_with(omega, config.fault) {
        Ok(report) => {
            for c in report.checks {
                let tolerance = match c.kind {
                    CheckKind::Vanishes => c.tolerance,
                    CheckKind::Positive => 0.0,
                };
                out.push(CheckRecord {
                    omega: w,
                    name: format!("highprec/{}", c.name),
                    passed: c.passed,
                    value: c.value,
                    tolerance,
                    detail: None,
                });
            }
        }
        Err(e) => out.push(CheckRecord::failed(w, "highprec", e.to_string())),
    }

    let quad = closed_form(omega, config.fault);
    match (
        find_eigenvalues_numeric_with(omega, &config.grid, &config.newton),
        &quad,
    ) {
        (Ok(numeric), Ok(quad)) => {
            let dist = set_distance(&numeric.values(), &quad.lambdas);
            out.push(
                CheckRecord::below(
                    w,
                    "newton/matches-closed-form",
                    dist,
                    config.tolerances.eigen_match,
                )
                .with_detail(format!(
                    "{} roots from {} seeds",
                    numeric.roots.len(),
                    numeric.seeds_tried
                )),
            );
            let misplaced = numeric
                .roots
                .iter()
                .filter(|r| {
                    let want = match r.condition {
                        Family::PlusFamily => RegionLabel::XiPlus,
                        Family::MinusFamily => RegionLabel::XiMinus,
                    };
                    r.region != Some(want)
                })
                .count();
            out.push(CheckRecord::below(
                w,
                "newton/roots-off-sigma",
                misplaced as f64,
                0.5,
            ));
        }
        (Err(e), _) => out.push(CheckRecord::failed(
            w,
            "newton/matches-closed-form",
            e.to_string(),
        )),
        (_, Err(e)) => out.push(CheckRecord::failed(
            w,
            "newton/matches-closed-form",
            e.to_string(),
        )),
    }

    // the faulty R₋ must also show up as a mismatch between the two R's in double precision
    if let (Some(Fault::RMinusSign), Ok(q)) = (config.fault, &quad) {
        out.push(CheckRecord::below(
            w,
            "closed-form/r-minus",
            (q.lambdas[0].re - r_minus(omega)).abs(),
            config.tolerances.complex_eq,
        ));
    }

    for index in 1..=4 {
        let name = format!("eigvec/interior-residual-{index}");
        match eigenvector_by_index(omega, index, config.residual_window) {
            Ok(psi) => {
                let lambda = eigenvalues(omega).and_then(|q| q.get(index));
                match lambda {
                    Ok(l) => {
                        let r = eigen_residual(&psi, omega, l);
                        out.push(CheckRecord::below(w, name, r.interior, config.residual_tol));
                    }
                    Err(e) => out.push(CheckRecord::failed(w, name, e.to_string())),
                }
            }
            Err(e) => out.push(CheckRecord::failed(w, name, e.to_string())),
        }

        let name = format!("eigvec/decay-rate-{index}");
        match residual_decay(omega, index, &config.decay_windows) {
            Ok(fit) => {
                let decreasing = fit.is_decreasing();
                let mut rec =
                    CheckRecord::below(w, name, fit.relative_slope_error, config.decay_tol)
                        .with_detail(format!(
                            "fitted ratio {:.6}, predicted {:.6}",
                            fit.fitted_ratio, fit.predicted_ratio
                        ));
                rec.passed &= decreasing;
                out.push(rec);
            }
            Err(e) => out.push(CheckRecord::failed(w, name, e.to_string())),
        }
    }
    out
}
