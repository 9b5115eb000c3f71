//! Shared numerical tolerances.
//!
//! A single [`Tolerances`] record is threaded through every module so that
//! equality checks agree with each other. The `DEFECTWALK_TOL` environment
//! variable overrides the defaults, either as a bare number (sets
//! `complex_eq`) or as `key=value` pairs separated by commas.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "DEFECTWALK_TOL";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Equality of two complex values.
    pub complex_eq: f64,
    /// Allowed `| |λ| - 1 |` (and angular slack) when deciding membership of the unit-circle arcs.
    pub circle: f64,
    /// `|λ² + λ⁻²|` below this counts as the coalescence point of the bulk transfer matrix.
    pub coalescence: f64,
    /// Distance within which a candidate is accepted as one of the closed-form eigenvalues.
    pub eigen_match: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            complex_eq: 1e-12,
            circle: 1e-9,
            coalescence: 1e-12,
            eigen_match: 1e-8,
        }
    }
}

impl Tolerances {
    /// Defaults, overridden by `DEFECTWALK_TOL` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ENV_VAR) {
            Ok(raw) => Self::default().with_overrides(&raw),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn with_overrides(mut self, raw: &str) -> Result<Self> {
        let raw = raw.trim();
        if raw.is_empty() {
            return Ok(self);
        }
        if let Ok(v) = raw.parse::<f64>() {
            self.complex_eq = positive(v, "complex_eq")?;
            return Ok(self);
        }
        for pair in raw.split(',') {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("expected key=value, got `{pair}`")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad tolerance value `{value}`")))?;
            let key = key.trim();
            let slot = match key {
                "complex_eq" => &mut self.complex_eq,
                "circle" => &mut self.circle,
                "coalescence" => &mut self.coalescence,
                "eigen_match" => &mut self.eigen_match,
                _ => return Err(Error::Invalid(format!("unknown tolerance `{key}`"))),
            };
            *slot = positive(value, "tolerance")?;
        }
        Ok(self)
    }
}

fn positive(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Invalid(format!(
            "{what} must be a positive finite number, got {v}"
        )))
    }
}
