//! The walk itself: two-component wave functions on a finite window
//! `[-N, N]`, the coin, one application of `U = SC`, and time evolution.
//!
//! Amplitudes that would come from outside the window are read as zero.

use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ComplexScalar, I};
use crate::spectrum::DefectParameter;

/// `Ψ(x) = [Ψ_L(x), Ψ_R(x)]` for `x ∈ [-N, N]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveFunction {
    window: usize,
    left: Vec<ComplexScalar>,
    right: Vec<ComplexScalar>,
}

impl WaveFunction {
    pub fn zeros(window: usize) -> Result<Self> {
        if window < 1 {
            return Err(Error::WindowTooSmall {
                min: 1,
                got: window,
            });
        }
        let len = 2 * window + 1;
        Ok(Self {
            window,
            left: vec![Complex64::new(0.0, 0.0); len],
            right: vec![Complex64::new(0.0, 0.0); len],
        })
    }

    pub fn from_fn<F>(window: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(i64) -> (ComplexScalar, ComplexScalar),
    {
        let mut psi = Self::zeros(window)?;
        for x in psi.sites() {
            let (l, r) = f(x);
            psi.set(x, l, r);
        }
        psi.check_finite()?;
        Ok(psi)
    }

    /// Builds a state from amplitude rows ordered from `x = -N` to `x = N`.
    pub fn from_rows(rows: &[(ComplexScalar, ComplexScalar)]) -> Result<Self> {
        if rows.len() < 3 || rows.len().is_multiple_of(2) {
            return Err(Error::Invalid(format!(
                "need an odd number (>= 3) of rows, got {}",
                rows.len()
            )));
        }
        let window = (rows.len() - 1) / 2;
        let psi = Self {
            window,
            left: rows.iter().map(|r| r.0).collect(),
            right: rows.iter().map(|r| r.1).collect(),
        };
        psi.check_finite()?;
        Ok(psi)
    }

    pub fn delta(window: usize, initial: InitialState) -> Result<Self> {
        let mut psi = Self::zeros(window)?;
        let (l, r) = initial.chirality();
        psi.set(0, l, r);
        Ok(psi)
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn sites(&self) -> RangeInclusive<i64> {
        let n = self.window as i64;
        -n..=n
    }

    pub fn contains(&self, x: i64) -> bool {
        x.unsigned_abs() <= self.window as u64
    }

    #[inline]
    fn index(&self, x: i64) -> usize {
        debug_assert!(self.contains(x));
        (x + self.window as i64) as usize
    }

    /// `(Ψ_L(x), Ψ_R(x))`; zero outside the window.
    pub fn get(&self, x: i64) -> (ComplexScalar, ComplexScalar) {
        if self.contains(x) {
            let i = self.index(x);
            (self.left[i], self.right[i])
        } else {
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
        }
    }

    pub fn set(&mut self, x: i64, left: ComplexScalar, right: ComplexScalar) {
        let i = self.index(x);
        self.left[i] = left;
        self.right[i] = right;
    }

    pub fn left(&self) -> &[ComplexScalar] {
        &self.left
    }

    pub fn right(&self) -> &[ComplexScalar] {
        &self.right
    }

    /// Site-major flat layout `[Ψ_L(-N), Ψ_R(-N), Ψ_L(-N+1), ...]`.
    pub fn to_flat(&self) -> Vec<ComplexScalar> {
        self.left
            .iter()
            .zip(&self.right)
            .flat_map(|(l, r)| [*l, *r])
            .collect()
    }

    pub fn from_flat(window: usize, flat: &[ComplexScalar]) -> Result<Self> {
        if flat.len() != 2 * (2 * window + 1) {
            return Err(Error::Invalid(format!(
                "flat vector of length {} does not match window {window}",
                flat.len()
            )));
        }
        let mut psi = Self::zeros(window)?;
        for (i, pair) in flat.chunks_exact(2).enumerate() {
            psi.left[i] = pair[0];
            psi.right[i] = pair[1];
        }
        Ok(psi)
    }

    pub fn check_finite(&self) -> Result<()> {
        let ok = self
            .left
            .iter()
            .chain(&self.right)
            .all(|z| z.re.is_finite() && z.im.is_finite());
        if ok {
            Ok(())
        } else {
            Err(Error::NonFinite("wave function"))
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.left
            .iter()
            .chain(&self.right)
            .map(|z| z.norm_sqr())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `|Ψ_L(0)|² + |Ψ_R(0)|²`.
    pub fn origin_weight(&self) -> f64 {
        let (l, r) = self.get(0);
        l.norm_sqr() + r.norm_sqr()
    }

    pub fn site_norm(&self, x: i64) -> f64 {
        let (l, r) = self.get(x);
        (l.norm_sqr() + r.norm_sqr()).sqrt()
    }

    pub fn scale(&mut self, factor: ComplexScalar) {
        for z in self.left.iter_mut().chain(self.right.iter_mut()) {
            *z *= factor;
        }
    }

    /// `a·self + b·other`; both must share the window.
    pub fn combine(&self, a: ComplexScalar, other: &Self, b: ComplexScalar) -> Result<Self> {
        if self.window != other.window {
            return Err(Error::Invalid("windows differ".into()));
        }
        let zip = |x: &[ComplexScalar], y: &[ComplexScalar]| -> Vec<ComplexScalar> {
            x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()
        };
        Ok(Self {
            window: self.window,
            left: zip(&self.left, &other.left),
            right: zip(&self.right, &other.right),
        })
    }

    /// Smallest interval holding every nonzero amplitude.
    pub fn support(&self) -> Option<(i64, i64)> {
        let nonzero = |x: &i64| {
            let (l, r) = self.get(*x);
            l != Complex64::new(0.0, 0.0) || r != Complex64::new(0.0, 0.0)
        };
        let lo = self.sites().find(nonzero)?;
        let hi = self.sites().rev().find(nonzero)?;
        Some((lo, hi))
    }
}

/// Localized starting states offered by the simulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialState {
    /// `δ₀ ⊗ [1, 0]`
    OriginUp,
    /// `δ₀ ⊗ [0, 1]`
    OriginDown,
    /// `δ₀ ⊗ [1, i]/√2`
    OriginSymmetric,
}

impl InitialState {
    pub fn chirality(self) -> (ComplexScalar, ComplexScalar) {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        match self {
            InitialState::OriginUp => (one, zero),
            InitialState::OriginDown => (zero, one),
            InitialState::OriginSymmetric => (one * FRAC_1_SQRT_2, I * FRAC_1_SQRT_2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoinMatrix {
    pub entries: [[ComplexScalar; 2]; 2],
}

impl CoinMatrix {
    pub fn det(&self) -> ComplexScalar {
        let m = &self.entries;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// `‖C*C - I‖_max`
    pub fn unitarity_defect(&self) -> f64 {
        let m = &self.entries;
        let mut worst = 0f64;
        for i in 0..2 {
            for j in 0..2 {
                let g: ComplexScalar = (0..2).map(|k| m[k][i].conj() * m[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }
}

/// Local coin weight: `ω` at the origin, `1` elsewhere.
#[inline]
pub fn site_weight(x: i64, omega: DefectParameter) -> f64 {
    if x == 0 {
        omega.value()
    } else {
        1.0
    }
}

/// `C(x) = (ω_x/√2)[[1, -1], [1, 1]]`.
pub fn coin(x: i64, omega: DefectParameter) -> CoinMatrix {
    let s = Complex64::new(site_weight(x, omega) * FRAC_1_SQRT_2, 0.0);
    CoinMatrix {
        entries: [[s, -s], [s, s]],
    }
}

/// One step of `U = SC` on the truncated lattice.
///
/// `(UΨ)_L(x) = (ω_{x+1}/√2)(Ψ_L(x+1) - Ψ_R(x+1))` and
/// `(UΨ)_R(x) = (ω_{x-1}/√2)(Ψ_L(x-1) + Ψ_R(x-1))`.
pub fn apply_u(state: &WaveFunction, omega: DefectParameter) -> WaveFunction {
    let n = state.window;
    let len = 2 * n + 1;
    let mut out = WaveFunction {
        window: n,
        left: vec![Complex64::new(0.0, 0.0); len],
        right: vec![Complex64::new(0.0, 0.0); len],
    };
    for i in 0..len {
        let x = i as i64 - n as i64;
        let c = site_weight(x, omega) * FRAC_1_SQRT_2;
        let (l, r) = (state.left[i], state.right[i]);
        if i > 0 {
            out.left[i - 1] = (l - r) * c;
        }
        if i + 1 < len {
            out.right[i + 1] = (l + r) * c;
        }
    }
    out
}

/// `UΨ - λΨ` split into the part the truncation cannot touch and the part it can.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    /// Sites `|x| ≤ N - 1`.
    pub interior: f64,
    /// Sites `x = ±N`, whose images need amplitudes from outside the window.
    pub edge: f64,
}

impl Residual {
    pub fn total(&self) -> f64 {
        self.interior.hypot(self.edge)
    }
}

pub fn eigen_residual(
    state: &WaveFunction,
    omega: DefectParameter,
    lambda: ComplexScalar,
) -> Residual {
    let image = apply_u(state, omega);
    let n = state.window as i64;
    let (mut interior, mut edge) = (0.0, 0.0);
    for x in state.sites() {
        let (ul, ur) = image.get(x);
        let (l, r) = state.get(x);
        let local = (ul - lambda * l).norm_sqr() + (ur - lambda * r).norm_sqr();
        if x.abs() == n {
            edge += local;
        } else {
            interior += local;
        }
    }
    Residual {
        interior: interior.sqrt(),
        edge: edge.sqrt(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub t: usize,
    /// `ln ‖U^t Ψ‖`
    pub log_norm: f64,
    pub norm: f64,
    /// Unnormalized `|Ψ_L(0)|² + |Ψ_R(0)|²` of `U^t Ψ`.
    pub origin_weight: f64,
    /// Origin weight divided by the squared norm. The walk is not unitary, so
    /// this normalized weight is a convention, not a probability in the usual sense.
    pub origin_prob_normalized: f64,
    /// Per-step growth factor over the trailing window, see [`running_window`].
    pub growth_rate_running: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub records: Vec<StepRecord>,
    /// `U^t Ψ / ‖U^t Ψ‖` at the last step.
    pub final_state: WaveFunction,
    /// First step at which the light cone of the initial support leaves the window.
    pub light_cone_overflow: Option<usize>,
}

impl Trajectory {
    pub fn last(&self) -> &StepRecord {
        self.records.last().expect("trajectory always holds t = 0")
    }

    /// `(‖U^t Ψ‖ / ‖Ψ‖)^{1/t}` at the last step.
    pub fn mean_growth_rate(&self) -> f64 {
        let last = self.last();
        if last.t == 0 {
            return 1.0;
        }
        ((last.log_norm - self.records[0].log_norm) / last.t as f64).exp()
    }
}

/// Length of the trailing window used for the running growth rate at step `t`:
/// the largest even number not exceeding `t/2`, or `1` for `t < 4`.
///
/// Even windows matter: the four eigenvalues share a modulus but their squares
/// differ in phase, so the norm oscillates with period two.
pub fn running_window(t: usize) -> usize {
    (2 * (t / 4)).max(1)
}

/// Iterates `U` for `steps` steps, renormalizing every step and tracking the log-norm.
pub fn evolve(state: &WaveFunction, omega: DefectParameter, steps: usize) -> Result<Trajectory> {
    evolve_with(state, omega, steps, |_, _, _| {})
}

/// Like [`evolve`], calling `observe(t, normalized_state, log_norm)` at every step including `t = 0`.
pub fn evolve_with<F>(
    state: &WaveFunction,
    omega: DefectParameter,
    steps: usize,
    mut observe: F,
) -> Result<Trajectory>
where
    F: FnMut(usize, &WaveFunction, f64),
{
    state.check_finite()?;
    let initial_norm = state.norm();
    if initial_norm == 0.0 {
        return Err(Error::Degenerate("initial state has zero norm"));
    }

    let n = state.window as i64;
    let light_cone_overflow = state.support().and_then(|(lo, hi)| {
        let slack = (lo + n).min(n - hi);
        let first = (slack + 1) as usize;
        (first <= steps).then_some(first)
    });

    let mut current = state.clone();
    current.scale(Complex64::new(1.0 / initial_norm, 0.0));
    let mut log_norms = Vec::with_capacity(steps + 1);
    let mut records = Vec::with_capacity(steps + 1);

    let mut log_norm = initial_norm.ln();
    for t in 0..=steps {
        if t > 0 {
            current = apply_u(&current, omega);
            let step_norm = current.norm();
            if !step_norm.is_finite() {
                return Err(Error::NonFinite("evolved state"));
            }
            if step_norm == 0.0 {
                return Err(Error::Degenerate("state annihilated by truncation"));
            }
            current.scale(Complex64::new(1.0 / step_norm, 0.0));
            log_norm += step_norm.ln();
        }
        log_norms.push(log_norm);
        observe(t, &current, log_norm);

        let prob = current.origin_weight();
        let growth = if t == 0 {
            1.0
        } else {
            let w = running_window(t);
            ((log_norm - log_norms[t - w]) / w as f64).exp()
        };
        records.push(StepRecord {
            t,
            log_norm,
            norm: log_norm.exp(),
            origin_weight: prob * (2.0 * log_norm).exp(),
            origin_prob_normalized: prob,
            growth_rate_running: growth,
        });
    }

    Ok(Trajectory {
        records,
        final_state: current,
        light_cone_overflow,
    })
}

/// Asymptotic per-step growth factor of `‖U^t Ψ‖`, read off the trailing
/// half of the run (see [`running_window`]).
pub fn growth_rate(state: &WaveFunction, omega: DefectParameter, steps: usize) -> Result<f64> {
    if steps < 10 {
        return Err(Error::Invalid(format!(
            "growth_rate needs at least 10 steps, got {steps}"
        )));
    }
    Ok(evolve(state, omega, steps)?.last().growth_rate_running)
}
