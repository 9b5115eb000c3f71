//! Closed-form point spectrum of `U_ω`.
//!
//! For `ω ∈ ℝ \ {0, 1}` the walk has exactly four eigenvalues
//! `±R₋(ω) ± iR₊(ω)`. This module evaluates them, together with the machinery
//! they come from: the transfer matrices `T_λ(x)`, the eigen-data `z±`, `χ±`
//! of the bulk transfer matrix, the region classification of the spectral
//! parameter, the dependence determinants whose zeros are the eigenvalues,
//! and the explicit exponentially localized eigenvectors.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{check_finite, principal_sqrt, ComplexScalar, I};
use crate::tolerance::Tolerances;
use crate::walk::WaveFunction;

/// The real, nonzero coin factor at the origin.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct DefectParameter(f64);

impl DefectParameter {
    pub fn new(omega: f64) -> Result<Self> {
        if !omega.is_finite() {
            return Err(Error::NonFinite("omega"));
        }
        if omega == 0.0 {
            return Err(Error::ZeroOmega);
        }
        Ok(Self(omega))
    }

    /// Like [`DefectParameter::new`] but also rejects the homogeneous value `ω = 1`.
    pub fn spectral(omega: f64) -> Result<Self> {
        let p = Self::new(omega)?;
        p.require_defect()?;
        Ok(p)
    }

    pub fn require_defect(self) -> Result<Self> {
        if self.0 == 1.0 {
            Err(Error::HomogeneousOmega)
        } else {
            Ok(self)
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn signum(self) -> f64 {
        self.0.signum()
    }

    /// `|ω - 1|`, the distance from the homogeneous walk.
    pub fn strength(self) -> f64 {
        (self.0 - 1.0).abs()
    }
}

impl TryFrom<f64> for DefectParameter {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DefectParameter> for f64 {
    fn from(p: DefectParameter) -> f64 {
        p.0
    }
}

impl fmt::Display for DefectParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn r_signed(omega: DefectParameter, sign: f64) -> f64 {
    let w = omega.value();
    let wm1 = w - 1.0;
    let q = w * w - w + 1.0;
    let inner = (w * w * (wm1.powi(4) + q * q)).sqrt();
    let denom = 4.0 * (w - 0.5).powi(2) + 1.0;
    ((sign * w * wm1 * wm1 + inner) / denom).sqrt()
}

/// `R₊(ω)`, the imaginary part of `λ₁`.
pub fn r_plus(omega: DefectParameter) -> f64 {
    r_signed(omega, 1.0)
}

/// `R₋(ω)`, the real part of `λ₁`.
pub fn r_minus(omega: DefectParameter) -> f64 {
    r_signed(omega, -1.0)
}

/// `R₋² + R₊² = sgn(ω)·ω·√((ω² - 2ω + 2)/(2ω² - 2ω + 1))`, i.e. `|λ_j|²`.
pub fn modulus_sqr_identity(omega: DefectParameter) -> f64 {
    let w = omega.value();
    w.abs() * ((w * w - 2.0 * w + 2.0) / (2.0 * w * w - 2.0 * w + 1.0)).sqrt()
}

/// The four eigenvalues `λ₁ = R₋ + iR₊`, `λ₂ = -λ̄₁`, `λ₃ = -λ₁`, `λ₄ = λ̄₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralQuadruple {
    pub omega: DefectParameter,
    pub lambdas: [ComplexScalar; 4],
}

impl SpectralQuadruple {
    pub fn from_parts(omega: DefectParameter, real: f64, imag: f64) -> Self {
        Self {
            omega,
            lambdas: [
                Complex64::new(real, imag),
                Complex64::new(-real, imag),
                Complex64::new(-real, -imag),
                Complex64::new(real, -imag),
            ],
        }
    }

    /// `index` runs over `1..=4`.
    pub fn get(&self, index: usize) -> Result<ComplexScalar> {
        match index {
            1..=4 => Ok(self.lambdas[index - 1]),
            _ => Err(Error::BadIndex(index)),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, ComplexScalar)> + '_ {
        self.lambdas.iter().enumerate().map(|(i, l)| (i + 1, *l))
    }

    /// Index (1-based) and distance of the eigenvalue closest to `lambda`.
    pub fn nearest(&self, lambda: ComplexScalar) -> (usize, f64) {
        self.iter()
            .map(|(i, l)| (i, (l - lambda).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("four eigenvalues")
    }

    pub fn branches(&self) -> [EigenBranch; 4] {
        let mut out = [EigenBranch {
            index: 1,
            family: Family::PlusFamily,
            sign: SignChoice::Upper,
        }; 4];
        for (slot, (index, lambda)) in out.iter_mut().zip(self.iter()) {
            *slot = EigenBranch::classify(index, lambda, self.omega);
        }
        out
    }
}

pub fn eigenvalues(omega: DefectParameter) -> Result<SpectralQuadruple> {
    let omega = omega.require_defect()?;
    Ok(SpectralQuadruple::from_parts(
        omega,
        r_minus(omega),
        r_plus(omega),
    ))
}

/// Which of the two transfer-matrix conditions an eigenvalue satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `Re λ > 0`: `T_λ(0)χ₊ ∥ χ₋`, decays like `z₋^x` to the right.
    PlusFamily,
    /// `Re λ < 0`: `T_λ(0)χ₋ ∥ χ₊`, decays like `z₊^x` to the right.
    MinusFamily,
}

/// Sign `s` in `λ = ±R₋ + s·i·sgn(ω)·R₊`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignChoice {
    Upper,
    Lower,
}

impl SignChoice {
    pub fn as_f64(self) -> f64 {
        match self {
            SignChoice::Upper => 1.0,
            SignChoice::Lower => -1.0,
        }
    }
}

/// Position of one eigenvalue in the `(family, sign)` bookkeeping.
///
/// | index | ω > 0           | ω < 0           |
/// |-------|-----------------|-----------------|
/// | 1     | Plus / Upper    | Plus / Lower    |
/// | 2     | Minus / Upper   | Minus / Lower   |
/// | 3     | Minus / Lower   | Minus / Upper   |
/// | 4     | Plus / Lower    | Plus / Upper    |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigenBranch {
    pub index: usize,
    pub family: Family,
    pub sign: SignChoice,
}

impl EigenBranch {
    fn classify(index: usize, lambda: ComplexScalar, omega: DefectParameter) -> Self {
        let family = if lambda.re > 0.0 {
            Family::PlusFamily
        } else {
            Family::MinusFamily
        };
        let sign = if lambda.im.signum() * omega.signum() > 0.0 {
            SignChoice::Upper
        } else {
            SignChoice::Lower
        };
        Self {
            index,
            family,
            sign,
        }
    }
}

fn check_lambda(lambda: ComplexScalar) -> Result<ComplexScalar> {
    let lambda = check_finite(lambda, "lambda")?;
    if lambda == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroLambda);
    }
    Ok(lambda)
}

/// Eigen-data of the bulk transfer matrix at one spectral parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BulkData {
    pub lambda: ComplexScalar,
    /// `√(λ² + λ⁻²)` on the principal branch; exactly zero at coalescence.
    pub root: ComplexScalar,
    pub z_plus: ComplexScalar,
    pub z_minus: ComplexScalar,
    /// `(-λ + λ⁻¹ + √(λ² + λ⁻²))/√2`, second entry of `χ₊`.
    pub kappa_plus: ComplexScalar,
    /// `(-λ + λ⁻¹ - √(λ² + λ⁻²))/√2`, second entry of `χ₋`.
    pub kappa_minus: ComplexScalar,
}

impl BulkData {
    pub fn new(lambda: ComplexScalar) -> Result<Self> {
        Self::with_tolerance(lambda, &Tolerances::default())
    }

    pub fn with_tolerance(lambda: ComplexScalar, tol: &Tolerances) -> Result<Self> {
        let lambda = check_lambda(lambda)?;
        let inv = lambda.inv();
        let radicand = lambda * lambda + inv * inv;
        let scale = lambda.norm_sqr() + inv.norm_sqr();
        let root = if radicand.norm() <= tol.coalescence * scale {
            Complex64::new(0.0, 0.0)
        } else {
            principal_sqrt(radicand)?
        };
        // the smaller root of each pair loses digits to cancellation, so it
        // is taken from the larger one via z₊z₋ = 1 and κ₊κ₋ = -1
        let one = Complex64::new(1.0, 0.0);
        let (z_plus, z_minus) = split_pair(lambda + inv, root, one);
        let (kappa_plus, kappa_minus) = split_pair(inv - lambda, root, -one);
        Ok(Self {
            lambda,
            root,
            z_plus,
            z_minus,
            kappa_plus,
            kappa_minus,
        })
    }

    pub fn chi_plus(&self) -> [ComplexScalar; 2] {
        [Complex64::new(1.0, 0.0), self.kappa_plus]
    }

    pub fn chi_minus(&self) -> [ComplexScalar; 2] {
        [Complex64::new(1.0, 0.0), self.kappa_minus]
    }

    pub fn is_coalescent(&self) -> bool {
        self.root == Complex64::new(0.0, 0.0)
    }
}

/// `((a + r)/√2, (a - r)/√2)`, with the smaller entry recomputed as `product / larger`.
fn split_pair(
    a: ComplexScalar,
    r: ComplexScalar,
    product: ComplexScalar,
) -> (ComplexScalar, ComplexScalar) {
    let plus = (a + r) / SQRT_2;
    let minus = (a - r) / SQRT_2;
    if r == Complex64::new(0.0, 0.0) {
        (plus, plus)
    } else if plus.norm_sqr() >= minus.norm_sqr() {
        (plus, product / plus)
    } else {
        (product / minus, minus)
    }
}

/// Eigenvalues `(z₊, z₋)` of `T_{λ∞}`; `z₊z₋ = 1`.
pub fn z_pm(lambda: ComplexScalar) -> Result<(ComplexScalar, ComplexScalar)> {
    let b = BulkData::new(lambda)?;
    Ok((b.z_plus, b.z_minus))
}

/// Eigenvectors `(χ₊, χ₋)` of `T_{λ∞}`, normalized to first entry `1`.
pub fn chi_pm(lambda: ComplexScalar) -> Result<([ComplexScalar; 2], [ComplexScalar; 2])> {
    let b = BulkData::new(lambda)?;
    Ok((b.chi_plus(), b.chi_minus()))
}

/// A 2×2 matrix of determinant one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferMatrix {
    pub entries: [[ComplexScalar; 2]; 2],
}

impl TransferMatrix {
    /// `T_{λ∞} = [[√2λ, 1], [1, √2/λ]]`.
    pub fn bulk(lambda: ComplexScalar) -> Result<Self> {
        let lambda = check_lambda(lambda)?;
        let one = Complex64::new(1.0, 0.0);
        Ok(Self {
            entries: [[lambda * SQRT_2, one], [one, lambda.inv() * SQRT_2]],
        })
    }

    /// `T_λ(0) = [[√2λ/ω, 1], [1, √2ω/λ]]`.
    pub fn defect(lambda: ComplexScalar, omega: DefectParameter) -> Result<Self> {
        let lambda = check_lambda(lambda)?;
        let w = omega.value();
        let one = Complex64::new(1.0, 0.0);
        Ok(Self {
            entries: [
                [lambda * (SQRT_2 / w), one],
                [one, lambda.inv() * (SQRT_2 * w)],
            ],
        })
    }

    pub fn det(&self) -> ComplexScalar {
        let m = &self.entries;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn apply(&self, v: [ComplexScalar; 2]) -> [ComplexScalar; 2] {
        let m = &self.entries;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Inverse using `det = 1`.
    pub fn inverse(&self) -> Self {
        let m = &self.entries;
        Self {
            entries: [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]],
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        let a = &self.entries;
        let b = &other.entries;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { entries: out }
    }
}

/// `T_λ(x)`: the defect form at `x = 0`, the bulk form elsewhere.
pub fn transfer_matrix(
    lambda: ComplexScalar,
    x: i64,
    omega: DefectParameter,
) -> Result<TransferMatrix> {
    if x == 0 {
        TransferMatrix::defect(lambda, omega)
    } else {
        TransferMatrix::bulk(lambda)
    }
}

/// Solves `U_ω Ψ = λΨ` site by site from the seed `(JΨ)(0) = [Ψ_L(-1), Ψ_R(0)]`.
///
/// Uses `(JΨ)(x+1) = T_λ(x)(JΨ)(x)` to the right and the inverse to the left,
/// then undoes `J`: `Ψ_L(x) = (JΨ)_L(x+1)`, `Ψ_R(x) = (JΨ)_R(x)`. The result
/// is a formal solution on the window; it need not decay.
pub fn transfer_solution(
    lambda: ComplexScalar,
    omega: DefectParameter,
    seed: [ComplexScalar; 2],
    window: usize,
) -> Result<WaveFunction> {
    let n = window as i64;
    let bulk = TransferMatrix::bulk(lambda)?;
    let bulk_inv = bulk.inverse();
    let defect = TransferMatrix::defect(lambda, omega)?;

    // j[k] holds (JΨ)(k - n) for k - n in [-n, n + 1]
    let mut j = vec![[Complex64::new(0.0, 0.0); 2]; 2 * window + 2];
    let origin = window;
    j[origin] = seed;
    for x in 0..=n {
        let t = if x == 0 { &defect } else { &bulk };
        let k = (x + n) as usize;
        j[k + 1] = t.apply(j[k]);
    }
    for x in (-n..0).rev() {
        let k = (x + n) as usize;
        j[k] = bulk_inv.apply(j[k + 1]);
    }
    WaveFunction::from_fn(window, |x| {
        let k = (x + n) as usize;
        (j[k + 1][0], j[k][1])
    })
}

/// Where a spectral parameter sits relative to the essential spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    /// The four arc endpoints `e^{i(2k+1)π/4}`.
    Sigma0,
    /// The closed unit-circle arcs with argument in `[π/4, 3π/4] ∪ [5π/4, 7π/4]`.
    Sigma,
    /// Off `Σ`, where `|z₊| > 1`.
    XiPlus,
    /// Off `Σ`, where `|z₊| < 1`.
    XiMinus,
}

impl RegionLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::Sigma0 => "Sigma0",
            RegionLabel::Sigma => "Sigma",
            RegionLabel::XiPlus => "XiPlus",
            RegionLabel::XiMinus => "XiMinus",
        }
    }

    pub fn in_essential_spectrum(self) -> bool {
        matches!(self, RegionLabel::Sigma | RegionLabel::Sigma0)
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify(lambda: ComplexScalar) -> Result<RegionLabel> {
    classify_with(lambda, &Tolerances::default())
}

/// Region of `λ`. Circle membership allows `| |λ| - 1 | ≤ tol.circle`, and the
/// arc endpoints get the same angular slack.
pub fn classify_with(lambda: ComplexScalar, tol: &Tolerances) -> Result<RegionLabel> {
    let lambda = check_lambda(lambda)?;
    let slack = tol.circle;
    if (lambda.norm() - 1.0).abs() <= slack {
        // |arg| folded into [0, π]; Σ is symmetric under conjugation.
        let theta = lambda.im.atan2(lambda.re).abs();
        let near = |a: f64| (theta - a).abs() <= slack;
        if near(FRAC_PI_4) || near(3.0 * FRAC_PI_4) {
            return Ok(RegionLabel::Sigma0);
        }
        if theta > FRAC_PI_4 && theta < 3.0 * FRAC_PI_4 {
            return Ok(RegionLabel::Sigma);
        }
    }
    let label = if lambda.re > 0.0 {
        RegionLabel::XiPlus
    } else if lambda.re < 0.0 {
        RegionLabel::XiMinus
    } else {
        let t = lambda.im;
        if (-1.0 < t && t < 0.0) || t > 1.0 {
            RegionLabel::XiPlus
        } else {
            RegionLabel::XiMinus
        }
    };
    Ok(label)
}

/// Distance from `λ` to the closed set `Σ`.
pub fn distance_to_sigma(lambda: ComplexScalar) -> f64 {
    let theta = lambda.im.atan2(lambda.re).abs();
    if (FRAC_PI_4..=3.0 * FRAC_PI_4).contains(&theta) {
        (lambda.norm() - 1.0).abs()
    } else {
        let folded = Complex64::new(lambda.re, lambda.im.abs());
        sigma0_points()
            .iter()
            .filter(|p| p.im > 0.0)
            .map(|p| (folded - p).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn sigma0_points() -> [ComplexScalar; 4] {
    [1.0, 3.0, 5.0, 7.0].map(|k| Complex64::from_polar(1.0, k * FRAC_PI_4))
}

/// `det[T_λ(0)χ_src, χ_dst]` evaluated two ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dependence {
    /// Straight 2×2 determinant.
    pub det: ComplexScalar,
    /// Closed form in terms of [`Dependence::lambda_factor`].
    pub det_closed: ComplexScalar,
    /// `Λ₁ = (ω/λ)κ₊` for the plus condition, `Λ₂ = (λ/ω)κ₊` for the minus one.
    pub lambda_factor: ComplexScalar,
}

impl Dependence {
    pub fn discrepancy(&self) -> f64 {
        (self.det - self.det_closed).norm()
    }
}

fn det2(a: [ComplexScalar; 2], b: [ComplexScalar; 2]) -> ComplexScalar {
    a[0] * b[1] - a[1] * b[0]
}

/// `T_λ(0)χ₊` against `χ₋`: `det = -2 - √2Λ₁ - √2/Λ₁`.
pub fn dependence_plus(lambda: ComplexScalar, omega: DefectParameter) -> Result<Dependence> {
    let bulk = BulkData::new(lambda)?;
    let t0 = TransferMatrix::defect(lambda, omega)?;
    let factor = bulk.kappa_plus * (omega.value() / bulk.lambda);
    if factor == Complex64::new(0.0, 0.0) {
        return Err(Error::Degenerate("plus-side transfer ratio vanished"));
    }
    Ok(Dependence {
        det: det2(t0.apply(bulk.chi_plus()), bulk.chi_minus()),
        det_closed: -2.0 - SQRT_2 * factor - SQRT_2 * factor.inv(),
        lambda_factor: factor,
    })
}

/// `T_λ(0)χ₋` against `χ₊`: `det = -2 + √2Λ₂ + √2/Λ₂`.
pub fn dependence_minus(lambda: ComplexScalar, omega: DefectParameter) -> Result<Dependence> {
    let bulk = BulkData::new(lambda)?;
    let t0 = TransferMatrix::defect(lambda, omega)?;
    let factor = bulk.kappa_plus * (bulk.lambda / omega.value());
    if factor == Complex64::new(0.0, 0.0) {
        return Err(Error::Degenerate("minus-side transfer ratio vanished"));
    }
    Ok(Dependence {
        det: det2(t0.apply(bulk.chi_minus()), bulk.chi_plus()),
        det_closed: -2.0 + SQRT_2 * factor + SQRT_2 * factor.inv(),
        lambda_factor: factor,
    })
}

pub fn dependence_det_plus(lambda: ComplexScalar, omega: DefectParameter) -> Result<ComplexScalar> {
    Ok(dependence_plus(lambda, omega)?.det)
}

pub fn dependence_det_minus(
    lambda: ComplexScalar,
    omega: DefectParameter,
) -> Result<ComplexScalar> {
    Ok(dependence_minus(lambda, omega)?.det)
}

/// `γ` with `T_λ(0)χ_src = γ·χ_dst`, plus the misfit of that relation.
///
/// `src = χ₊, dst = χ₋` for [`Family::PlusFamily`], the reverse otherwise.
pub fn collinearity_factor(
    lambda: ComplexScalar,
    omega: DefectParameter,
    family: Family,
) -> Result<(ComplexScalar, f64)> {
    let bulk = BulkData::new(lambda)?;
    let t0 = TransferMatrix::defect(lambda, omega)?;
    let (src, dst) = match family {
        Family::PlusFamily => (bulk.chi_plus(), bulk.chi_minus()),
        Family::MinusFamily => (bulk.chi_minus(), bulk.chi_plus()),
    };
    let image = t0.apply(src);
    let gamma = image[0];
    let misfit = (image[1] - gamma * dst[1]).norm();
    Ok((gamma, misfit))
}

/// Parameters of the closed-form eigenvector for one eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenvectorProfile {
    pub lambda: ComplexScalar,
    pub branch: EigenBranch,
    /// `Ψ_R(0)`: `κ₊` for the plus family, `κ₋` for the minus family.
    pub kappa: ComplexScalar,
    /// `Ψ_L(0) = γ = s·iκ₊` (plus) or `-s·iκ₋` (minus), `s = ±1` from the sign choice.
    pub defect_amplitude: ComplexScalar,
    /// Ratio per site to the right, `|·| < 1`.
    pub z_decay_right: ComplexScalar,
    /// Grows per site to the right, so `z^x` decays as `x → -∞`; `|·| > 1`.
    pub z_decay_left: ComplexScalar,
    /// Second entry of the `χ` the right tail is aligned with.
    pub kappa_right: ComplexScalar,
}

impl EigenvectorProfile {
    pub fn new(omega: DefectParameter, index: usize) -> Result<Self> {
        let quad = eigenvalues(omega)?;
        let lambda = quad.get(index)?;
        let branch = quad.branches()[index - 1];
        let bulk = BulkData::new(lambda)?;
        let s = branch.sign.as_f64();
        let profile = match branch.family {
            Family::PlusFamily => Self {
                lambda,
                branch,
                kappa: bulk.kappa_plus,
                defect_amplitude: I * s * bulk.kappa_plus,
                z_decay_right: bulk.z_minus,
                z_decay_left: bulk.z_plus,
                kappa_right: bulk.kappa_minus,
            },
            Family::MinusFamily => Self {
                lambda,
                branch,
                kappa: bulk.kappa_minus,
                defect_amplitude: -I * s * bulk.kappa_minus,
                z_decay_right: bulk.z_plus,
                z_decay_left: bulk.z_minus,
                kappa_right: bulk.kappa_plus,
            },
        };
        Ok(profile)
    }

    /// Locates `lambda` among the four eigenvalues of `omega`.
    pub fn for_lambda(
        omega: DefectParameter,
        lambda: ComplexScalar,
        tol: &Tolerances,
    ) -> Result<Self> {
        let quad = eigenvalues(omega)?;
        let (index, dist) = quad.nearest(lambda);
        if dist > tol.eigen_match * lambda.norm().max(1.0) {
            return Err(Error::NotAnEigenvalue {
                omega: omega.value(),
                lambda,
                nearest: quad.lambdas[index - 1],
            });
        }
        Self::new(omega, index)
    }

    /// Unnormalized `Ψ(x)`.
    pub fn amplitude(&self, x: i64) -> (ComplexScalar, ComplexScalar) {
        let zr = self.z_decay_right;
        let zl = self.z_decay_left;
        let gamma = self.defect_amplitude;
        match x {
            0 => (gamma, self.kappa),
            x if x > 0 => (
                gamma * zr.powi(x as i32),
                gamma * self.kappa_right * zr.powi(x as i32 - 1),
            ),
            x => (zl.powi(x as i32 + 1), self.kappa * zl.powi(x as i32)),
        }
    }

    /// `‖Ψ‖²` of the unnormalized vector on all of `ℤ`, summed in closed form.
    pub fn lattice_norm_sqr(&self) -> f64 {
        let q = self.z_decay_right.norm_sqr();
        let p = self.z_decay_left.inv().norm_sqr();
        let g = self.defect_amplitude.norm_sqr();
        let gk = (self.defect_amplitude * self.kappa_right).norm_sqr();
        let k = self.kappa.norm_sqr();
        let right = g * q / (1.0 - q) + gk / (1.0 - q);
        let left = 1.0 / (1.0 - p) + k * p / (1.0 - p);
        g + k + right + left
    }

    /// Unnormalized vector restricted to `[-N, N]`.
    pub fn wave(&self, window: usize) -> Result<WaveFunction> {
        WaveFunction::from_fn(window, |x| self.amplitude(x))
    }

    /// Per-site decay ratio of the tails, `|z_decay_right| = 1/|z_decay_left|`.
    pub fn decay_ratio(&self) -> f64 {
        self.z_decay_right.norm()
    }
}

/// Closed-form eigenvector for `lambda` on `[-N, N]`, scaled to unit norm on
/// the window with `Ψ_R(0)` real and positive.
pub fn eigenvector(
    omega: DefectParameter,
    lambda: ComplexScalar,
    window: usize,
) -> Result<WaveFunction> {
    eigenvector_with(omega, lambda, window, &Tolerances::default())
}

pub fn eigenvector_with(
    omega: DefectParameter,
    lambda: ComplexScalar,
    window: usize,
    tol: &Tolerances,
) -> Result<WaveFunction> {
    let lambda = check_lambda(lambda)?;
    let profile = EigenvectorProfile::for_lambda(omega, lambda, tol)?;
    normalized_wave(&profile, window)
}

pub fn eigenvector_by_index(
    omega: DefectParameter,
    index: usize,
    window: usize,
) -> Result<WaveFunction> {
    normalized_wave(&EigenvectorProfile::new(omega, index)?, window)
}

fn normalized_wave(profile: &EigenvectorProfile, window: usize) -> Result<WaveFunction> {
    let mut psi = profile.wave(window)?;
    let phase = profile.kappa.conj() / profile.kappa.norm();
    psi.scale(phase / psi.norm());
    Ok(psi)
}

/// `samples` evenly spaced points on each of the two arcs of `Σ`, endpoints included.
pub fn essential_spectrum_arcs(samples: usize) -> Result<Vec<ComplexScalar>> {
    if samples < 2 {
        return Err(Error::Invalid(format!(
            "need at least 2 samples per arc, got {samples}"
        )));
    }
    let step = (PI / 2.0) / (samples - 1) as f64;
    let arc =
        |start: f64| (0..samples).map(move |k| Complex64::from_polar(1.0, start + k as f64 * step));
    Ok(arc(FRAC_PI_4).chain(arc(5.0 * FRAC_PI_4)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn om(w: f64) -> DefectParameter {
        DefectParameter::new(w).unwrap()
    }

    fn c(re: f64, im: f64) -> ComplexScalar {
        Complex64::new(re, im)
    }

    #[test]
    fn defect_parameter_domain() {
        assert_eq!(DefectParameter::new(0.0), Err(Error::ZeroOmega));
        assert!(DefectParameter::new(f64::NAN).is_err());
        assert!(DefectParameter::new(1.0).is_ok());
        assert_eq!(DefectParameter::spectral(1.0), Err(Error::HomogeneousOmega));
        assert_eq!(eigenvalues(om(1.0)), Err(Error::HomogeneousOmega));
        assert_eq!(om(-2.0).strength(), 3.0);
    }

    #[test]
    fn r_values() {
        let ten = 10f64.sqrt();
        assert!((r_plus(om(-1.0)) - 1.0 / ten).abs() < 1e-15);
        assert!((r_minus(om(-1.0)) - 3.0 / ten).abs() < 1e-15);
        assert!((r_plus(om(1.0)) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((r_minus(om(1.0)) - FRAC_1_SQRT_2).abs() < 1e-15);
        // ω = 2: (±2 + √40)/10 under the outer root
        assert!((r_plus(om(2.0)) - 0.912_390_010_923_879).abs() < 1e-14);
        assert!((r_minus(om(2.0)) - 0.657_613_512_660_495_7).abs() < 1e-14);
    }

    #[test]
    fn branch_table_matches_sign_rule() {
        use Family::*;
        use SignChoice::*;
        let pos = eigenvalues(om(2.0)).unwrap().branches();
        let fam_sign: Vec<_> = pos.iter().map(|b| (b.family, b.sign)).collect();
        assert_eq!(
            fam_sign,
            vec![
                (PlusFamily, Upper),
                (MinusFamily, Upper),
                (MinusFamily, Lower),
                (PlusFamily, Lower)
            ]
        );
        let neg = eigenvalues(om(-2.0)).unwrap().branches();
        let fam_sign: Vec<_> = neg.iter().map(|b| (b.family, b.sign)).collect();
        assert_eq!(
            fam_sign,
            vec![
                (PlusFamily, Lower),
                (MinusFamily, Lower),
                (MinusFamily, Upper),
                (PlusFamily, Upper)
            ]
        );
    }

    #[test]
    fn z_pm_examples() {
        let (zp, zm) = z_pm(c(1.0, 0.0)).unwrap();
        assert!((zp - c(1.0 + SQRT_2, 0.0)).norm() < 1e-15);
        assert!((zp * zm - 1.0).norm() < 1e-15);

        let (zp, _) = z_pm(c(0.0, 1.0)).unwrap();
        assert!((zp - c(0.0, 1.0)).norm() < 1e-15);

        let e = Complex64::from_polar(1.0, FRAC_PI_4);
        let (zp, zm) = z_pm(e).unwrap();
        assert_eq!(zp, zm);
        let (cp, cm) = chi_pm(e).unwrap();
        assert_eq!(cp, cm);

        assert_eq!(z_pm(c(0.0, 0.0)), Err(Error::ZeroLambda));
    }

    #[test]
    fn chi_pm_is_eigenvector() {
        let (cp, cm) = chi_pm(c(1.0, 0.0)).unwrap();
        assert!((cp[1] - 1.0).norm() < 1e-15);
        assert_ne!(cp, cm);
        for lambda in [c(0.3, 1.7), c(-2.0, 0.4), c(0.1, -0.2)] {
            let b = BulkData::new(lambda).unwrap();
            let t = TransferMatrix::bulk(lambda).unwrap();
            for (chi, z) in [(b.chi_plus(), b.z_plus), (b.chi_minus(), b.z_minus)] {
                let image = t.apply(chi);
                assert!((image[0] - z * chi[0]).norm() < 1e-13);
                assert!((image[1] - z * chi[1]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn transfer_matrix_examples() {
        let one = c(1.0, 0.0);
        let t = transfer_matrix(one, 5, om(7.0)).unwrap();
        assert_eq!(t.entries, [[c(SQRT_2, 0.0), one], [one, c(SQRT_2, 0.0)]]);
        let t0 = transfer_matrix(one, 0, om(2.0)).unwrap();
        assert!((t0.entries[0][0] - SQRT_2 / 2.0).norm() < 1e-15);
        assert!((t0.entries[1][1] - 2.0 * SQRT_2).norm() < 1e-15);
        assert!((t0.det() - 1.0).norm() < 1e-15);
        assert_eq!(
            transfer_matrix(c(0.0, 0.0), 1, om(2.0)),
            Err(Error::ZeroLambda)
        );
        let prod = t0.compose(&t0.inverse());
        assert!((prod.entries[0][0] - 1.0).norm() < 1e-14);
        assert!(prod.entries[0][1].norm() < 1e-14);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(c(1.0, 0.0)).unwrap(), RegionLabel::XiPlus);
        assert_eq!(classify(c(-1.0, 0.0)).unwrap(), RegionLabel::XiMinus);
        assert_eq!(classify(c(0.0, 1.0)).unwrap(), RegionLabel::Sigma);
        assert_eq!(classify(c(0.0, -1.0)).unwrap(), RegionLabel::Sigma);
        for p in sigma0_points() {
            assert_eq!(classify(p).unwrap(), RegionLabel::Sigma0);
        }
        assert_eq!(classify(c(0.0, 2.0)).unwrap(), RegionLabel::XiPlus);
        assert_eq!(classify(c(0.0, -0.5)).unwrap(), RegionLabel::XiPlus);
        assert_eq!(classify(c(0.0, 0.5)).unwrap(), RegionLabel::XiMinus);
        assert_eq!(classify(c(0.0, -2.0)).unwrap(), RegionLabel::XiMinus);
        assert_eq!(classify(c(0.0, 0.0)), Err(Error::ZeroLambda));
    }

    #[test]
    fn imaginary_axis_matches_modulus_rule() {
        for k in [-3.0, -1.5, -0.7, -0.2, 0.2, 0.7, 1.5, 3.0] {
            let lambda = c(0.0, k);
            let (zp, _) = z_pm(lambda).unwrap();
            let label = classify(lambda).unwrap();
            assert_eq!(zp.norm() > 1.0, label == RegionLabel::XiPlus, "k = {k}");
        }
    }

    #[test]
    fn dependence_examples() {
        let quad = eigenvalues(om(2.0)).unwrap();
        let dep = dependence_plus(quad.lambdas[0], om(2.0)).unwrap();
        assert!(dep.det.norm() < 1e-10);
        assert!(dep.discrepancy() < 1e-13);
        let target = c(-1.0, -1.0) * FRAC_1_SQRT_2;
        assert!((dep.lambda_factor - target).norm() < 1e-13);

        let off = dependence_plus(c(1.0, 0.0), om(2.0)).unwrap();
        assert!(off.det.norm() > 0.1);
        assert!(off.discrepancy() < 1e-13);

        let dep = dependence_minus(quad.lambdas[1], om(2.0)).unwrap();
        assert!(dep.det.norm() < 1e-10);
        assert!((dep.lambda_factor - c(1.0, 1.0) * FRAC_1_SQRT_2).norm() < 1e-13);
    }

    #[test]
    fn eigenvector_rejects_non_eigenvalue() {
        let err = eigenvector(om(2.0), c(1.0, 0.0), 8).unwrap_err();
        match err {
            Error::NotAnEigenvalue { nearest, .. } => {
                let l1 = eigenvalues(om(2.0)).unwrap().lambdas[0];
                assert!(nearest == l1 || nearest == l1.conj());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(eigenvector_by_index(om(2.0), 5, 8).is_err());
        assert!(eigenvector_by_index(om(2.0), 1, 0).is_err());
    }

    #[test]
    fn eigenvector_normalization() {
        let psi = eigenvector_by_index(om(2.0), 3, 20).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-14);
        let (_, r0) = psi.get(0);
        assert!(r0.im.abs() < 1e-15 && r0.re > 0.0);
    }

    #[test]
    fn defect_site_entries_share_modulus_when_unitary() {
        let quad = eigenvalues(om(-1.0)).unwrap();
        for (_, lambda) in quad.iter() {
            let psi = eigenvector(om(-1.0), lambda, 16).unwrap();
            let (l, r) = psi.get(0);
            assert!((l.norm() - r.norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn arcs() {
        let pts = essential_spectrum_arcs(2).unwrap();
        for (p, q) in pts.iter().zip(sigma0_points()) {
            assert!((p - q).norm() < 1e-15);
        }
        assert!(essential_spectrum_arcs(1).is_err());
        for p in essential_spectrum_arcs(50).unwrap() {
            assert!((p.norm() - 1.0).abs() < 1e-15);
            assert!(classify(p).unwrap().in_essential_spectrum());
        }
    }

    #[test]
    fn distance_to_sigma_basics() {
        assert!((distance_to_sigma(c(0.0, 2.0)) - 1.0).abs() < 1e-15);
        assert!(distance_to_sigma(c(0.0, -1.0)) < 1e-15);
        let e = sigma0_points()[0];
        assert!((distance_to_sigma(c(2.0, 0.0)) - (c(2.0, 0.0) - e).norm()).abs() < 1e-15);
    }
}
