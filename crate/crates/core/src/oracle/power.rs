//! Power iteration on the truncated operator.
//!
//! The four localized eigenvalues share one modulus, so the normalized
//! iterate never settles on a single eigenvector and the Rayleigh quotient
//! keeps rotating. The modulus does converge: after the iterate has aligned
//! with the dominant invariant subspace, `‖U²v‖^{1/2}` (with `‖v‖ = 1`) equals
//! the common modulus. [`DominantEstimate::modulus`] reports that value and
//! [`DominantEstimate::phase_settled`] says whether the Rayleigh quotient
//! stopped moving. To pin a single eigenvalue instead, iterate on the
//! shifted inverse `(U - μ)^{-1}` with `μ` near the target; that needs a
//! linear solve and is not provided here.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::dense::DenseOperator;
use crate::scalar::ComplexScalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DominantEstimate {
    /// `⟨v, Uv⟩/⟨v, v⟩` at the final iterate.
    pub rayleigh: ComplexScalar,
    /// `(‖U²v‖/‖v‖)^{1/2}` at the final iterate.
    pub modulus: f64,
    pub iterations: usize,
    /// `|modulus_k - modulus_{k-1}|` over the last iteration.
    pub modulus_change: f64,
    /// `|rayleigh_k - rayleigh_{k-1}|` over the last iteration.
    pub rayleigh_change: f64,
    pub phase_settled: bool,
}

fn norm(v: &[ComplexScalar]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [ComplexScalar]) -> Result<()> {
    let n = norm(v);
    if n == 0.0 || !n.is_finite() {
        return Err(Error::Degenerate("power iterate vanished"));
    }
    v.iter_mut().for_each(|z| *z /= n);
    Ok(())
}

fn snapshot(op: &DenseOperator, v: &[ComplexScalar]) -> (ComplexScalar, f64, Vec<ComplexScalar>) {
    let u = op.matvec(v);
    let rayleigh: ComplexScalar = v.iter().zip(&u).map(|(a, b)| a.conj() * b).sum();
    let uu = op.matvec(&u);
    (rayleigh, norm(&uu).sqrt(), u)
}

pub fn dominant_eigenvalue(
    op: &DenseOperator,
    seed: &[ComplexScalar],
    iterations: usize,
) -> Result<DominantEstimate> {
    if seed.len() != op.dimension() {
        return Err(Error::Invalid(format!(
            "seed length {} does not match dimension {}",
            seed.len(),
            op.dimension()
        )));
    }
    let mut v = seed.to_vec();
    normalize(&mut v)?;
    let (mut rayleigh, mut modulus, mut image) = snapshot(op, &v);
    let (mut d_mod, mut d_ray) = (f64::INFINITY, f64::INFINITY);
    for _ in 0..iterations {
        v = image;
        normalize(&mut v)?;
        let (r, m, u) = snapshot(op, &v);
        d_mod = (m - modulus).abs();
        d_ray = (r - rayleigh).norm();
        rayleigh = r;
        modulus = m;
        image = u;
    }
    Ok(DominantEstimate {
        rayleigh,
        modulus,
        iterations,
        modulus_change: d_mod,
        rayleigh_change: d_ray,
        phase_settled: d_ray < 1e-10,
    })
}

/// A fixed, dense seed with no special symmetry.
pub fn default_seed(dim: usize) -> Vec<ComplexScalar> {
    (0..dim)
        .map(|k| {
            let t = k as f64;
            Complex64::new((0.37 * t + 0.1).cos(), (0.61 * t + 0.3).sin())
        })
        .collect()
}
