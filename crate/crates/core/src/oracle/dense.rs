//! `U_ω` on `[-N, N]` as an explicit matrix.
//!
//! Layout is site-major: row/column `2(x + N) + c` with `c = 0` for the L
//! component and `c = 1` for R. The matrix is assembled from the component
//! equations directly rather than by probing `walk::apply_u`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::ComplexScalar;
use crate::spectrum::DefectParameter;
use crate::walk::WaveFunction;

/// Largest dimension `build_dense` will allocate (about 270 MB of entries).
pub const DEFAULT_MAX_DIM: usize = 4098;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    window: usize,
    dim: usize,
    entries: Vec<ComplexScalar>,
}

pub fn build_dense(omega: DefectParameter, window: usize) -> Result<DenseOperator> {
    build_dense_with_budget(omega, window, DEFAULT_MAX_DIM)
}

pub fn build_dense_with_budget(
    omega: DefectParameter,
    window: usize,
    max_dim: usize,
) -> Result<DenseOperator> {
    if window < 1 {
        return Err(Error::WindowTooSmall {
            min: 1,
            got: window,
        });
    }
    let dim = 2 * (2 * window + 1);
    if dim > max_dim {
        return Err(Error::Capacity { dim, max: max_dim });
    }
    let mut op = DenseOperator {
        window,
        dim,
        entries: vec![Complex64::new(0.0, 0.0); dim * dim],
    };
    let n = window as i64;
    for x in -n..=n {
        let c = if x == 0 { omega.value() } else { 1.0 } * FRAC_1_SQRT_2;
        let (col_l, col_r) = (op.slot(x, 0), op.slot(x, 1));
        // L(x-1) <- c (L(x) - R(x))
        if x > -n {
            let row = op.slot(x - 1, 0);
            op.entries[row * dim + col_l] += c;
            op.entries[row * dim + col_r] -= c;
        }
        // R(x+1) <- c (L(x) + R(x))
        if x < n {
            let row = op.slot(x + 1, 1);
            op.entries[row * dim + col_l] += c;
            op.entries[row * dim + col_r] += c;
        }
    }
    Ok(op)
}

impl DenseOperator {
    fn slot(&self, x: i64, component: usize) -> usize {
        2 * (x + self.window as i64) as usize + component
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> ComplexScalar {
        self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[ComplexScalar] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn row_nonzeros(&self, row: usize) -> usize {
        self.row(row)
            .iter()
            .filter(|z| **z != Complex64::new(0.0, 0.0))
            .count()
    }

    pub fn matvec(&self, v: &[ComplexScalar]) -> Vec<ComplexScalar> {
        assert_eq!(
            v.len(),
            self.dim,
            "vector length must match operator dimension"
        );
        self.entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply(&self, state: &WaveFunction) -> Result<WaveFunction> {
        if state.window() != self.window {
            return Err(Error::Invalid(format!(
                "state window {} does not match operator window {}",
                state.window(),
                self.window
            )));
        }
        WaveFunction::from_flat(self.window, &self.matvec(&state.to_flat()))
    }

    /// Largest deviation of `R R*` from the identity over rows that are not cut
    /// off by the window edge (rows with two nonzeros).
    pub fn interior_row_gram_defect(&self) -> f64 {
        let rows: Vec<usize> = (0..self.dim)
            .filter(|&r| self.row_nonzeros(r) == 2)
            .collect();
        let mut worst = 0f64;
        for &a in &rows {
            for &b in &rows {
                let g: ComplexScalar = self
                    .row(a)
                    .iter()
                    .zip(self.row(b))
                    .map(|(p, q)| p * q.conj())
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{apply_u, InitialState};

    fn om(w: f64) -> DefectParameter {
        DefectParameter::new(w).unwrap()
    }

    #[test]
    fn smallest_window_matches_apply_u() {
        let op = build_dense(om(1.0), 1).unwrap();
        assert_eq!(op.dimension(), 6);
        let delta = WaveFunction::delta(1, InitialState::OriginUp).unwrap();
        let col: Vec<_> = (0..6).map(|r| op.entry(r, 2)).collect();
        assert_eq!(col, apply_u(&delta, om(1.0)).to_flat());
    }

    #[test]
    fn every_basis_vector() {
        for w in [2.0, -0.5] {
            let op = build_dense(om(w), 4).unwrap();
            for j in 0..op.dimension() {
                let mut e = vec![Complex64::new(0.0, 0.0); op.dimension()];
                e[j] = Complex64::new(1.0, 0.0);
                let psi = WaveFunction::from_flat(4, &e).unwrap();
                assert_eq!(op.apply(&psi).unwrap(), apply_u(&psi, om(w)));
            }
        }
    }

    #[test]
    fn sparsity() {
        let op = build_dense(om(3.0), 10).unwrap();
        assert!((0..op.dimension()).all(|r| op.row_nonzeros(r) <= 4));
    }

    #[test]
    fn unitary_rows_orthonormal() {
        for w in [1.0, -1.0] {
            let op = build_dense(om(w), 6).unwrap();
            assert!(op.interior_row_gram_defect() < 1e-12);
        }
        assert!(build_dense(om(2.0), 6).unwrap().interior_row_gram_defect() > 0.5);
    }

    #[test]
    fn capacity_error() {
        assert_eq!(
            build_dense_with_budget(om(2.0), 100, 64),
            Err(Error::Capacity { dim: 402, max: 64 })
        );
        assert!(build_dense(om(2.0), 0).is_err());
    }
}
