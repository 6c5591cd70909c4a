use nalgebra::linalg::SymmetricEigen;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{Basis, RingOperator, RingState};
use crate::error::{Error, Result};

/// Eigen-decomposition of a Hermitian ring operator, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    values: Vec<f64>,
    vectors: DMatrix<Complex64>,
    basis: Basis,
}

impl Eigensystem {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vectors(&self) -> &DMatrix<Complex64> {
        &self.vectors
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn state(&self, k: usize) -> RingState {
        RingState::from_parts(self.basis, self.vectors.column(k).into_owned())
    }

    pub fn states(&self) -> Vec<RingState> {
        (0..self.len()).map(|k| self.state(k)).collect()
    }

    /// Applies V g(Λ) V† to a state.
    pub fn apply_function(&self, state: &RingState, g: impl Fn(f64) -> Complex64) -> Result<RingState> {
        state.check_basis(&self.basis)?;
        let amplitudes = self.vectors.ad_mul(state.coeffs());
        let weighted = DVector::from_fn(self.len(), |k, _| g(self.values[k]) * amplitudes[k]);
        Ok(RingState::from_parts(self.basis, &self.vectors * weighted))
    }

    /// e^{−iHt}ψ.
    pub fn evolve(&self, state: &RingState, t: f64) -> Result<RingState> {
        self.apply_function(state, |e| Complex64::from_polar(1.0, -e * t))
    }

    /// The matrix V g(Λ) V†.
    pub fn matrix_function(&self, g: impl Fn(f64) -> Complex64) -> DMatrix<Complex64> {
        let mut scaled = self.vectors.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= g(self.values[k]);
        }
        scaled * self.vectors.adjoint()
    }

    /// max_k ‖M v_k − λ_k v_k‖ against the operator that was diagonalized.
    pub fn max_residual(&self, op: &RingOperator) -> f64 {
        (0..self.len())
            .map(|k| {
                let v = self.vectors.column(k);
                (op.matrix() * v - v * Complex64::new(self.values[k], 0.0)).norm()
            })
            .fold(0.0, f64::max)
    }

    /// max |V†V − I|.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.vectors.ad_mul(&self.vectors);
        let n = g.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// Hermitian eigensolve; non-Hermitian input is rejected.
pub fn diagonalize(op: &RingOperator) -> Result<Eigensystem> {
    op.check_hermitian()?;
    // symmetrize away rounding-level asymmetry before the solve
    let m = (op.matrix() + op.matrix().adjoint()).scale(0.5);
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 0).ok_or_else(|| Error::NotHermitian {
        label: format!("{} (eigensolver did not converge)", op.label()),
        defect: f64::NAN,
    })?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(Eigensystem {
        values,
        vectors,
        basis: *op.basis(),
    })
}

/// e^{−iht}ψ by spectral decomposition of h.
pub fn evolve(h: &RingOperator, state: &RingState, t: f64) -> Result<RingState> {
    state.check_basis(h.basis())?;
    diagonalize(h)?.evolve(state, t)
}

/// Matches every expected level to a distinct computed eigenvalue (nearest
/// unused) and returns the largest mismatch. Degenerate expected levels must
/// be matched by as many computed ones.
pub fn interior_spectrum_deviation(computed: &[f64], expected: &[f64]) -> f64 {
    let mut sorted = expected.to_vec();
    sorted.sort_by(f64::total_cmp);
    match match_interior(computed, &sorted) {
        Some(matched) => matched.iter().zip(&sorted).map(|(c, e)| (c - e).abs()).fold(0.0, f64::max),
        None => f64::INFINITY,
    }
}

/// Greedy nearest-unused match: for each expected value in order, the
/// closest computed value not yet taken. None if `computed` runs out.
pub fn match_interior(computed: &[f64], expected: &[f64]) -> Option<Vec<f64>> {
    let mut used = vec![false; computed.len()];
    expected
        .iter()
        .map(|e| {
            let (i, v) = computed
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .min_by(|a, b| (a.1 - e).abs().total_cmp(&(b.1 - e).abs()))?;
            used[i] = true;
            Some(*v)
        })
        .collect()
}
