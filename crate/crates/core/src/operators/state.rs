use nalgebra::DVector;
use num_complex::Complex64;

use super::basis::{grid, Basis};
use crate::error::{Error, Result};

/// Expansion coefficients of a ring wave function on a [`Basis`].
#[derive(Debug, Clone, PartialEq)]
pub struct RingState {
    coeffs: DVector<Complex64>,
    basis: Basis,
}

impl RingState {
    pub fn new(basis: Basis, coeffs: DVector<Complex64>) -> Result<Self> {
        if coeffs.len() != basis.dim() {
            return Err(Error::invalid(format!(
                "{} coefficients for a basis of dimension {}",
                coeffs.len(),
                basis.dim()
            )));
        }
        Ok(RingState { coeffs, basis })
    }

    pub(crate) fn from_parts(basis: Basis, coeffs: DVector<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), basis.dim());
        RingState { coeffs, basis }
    }

    /// Unit vector on label `l`.
    pub fn basis_vector(basis: Basis, l: i64) -> Result<Self> {
        let i = basis
            .index(l)
            .ok_or_else(|| Error::invalid(format!("label {l} outside {basis}")))?;
        let mut c = DVector::zeros(basis.dim());
        c[i] = Complex64::new(1.0, 0.0);
        Ok(RingState::from_parts(basis, c))
    }

    /// Fourier projection of a sampled wave function using the n-point
    /// periodic trapezoid rule. On a twisted basis `psi` must satisfy the
    /// twisted boundary condition.
    pub fn project(basis: Basis, n_grid: usize, psi: impl Fn(f64) -> Complex64) -> Self {
        let samples: Vec<(f64, Complex64)> = grid(n_grid).map(|phi| (phi, psi(phi))).collect();
        let w = std::f64::consts::TAU / n_grid as f64;
        let coeffs = DVector::from_fn(basis.dim(), |i, _| {
            samples
                .iter()
                .map(|&(phi, v)| basis.function(i, phi).conj() * v)
                .sum::<Complex64>()
                * w
        });
        RingState::from_parts(basis, coeffs)
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn coeffs(&self) -> &DVector<Complex64> {
        &self.coeffs
    }

    pub fn coeff(&self, l: i64) -> Option<Complex64> {
        self.basis.index(l).map(|i| self.coeffs[i])
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if !(n > 0.0) {
            return Err(Error::invalid("cannot normalize a zero state"));
        }
        Ok(RingState::from_parts(self.basis, self.coeffs.unscale(n)))
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        RingState::from_parts(self.basis, self.coeffs.map(|c| c * z))
    }

    pub(crate) fn check_basis(&self, other: &Basis) -> Result<()> {
        if &self.basis != other {
            return Err(Error::BasisMismatch {
                left: self.basis.to_string(),
                right: other.to_string(),
            });
        }
        Ok(())
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &RingState) -> Result<Complex64> {
        self.check_basis(&other.basis)?;
        Ok(self.coeffs.dotc(&other.coeffs))
    }

    /// ‖self − other‖.
    pub fn distance(&self, other: &RingState) -> Result<f64> {
        self.check_basis(&other.basis)?;
        Ok((&self.coeffs - &other.coeffs).norm())
    }

    /// ψ(φ) synthesised from the coefficients.
    pub fn evaluate(&self, phi: f64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * self.basis.function(i, phi))
            .sum()
    }
}
