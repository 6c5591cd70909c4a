use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{
    build_angular_momentum, diagonalize, evolve, multiplication_operator, AngularMomentum, Basis, Frame,
    RingOperator, RingState,
};
use crate::error::{Error, Result};
use crate::gauges::GaugeFunction;
use crate::units::{FluxRatio, GaugeKind};

/// The unitary of multiplication by e^{iα(1, φ)} on the periodic basis.
///
/// Built as exp(iM_α), where M_α is the quadrature matrix of multiplication
/// by α, so the truncated matrix is unitary to eigensolver precision. Its
/// interior entries agree with the projection of e^{iα} itself.
#[derive(Debug, Clone)]
pub struct GaugeTransport {
    unitary: DMatrix<Complex64>,
    basis: Basis,
    label: String,
}

pub fn gauge_transport(alpha: &GaugeFunction, basis: Basis, n_grid: usize) -> Result<GaugeTransport> {
    if alpha.is_multivalued() {
        return Err(Error::MultivaluedTransport);
    }
    if basis.is_twisted() {
        return Err(Error::invalid("gauge transport acts on the periodic basis"));
    }
    let generator = multiplication_operator(basis, n_grid, alpha.label(), |phi| alpha.eval(1.0, phi));
    let unitary = diagonalize(&generator)?.matrix_function(|a| Complex64::from_polar(1.0, a));
    Ok(GaugeTransport {
        unitary,
        basis,
        label: alpha.label().to_string(),
    })
}

impl GaugeTransport {
    pub fn unitary(&self) -> &DMatrix<Complex64> {
        &self.unitary
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// max |U†U − I|.
    pub fn unitarity_defect(&self) -> f64 {
        let g = self.unitary.ad_mul(&self.unitary);
        let id = DMatrix::<Complex64>::identity(g.nrows(), g.ncols());
        (g - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// ψ′ = Uψ.
    pub fn state(&self, state: &RingState) -> Result<RingState> {
        state.check_basis(&self.basis)?;
        Ok(RingState::from_parts(self.basis, &self.unitary * state.coeffs()))
    }

    /// ψ = U†ψ′.
    pub fn inverse_state(&self, state: &RingState) -> Result<RingState> {
        state.check_basis(&self.basis)?;
        Ok(RingState::from_parts(self.basis, self.unitary.ad_mul(state.coeffs())))
    }

    /// Q′ = UQU†.
    pub fn operator(&self, op: &RingOperator) -> Result<RingOperator> {
        if op.basis() != &self.basis {
            return Err(Error::BasisMismatch {
                left: op.basis().to_string(),
                right: self.basis.to_string(),
            });
        }
        let m = &self.unitary * op.matrix() * self.unitary.adjoint();
        Ok(RingOperator::from_parts(
            self.basis,
            m,
            format!("{} transported by {}", op.label(), self.label),
        ))
    }
}

/// Re-expresses a periodic-basis state on the twisted basis of flux f, i.e.
/// applies U_s = e^{−ifφ}. The label of each coefficient drops by ⌊f⌋.
pub fn retwist(state: &RingState, f: FluxRatio) -> Result<RingState> {
    if state.basis().is_twisted() {
        return Err(Error::invalid("retwist expects a periodic-basis state"));
    }
    let target = Basis::twisted(state.basis().l_max(), f);
    shift_labels(state, target, -f.floor())
}

/// Inverse of [`retwist`]: multiplies by e^{ifφ} and returns to the periodic basis.
pub fn untwist(state: &RingState) -> Result<RingState> {
    let offset = match state.basis().frame() {
        Frame::Twisted(f) => f.floor(),
        Frame::Periodic => return Err(Error::invalid("untwist expects a twisted-basis state")),
    };
    shift_labels(state, Basis::periodic(state.basis().l_max()), offset)
}

fn shift_labels(state: &RingState, target: Basis, shift: i64) -> Result<RingState> {
    let src = state.basis();
    let mut coeffs = DVector::zeros(target.dim());
    let mut dropped = 0.0;
    for (i, c) in state.coeffs().iter().enumerate() {
        match target.index(src.label(i) + shift) {
            Some(j) => coeffs[j] = *c,
            None => dropped += c.norm_sqr(),
        }
    }
    if dropped > 1e-24 {
        return Err(Error::invalid(format!(
            "label shift by {shift} pushes weight {dropped:e} outside l_max = {}",
            target.l_max()
        )));
    }
    Ok(RingState::from_parts(target, coeffs))
}

/// Which operator generates the 2π rotation in [`rotate_2pi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationGenerator {
    /// L″ = −i∂_φ + f.
    Corrected,
    /// −i∂_φ alone; leaves a spurious factor e^{2πif} on twisted states.
    BareDerivative,
}

/// exp(−2πi·L)ψ for the chosen generator L.
pub fn rotate_2pi(state: &RingState, f: FluxRatio, generator: RotationGenerator) -> Result<RingState> {
    let basis = *state.basis();
    let op = match basis.frame() {
        Frame::Twisted(g) if g == f => match generator {
            RotationGenerator::Corrected => {
                build_angular_momentum(AngularMomentum::CorrectedSingular, GaugeKind::Singular, f, basis)?
            }
            RotationGenerator::BareDerivative => {
                build_angular_momentum(AngularMomentum::Canonical, GaugeKind::Singular, f, basis)?
            }
        },
        Frame::Periodic if f.is_integer() => {
            let shift = match generator {
                RotationGenerator::Corrected => f.value(),
                RotationGenerator::BareDerivative => 0.0,
            };
            let n = basis.dim();
            let m = DMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    Complex64::new(basis.label(i) as f64 + shift, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            RingOperator::from_parts(basis, m, "rotation generator")
        }
        _ => {
            return Err(Error::IncompatibleBasis {
                basis: basis.to_string(),
                gauge: GaugeKind::Singular.name(),
                flux: f.value(),
            })
        }
    };
    evolve(&op, state, TAU)
}
