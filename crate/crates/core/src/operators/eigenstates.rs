use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;

use super::{Basis, RingState};
use crate::analytic::{sample_wavefunction, AnalyticEigenstate};
use crate::error::{Error, Result};
use crate::units::{FluxRatio, GaugeKind};

pub fn cylindrical_eigenstate(l: i64, basis: Basis) -> Result<RingState> {
    if basis.is_twisted() {
        return Err(Error::invalid("cylindrical eigenstates live on the periodic basis"));
    }
    RingState::basis_vector(basis, l)
}

/// ψ″ = e^{i(l − f)φ}/√(2π): the twisted basis vector with label l − ⌊f⌋.
pub fn singular_eigenstate(l: i64, f: FluxRatio, basis: Basis) -> Result<RingState> {
    if basis != Basis::twisted(basis.l_max(), f) {
        return Err(Error::IncompatibleBasis {
            basis: basis.to_string(),
            gauge: GaugeKind::Singular.name(),
            flux: f.value(),
        });
    }
    RingState::basis_vector(basis, l - basis.label_offset())
}

/// Landau-gauge eigenfunction e^{i(lφ + (f/2) sin 2φ)}/√(2π), projected onto
/// the periodic basis by n_grid-point quadrature. The result is not
/// renormalized, so its norm measures the projection quality.
pub fn landau_eigenstate(l: i64, f: FluxRatio, basis: Basis, n_grid: usize) -> Result<RingState> {
    if basis.is_twisted() {
        return Err(Error::invalid("landau eigenstates live on the periodic basis"));
    }
    let sidebands = (4.0 * f.value().abs()).ceil() as i64;
    if l.abs() + sidebands > basis.l_max() as i64 {
        return Err(Error::SidebandOverflow {
            l,
            flux: f.value(),
            l_max: basis.l_max(),
        });
    }
    if n_grid < 4 * basis.l_max() {
        return Err(Error::invalid(format!(
            "n_grid = {n_grid} is below 4·l_max = {}",
            4 * basis.l_max()
        )));
    }
    let analytic = AnalyticEigenstate::new(GaugeKind::Landau, l, f);
    Ok(RingState::project(basis, n_grid, |phi| sample_wavefunction(&analytic, phi)))
}

/// Normalized state with uniformly random complex coefficients on labels
/// |l| ≤ half_width and zero elsewhere.
pub fn random_state(basis: Basis, half_width: usize, rng: &mut impl Rng) -> RingState {
    let w = half_width.min(basis.l_max()) as i64;
    let coeffs = DVector::from_fn(basis.dim(), |i, _| {
        if basis.label(i).abs() <= w {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    RingState::from_parts(basis, coeffs)
        .normalized()
        .expect("random state is nonzero")
}
