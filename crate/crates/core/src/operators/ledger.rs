//! Gauge-covariance bookkeeping: currents, the pointwise action of L_z on
//! Landau eigenfunctions, and the numerical check of how each class of
//! quantity transforms between the cylindrical and Landau gauges.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    build_angular_momentum, build_hamiltonian, cos2phi_operator, cylindrical_eigenstate, expectation,
    gauge_transport, random_state, AngularMomentum, Basis, RingOperator, RingState,
};
use crate::error::{Error, Result};
use crate::gauges::gauge_function;
use crate::units::{FluxRatio, GaugeKind};

/// (1/2π)⟨Λ⟩ with the mechanical angular momentum of the given gauge.
pub fn current_from_state(kind: GaugeKind, f: FluxRatio, state: &RingState) -> Result<f64> {
    let lambda = build_angular_momentum(AngularMomentum::Mechanical, kind, f, *state.basis())?;
    Ok(expectation(&lambda, state)? / std::f64::consts::TAU)
}

/// Local factor of L_z on the Landau eigenfunction: L_zψ′ = (l + f cos 2φ)ψ′.
pub fn pointwise_lz_action(l: i64, f: FluxRatio, phi: f64) -> f64 {
    l as f64 + f.value() * (2.0 * phi).cos()
}

/// (Qψ)(φ)/ψ(φ), both sides synthesised from coefficients.
pub fn pointwise_factor(op: &RingOperator, state: &RingState, phi: f64) -> Result<Complex64> {
    let q_psi = op.apply(state)?;
    let psi = state.evaluate(phi);
    if psi.norm() == 0.0 {
        return Err(Error::invalid(format!("state vanishes at phi = {phi}")));
    }
    Ok(q_psi.evaluate(phi) / psi)
}

/// Maximum deviation of each covariance rule over a batch of states.
#[derive(Debug, Clone, Serialize)]
pub struct CovarianceReport {
    pub flux: f64,
    pub states: usize,
    /// |⟨Λ′⟩_{ψ′} − ⟨Λ⟩_ψ|: the mechanical angular momentum is gauge invariant.
    pub invariant_row: f64,
    /// |⟨L_z⟩_{ψ′} − ⟨L_z + f cos 2φ⟩_ψ|: the canonical generator shifts by ∂_φα.
    pub generator_row: f64,
    /// |⟨L_z⟩_{ψ′} − l| on transported cylindrical eigenstates.
    pub generator_eigenstate_row: f64,
    /// ‖H′ψ′ − UHψ‖: the static-gauge Hamiltonian transforms as UHU†.
    pub hamiltonian_row: f64,
    /// max entry of UHU† − H′ over the interior block |l|, |m| ≤ l_max/2.
    pub hamiltonian_matrix_interior: f64,
    pub unitarity_defect: f64,
}

impl CovarianceReport {
    pub fn max_row(&self) -> f64 {
        self.invariant_row
            .max(self.generator_row)
            .max(self.generator_eigenstate_row)
            .max(self.hamiltonian_row)
    }
}

/// Checks the cylindrical → Landau covariance rules on `n_states` random
/// normalized states supported on |l| ≤ l_max/4, seeded deterministically.
pub fn covariance_ledger(
    f: FluxRatio,
    basis: Basis,
    n_grid: usize,
    n_states: usize,
    seed: u64,
) -> Result<CovarianceReport> {
    if basis.is_twisted() {
        return Err(Error::invalid("covariance ledger runs on the periodic basis"));
    }
    let alpha = gauge_function(GaugeKind::Cylindrical, GaugeKind::Landau, f)?;
    let u = gauge_transport(&alpha, basis, n_grid)?;

    let h = build_hamiltonian(GaugeKind::Cylindrical, f, basis)?;
    let h_landau = build_hamiltonian(GaugeKind::Landau, f, basis)?;
    let lambda = build_angular_momentum(AngularMomentum::Mechanical, GaugeKind::Cylindrical, f, basis)?;
    let lambda_landau = build_angular_momentum(AngularMomentum::Mechanical, GaugeKind::Landau, f, basis)?;
    let lz = build_angular_momentum(AngularMomentum::Canonical, GaugeKind::Cylindrical, f, basis)?;
    let cos2 = cos2phi_operator(basis);

    let support = basis.l_max() / 4;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CovarianceReport {
        flux: f.value(),
        states: n_states,
        invariant_row: 0.0,
        generator_row: 0.0,
        generator_eigenstate_row: 0.0,
        hamiltonian_row: 0.0,
        hamiltonian_matrix_interior: 0.0,
        unitarity_defect: u.unitarity_defect(),
    };

    for _ in 0..n_states {
        let psi = random_state(basis, support, &mut rng);
        let psi_l = u.state(&psi)?;

        let d = expectation(&lambda_landau, &psi_l)? - expectation(&lambda, &psi)?;
        report.invariant_row = report.invariant_row.max(d.abs());

        let shifted = expectation(&lz, &psi)? + f.value() * expectation(&cos2, &psi)?;
        let d = expectation(&lz, &psi_l)? - shifted;
        report.generator_row = report.generator_row.max(d.abs());

        let lhs = h_landau.apply(&psi_l)?;
        let rhs = u.state(&h.apply(&psi)?)?;
        report.hamiltonian_row = report.hamiltonian_row.max(lhs.distance(&rhs)?);
    }

    for l in -(support as i64)..=support as i64 {
        let psi_l = u.state(&cylindrical_eigenstate(l, basis)?)?;
        let d = expectation(&lz, &psi_l)? - l as f64;
        report.generator_eigenstate_row = report.generator_eigenstate_row.max(d.abs());
    }

    let transported = u.operator(&h)?;
    let half = basis.l_max() / 2;
    let diff = transported.interior_block(half) - h_landau.interior_block(half);
    report.hamiltonian_matrix_interior = diff.iter().map(|z| z.norm()).fold(0.0, f64::max);

    Ok(report)
}
