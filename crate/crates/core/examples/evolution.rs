//! Time evolution commutes with the gauge map: e^{−iH′t}Uψ = Ue^{−iHt}ψ.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ringgauge::gauges::gauge_function;
use ringgauge::operators::{build_hamiltonian, evolve, gauge_transport, random_state, Basis};
use ringgauge::{FluxRatio, GaugeKind};

fn main() -> ringgauge::Result<()> {
    let f = FluxRatio::new(1.0 / 3.0);
    let basis = Basis::periodic(32);
    let u = gauge_transport(&gauge_function(GaugeKind::Cylindrical, GaugeKind::Landau, f)?, basis, 256)?;
    let h = build_hamiltonian(GaugeKind::Cylindrical, f, basis)?;
    let h_landau = build_hamiltonian(GaugeKind::Landau, f, basis)?;
    let psi = random_state(basis, 6, &mut ChaCha8Rng::seed_from_u64(7));
    for t in [0.0, 0.5, 2.0, 10.0] {
        let direct = evolve(&h_landau, &u.state(&psi)?, t)?;
        let mapped = u.state(&evolve(&h, &psi, t)?)?;
        println!("t = {t:>5.1}  ||landau path - mapped path|| = {:.2e}", direct.distance(&mapped)?);
    }
    Ok(())
}
