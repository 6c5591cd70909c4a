//! In the Landau gauge the eigenfunctions of H′ are not eigenfunctions of
//! L_z: L_zψ′ = (l + f cos 2φ)ψ′ point by point, while ⟨L_z⟩ stays l.

use ringgauge::operators::{
    build_angular_momentum, expectation, landau_eigenstate, pointwise_factor, pointwise_lz_action, AngularMomentum,
    Basis,
};
use ringgauge::{FluxRatio, GaugeKind};

fn main() -> ringgauge::Result<()> {
    let f = FluxRatio::new(0.5);
    let basis = Basis::periodic(32);
    let lz = build_angular_momentum(AngularMomentum::Canonical, GaugeKind::Landau, f, basis)?;
    for l in [0, 2] {
        let psi = landau_eigenstate(l, f, basis, 256)?;
        println!("l = {l}: <L_z> = {:.12}", expectation(&lz, &psi)?);
        for phi in [0.0, 0.4, 1.2, 2.9] {
            let z = pointwise_factor(&lz, &psi, phi)?;
            println!(
                "  phi = {phi:.1}  (L_z psi)/psi = {:+.12} {:+.1e}i  l + f cos 2phi = {:+.12}",
                z.re,
                z.im,
                pointwise_lz_action(l, f, phi)
            );
        }
    }
    Ok(())
}
