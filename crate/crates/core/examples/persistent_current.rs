//! Persistent current j = −∂E/∂Φ against (l − f)/2π, measured in two gauges.

use ringgauge::analytic::{current, energy};
use ringgauge::operators::{current_from_state, cylindrical_eigenstate, landau_eigenstate, Basis};
use ringgauge::{FluxRatio, GaugeKind};
use std::f64::consts::TAU;

fn main() -> ringgauge::Result<()> {
    let basis = Basis::periodic(32);
    let h = 1e-5;
    println!("    f      l   closed form      cylindrical      landau           -dE/dPhi");
    for f in [-0.75, 0.0, 1.0 / 3.0, 1.2] {
        let ff = FluxRatio::new(f);
        for l in [-1, 0, 2] {
            let cyl = current_from_state(GaugeKind::Cylindrical, ff, &cylindrical_eigenstate(l, basis)?)?;
            let lan = current_from_state(GaugeKind::Landau, ff, &landau_eigenstate(l, ff, basis, 256)?)?;
            let fd = -(energy(l, FluxRatio::new(f + h)) - energy(l, FluxRatio::new(f - h))) / (2.0 * h * TAU);
            println!("{f:+7.3} {l:+3}   {:+.12}  {cyl:+.12}  {lan:+.12}  {fd:+.12}", current(l, ff));
        }
    }
    Ok(())
}
