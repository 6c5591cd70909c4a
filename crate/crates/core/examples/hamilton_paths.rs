//! Hamilton's equations in the cylindrical and Landau gauges trace the same
//! path as the Lorentz force, once the Landau gauge carries its scalar
//! potential −∂_tα.

use ringgauge::classical::{hamiltonian_path_check, init_orbit, FieldProfile};
use ringgauge::config::RampShape;
use ringgauge::GaugeKind;
use std::f64::consts::TAU;

fn main() -> ringgauge::Result<()> {
    let (state0, force) = init_orbit(1.0, 1.0, None)?;
    for (label, field) in [
        ("static B = 0.3", FieldProfile::constant(0.3)),
        ("ramp to 1.0", FieldProfile::ramp(1.0, 3.0 * TAU, RampShape::Smoothstep)),
    ] {
        for kind in [GaugeKind::Cylindrical, GaugeKind::Landau] {
            let d = hamiltonian_path_check(&state0, &force, &field, kind, 1e-3, 5.0 * TAU)?;
            println!(
                "{label:<15} {:<12} max position gap {:.2e}  velocity gap {:.2e}",
                kind.name(),
                d.max_position,
                d.max_velocity
            );
        }
    }
    Ok(())
}
