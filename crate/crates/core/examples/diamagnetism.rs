//! A charge on a circular orbit while B ramps slowly from zero. Mechanical
//! l_z is conserved in the cylindrical gauge; in the Landau gauge it
//! oscillates by (Φ/2π) cos 2φ, and the speed drops by about Bρ₀/2.

use ringgauge::classical::{
    conservation_audit, diamagnetic_velocity, init_orbit, landau_oscillation_amplitude, simulate, FieldProfile,
};
use ringgauge::config::RampShape;
use std::f64::consts::TAU;

fn main() -> ringgauge::Result<()> {
    let (rho0, v0) = (1.0, 1.0);
    let (state0, force) = init_orbit(rho0, v0, None)?;
    for b in [0.005, 0.01, 0.02] {
        let field = FieldProfile::ramp(b, 40.0 * TAU, RampShape::Smoothstep);
        let traj = simulate(&state0, &force, &field, 1e-3, 41.0 * TAU, 50)?;
        let audit = conservation_audit(&traj);
        let (amp, expected) = landau_oscillation_amplitude(&traj).unwrap_or((f64::NAN, f64::NAN));
        let end = traj.end();
        let predicted = diamagnetic_velocity(v0, b, rho0);
        println!("B = {b}");
        println!("  l_z drift {:.2e}  landau residual {:.2e}", audit.lz_drift, audit.landau_residual);
        println!("  landau oscillation amplitude {amp:.6} (expected {expected:.6})");
        println!(
            "  speed {:.8} vs v0 - B rho0/2 = {predicted:.8}, residual / B^2 = {:.4}",
            end.speed(),
            (end.speed() - predicted) / (b * b)
        );
        println!("  magnetic moment {:+.6}", end.magnetic_moment());
    }
    Ok(())
}
