//! The three vector potentials share the same loop integral Φ; the singular
//! one hides it in the branch cut of α = −fφ.

use ringgauge::gauges::{branch_cut_circulation, circle_circulation, gauge_function, gradient_check, vector_potential};
use ringgauge::{FluxRatio, GaugeKind};

fn main() -> ringgauge::Result<()> {
    let f = FluxRatio::new(1.0 / 3.0);
    println!("flux 2pi f = {:.12}", f.flux());
    for kind in [GaugeKind::Cylindrical, GaugeKind::Landau, GaugeKind::Singular] {
        let a = vector_potential(kind, f, 1.0, 0.7)?;
        println!("  {:<12} A(1, 0.7) = {a:?}  loop integral = {:.12}", kind.name(), circle_circulation(kind, f, 1.0, 4096));
    }
    println!("  singular branch cut carries {:.12}", branch_cut_circulation(f, 1.0, 4096));
    for to in [GaugeKind::Landau, GaugeKind::Singular] {
        let alpha = gauge_function(GaugeKind::Cylindrical, to, f)?;
        println!(
            "  cylindrical -> {:<9} multivalued: {:<5} max |A' - A - grad alpha| = {:.2e}",
            to.name(),
            alpha.is_multivalued(),
            gradient_check(&alpha, GaugeKind::Cylindrical, to, f)
        );
    }
    Ok(())
}
