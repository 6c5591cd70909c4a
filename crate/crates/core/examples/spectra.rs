//! Hamiltonian spectra in the three gauges against ½(l − f)².

use ringgauge::analytic::energy;
use ringgauge::scenario::{default_interior, hamiltonian_spectrum};
use ringgauge::{FluxRatio, GaugeKind};

fn main() -> ringgauge::Result<()> {
    let l_max = 32;
    for f in [0.0, 1.0 / 3.0, -2.5] {
        let f = FluxRatio::new(f);
        let keep = default_interior(f, l_max);
        let mut exact: Vec<f64> = (-64..=64).map(|l| energy(l, f)).collect();
        exact.sort_by(f64::total_cmp);
        exact.truncate(keep);
        println!("f = {:+.4}, lowest {} levels", f.value(), exact.len());
        for kind in [GaugeKind::Cylindrical, GaugeKind::Landau, GaugeKind::Singular] {
            let levels = hamiltonian_spectrum(kind, f, l_max)?;
            let worst = levels.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            println!("  {:<12} E0 = {:.12}  max |E - exact| = {worst:.2e}", kind.name(), levels[0]);
        }
    }
    Ok(())
}
