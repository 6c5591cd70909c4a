//! Singular-gauge states live on a twisted basis e^{i(l−τ)φ}. A full turn
//! generated by −i∂_φ picks up e^{2πif}; the corrected L″ = −i∂_φ + f does not.

use ringgauge::analytic::{boundary_ratio, AnalyticEigenstate};
use ringgauge::operators::{build_angular_momentum, diagonalize, rotate_2pi, singular_eigenstate, AngularMomentum, Basis, RotationGenerator};
use ringgauge::{FluxRatio, GaugeKind};

fn main() -> ringgauge::Result<()> {
    for f in [1.0 / 3.0, -2.5, 0.7] {
        let f = FluxRatio::new(f);
        let basis = Basis::twisted(16, f);
        let psi = singular_eigenstate(2, f, basis)?;
        let ratio = boundary_ratio(&AnalyticEigenstate::new(GaugeKind::Singular, 2, f), 0.0);
        let bare = rotate_2pi(&psi, f, RotationGenerator::BareDerivative)?.inner(&psi)?.conj();
        let fixed = rotate_2pi(&psi, f, RotationGenerator::Corrected)?.inner(&psi)?.conj();
        let l2 = build_angular_momentum(AngularMomentum::CorrectedSingular, GaugeKind::Singular, f, basis)?;
        let spec = diagonalize(&l2)?;
        let lowest: Vec<String> = spec.values()[..5].iter().map(|v| format!("{v:+.1}")).collect();
        println!("f = {:+.4}  twist {:.4}", f.value(), f.twist());
        println!("  psi(2pi)/psi(0)      = {:+.6} {:+.6}i", ratio.re, ratio.im);
        println!("  bare turn overlap    = {:+.6} {:+.6}i", bare.re, bare.im);
        println!("  corrected turn       = {:+.6} {:+.6}i", fixed.re, fixed.im);
        println!("  L'' lowest levels    = {}", lowest.join(" "));
    }
    Ok(())
}
