//! Closed-form eigenfunctions, energies and persistent currents of the ring
//! in all three gauges. These are the reference values the matrix
//! representations in [`crate::operators`] are checked against.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gauges::principal_angle;
use crate::units::{FluxRatio, GaugeKind};

/// (2π)^(-1/2), the amplitude of a normalized ring eigenfunction.
pub fn ring_amplitude() -> f64 {
    TAU.sqrt().recip()
}

/// Stationary state labelled by its canonical angular momentum l.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticEigenstate {
    pub l: i64,
    pub f: FluxRatio,
    pub kind: GaugeKind,
}

impl AnalyticEigenstate {
    pub fn new(kind: GaugeKind, l: i64, f: impl Into<FluxRatio>) -> Self {
        AnalyticEigenstate { l, f: f.into(), kind }
    }

    /// Phase θ(φ) of the eigenfunction, ψ = (2π)^(-1/2) e^{iθ}.
    ///
    /// Cylindrical and Landau states are single-valued, so their angle is
    /// reduced to [0, 2π) first; the singular state is evaluated on the
    /// continued angle.
    pub fn phase(&self, phi: f64) -> f64 {
        let l = self.l as f64;
        let f = self.f.value();
        match self.kind {
            GaugeKind::Cylindrical => l * principal_angle(phi),
            GaugeKind::Landau => {
                let p = principal_angle(phi);
                l * p + 0.5 * f * (2.0 * p).sin()
            }
            GaugeKind::Singular => (l - f) * phi,
        }
    }

    pub fn energy(&self) -> f64 {
        energy(self.l, self.f)
    }
}

/// E_l = ½(l − f)², identical in every gauge.
pub fn energy(l: i64, f: FluxRatio) -> f64 {
    let d = l as f64 - f.value();
    0.5 * d * d
}

/// Persistent current j = (l − f)/(2π) = −∂E/∂Φ.
pub fn current(l: i64, f: FluxRatio) -> f64 {
    (l as f64 - f.value()) / TAU
}

pub fn sample_wavefunction(state: &AnalyticEigenstate, phi: f64) -> Complex64 {
    Complex64::from_polar(ring_amplitude(), state.phase(phi))
}

/// ψ(φ + 2π)/ψ(φ).
///
/// The phase advance over one turn is 2π times an integer for periodic
/// states and 2π(l − f) for the singular one; it is reduced exactly so that
/// integer flux yields exactly 1. The result does not depend on φ.
pub fn boundary_ratio(state: &AnalyticEigenstate, _phi: f64) -> Complex64 {
    match state.kind {
        GaugeKind::Cylindrical | GaugeKind::Landau => Complex64::new(1.0, 0.0),
        GaugeKind::Singular => {
            // e^{2πi(l−f)} = e^{−2πi·frac(f)}
            let twist = state.f.twist();
            if twist == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::from_polar(1.0, -TAU * twist)
            }
        }
    }
}

/// The two wave-function figures: real part of the l = 2 eigenfunction in
/// the Landau gauge (`Fig1`) and in the singular gauge (`Fig3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig1,
    Fig3,
}

impl Figure {
    pub const L: i64 = 2;
    /// Flux values drawn in each figure.
    pub const FLUXES: [f64; 2] = [-2.5, 1.0 / 3.0];
    pub const MIN_SAMPLES: usize = 64;

    pub fn gauge(self) -> GaugeKind {
        match self {
            Figure::Fig1 => GaugeKind::Landau,
            Figure::Fig3 => GaugeKind::Singular,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig3 => "fig3",
        }
    }
}

impl std::str::FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fig1" => Ok(Figure::Fig1),
            "fig3" => Ok(Figure::Fig3),
            other => Err(format!("unknown figure `{other}` (expected fig1 or fig3)")),
        }
    }
}

/// One sampled curve: n uniform points on the closed interval [0, 2π].
#[derive(Debug, Clone, PartialEq)]
pub struct FigureCurve {
    pub f: FluxRatio,
    pub points: Vec<(f64, f64)>,
}

pub fn figure_curve(fig: Figure, f: FluxRatio, n: usize) -> Result<FigureCurve> {
    if n < Figure::MIN_SAMPLES {
        return Err(Error::invalid(format!(
            "figure needs at least {} samples, got {n}",
            Figure::MIN_SAMPLES
        )));
    }
    let state = AnalyticEigenstate::new(fig.gauge(), Figure::L, f);
    let points = (0..n)
        .map(|k| {
            // last node pinned to exactly 2π
            let phi = if k + 1 == n {
                TAU
            } else {
                TAU * k as f64 / (n - 1) as f64
            };
            (phi, sample_wavefunction(&state, phi).re)
        })
        .collect();
    Ok(FigureCurve { f, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    use proptest::prelude::*;

    use crate::gauges::{gauge_function, unitary_phase};

    const AMP: f64 = 0.398_942_280_401_432_7;

    #[test]
    fn energy_examples() {
        assert_eq!(energy(0, FluxRatio::ZERO), 0.0);
        assert_eq!(energy(2, FluxRatio::new(2.0)), 0.0);
        assert!((energy(2, FluxRatio::new(1.0 / 3.0)) - 25.0 / 18.0).abs() < 1e-15);
    }

    #[test]
    fn current_examples() {
        assert_eq!(current(1, FluxRatio::new(1.0)), 0.0);
        assert!((current(2, FluxRatio::new(0.5)) - 0.238_732_414_637_843).abs() < 1e-15);
        assert!((current(0, FluxRatio::new(-2.5)) - 0.397_887_357_729_738).abs() < 1e-15);
    }

    #[test]
    fn current_is_minus_flux_derivative_of_energy() {
        let h = 1e-5;
        for (l, f) in [(2, 0.5), (0, -2.5), (1, 1.0 / 3.0), (-4, 7.25)] {
            let fd = -(energy(l, FluxRatio::new(f + h)) - energy(l, FluxRatio::new(f - h))) / (2.0 * TAU * h);
            assert!((fd - current(l, FluxRatio::new(f))).abs() < 1e-9);
        }
    }

    #[test]
    fn wavefunction_examples() {
        for (f, phi) in [(0.0, 0.0), (0.7, 1.0), (-3.0, 5.0)] {
            let psi = sample_wavefunction(&AnalyticEigenstate::new(GaugeKind::Cylindrical, 0, f), phi);
            assert!((psi - Complex64::new(AMP, 0.0)).norm() < 1e-15);
        }
        let psi = sample_wavefunction(&AnalyticEigenstate::new(GaugeKind::Landau, 2, 1.0 / 3.0), 0.0);
        assert!((psi - Complex64::new(AMP, 0.0)).norm() < 1e-16);
        let psi = sample_wavefunction(&AnalyticEigenstate::new(GaugeKind::Singular, 2, -2.5), PI);
        assert!((psi - Complex64::new(0.0, AMP)).norm() < 1e-14);
    }

    #[test]
    fn boundary_ratio_examples() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(boundary_ratio(&AnalyticEigenstate::new(GaugeKind::Landau, 2, 1.0 / 3.0), 0.7), one);
        let r = boundary_ratio(&AnalyticEigenstate::new(GaugeKind::Singular, 2, 1.0 / 3.0), 0.3);
        assert!((r - Complex64::from_polar(1.0, -TAU / 3.0)).norm() < 1e-15);
        assert_eq!(boundary_ratio(&AnalyticEigenstate::new(GaugeKind::Singular, 5, -3.0), 1.1), one);
    }

    #[test]
    fn boundary_ratio_matches_sampled_ratio() {
        for kind in GaugeKind::ALL {
            for f in [1.0 / 3.0, -2.5, 0.9, 2.0] {
                for phi in [0.0, 0.7, 3.0] {
                    let s = AnalyticEigenstate::new(kind, 2, f);
                    let sampled = sample_wavefunction(&s, phi + TAU) / sample_wavefunction(&s, phi);
                    assert!((sampled - boundary_ratio(&s, phi)).norm() < 1e-12, "{kind} f={f}");
                }
            }
        }
    }

    #[test]
    fn figure_examples() {
        let c = figure_curve(Figure::Fig1, FluxRatio::new(1.0 / 3.0), 128).unwrap();
        assert!((c.points[0].1 - AMP).abs() < 1e-16);
        assert_eq!(c.points.first().unwrap().1, c.points.last().unwrap().1);
        assert_eq!(c.points.last().unwrap().0, TAU);

        // with n = 129 the midpoint is exactly π
        let c = figure_curve(Figure::Fig3, FluxRatio::new(-2.5), 129).unwrap();
        assert_eq!(c.points[64].0, PI);
        assert!(c.points[64].1.abs() < 1e-14);

        assert!(figure_curve(Figure::Fig1, FluxRatio::ZERO, 63).is_err());
    }

    #[test]
    fn fig3_endpoints_show_the_twist() {
        let c = figure_curve(Figure::Fig3, FluxRatio::new(1.0 / 3.0), 64).unwrap();
        let (first, last) = (c.points[0].1, c.points.last().unwrap().1);
        assert!((first - AMP).abs() < 1e-16);
        // Re[e^{2πi(2 − 1/3)}]·AMP = cos(10π/3)·AMP = −AMP/2
        assert!((last + 0.5 * AMP).abs() < 1e-14);
    }

    #[test]
    fn discrete_normalization() {
        for kind in GaugeKind::ALL {
            let s = AnalyticEigenstate::new(kind, 3, 0.37);
            let n = 256;
            let sum: f64 = (0..n)
                .map(|k| sample_wavefunction(&s, TAU * k as f64 / n as f64).norm_sqr())
                .sum();
            assert!((TAU / n as f64 * sum - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn singular_ratio_is_independent_of_l() {
        let f = FluxRatio::new(0.77);
        let r0 = boundary_ratio(&AnalyticEigenstate::new(GaugeKind::Singular, 0, f), 0.0);
        for l in -5..5 {
            assert_eq!(boundary_ratio(&AnalyticEigenstate::new(GaugeKind::Singular, l, f), 1.0), r0);
        }
    }

    proptest! {
        #[test]
        fn samples_are_related_by_the_gauge_phase(l in -10i64..10, f in -4.0f64..4.0, phi in 0.0f64..TAU) {
            let fr = FluxRatio::new(f);
            let cyl = sample_wavefunction(&AnalyticEigenstate::new(GaugeKind::Cylindrical, l, f), phi);
            for kind in [GaugeKind::Landau, GaugeKind::Singular] {
                let alpha = gauge_function(GaugeKind::Cylindrical, kind, fr).unwrap();
                let direct = sample_wavefunction(&AnalyticEigenstate::new(kind, l, f), phi);
                let via_phase = unitary_phase(&alpha, 1.0, phi) * cyl;
                prop_assert!((direct - via_phase).norm() < 1e-13);
            }
        }
    }
}
