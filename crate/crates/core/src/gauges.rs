//! Vector potentials, gauge functions and pointwise gauge phases for the
//! cylindrical, Landau and singular gauges of a uniform field.
//!
//! All transformations are taken relative to the symmetric (cylindrical)
//! gauge, A′ = A + ∇α. The singular gauge function is multivalued with a
//! branch cut along φ = 0; its radial vector potential is evaluated on the
//! principal branch φ ∈ [0, 2π).

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::units::{flux_to_field, FluxRatio, GaugeKind};

/// Cylindrical components (A_ρ, A_φ) at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorPotentialSample {
    pub a_rho: f64,
    pub a_phi: f64,
}

/// Maps any angle onto [0, 2π).
pub fn principal_angle(phi: f64) -> f64 {
    let p = phi.rem_euclid(TAU);
    if p >= TAU {
        0.0
    } else {
        p
    }
}

/// Vector potential of a uniform field B in the requested gauge.
pub fn vector_potential_for_field(kind: GaugeKind, b: f64, rho: f64, phi: f64) -> VectorPotentialSample {
    match kind {
        GaugeKind::Cylindrical => VectorPotentialSample {
            a_rho: 0.0,
            a_phi: 0.5 * b * rho,
        },
        GaugeKind::Landau => {
            let two_phi = 2.0 * phi;
            VectorPotentialSample {
                a_rho: 0.5 * b * rho * two_phi.sin(),
                a_phi: 0.5 * b * rho * (1.0 + two_phi.cos()),
            }
        }
        GaugeKind::Singular => VectorPotentialSample {
            a_rho: -b * rho * principal_angle(phi),
            a_phi: 0.0,
        },
    }
}

/// Vector potential for the field B = 2f whose flux through the unit ring is f·Φ₀.
pub fn vector_potential(kind: GaugeKind, f: FluxRatio, rho: f64, phi: f64) -> Result<VectorPotentialSample> {
    if !(rho > 0.0) {
        return Err(Error::invalid(format!("rho must be positive, got {rho}")));
    }
    Ok(vector_potential_for_field(kind, flux_to_field(f), rho, phi))
}

/// Cylindrical → Landau gauge function ¼Bρ² sin 2φ for a field B.
pub fn landau_alpha(b: f64, rho: f64, phi: f64) -> f64 {
    0.25 * b * rho * rho * (2.0 * phi).sin()
}

/// Cylindrical → singular gauge function −½Bρ²φ, continued off the principal branch.
pub fn singular_alpha(b: f64, rho: f64, phi: f64) -> f64 {
    -0.5 * b * rho * rho * phi
}

type ScalarField = dyn Fn(f64, f64) -> f64 + Send + Sync;
type Winding = dyn Fn(f64) -> f64 + Send + Sync;

/// A gauge function α(ρ, φ) together with its winding behaviour.
///
/// `eval` is the analytic continuation in φ, so for a multivalued function
/// `eval(ρ, φ + 2π) − eval(ρ, φ)` equals [`GaugeFunction::winding_increment`].
#[derive(Clone)]
pub struct GaugeFunction {
    alpha: Arc<ScalarField>,
    winding: Option<Arc<Winding>>,
    label: String,
}

impl GaugeFunction {
    /// A single-valued gauge function (zero winding).
    pub fn regular(label: impl Into<String>, alpha: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        GaugeFunction {
            alpha: Arc::new(alpha),
            winding: None,
            label: label.into(),
        }
    }

    pub fn multivalued(
        label: impl Into<String>,
        alpha: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        winding: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        GaugeFunction {
            alpha: Arc::new(alpha),
            winding: Some(Arc::new(winding)),
            label: label.into(),
        }
    }

    pub fn identity() -> Self {
        Self::regular("identity", |_, _| 0.0)
    }

    pub fn eval(&self, rho: f64, phi: f64) -> f64 {
        (self.alpha)(rho, phi)
    }

    pub fn is_multivalued(&self) -> bool {
        self.winding.is_some()
    }

    /// Δα(ρ) = α(ρ, φ + 2π) − α(ρ, φ).
    pub fn winding_increment(&self, rho: f64) -> f64 {
        self.winding.as_ref().map_or(0.0, |w| w(rho))
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for GaugeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaugeFunction")
            .field("label", &self.label)
            .field("multivalued", &self.is_multivalued())
            .finish()
    }
}

/// Gauge function carrying the cylindrical gauge into `kind_to` for flux f.
pub fn gauge_function(kind_from: GaugeKind, kind_to: GaugeKind, f: FluxRatio) -> Result<GaugeFunction> {
    let b = flux_to_field(f);
    match (kind_from, kind_to) {
        (GaugeKind::Cylindrical, GaugeKind::Landau) => Ok(GaugeFunction::regular(
            format!("cylindrical->landau(f={f})"),
            move |rho, phi| landau_alpha(b, rho, phi),
        )),
        (GaugeKind::Cylindrical, GaugeKind::Singular) => Ok(GaugeFunction::multivalued(
            format!("cylindrical->singular(f={f})"),
            move |rho, phi| singular_alpha(b, rho, phi),
            move |rho| -b * std::f64::consts::PI * rho * rho,
        )),
        (from, to) => Err(Error::UnsupportedGaugePair {
            from: from.name(),
            to: to.name(),
        }),
    }
}

/// exp(iα(ρ, φ)), built from cos and sin so the modulus is one to rounding.
pub fn unitary_phase(alpha: &GaugeFunction, rho: f64, phi: f64) -> Complex64 {
    let a = alpha.eval(rho, phi);
    Complex64::new(a.cos(), a.sin())
}

/// Finite-difference step for [`gradient_check`].
pub const GRADIENT_STEP: f64 = 1e-5;

/// Max over a 50×50 (ρ, φ) grid of |A_to − A_from − ∇α|, with ∇α taken by
/// central differences. The grid stays clear of the branch cut at φ = 0.
pub fn gradient_check(alpha: &GaugeFunction, kind_from: GaugeKind, kind_to: GaugeKind, f: FluxRatio) -> f64 {
    const N: usize = 50;
    let b = flux_to_field(f);
    let h = GRADIENT_STEP;
    let (phi_lo, phi_hi) = (0.1, TAU - 0.1);
    let (rho_lo, rho_hi) = (0.5, 2.0);
    let mut worst = 0.0f64;
    for i in 0..N {
        let rho = rho_lo + (rho_hi - rho_lo) * i as f64 / (N - 1) as f64;
        for j in 0..N {
            let phi = phi_lo + (phi_hi - phi_lo) * j as f64 / (N - 1) as f64;
            let d_rho = (alpha.eval(rho + h, phi) - alpha.eval(rho - h, phi)) / (2.0 * h);
            let d_phi = (alpha.eval(rho, phi + h) - alpha.eval(rho, phi - h)) / (2.0 * h * rho);
            let from = vector_potential_for_field(kind_from, b, rho, phi);
            let to = vector_potential_for_field(kind_to, b, rho, phi);
            worst = worst
                .max((to.a_rho - from.a_rho - d_rho).abs())
                .max((to.a_phi - from.a_phi - d_phi).abs());
        }
    }
    worst
}

/// ∮ A_φ ρ dφ around the circle of radius ρ (periodic trapezoid, n nodes).
///
/// In the singular gauge this vanishes: the enclosed flux sits on the
/// branch cut, see [`branch_cut_circulation`].
pub fn circle_circulation(kind: GaugeKind, f: FluxRatio, rho: f64, n: usize) -> f64 {
    let b = flux_to_field(f);
    let dphi = TAU / n as f64;
    (0..n)
        .map(|k| vector_potential_for_field(kind, b, rho, k as f64 * dphi).a_phi * rho * dphi)
        .sum()
}

/// Circulation of the singular-gauge potential around the keyhole contour
/// that avoids the cut: out along the lower lip (φ = 0⁺), around the circle,
/// and back to the origin along the upper lip (φ = 2π⁻).
pub fn branch_cut_circulation(f: FluxRatio, rho: f64, n: usize) -> f64 {
    let b = flux_to_field(f);
    let circle = circle_circulation(GaugeKind::Singular, f, rho, n);
    // midpoint rule, exact for the linear-in-ρ radial component
    let dr = rho / n as f64;
    let radial = |phi_lip: f64| -> f64 {
        (0..n)
            .map(|k| {
                let r = (k as f64 + 0.5) * dr;
                -b * r * phi_lip * dr
            })
            .sum()
    };
    let lower_out = radial(0.0);
    let upper_in = -radial(TAU);
    lower_out + circle + upper_in
}
