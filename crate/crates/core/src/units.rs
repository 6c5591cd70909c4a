//! Reduced units and the flux parameter.
//!
//! The quantum sector works with ħ = m = e = a = 1, so the flux quantum is
//! Φ₀ = 2π, energies are measured in ħ²/(ma²) and every ring observable is a
//! function of the single ratio f = Φ/Φ₀:
//!
//! * E_l = ½(l − f)²
//! * j_l = (l − f)/(2π)
//! * B = 2f (from Φ = Bπa²)
//!
//! The classical sector keeps m = e = 1 but carries its own orbit radius,
//! speed and force constant.

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Flux quantum 2πħ/e in reduced units.
pub const FLUX_QUANTUM: f64 = TAU;

/// Dimensionless flux Φ/Φ₀ threading the ring. Any finite real is allowed,
/// including negative and non-integer values.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FluxRatio(f64);

impl FluxRatio {
    pub const ZERO: FluxRatio = FluxRatio(0.0);

    /// Panics on non-finite input; use [`FluxRatio::try_new`] for untrusted values.
    pub fn new(f: f64) -> Self {
        Self::try_new(f).expect("flux ratio must be finite")
    }

    pub fn try_new(f: f64) -> Option<Self> {
        f.is_finite().then_some(FluxRatio(f))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Φ = 2πf.
    pub fn flux(self) -> f64 {
        self.0 * FLUX_QUANTUM
    }

    /// Fractional part in [0, 1): the boundary twist of the singular gauge.
    pub fn twist(self) -> f64 {
        let t = self.0.rem_euclid(1.0);
        // rem_euclid can round up to exactly 1.0 for tiny negative inputs
        if t >= 1.0 {
            0.0
        } else {
            t
        }
    }

    /// Integer part ⌊f⌋, absorbed into index labels on the twisted basis.
    pub fn floor(self) -> i64 {
        let t = self.0.rem_euclid(1.0);
        let fl = self.0.floor() as i64;
        if t >= 1.0 {
            fl + 1
        } else {
            fl
        }
    }

    pub fn is_integer(self) -> bool {
        self.0.fract() == 0.0
    }
}

impl From<f64> for FluxRatio {
    fn from(f: f64) -> Self {
        FluxRatio::new(f)
    }
}

impl fmt::Display for FluxRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Uniform field B whose flux through the unit ring is f·Φ₀: B = 2f.
pub fn flux_to_field(f: FluxRatio) -> f64 {
    2.0 * f.value()
}

/// Inverse of [`flux_to_field`] on the unit ring: f = B a²/2.
pub fn field_to_flux(b: f64) -> FluxRatio {
    FluxRatio::new(0.5 * b)
}

/// Magnetic flux Bπρ² through a disc of radius ρ.
pub fn flux_through_disc(b: f64, rho: f64) -> f64 {
    b * PI * rho * rho
}

/// Which electromagnetic gauge the ring problem is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GaugeKind {
    /// Symmetric gauge A = ½Bρ u_φ.
    Cylindrical,
    /// A′ = Bx u_y.
    Landau,
    /// Multivalued gauge function α = −Φφ/2π, A″ on the ring vanishes.
    Singular,
}

impl GaugeKind {
    pub const ALL: [GaugeKind; 3] = [GaugeKind::Cylindrical, GaugeKind::Landau, GaugeKind::Singular];

    pub fn name(self) -> &'static str {
        match self {
            GaugeKind::Cylindrical => "cylindrical",
            GaugeKind::Landau => "landau",
            GaugeKind::Singular => "singular",
        }
    }
}

impl fmt::Display for GaugeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GaugeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cylindrical" | "symmetric" => Ok(GaugeKind::Cylindrical),
            "landau" => Ok(GaugeKind::Landau),
            "singular" => Ok(GaugeKind::Singular),
            other => Err(format!("unknown gauge `{other}`")),
        }
    }
}
