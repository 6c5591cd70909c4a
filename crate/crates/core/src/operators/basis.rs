use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::units::FluxRatio;

/// Boundary condition of the basis functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frame {
    /// ψ(φ + 2π) = ψ(φ).
    Periodic,
    /// ψ(φ + 2π) = e^{−2πif} ψ(φ), the singular-gauge Hilbert space.
    Twisted(FluxRatio),
}

/// Truncated angular-momentum basis (2π)^(-1/2) e^{i(l−τ)φ}, l = −l_max..=l_max.
///
/// On a twisted basis τ = f mod 1 and the label l stands for the physical
/// quantum number l_z = l + ⌊f⌋.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Basis {
    l_max: usize,
    frame: Frame,
}

impl Basis {
    pub fn periodic(l_max: usize) -> Self {
        Basis {
            l_max,
            frame: Frame::Periodic,
        }
    }

    pub fn twisted(l_max: usize, f: FluxRatio) -> Self {
        Basis {
            l_max,
            frame: Frame::Twisted(f),
        }
    }

    /// The basis a gauge's operators live on.
    pub fn for_gauge(kind: crate::units::GaugeKind, f: FluxRatio, l_max: usize) -> Self {
        match kind {
            crate::units::GaugeKind::Singular => Basis::twisted(l_max, f),
            _ => Basis::periodic(l_max),
        }
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn is_twisted(&self) -> bool {
        matches!(self.frame, Frame::Twisted(_))
    }

    pub fn dim(&self) -> usize {
        2 * self.l_max + 1
    }

    /// τ ∈ [0, 1).
    pub fn twist(&self) -> f64 {
        match self.frame {
            Frame::Periodic => 0.0,
            Frame::Twisted(f) => f.twist(),
        }
    }

    /// ⌊f⌋ on a twisted basis, zero otherwise.
    pub fn label_offset(&self) -> i64 {
        match self.frame {
            Frame::Periodic => 0,
            Frame::Twisted(f) => f.floor(),
        }
    }

    pub fn label(&self, index: usize) -> i64 {
        index as i64 - self.l_max as i64
    }

    pub fn index(&self, label: i64) -> Option<usize> {
        let i = label + self.l_max as i64;
        (0..self.dim() as i64).contains(&i).then_some(i as usize)
    }

    pub fn labels(&self) -> impl Iterator<Item = i64> {
        let l = self.l_max as i64;
        -l..=l
    }

    /// l − τ, the eigenvalue of −i∂_φ on basis function `index`.
    pub fn wavenumber(&self, index: usize) -> f64 {
        self.label(index) as f64 - self.twist()
    }

    pub fn function(&self, index: usize, phi: f64) -> Complex64 {
        Complex64::from_polar(TAU.sqrt().recip(), self.wavenumber(index) * phi)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.frame {
            Frame::Periodic => write!(f, "periodic(l_max={})", self.l_max),
            Frame::Twisted(flux) => write!(f, "twisted(l_max={}, f={flux})", self.l_max),
        }
    }
}

/// Uniform quadrature nodes 2πk/n on [0, 2π).
pub fn grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| TAU * k as f64 / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_and_indices() {
        let b = Basis::periodic(2);
        assert_eq!(b.dim(), 5);
        assert_eq!(b.labels().collect::<Vec<_>>(), [-2, -1, 0, 1, 2]);
        assert_eq!(b.index(-2), Some(0));
        assert_eq!(b.index(3), None);
        assert_eq!(b.label(4), 2);
    }

    #[test]
    fn twisted_wavenumbers() {
        let b = Basis::twisted(4, FluxRatio::new(-2.5));
        assert_eq!(b.twist(), 0.5);
        assert_eq!(b.label_offset(), -3);
        assert_eq!(b.wavenumber(b.index(1).unwrap()), 0.5);
        // physical l_z = 4: label 7 is outside l_max = 4
        assert_eq!(b.index(4 - b.label_offset()), None);
    }
}
