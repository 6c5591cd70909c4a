//! Ring operators as finite Hermitian matrices in a truncated
//! angular-momentum basis.
//!
//! Every operator of the problem is banded in this basis: the cylindrical
//! and singular Hamiltonians and all L_z-type operators are diagonal, the
//! Landau mechanical momentum Π′ = −i∂_φ − f(1 + cos 2φ) couples l to l ± 2,
//! and H′ = ½Π′Π′ has half-bandwidth 4. H′ is formed as the product of the
//! truncated Π′ with itself, which keeps it Hermitian and positive; its two
//! outermost rows and columns on each side differ from the untruncated
//! operator, so spectral comparisons use interior levels only.

mod basis;
mod dump;
mod eigenstates;
mod ledger;
mod spectral;
mod state;
mod transport;

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub use basis::{grid, Basis, Frame};
pub use dump::{OperatorDump, StateDump};
pub use eigenstates::{cylindrical_eigenstate, landau_eigenstate, random_state, singular_eigenstate};
pub use ledger::{
    covariance_ledger, current_from_state, pointwise_factor, pointwise_lz_action, CovarianceReport,
};
pub use spectral::{diagonalize, evolve, interior_spectrum_deviation, match_interior, Eigensystem};
pub use state::RingState;
pub use transport::{gauge_transport, retwist, rotate_2pi, untwist, GaugeTransport, RotationGenerator};

use crate::error::{Error, Result};
use crate::units::{FluxRatio, GaugeKind};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Dense Hermitian matrix with the basis it acts on.
#[derive(Clone, PartialEq)]
pub struct RingOperator {
    matrix: DMatrix<Complex64>,
    basis: Basis,
    label: String,
}

impl fmt::Debug for RingOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingOperator")
            .field("label", &self.label)
            .field("basis", &self.basis)
            .finish_non_exhaustive()
    }
}

impl RingOperator {
    pub fn new(basis: Basis, matrix: DMatrix<Complex64>, label: impl Into<String>) -> Result<Self> {
        if matrix.nrows() != basis.dim() || matrix.ncols() != basis.dim() {
            return Err(Error::invalid(format!(
                "{}x{} matrix for a basis of dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                basis.dim()
            )));
        }
        Ok(RingOperator {
            matrix,
            basis,
            label: label.into(),
        })
    }

    pub(crate) fn from_parts(basis: Basis, matrix: DMatrix<Complex64>, label: impl Into<String>) -> Self {
        debug_assert_eq!(matrix.nrows(), basis.dim());
        RingOperator {
            matrix,
            basis,
            label: label.into(),
        }
    }

    fn diagonal(basis: Basis, label: impl Into<String>, entry: impl Fn(usize) -> f64) -> Self {
        let mut m = DMatrix::zeros(basis.dim(), basis.dim());
        for i in 0..basis.dim() {
            m[(i, i)] = real(entry(i));
        }
        RingOperator::from_parts(basis, m, label)
    }

    pub fn identity(basis: Basis) -> Self {
        RingOperator::diagonal(basis, "identity", |_| 1.0)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Matrix element ⟨l|M|m⟩ by label.
    pub fn element(&self, l: i64, m: i64) -> Option<Complex64> {
        Some(self.matrix[(self.basis.index(l)?, self.basis.index(m)?)])
    }

    /// max |M − M†|.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.matrix.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest |i − j| over nonzero entries.
    pub fn half_bandwidth(&self) -> usize {
        let n = self.matrix.nrows();
        let mut w = 0;
        for i in 0..n {
            for j in 0..n {
                if self.matrix[(i, j)] != ZERO {
                    w = w.max(i.abs_diff(j));
                }
            }
        }
        w
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.norm()
    }

    pub fn apply(&self, state: &RingState) -> Result<RingState> {
        state.check_basis(&self.basis)?;
        Ok(RingState::from_parts(self.basis, &self.matrix * state.coeffs()))
    }

    /// Entries restricted to labels |l| ≤ half_width, as a sub-matrix.
    pub fn interior_block(&self, half_width: usize) -> DMatrix<Complex64> {
        let w = half_width.min(self.basis.l_max());
        let start = self.basis.l_max() - w;
        self.matrix.view((start, start), (2 * w + 1, 2 * w + 1)).into_owned()
    }

    fn check_same_basis(&self, other: &RingOperator) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                left: self.basis.to_string(),
                right: other.basis.to_string(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_hermitian(&self) -> Result<()> {
        let scale = self.matrix.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
        let defect = self.hermiticity_defect();
        if defect > 1e-12 * scale {
            return Err(Error::NotHermitian {
                label: self.label.clone(),
                defect,
            });
        }
        Ok(())
    }
}

fn check_gauge_basis(kind: GaugeKind, f: FluxRatio, basis: &Basis) -> Result<()> {
    let ok = match (kind, basis.frame()) {
        (GaugeKind::Cylindrical | GaugeKind::Landau, Frame::Periodic) => true,
        (GaugeKind::Singular, Frame::Twisted(g)) => g == f,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::IncompatibleBasis {
            basis: basis.to_string(),
            gauge: kind.name(),
            flux: f.value(),
        })
    }
}

/// Π′ = −i∂_φ − f(1 + cos 2φ): diagonal l − f, first off-diagonal band at
/// distance 2 equal to −f/2.
fn landau_mechanical(f: FluxRatio, basis: Basis) -> RingOperator {
    let f = f.value();
    let n = basis.dim();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = real(basis.label(i) as f64 - f);
        if i + 2 < n {
            m[(i, i + 2)] = real(-0.5 * f);
            m[(i + 2, i)] = real(-0.5 * f);
        }
    }
    RingOperator::from_parts(basis, m, "landau mechanical angular momentum")
}

/// Ring Hamiltonian ½(−i∂_φ − A_φ)² of the given gauge.
pub fn build_hamiltonian(kind: GaugeKind, f: FluxRatio, basis: Basis) -> Result<RingOperator> {
    check_gauge_basis(kind, f, &basis)?;
    let label = format!("{kind} hamiltonian");
    Ok(match kind {
        GaugeKind::Cylindrical => RingOperator::diagonal(basis, label, |i| {
            let d = basis.label(i) as f64 - f.value();
            0.5 * d * d
        }),
        GaugeKind::Landau => {
            let pi = landau_mechanical(f, basis);
            let m = (&pi.matrix * &pi.matrix).scale(0.5);
            RingOperator::from_parts(basis, m, label)
        }
        GaugeKind::Singular => RingOperator::diagonal(basis, label, |i| {
            let k = basis.wavenumber(i);
            0.5 * k * k
        }),
    })
}

/// Flavours of angular momentum on the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularMomentum {
    /// −i∂_φ, the bare derivative.
    Canonical,
    /// Λ = −i∂_φ − A_φ, gauge invariant.
    Mechanical,
    /// L″ = −i∂_φ + f on the twisted basis, with integer spectrum.
    CorrectedSingular,
}

pub fn build_angular_momentum(
    which: AngularMomentum,
    kind: GaugeKind,
    f: FluxRatio,
    basis: Basis,
) -> Result<RingOperator> {
    if which == AngularMomentum::CorrectedSingular && !basis.is_twisted() {
        return Err(Error::IncompatibleBasis {
            basis: basis.to_string(),
            gauge: kind.name(),
            flux: f.value(),
        });
    }
    check_gauge_basis(kind, f, &basis)?;
    Ok(match (which, kind) {
        (AngularMomentum::Canonical, _) => {
            RingOperator::diagonal(basis, format!("{kind} canonical angular momentum"), |i| basis.wavenumber(i))
        }
        (AngularMomentum::Mechanical, GaugeKind::Cylindrical) => {
            RingOperator::diagonal(basis, "cylindrical mechanical angular momentum", |i| {
                basis.label(i) as f64 - f.value()
            })
        }
        (AngularMomentum::Mechanical, GaugeKind::Landau) => landau_mechanical(f, basis),
        // A″_φ vanishes on the ring
        (AngularMomentum::Mechanical, GaugeKind::Singular) => {
            RingOperator::diagonal(basis, "singular mechanical angular momentum", |i| basis.wavenumber(i))
        }
        // l − τ + f = l + ⌊f⌋, built from integers so the spectrum is exact
        (AngularMomentum::CorrectedSingular, _) => {
            let offset = basis.label_offset();
            RingOperator::diagonal(basis, "corrected singular angular momentum", |i| {
                (basis.label(i) + offset) as f64
            })
        }
    })
}

/// Multiplication by cos 2φ (couples l to l ± 2 with weight ½).
pub fn cos2phi_operator(basis: Basis) -> RingOperator {
    let n = basis.dim();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n.saturating_sub(2) {
        m[(i, i + 2)] = real(0.5);
        m[(i + 2, i)] = real(0.5);
    }
    RingOperator::from_parts(basis, m, "cos 2phi")
}

/// Multiplication by a real function g(φ), by n-point quadrature of
/// ⟨l|g|m⟩. The lower triangle is mirrored so the result is exactly Hermitian.
pub fn multiplication_operator(
    basis: Basis,
    n_grid: usize,
    label: impl Into<String>,
    g: impl Fn(f64) -> f64,
) -> RingOperator {
    let samples: Vec<(f64, f64)> = grid(n_grid).map(|phi| (phi, g(phi))).collect();
    let w = std::f64::consts::TAU / n_grid as f64;
    let n = basis.dim();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let z: Complex64 = samples
                .iter()
                .map(|&(phi, v)| basis.function(i, phi).conj() * basis.function(j, phi) * v)
                .sum::<Complex64>()
                * w;
            if i == j {
                m[(i, i)] = real(z.re);
            } else {
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
    }
    RingOperator::from_parts(basis, m, label)
}

/// i(ab − ba), Hermitian when a and b are.
pub fn commutator(a: &RingOperator, b: &RingOperator) -> Result<RingOperator> {
    a.check_same_basis(b)?;
    let c = &a.matrix * &b.matrix - &b.matrix * &a.matrix;
    Ok(RingOperator::from_parts(
        a.basis,
        c.map(|z| z * Complex64::i()),
        format!("i[{}, {}]", a.label, b.label),
    ))
}

/// ⟨ψ|M|ψ⟩ for a Hermitian M; the imaginary part must vanish to rounding.
pub fn expectation(op: &RingOperator, state: &RingState) -> Result<f64> {
    let z = state.inner(&op.apply(state)?)?;
    if z.im.abs() > 1e-12 * z.re.abs().max(1.0) {
        return Err(Error::ComplexExpectation { residue: z.im });
    }
    Ok(z.re)
}
