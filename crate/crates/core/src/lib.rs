//! Gauge transformations of a charged particle on a ring threaded by a
//! magnetic flux, and of a classical charge orbiting in a ramped field.
//!
//! The crate is organised bottom-up:
//!
//! * [`units`] – reduced units, [`FluxRatio`] and [`GaugeKind`].
//! * [`gauges`] – vector potentials, gauge functions, gauge phases.
//! * [`analytic`] – closed-form energies, currents and eigenfunctions.
//! * [`operators`] – Hamiltonians and angular momenta as banded Hermitian
//!   matrices, eigensolves, time evolution and covariance checks.
//! * [`classical`] – the ramped-field orbit and its angular-momentum ledgers.
//! * [`scenario`] – reproducible scenario runs writing CSV/JSON artifacts,
//!   used by the `ringgauge` binary.

// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod classical;
pub mod config;
pub mod error;
pub mod gauges;
pub mod io;
pub mod operators;
pub mod scenario;
pub mod tolerances;
pub mod units;

pub use config::{validate_config, ScenarioConfig};
pub use error::{Error, Result};
pub use units::{flux_to_field, FluxRatio, GaugeKind};
