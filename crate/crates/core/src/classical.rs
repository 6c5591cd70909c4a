//! A charge on a circular orbit in a central force while a uniform field
//! B(t) ẑ ramps up. Units m = e = 1.
//!
//! One Lorentz-force trajectory is integrated from the gauge-invariant
//! fields; canonical angular momenta are evaluated afterwards per gauge.
//! [`hamiltonian_path_check`] integrates the same motion from canonical
//! variables in a given gauge as an independent formulation.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::config::RampShape;
use crate::error::{Error, Result};
use crate::gauges::vector_potential_for_field;
use crate::units::GaugeKind;

/// Largest step, as a fraction of the unperturbed orbital period.
pub const MAX_STEP_FRACTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalState {
    pub rho: f64,
    /// Unwrapped: continuous along a trajectory.
    pub phi: f64,
    pub v_rho: f64,
    pub v_phi: f64,
    pub t: f64,
}

impl ClassicalState {
    fn cartesian(&self) -> Phase {
        let (s, c) = self.phi.sin_cos();
        Phase {
            x: self.rho * c,
            y: self.rho * s,
            vx: self.v_rho * c - self.v_phi * s,
            vy: self.v_rho * s + self.v_phi * c,
        }
    }

    fn from_cartesian(p: &Phase, t: f64, phi_hint: f64) -> Self {
        let rho = p.x.hypot(p.y);
        let raw = p.y.atan2(p.x);
        let phi = raw + TAU * ((phi_hint - raw) / TAU).round();
        ClassicalState {
            rho,
            phi,
            v_rho: (p.x * p.vx + p.y * p.vy) / rho,
            v_phi: (p.x * p.vy - p.y * p.vx) / rho,
            t,
        }
    }

    pub fn speed(&self) -> f64 {
        self.v_rho.hypot(self.v_phi)
    }

    pub fn kinetic_energy(&self) -> f64 {
        0.5 * (self.v_rho * self.v_rho + self.v_phi * self.v_phi)
    }

    /// ρ v_φ.
    pub fn mechanical_lz(&self) -> f64 {
        self.rho * self.v_phi
    }

    /// Orbital moment ½ (r × v)_z.
    pub fn magnetic_moment(&self) -> f64 {
        0.5 * self.mechanical_lz()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Phase {
    x: f64,
    y: f64,
    vx: f64,
    vy: f64,
}

impl Phase {
    fn axpy(&self, h: f64, d: &Phase) -> Phase {
        Phase { x: self.x + h * d.x, y: self.y + h * d.y, vx: self.vx + h * d.vx, vy: self.vy + h * d.vy }
    }
}

fn rk4(p: &Phase, t: f64, dt: f64, rhs: impl Fn(&Phase, f64) -> Phase) -> Phase {
    let k1 = rhs(p, t);
    let k2 = rhs(&p.axpy(0.5 * dt, &k1), t + 0.5 * dt);
    let k3 = rhs(&p.axpy(0.5 * dt, &k2), t + 0.5 * dt);
    let k4 = rhs(&p.axpy(dt, &k3), t + dt);
    Phase {
        x: p.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
        y: p.y + dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
        vx: p.vx + dt / 6.0 * (k1.vx + 2.0 * k2.vx + 2.0 * k3.vx + k4.vx),
        vy: p.vy + dt / 6.0 * (k1.vy + 2.0 * k2.vy + 2.0 * k3.vy + k4.vy),
    }
}

/// B(t) = B_final · s(t / T), held at B_final for t ≥ T.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldProfile {
    pub b_final: f64,
    pub ramp_time: f64,
    pub shape: RampShape,
}

impl FieldProfile {
    pub fn ramp(b_final: f64, ramp_time: f64, shape: RampShape) -> Self {
        FieldProfile { b_final, ramp_time, shape }
    }

    /// Present with full strength from t = 0.
    pub fn constant(b: f64) -> Self {
        FieldProfile { b_final: b, ramp_time: 0.0, shape: RampShape::Smoothstep }
    }

    fn progress(&self, t: f64) -> (f64, f64) {
        if self.ramp_time <= 0.0 || t >= self.ramp_time {
            return (1.0, 0.0);
        }
        if t <= 0.0 {
            return (0.0, 0.0);
        }
        let x = t / self.ramp_time;
        match self.shape {
            RampShape::Linear => (x, 1.0 / self.ramp_time),
            RampShape::Smoothstep => (x * x * (3.0 - 2.0 * x), 6.0 * x * (1.0 - x) / self.ramp_time),
        }
    }

    pub fn b(&self, t: f64) -> f64 {
        self.b_final * self.progress(t).0
    }

    pub fn db_dt(&self, t: f64) -> f64 {
        self.b_final * self.progress(t).1
    }
}

/// Radial central force, directed inward.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum CentralForce {
    /// |F| = kρ.
    Harmonic { k: f64 },
    /// |F| = k / ρⁿ.
    PowerLaw { k: f64, n: f64 },
}

impl CentralForce {
    pub fn harmonic(k: f64) -> Self {
        CentralForce::Harmonic { k }
    }

    /// The harmonic force that keeps (ρ₀, v₀) on a circle.
    pub fn balanced(rho0: f64, v0: f64) -> Self {
        CentralForce::Harmonic { k: v0 * v0 / (rho0 * rho0) }
    }

    pub fn magnitude(&self, rho: f64) -> f64 {
        match *self {
            CentralForce::Harmonic { k } => k * rho,
            CentralForce::PowerLaw { k, n } => k / rho.powf(n),
        }
    }

    pub fn potential(&self, rho: f64) -> f64 {
        match *self {
            CentralForce::Harmonic { k } => 0.5 * k * rho * rho,
            CentralForce::PowerLaw { k, n: 1.0 } => k * rho.ln(),
            CentralForce::PowerLaw { k, n } => -k / ((n - 1.0) * rho.powf(n - 1.0)),
        }
    }

    fn strength(&self) -> f64 {
        match *self {
            CentralForce::Harmonic { k } | CentralForce::PowerLaw { k, .. } => k,
        }
    }

    fn accel(&self, x: f64, y: f64) -> (f64, f64) {
        let rho = x.hypot(y);
        let s = self.magnitude(rho) / rho;
        (-s * x, -s * y)
    }
}

/// The circular state at (ρ₀, φ = 0) moving counter-clockwise for v₀ > 0.
/// Without a force the harmonic balance k = v₀²/ρ₀² is derived.
pub fn init_orbit(rho0: f64, v0: f64, force: Option<CentralForce>) -> Result<(ClassicalState, CentralForce)> {
    if !(rho0 > 0.0 && rho0.is_finite()) {
        return Err(Error::invalid(format!("rho0 must be positive, got {rho0}")));
    }
    if !(v0.is_finite() && v0 != 0.0) {
        return Err(Error::invalid(format!("v0 must be non-zero, got {v0}")));
    }
    let force = match force {
        None => CentralForce::balanced(rho0, v0),
        Some(f) => {
            if !(f.strength() > 0.0) {
                return Err(Error::invalid("force constant must be positive"));
            }
            let centripetal = v0 * v0 / rho0;
            let defect = (f.magnitude(rho0) - centripetal).abs();
            if defect > 1e-12 * centripetal.max(1.0) {
                return Err(Error::invalid(format!(
                    "force {} at rho0 does not balance v0^2/rho0 = {centripetal}",
                    f.magnitude(rho0)
                )));
            }
            f
        }
    };
    Ok((ClassicalState { rho: rho0, phi: 0.0, v_rho: 0.0, v_phi: v0, t: 0.0 }, force))
}

/// Speed of the circular orbit of radius ρ in a static field B.
/// Counter-clockwise motion is pushed outward by the Lorentz force.
pub fn circular_orbit_speed(force: &CentralForce, b: f64, rho: f64) -> f64 {
    let g = force.magnitude(rho);
    0.5 * (-b * rho + (b * b * rho * rho + 4.0 * g * rho).sqrt())
}

/// First-order azimuthal velocity after the field reaches B: v₀ − Bρ₀/2.
pub fn diamagnetic_velocity(v0: f64, b: f64, rho0: f64) -> f64 {
    v0 - 0.5 * b * rho0
}

/// ½Bρ², the field's share of the cylindrical canonical angular momentum.
pub fn field_angular_momentum_closed_form(rho: f64, b: f64) -> f64 {
    0.5 * b * rho * rho
}

/// ρ(v_φ + A_φ) with A from the given gauge at field `b_now`.
pub fn canonical_lz(state: &ClassicalState, kind: GaugeKind, b_now: f64) -> Result<f64> {
    if kind == GaugeKind::Singular {
        return Err(Error::invalid("classical angular momentum is defined for cylindrical and landau gauges"));
    }
    let a = vector_potential_for_field(kind, b_now, state.rho, state.phi);
    Ok(state.rho * (state.v_phi + a.a_phi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LedgerEntry {
    pub b: f64,
    pub lz_cyl: f64,
    pub lz_landau: f64,
    pub kinetic: f64,
    pub potential: f64,
}

impl LedgerEntry {
    fn new(s: &ClassicalState, b: f64, force: &CentralForce) -> Self {
        LedgerEntry {
            b,
            lz_cyl: canonical_lz(s, GaugeKind::Cylindrical, b).expect("regular gauge"),
            lz_landau: canonical_lz(s, GaugeKind::Landau, b).expect("regular gauge"),
            kinetic: s.kinetic_energy(),
            potential: force.potential(s.rho),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    samples: Vec<ClassicalState>,
    ledger: Vec<LedgerEntry>,
    end: ClassicalState,
    end_ledger: LedgerEntry,
    sample_dt: f64,
    force: CentralForce,
    field: FieldProfile,
}

impl Trajectory {
    /// Uniformly spaced in t, starting at the initial state.
    pub fn samples(&self) -> &[ClassicalState] {
        &self.samples
    }

    pub fn ledger(&self) -> &[LedgerEntry] {
        &self.ledger
    }

    /// The state after the last integrator step, recorded or not.
    pub fn end(&self) -> &ClassicalState {
        &self.end
    }

    pub fn end_ledger(&self) -> &LedgerEntry {
        &self.end_ledger
    }

    pub fn sample_dt(&self) -> f64 {
        self.sample_dt
    }

    pub fn force(&self) -> &CentralForce {
        &self.force
    }

    pub fn field(&self) -> &FieldProfile {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Rows of `t, rho, phi, v_rho, v_phi, lz_cyl, lz_landau, B`.
    pub fn rows(&self) -> impl Iterator<Item = [f64; 8]> + '_ {
        self.samples
            .iter()
            .zip(&self.ledger)
            .map(|(s, l)| [s.t, s.rho, s.phi, s.v_rho, s.v_phi, l.lz_cyl, l.lz_landau, l.b])
    }

    pub const COLUMNS: [&'static str; 8] = ["t", "rho", "phi", "v_rho", "v_phi", "lz_cyl", "lz_landau", "B"];
}

fn lorentz_rhs(force: CentralForce, field: FieldProfile) -> impl Fn(&Phase, f64) -> Phase {
    move |p, t| {
        let b = field.b(t);
        let half_db = 0.5 * field.db_dt(t);
        let (fx, fy) = force.accel(p.x, p.y);
        // E = −½Ḃ(−y, x); v × B ẑ = (v_y B, −v_x B)
        Phase { x: p.vx, y: p.vy, vx: fx + half_db * p.y + p.vy * b, vy: fy - half_db * p.x - p.vx * b }
    }
}

fn check_step(state0: &ClassicalState, dt: f64, t_end: f64) -> Result<usize> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::invalid(format!("dt must be positive, got {dt}")));
    }
    let speed = state0.speed();
    if speed > 0.0 {
        let limit = MAX_STEP_FRACTION * TAU * state0.rho / speed;
        if dt > limit {
            return Err(Error::StepTooLarge { dt, limit });
        }
    }
    let span = t_end - state0.t;
    if !(span >= dt) {
        return Err(Error::invalid(format!("t_end {t_end} leaves no step after t = {}", state0.t)));
    }
    Ok((span / dt).round() as usize)
}

fn check_escape(s: &ClassicalState) -> Result<()> {
    if !(s.rho > 0.0 && s.rho.is_finite() && s.v_rho.is_finite() && s.v_phi.is_finite()) {
        return Err(Error::Escaped { rho: s.rho, t: s.t });
    }
    Ok(())
}

/// Fixed-step RK4 of the Lorentz-force motion, keeping every
/// `record_every`-th step. Step times are t₀ + k·dt exactly.
pub fn simulate(
    state0: &ClassicalState,
    force: &CentralForce,
    field: &FieldProfile,
    dt: f64,
    t_end: f64,
    record_every: usize,
) -> Result<Trajectory> {
    check_escape(state0)?;
    let steps = check_step(state0, dt, t_end)?;
    let stride = record_every.max(1);
    let rhs = lorentz_rhs(*force, *field);
    let t0 = state0.t;

    let mut samples = Vec::with_capacity(steps / stride + 1);
    let mut ledger = Vec::with_capacity(steps / stride + 1);
    samples.push(*state0);
    ledger.push(LedgerEntry::new(state0, field.b(t0), force));

    let mut p = state0.cartesian();
    let mut current = *state0;
    for k in 0..steps {
        let t = t0 + k as f64 * dt;
        p = rk4(&p, t, dt, &rhs);
        current = ClassicalState::from_cartesian(&p, t0 + (k + 1) as f64 * dt, current.phi);
        check_escape(&current)?;
        if (k + 1) % stride == 0 {
            samples.push(current);
            ledger.push(LedgerEntry::new(&current, field.b(current.t), force));
        }
    }
    Ok(Trajectory {
        samples,
        ledger,
        end_ledger: LedgerEntry::new(&current, field.b(current.t), force),
        end: current,
        sample_dt: dt * stride as f64,
        force: *force,
        field: *field,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservationReport {
    /// max |l_z(t) − l_z(0)| in the cylindrical gauge.
    pub lz_drift: f64,
    /// max |l′_z − l_z − (Φ/2π) cos 2φ| with Φ = Bπρ².
    pub landau_residual: f64,
    /// Time average of l′_z over the final revolution, minus l_z there.
    /// NaN when the trajectory is shorter than one revolution.
    pub orbit_average_offset: f64,
    /// Final cylindrical l_z, the scale for `orbit_average_offset`.
    pub lz_final: f64,
    /// max |E(t) − E(0)| of kinetic plus central potential energy.
    pub energy_drift: f64,
}

/// Index range and fractional start of the final full revolution.
fn final_revolution(samples: &[ClassicalState]) -> Option<(usize, f64)> {
    let last = samples.last()?;
    let target = last.phi - TAU * (last.phi - samples[0].phi).signum();
    let reached = |phi: f64| (last.phi - phi).abs() <= TAU;
    let start = samples.iter().position(|s| reached(s.phi))?;
    if start == 0 {
        return None;
    }
    let (a, b) = (samples[start - 1].phi, samples[start].phi);
    Some((start, (target - a) / (b - a)))
}

/// Trapezoid time average of `value` over the final revolution; the window
/// start is interpolated between the two samples that bracket it.
pub fn final_revolution_average(traj: &Trajectory, value: impl Fn(&ClassicalState, &LedgerEntry) -> f64) -> f64 {
    let s = &traj.samples;
    let Some((start, frac)) = final_revolution(s) else {
        return f64::NAN;
    };
    let v: Vec<f64> = s.iter().zip(&traj.ledger).map(|(s, l)| value(s, l)).collect();
    let t0 = s[start - 1].t + frac * (s[start].t - s[start - 1].t);
    let v0 = v[start - 1] + frac * (v[start] - v[start - 1]);
    let mut integral = 0.5 * (v0 + v[start]) * (s[start].t - t0);
    for i in start..s.len() - 1 {
        integral += 0.5 * (v[i] + v[i + 1]) * (s[i + 1].t - s[i].t);
    }
    integral / (s[s.len() - 1].t - t0)
}

pub fn landau_offset_closed_form(state: &ClassicalState, b: f64) -> f64 {
    let flux = b * PI * state.rho * state.rho;
    flux / TAU * (2.0 * state.phi).cos()
}

pub fn conservation_audit(traj: &Trajectory) -> ConservationReport {
    let l0 = traj.ledger[0].lz_cyl;
    let e0 = traj.ledger[0].kinetic + traj.ledger[0].potential;
    let mut report = ConservationReport {
        lz_drift: 0.0,
        landau_residual: 0.0,
        orbit_average_offset: f64::NAN,
        lz_final: traj.ledger[traj.ledger.len() - 1].lz_cyl,
        energy_drift: 0.0,
    };
    for (s, l) in traj.samples.iter().zip(&traj.ledger) {
        report.lz_drift = report.lz_drift.max((l.lz_cyl - l0).abs());
        let residual = l.lz_landau - l.lz_cyl - landau_offset_closed_form(s, l.b);
        report.landau_residual = report.landau_residual.max(residual.abs());
        report.energy_drift = report.energy_drift.max((l.kinetic + l.potential - e0).abs());
    }
    report.orbit_average_offset = final_revolution_average(traj, |_, l| l.lz_landau - l.lz_cyl);
    report
}

/// Least-squares fit of l′_z − l_z = a cos 2φ + b sin 2φ + c over the final
/// revolution; returns (√(a² + b²), mean of Bρ²/2 over the same samples).
pub fn landau_oscillation_amplitude(traj: &Trajectory) -> Option<(f64, f64)> {
    let (start, _) = final_revolution(&traj.samples)?;
    let mut normal = nalgebra::Matrix3::<f64>::zeros();
    let mut rhs = nalgebra::Vector3::<f64>::zeros();
    let mut expected = 0.0;
    let n = traj.samples.len() - start;
    for (s, l) in traj.samples[start..].iter().zip(&traj.ledger[start..]) {
        let row = nalgebra::Vector3::new((2.0 * s.phi).cos(), (2.0 * s.phi).sin(), 1.0);
        normal += row * row.transpose();
        rhs += row * (l.lz_landau - l.lz_cyl);
        expected += 0.5 * l.b * s.rho * s.rho;
    }
    let coef = normal.lu().solve(&rhs)?;
    Some((coef[0].hypot(coef[1]), expected / n as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathDeviation {
    pub max_position: f64,
    pub max_velocity: f64,
}

/// Canonical coordinates (x, y, p_x, p_y) in the given gauge.
/// Cylindrical: A = ½B(−y, x), scalar potential 0.
/// Landau: A′ = B(0, x), scalar potential −∂_tα = −½Ḃxy.
fn hamilton_rhs(kind: GaugeKind, force: CentralForce, field: FieldProfile) -> impl Fn(&Phase, f64) -> Phase {
    // Phase reused with (vx, vy) holding (p_x, p_y).
    move |q, t| {
        let b = field.b(t);
        let db = field.db_dt(t);
        let (fx, fy) = force.accel(q.x, q.y);
        match kind {
            GaugeKind::Landau => {
                let (vx, vy) = (q.vx, q.vy - b * q.x);
                Phase { x: vx, y: vy, vx: b * vy + 0.5 * db * q.y + fx, vy: 0.5 * db * q.x + fy }
            }
            _ => {
                let (vx, vy) = (q.vx + 0.5 * b * q.y, q.vy - 0.5 * b * q.x);
                Phase { x: vx, y: vy, vx: 0.5 * b * vy + fx, vy: -0.5 * b * vx + fy }
            }
        }
    }
}

fn canonical_potential(kind: GaugeKind, b: f64, x: f64, y: f64) -> (f64, f64) {
    match kind {
        GaugeKind::Landau => (0.0, b * x),
        _ => (-0.5 * b * y, 0.5 * b * x),
    }
}

/// Integrates Hamilton's equations in `kind` alongside the Lorentz-force
/// oracle, step for step, and returns the largest position and velocity gap.
pub fn hamiltonian_path_check(
    state0: &ClassicalState,
    force: &CentralForce,
    field: &FieldProfile,
    kind: GaugeKind,
    dt: f64,
    t_end: f64,
) -> Result<PathDeviation> {
    if kind == GaugeKind::Singular {
        return Err(Error::invalid("hamiltonian path check supports cylindrical and landau gauges"));
    }
    check_escape(state0)?;
    let steps = check_step(state0, dt, t_end)?;
    let oracle_rhs = lorentz_rhs(*force, *field);
    let canon_rhs = hamilton_rhs(kind, *force, *field);
    let t0 = state0.t;

    let mut v = state0.cartesian();
    let (ax, ay) = canonical_potential(kind, field.b(t0), v.x, v.y);
    let mut q = Phase { vx: v.vx + ax, vy: v.vy + ay, ..v };
    let mut dev = PathDeviation { max_position: 0.0, max_velocity: 0.0 };
    for k in 0..steps {
        let t = t0 + k as f64 * dt;
        v = rk4(&v, t, dt, &oracle_rhs);
        q = rk4(&q, t, dt, &canon_rhs);
        let (ax, ay) = canonical_potential(kind, field.b(t + dt), q.x, q.y);
        dev.max_position = dev.max_position.max((q.x - v.x).hypot(q.y - v.y));
        dev.max_velocity = dev.max_velocity.max((q.vx - ax - v.vx).hypot(q.vy - ay - v.vy));
        let rho = v.x.hypot(v.y);
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::Escaped { rho, t: t + dt });
        }
    }
    Ok(dev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_orbit() -> (ClassicalState, CentralForce) {
        init_orbit(1.0, 1.0, None).unwrap()
    }

    #[test]
    fn init_orbit_examples() {
        let (s, f) = unit_orbit();
        assert_eq!(f, CentralForce::Harmonic { k: 1.0 });
        assert_eq!((s.rho, s.phi, s.v_rho, s.v_phi, s.t), (1.0, 0.0, 0.0, 1.0, 0.0));
        assert_eq!(init_orbit(2.0, 1.0, None).unwrap().1, CentralForce::Harmonic { k: 0.25 });
        assert!(init_orbit(1.0, 0.0, None).is_err());
        assert!(init_orbit(-1.0, 1.0, None).is_err());
        assert!(init_orbit(1.0, 1.0, Some(CentralForce::harmonic(2.0))).is_err());
        assert!(init_orbit(2.0, 2.0, Some(CentralForce::PowerLaw { k: 8.0, n: 2.0 })).is_ok());
    }

    #[test]
    fn ramp_profiles() {
        let f = FieldProfile::ramp(2.0, 10.0, RampShape::Smoothstep);
        assert_eq!((f.b(-1.0), f.b(0.0), f.b(5.0), f.b(10.0), f.b(20.0)), (0.0, 0.0, 1.0, 2.0, 2.0));
        assert_eq!((f.db_dt(0.0), f.db_dt(10.0)), (0.0, 0.0));
        // derivative against a central difference
        for t in [1.0, 3.3, 7.9] {
            let fd = (f.b(t + 1e-6) - f.b(t - 1e-6)) / 2e-6;
            assert!((fd - f.db_dt(t)).abs() < 1e-8);
        }
        let lin = FieldProfile::ramp(2.0, 10.0, RampShape::Linear);
        assert_eq!((lin.b(2.5), lin.db_dt(2.5)), (0.5, 0.2));
        let c = FieldProfile::constant(0.3);
        assert_eq!((c.b(0.0), c.db_dt(0.0)), (0.3, 0.0));
    }

    #[test]
    fn canonical_lz_examples() {
        let s = ClassicalState { rho: 1.0, phi: 0.0, v_rho: 0.0, v_phi: 1.0, t: 0.0 };
        assert_eq!(canonical_lz(&s, GaugeKind::Cylindrical, 0.0).unwrap(), 1.0);
        assert_eq!(canonical_lz(&s, GaugeKind::Landau, 0.0).unwrap(), 1.0);
        assert!((canonical_lz(&s, GaugeKind::Cylindrical, 0.1).unwrap() - 1.05).abs() < 1e-15);
        assert!((canonical_lz(&s, GaugeKind::Landau, 0.1).unwrap() - 1.10).abs() < 1e-15);
        let s = ClassicalState { phi: PI / 4.0, ..s };
        let cyl = canonical_lz(&s, GaugeKind::Cylindrical, 0.1).unwrap();
        assert!((canonical_lz(&s, GaugeKind::Landau, 0.1).unwrap() - cyl).abs() < 1e-15);
        assert!(canonical_lz(&s, GaugeKind::Singular, 0.1).is_err());
    }

    #[test]
    fn field_angular_momentum_examples() {
        assert_eq!(field_angular_momentum_closed_form(1.0, 0.0), 0.0);
        assert!((field_angular_momentum_closed_form(1.0, 0.1) - 0.05).abs() < 1e-17);
        let s = ClassicalState { rho: 1.3, phi: 0.4, v_rho: 0.1, v_phi: 0.8, t: 0.0 };
        let total = s.mechanical_lz() + field_angular_momentum_closed_form(s.rho, 0.2);
        assert!((total - canonical_lz(&s, GaugeKind::Cylindrical, 0.2).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn unperturbed_circle() {
        let (s, f) = unit_orbit();
        let traj = simulate(&s, &f, &FieldProfile::constant(0.0), 1e-3, 10.0 * TAU, 10).unwrap();
        let max_dr = traj.samples().iter().map(|s| (s.rho - 1.0).abs()).fold(0.0, f64::max);
        assert!(max_dr < 1e-9, "{max_dr:e}");
        let audit = conservation_audit(&traj);
        assert!(audit.energy_drift < 1e-9, "{audit:?}");
        assert!(audit.lz_drift < 1e-9 && audit.landau_residual < 1e-12);
        // l′_z = l_z at B = 0, so its orbit average offset vanishes too
        assert!(audit.orbit_average_offset.abs() < 1e-12);
        assert!((traj.end().phi - traj.end().t).abs() < 1e-9);
        assert!(traj.samples().windows(2).all(|w| ((w[1].t - w[0].t) - traj.sample_dt()).abs() < 1e-12));
    }

    #[test]
    fn magnetic_force_does_no_work() {
        let (s, f) = unit_orbit();
        let traj = simulate(&s, &f, &FieldProfile::constant(0.5), 1e-3, 10.0 * TAU, 1).unwrap();
        assert!(conservation_audit(&traj).energy_drift < 1e-9);
    }

    #[test]
    fn static_field_circle() {
        let force = CentralForce::harmonic(1.0);
        let b = 0.3;
        let v = circular_orbit_speed(&force, b, 1.0);
        assert!((v * v - (1.0 - b * v)).abs() < 1e-15);
        let s = ClassicalState { rho: 1.0, phi: 0.0, v_rho: 0.0, v_phi: v, t: 0.0 };
        let field = FieldProfile::constant(b);
        let traj = simulate(&s, &force, &field, 1e-3, 5.0 * TAU, 10).unwrap();
        for s in traj.samples() {
            assert!((s.rho - 1.0).abs() < 1e-9 && (s.v_phi - v).abs() < 1e-9);
        }
        for kind in [GaugeKind::Cylindrical, GaugeKind::Landau] {
            let d = hamiltonian_path_check(&s, &force, &field, kind, 1e-3, 5.0 * TAU).unwrap();
            assert!(d.max_position < 1e-10, "{kind}: {d:?}");
        }
    }

    #[test]
    fn step_and_escape_errors() {
        let (s, f) = unit_orbit();
        let field = FieldProfile::constant(0.0);
        assert!(matches!(simulate(&s, &f, &field, 0.01, 1.0, 1), Err(Error::StepTooLarge { .. })));
        assert!(simulate(&s, &f, &field, 1e-3, 0.0, 1).is_err());
        let centre = ClassicalState { rho: 0.0, ..s };
        assert!(matches!(simulate(&centre, &f, &field, 1e-4, 3.0, 1), Err(Error::Escaped { .. })));
        let blown = ClassicalState { v_phi: f64::NAN, ..s };
        assert!(matches!(simulate(&blown, &f, &field, 1e-4, 3.0, 1), Err(Error::Escaped { .. })));
    }

    #[test]
    fn slow_ramp_conserves_canonical_momentum() {
        let (s, f) = unit_orbit();
        let field = FieldProfile::ramp(0.01, 20.0 * TAU, RampShape::Smoothstep);
        let traj = simulate(&s, &f, &field, 1e-3, 21.0 * TAU, 10).unwrap();
        let a = conservation_audit(&traj);
        assert!(a.lz_drift < 1e-8, "{a:?}");
        assert!(a.landau_residual < 1e-12, "{a:?}");
        assert!(a.orbit_average_offset.abs() < 1e-4 * a.lz_final.abs(), "{a:?}");
        let (amp, expected) = landau_oscillation_amplitude(&traj).unwrap();
        assert!((amp - expected).abs() < 1e-10, "{amp} vs {expected}");
        // moment change opposes B
        let dm = traj.end().magnetic_moment() - s.magnetic_moment();
        assert!(dm < 0.0);
    }

    #[test]
    fn lz_drift_is_fourth_order_in_dt() {
        let (s, f) = unit_orbit();
        // the window stays inside the ramp, where B(t) is smooth
        let field = FieldProfile::ramp(0.5, 4.0 * TAU, RampShape::Smoothstep);
        let drift = |dt: f64| {
            conservation_audit(&simulate(&s, &f, &field, dt, 3.0 * TAU, 1).unwrap()).lz_drift
        };
        let ratio = drift(6e-3) / drift(3e-3);
        assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn path_formulations_agree_during_a_ramp() {
        let (s, f) = unit_orbit();
        let field = FieldProfile::ramp(0.2, 5.0 * TAU, RampShape::Smoothstep);
        for kind in [GaugeKind::Cylindrical, GaugeKind::Landau] {
            let d = hamiltonian_path_check(&s, &f, &field, kind, 1e-3, 10.0 * TAU).unwrap();
            assert!(d.max_position < 1e-8 && d.max_velocity < 1e-8, "{kind}: {d:?}");
        }
        assert!(hamiltonian_path_check(&s, &f, &field, GaugeKind::Singular, 1e-3, 1.0).is_err());
    }

    #[test]
    fn a_wrong_scalar_potential_is_detected() {
        // Landau vector potential without its compensating scalar potential
        let (s, f) = unit_orbit();
        let field = FieldProfile::ramp(0.2, 2.0 * TAU, RampShape::Linear);
        let bad = move |q: &Phase, t: f64| {
            let b = field.b(t);
            let (fx, fy) = f.accel(q.x, q.y);
            let (vx, vy) = (q.vx, q.vy - b * q.x);
            Phase { x: vx, y: vy, vx: b * vy + fx, vy: fy }
        };
        let oracle = lorentz_rhs(f, field);
        let mut v = s.cartesian();
        let mut q = v;
        for k in 0..(4.0 * TAU / 1e-3) as usize {
            let t = k as f64 * 1e-3;
            v = rk4(&v, t, 1e-3, &oracle);
            q = rk4(&q, t, 1e-3, bad);
        }
        assert!((q.x - v.x).hypot(q.y - v.y) > 1e-3);
    }

    proptest! {
        #[test]
        fn polar_cartesian_round_trip(rho in 0.1f64..10.0, phi in -20.0f64..20.0, vr in -3.0f64..3.0, vp in -3.0f64..3.0) {
            let s = ClassicalState { rho, phi, v_rho: vr, v_phi: vp, t: 0.0 };
            let back = ClassicalState::from_cartesian(&s.cartesian(), 0.0, phi);
            prop_assert!((back.rho - rho).abs() < 1e-12 * rho.max(1.0));
            prop_assert!((back.phi - phi).abs() < 1e-12 * phi.abs().max(1.0));
            prop_assert!((back.v_rho - vr).abs() < 1e-12 && (back.v_phi - vp).abs() < 1e-12);
        }

        #[test]
        fn landau_identity_holds_pointwise(rho in 0.1f64..5.0, phi in -10.0f64..10.0, vp in -2.0f64..2.0, b in -1.0f64..1.0) {
            let s = ClassicalState { rho, phi, v_rho: 0.3, v_phi: vp, t: 0.0 };
            let diff = canonical_lz(&s, GaugeKind::Landau, b).unwrap() - canonical_lz(&s, GaugeKind::Cylindrical, b).unwrap();
            prop_assert!((diff - landau_offset_closed_form(&s, b)).abs() < 1e-12 * (1.0 + rho * rho));
        }
    }
}
