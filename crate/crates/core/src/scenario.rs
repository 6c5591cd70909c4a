//! Reproducible scenario runs: each command computes a set of checks,
//! writes its data tables and a JSON report into an output directory, and
//! maps the outcome onto an exit code (0 pass, 1 check failure, 2 usage).

use std::f64::consts::TAU;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::analytic::{self, figure_curve, AnalyticEigenstate, Figure};
use crate::classical::{
    conservation_audit, diamagnetic_velocity, hamiltonian_path_check, init_orbit, landau_oscillation_amplitude,
    simulate, CentralForce, FieldProfile, Trajectory,
};
use crate::config::{validate_config, ClassicalConfig, ScenarioConfig};
use crate::error::{Error, Result};
use crate::gauges::gauge_function;
use crate::io::{ensure_dir, write_json, Cell, Table};
use crate::operators::{
    build_angular_momentum, build_hamiltonian, commutator, covariance_ledger, current_from_state,
    cylindrical_eigenstate, diagonalize, expectation, gauge_transport, grid, landau_eigenstate, match_interior,
    pointwise_factor, pointwise_lz_action, random_state, retwist, rotate_2pi, singular_eigenstate, AngularMomentum,
    Basis, RingState, RotationGenerator,
};
use crate::units::{FluxRatio, GaugeKind};

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_FIGURE_SAMPLES: usize = 257;
/// Central-difference step in f for the current check.
pub const CURRENT_FD_STEP: f64 = 1e-5;
/// Path comparison window, in unperturbed orbital periods.
pub const PATH_CHECK_PERIODS: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// |measured| ≤ tolerance.
    AbsAtMost,
    /// |measured − expected| ≤ tolerance.
    Near,
    /// measured > tolerance.
    Exceeds,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    pub tolerance: f64,
    pub relation: Relation,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            expected: None,
            tolerance,
            relation: Relation::AbsAtMost,
            pass: measured.abs() <= tolerance,
        }
    }

    pub fn near(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            expected: Some(expected),
            tolerance,
            relation: Relation::Near,
            pass: (measured - expected).abs() <= tolerance,
        }
    }

    pub fn exceeds(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            expected: None,
            tolerance: threshold,
            relation: Relation::Exceeds,
            pass: measured > threshold,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        match (self.relation, self.expected) {
            (Relation::Near, Some(e)) => write!(
                f,
                "{verdict} {}: {:.6e} vs {:.6e} (tol {:.1e})",
                self.name, self.measured, e, self.tolerance
            ),
            (Relation::Exceeds, _) => {
                write!(f, "{verdict} {}: {:.6e} > {:.1e}", self.name, self.measured, self.tolerance)
            }
            _ => write!(f, "{verdict} {}: {:.6e} (tol {:.1e})", self.name, self.measured, self.tolerance),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub parameters: Value,
    pub checks: Vec<Check>,
    /// File names relative to the output directory.
    pub outputs: Vec<String>,
    pub passed: bool,
}

impl ScenarioReport {
    fn new(scenario: &str, parameters: Value) -> Self {
        ScenarioReport { scenario: scenario.into(), parameters, checks: Vec::new(), outputs: Vec::new(), passed: true }
    }

    fn push(&mut self, check: Check) {
        self.passed &= check.pass;
        self.checks.push(check);
    }

    fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    fn output(&mut self, name: &Path) {
        let file = name.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        self.outputs.push(file);
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn report_file(&self) -> String {
        format!("{}_report.json", self.scenario)
    }

    fn write(&mut self, dir: &Path) -> Result<()> {
        let file = self.report_file();
        self.outputs.push(file.clone());
        write_json(&dir.join(file), self)
    }
}

/// Runs closures on up to `jobs` threads; results keep their input order.
fn run_jobs<'a, T: Send>(jobs: usize, tasks: Vec<Box<dyn FnOnce() -> T + Send + 'a>>) -> Vec<T> {
    if jobs <= 1 {
        return tasks.into_iter().map(|t| t()).collect();
    }
    let mut out = Vec::with_capacity(tasks.len());
    let mut tasks = tasks.into_iter().peekable();
    while tasks.peek().is_some() {
        let batch: Vec<_> = tasks.by_ref().take(jobs).collect();
        std::thread::scope(|s| {
            let handles: Vec<_> = batch.into_iter().map(|t| s.spawn(t)).collect();
            out.extend(handles.into_iter().map(|h| h.join().expect("scenario worker panicked")));
        });
    }
    out
}

fn params(cfg: &ScenarioConfig, extra: Value) -> Value {
    let mut v = serde_json::to_value(cfg).expect("config serializes");
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

// --- spectrum ------------------------------------------------------------------

/// Largest |l| whose level is insensitive to truncation at this flux:
/// min(8, l_max − m) with the even margin m ≥ 6 + 3|f|, floored at 0.
pub fn default_interior(f: FluxRatio, l_max: usize) -> usize {
    let margin = 2 * ((6.0 + 3.0 * f.value().abs()) / 2.0).ceil() as i64;
    (l_max as i64 - margin).clamp(0, 8) as usize
}

/// (l, ½(l − f)²) for |l| ≤ w, sorted by energy.
fn expected_interior(f: FluxRatio, w: usize) -> Vec<(i64, f64)> {
    let w = w as i64;
    let mut levels: Vec<(i64, f64)> = (-w..=w).map(|l| (l, analytic::energy(l, f))).collect();
    levels.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    levels
}

pub fn hamiltonian_spectrum(kind: GaugeKind, f: FluxRatio, l_max: usize) -> Result<Vec<f64>> {
    let h = build_hamiltonian(kind, f, Basis::for_gauge(kind, f, l_max))?;
    Ok(diagonalize(&h)?.values().to_vec())
}

struct SpectrumResult {
    checks: Vec<Check>,
    full: Table,
    interior: Table,
}

fn spectrum_checks(
    f: FluxRatio,
    l_max: usize,
    gauges: &[GaugeKind],
    interior: usize,
    tol: f64,
    jobs: usize,
) -> Result<SpectrumResult> {
    let tasks: Vec<Box<dyn FnOnce() -> Result<Vec<f64>> + Send>> = gauges
        .iter()
        .map(|&g| Box::new(move || hamiltonian_spectrum(g, f, l_max)) as Box<dyn FnOnce() -> _ + Send>)
        .collect();
    let spectra = run_jobs(jobs, tasks).into_iter().collect::<Result<Vec<_>>>()?;

    let expected = expected_interior(f, interior);
    let energies: Vec<f64> = expected.iter().map(|e| e.1).collect();
    let mut checks = Vec::new();
    let mut matched = Vec::new();
    for (g, s) in gauges.iter().zip(&spectra) {
        let m = match_interior(s, &energies).unwrap_or_else(|| vec![f64::NAN; energies.len()]);
        let dev = m.iter().zip(&energies).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        checks.push(Check::at_most(format!("spectrum_interior_{g}"), nan_as_inf(dev, &m), tol));
        matched.push(m);
    }
    let mut cross = 0.0f64;
    for a in &matched {
        for b in &matched {
            for (x, y) in a.iter().zip(b) {
                cross = cross.max(if x.is_nan() || y.is_nan() { f64::INFINITY } else { (x - y).abs() });
            }
        }
    }
    checks.push(Check::at_most("spectrum_cross_gauge", cross, tol));

    let mut cols = vec!["index"];
    cols.extend(gauges.iter().map(|g| g.name()));
    let mut full = Table::new(&cols);
    for i in 0..spectra[0].len() {
        let mut row: Vec<Cell> = vec![(i as i64).into()];
        row.extend(spectra.iter().map(|s| Cell::from(s[i])));
        full.push(row);
    }
    let mut cols = vec!["l", "expected"];
    cols.extend(gauges.iter().map(|g| g.name()));
    let mut table = Table::new(&cols);
    for (k, (l, e)) in expected.iter().enumerate() {
        let mut row: Vec<Cell> = vec![(*l).into(), (*e).into()];
        row.extend(matched.iter().map(|m| Cell::from(m[k])));
        table.push(row);
    }
    Ok(SpectrumResult { checks, full, interior: table })
}

fn nan_as_inf(dev: f64, matched: &[f64]) -> f64 {
    if matched.iter().any(|x| x.is_nan()) {
        f64::INFINITY
    } else {
        dev
    }
}

/// Eigenvalue tables per gauge plus the cross-gauge comparison of the
/// interior levels |l| ≤ `interior` (default [`default_interior`]).
pub fn cmd_spectrum(
    cfg: &ScenarioConfig,
    gauges: &[GaugeKind],
    interior: Option<usize>,
    out: &Path,
    jobs: usize,
) -> Result<ScenarioReport> {
    let cfg = validate_config(cfg.clone())?;
    if gauges.is_empty() {
        return Err(Error::invalid("no gauges requested"));
    }
    let w = match interior {
        Some(w) if w <= cfg.l_max => w,
        Some(w) => return Err(Error::invalid(format!("interior {w} exceeds l_max {}", cfg.l_max))),
        None => default_interior(cfg.flux, cfg.l_max),
    };
    let names: Vec<&str> = gauges.iter().map(|g| g.name()).collect();
    let mut report =
        ScenarioReport::new("spectrum", params(&cfg, serde_json::json!({ "gauges": names, "interior": w })));
    let result = spectrum_checks(cfg.flux, cfg.l_max, gauges, w, cfg.tolerances.spectrum, jobs)?;
    report.extend(result.checks);
    ensure_dir(out)?;
    report.output(&result.full.write(out, "spectrum", cfg.output_format)?);
    report.output(&result.interior.write(out, "spectrum_interior", cfg.output_format)?);
    report.write(out)?;
    Ok(report)
}

// --- figures ---------------------------------------------------------------------

/// Both captioned curves (l = 2, f = −2.5 and 1/3) in long format:
/// `flux, phi, re_psi`.
pub fn figure_table(fig: Figure, samples: usize) -> Result<Table> {
    let mut t = Table::new(&["flux", "phi", "re_psi"]);
    for f in Figure::FLUXES {
        let curve = figure_curve(fig, FluxRatio::new(f), samples)?;
        for (phi, re) in curve.points {
            t.push(vec![f.into(), phi.into(), re.into()]);
        }
    }
    Ok(t)
}

pub fn cmd_figure(cfg: &ScenarioConfig, fig: Figure, samples: usize, out: &Path) -> Result<ScenarioReport> {
    let tol = cfg.tolerances.figure;
    let mut report = ScenarioReport::new(
        fig.name(),
        serde_json::json!({ "which": fig.name(), "samples": samples, "l": Figure::L, "fluxes": Figure::FLUXES }),
    );
    let amp = analytic::ring_amplitude();
    for f in Figure::FLUXES {
        let curve = figure_curve(fig, FluxRatio::new(f), samples)?;
        let (first, last) = (curve.points[0].1, curve.points[samples - 1].1);
        report.push(Check::near(format!("origin_value_f={f}"), first, amp, tol));
        let state = AnalyticEigenstate::new(fig.gauge(), Figure::L, f);
        let ratio = analytic::boundary_ratio(&state, 0.0);
        report.push(Check::near(format!("endpoint_f={f}"), last, amp * ratio.re, tol));
        match fig {
            Figure::Fig1 => report.push(Check::at_most(format!("endpoint_periodicity_f={f}"), last - first, 0.0)),
            Figure::Fig3 if !FluxRatio::new(f).is_integer() => {
                report.push(Check::exceeds(format!("endpoint_mismatch_f={f}"), (last - first).abs(), tol))
            }
            Figure::Fig3 => {}
        }
    }
    ensure_dir(out)?;
    report.output(&figure_table(fig, samples)?.write(out, fig.name(), cfg.output_format)?);
    report.write(out)?;
    Ok(report)
}

// --- verification suites ------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Quantum,
    Classical,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "quantum" => Ok(Suite::Quantum),
            "classical" => Ok(Suite::Classical),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}` (expected quantum, classical or all)")),
        }
    }
}

struct SuiteOutput {
    checks: Vec<Check>,
    tables: Vec<(&'static str, Table)>,
}

/// Largest |l| ≤ 2 whose Landau sidebands fit in the basis.
fn landau_probe_levels(f: FluxRatio, l_max: usize) -> Vec<i64> {
    let sidebands = (4.0 * f.value().abs()).ceil() as i64;
    (-2..=2).filter(|l: &i64| l.abs() + sidebands <= l_max as i64).collect()
}

fn state_in_gauge(kind: GaugeKind, l: i64, f: FluxRatio, l_max: usize, n_grid: usize) -> Result<RingState> {
    match kind {
        GaugeKind::Cylindrical => cylindrical_eigenstate(l, Basis::periodic(l_max)),
        GaugeKind::Landau => landau_eigenstate(l, f, Basis::periodic(l_max), n_grid),
        GaugeKind::Singular => singular_eigenstate(l, f, Basis::twisted(l_max, f)),
    }
}

fn quantum_suite(cfg: &ScenarioConfig, seed: u64, jobs: usize) -> Result<SuiteOutput> {
    let f = cfg.flux;
    let (l_max, n_grid) = (cfg.l_max, cfg.n_grid);
    let tol = &cfg.tolerances;
    let mut checks = Vec::new();
    let mut tables = Vec::new();
    let periodic = Basis::periodic(l_max);
    let twisted = Basis::twisted(l_max, f);

    let w = default_interior(f, l_max);
    let spectra = spectrum_checks(f, l_max, &GaugeKind::ALL, w, tol.spectrum, jobs)?;
    checks.extend(spectra.checks);
    tables.push(("verify_spectrum", spectra.full));

    // L_z on the Landau eigenfunction: pointwise factor and expectation
    let probes = landau_probe_levels(f, l_max);
    if probes.is_empty() {
        return Err(Error::invalid(format!("no Landau eigenstate fits l_max = {l_max} at flux {f}")));
    }
    let lz = build_angular_momentum(AngularMomentum::Canonical, GaugeKind::Landau, f, periodic)?;
    let lambda = build_angular_momentum(AngularMomentum::Mechanical, GaugeKind::Landau, f, periodic)?;
    let (mut pointwise, mut pointwise_im, mut lz_exp, mut lambda_exp) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &l in &probes {
        let s = landau_eigenstate(l, f, periodic, n_grid)?;
        for phi in grid(n_grid) {
            let z = pointwise_factor(&lz, &s, phi)?;
            pointwise = pointwise.max((z.re - pointwise_lz_action(l, f, phi)).abs());
            pointwise_im = pointwise_im.max(z.im.abs());
        }
        lz_exp = lz_exp.max((expectation(&lz, &s)? - l as f64).abs());
        lambda_exp = lambda_exp.max((expectation(&lambda, &s)? - (l as f64 - f.value())).abs());
    }
    checks.push(Check::at_most("landau_lz_pointwise", pointwise, tol.lz_pointwise));
    checks.push(Check::at_most("landau_lz_pointwise_imag", pointwise_im, tol.lz_pointwise));
    checks.push(Check::at_most("landau_lz_expectation", lz_exp, tol.lz_expectation));
    checks.push(Check::at_most("landau_mechanical_expectation", lambda_exp, tol.lz_expectation));

    // persistent currents, direct and as −∂E/∂Φ
    let mut currents = Table::new(&["gauge", "l", "current", "expected", "finite_difference"]);
    let (mut j_dev, mut fd_dev) = (0.0f64, 0.0f64);
    for kind in GaugeKind::ALL {
        for &l in &probes {
            let j = current_from_state(kind, f, &state_in_gauge(kind, l, f, l_max, n_grid)?)?;
            let energy_at = |fv: f64| -> Result<f64> {
                let fv = FluxRatio::new(fv);
                let s = state_in_gauge(kind, l, fv, l_max, n_grid)?;
                expectation(&build_hamiltonian(kind, fv, *s.basis())?, &s)
            };
            let h = CURRENT_FD_STEP;
            let fd = -(energy_at(f.value() + h)? - energy_at(f.value() - h)?) / (2.0 * h) / TAU;
            let expected = analytic::current(l, f);
            j_dev = j_dev.max((j - expected).abs());
            fd_dev = fd_dev.max((fd - expected).abs());
            currents.push(vec![kind.name().into(), l.into(), j.into(), expected.into(), fd.into()]);
        }
    }
    checks.push(Check::at_most("current_all_gauges", j_dev, tol.current));
    checks.push(Check::at_most("current_finite_difference", fd_dev, tol.current_fd));
    tables.push(("verify_currents", currents));

    // twisted boundary condition
    let target = Complex64::from_polar(1.0, -TAU * f.value());
    let (mut analytic_ratio, mut sampled_ratio) = (0.0f64, 0.0f64);
    for l in -2..=2 {
        let a = AnalyticEigenstate::new(GaugeKind::Singular, l, f);
        analytic_ratio = analytic_ratio.max((analytic::boundary_ratio(&a, 0.0) - target).norm());
        let s = singular_eigenstate(l, f, twisted)?;
        for phi in [0.0, 0.7, 2.0] {
            sampled_ratio = sampled_ratio.max((s.evaluate(phi + TAU) / s.evaluate(phi) - target).norm());
        }
    }
    checks.push(Check::at_most("boundary_ratio", analytic_ratio, tol.boundary_ratio));
    checks.push(Check::at_most("boundary_ratio_sampled", sampled_ratio, tol.boundary_ratio));

    // 2π rotations in the singular gauge
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut states: Vec<RingState> = (-3..=3).map(|l| singular_eigenstate(l, f, twisted)).collect::<Result<_>>()?;
    states.extend((0..3).map(|_| random_state(twisted, l_max / 4, &mut rng)));
    let spurious = Complex64::from_polar(1.0, TAU * f.value());
    let (mut corrected, mut bare) = (0.0f64, 0.0f64);
    for s in &states {
        corrected = corrected.max(rotate_2pi(s, f, RotationGenerator::Corrected)?.distance(s)?);
        bare = bare.max(rotate_2pi(s, f, RotationGenerator::BareDerivative)?.distance(&s.scaled(spurious))?);
    }
    checks.push(Check::at_most("rotation_identity", corrected, tol.rotation));
    checks.push(Check::at_most("rotation_bare_phase", bare, tol.rotation));
    let l2 = build_angular_momentum(AngularMomentum::CorrectedSingular, GaugeKind::Singular, f, twisted)?;
    let integrality = diagonalize(&l2)?.values().iter().map(|v| (v - v.round()).abs()).fold(0.0, f64::max);
    checks.push(Check::at_most("corrected_generator_integer_spectrum", integrality, tol.rotation));

    // evolution equivalence
    let alpha = gauge_function(GaugeKind::Cylindrical, GaugeKind::Landau, f)?;
    let u = gauge_transport(&alpha, periodic, n_grid)?;
    let h_cyl = diagonalize(&build_hamiltonian(GaugeKind::Cylindrical, f, periodic)?)?;
    let h_landau = diagonalize(&build_hamiltonian(GaugeKind::Landau, f, periodic)?)?;
    let h_sing = diagonalize(&build_hamiltonian(GaugeKind::Singular, f, twisted)?)?;
    let (mut landau_dev, mut singular_dev) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let psi = random_state(periodic, l_max / 4, &mut rng);
        for t in [0.1, 1.0, 10.0] {
            let moved = u.state(&h_cyl.evolve(&psi, t)?)?;
            landau_dev = landau_dev.max(moved.distance(&h_landau.evolve(&u.state(&psi)?, t)?)?);
            let twisted_then = retwist(&h_cyl.evolve(&psi, t)?, f)?;
            singular_dev = singular_dev.max(twisted_then.distance(&h_sing.evolve(&retwist(&psi, f)?, t)?)?);
        }
    }
    checks.push(Check::at_most("evolution_equivalence_landau", landau_dev, tol.evolution));
    checks.push(Check::at_most("evolution_equivalence_singular", singular_dev, tol.evolution));

    // covariance ledger
    let ledger = covariance_ledger(f, periodic, n_grid, 20, seed)?;
    checks.push(Check::at_most("covariance_mechanical_invariant", ledger.invariant_row, tol.covariance));
    checks.push(Check::at_most("covariance_generator_correction", ledger.generator_row, tol.covariance));
    checks.push(Check::at_most(
        "covariance_generator_eigenstates",
        ledger.generator_eigenstate_row,
        tol.covariance,
    ));
    checks.push(Check::at_most("covariance_hamiltonian", ledger.hamiltonian_row, tol.covariance));
    checks.push(Check::at_most(
        "covariance_hamiltonian_matrix",
        ledger.hamiltonian_matrix_interior,
        tol.covariance,
    ));
    checks.push(Check::at_most("gauge_transport_unitarity", ledger.unitarity_defect, tol.covariance));

    // ⟨i[H′, L_z]⟩ on stationary states
    let c = commutator(&build_hamiltonian(GaugeKind::Landau, f, periodic)?, &lz)?;
    let mut comm = 0.0f64;
    for k in 0..(2 * w + 1).min(h_landau.len()) {
        comm = comm.max(expectation(&c, &h_landau.state(k))?.abs());
    }
    checks.push(Check::at_most("commutator_expectation_eigenstates", comm, tol.commutator));

    Ok(SuiteOutput { checks, tables })
}

fn classical_setup(c: &ClassicalConfig) -> Result<(crate::classical::ClassicalState, CentralForce, FieldProfile)> {
    let force = c.k.map(CentralForce::harmonic);
    let (state, force) = init_orbit(c.rho0, c.v0, force)?;
    Ok((state, force, FieldProfile::ramp(c.b_final, c.ramp_time, c.shape)))
}

/// The ramped-orbit checks shared by `verify --suite classical` and
/// `classical`.
fn classical_suite(cfg: &ScenarioConfig) -> Result<(SuiteOutput, Trajectory)> {
    let c = &cfg.classical;
    let tol = &cfg.tolerances;
    let (state, force, field) = classical_setup(c)?;
    let traj = simulate(&state, &force, &field, c.dt, c.t_end(), c.record_every)?;
    let audit = conservation_audit(&traj);
    let mut checks = vec![
        Check::at_most("classical_lz_cyl_drift", audit.lz_drift, tol.lz_cyl_drift),
        Check::at_most("classical_landau_residual", audit.landau_residual, tol.landau_residual),
        Check::at_most(
            "classical_orbit_average_relative",
            audit.orbit_average_offset / audit.lz_final.abs(),
            tol.orbit_average,
        ),
    ];
    if let Some((amp, expected)) = landau_oscillation_amplitude(&traj) {
        checks.push(Check::near("classical_landau_amplitude", amp, expected, tol.landau_residual));
    }
    // the integration floor keeps the B = 0 case meaningful
    let v_target = diamagnetic_velocity(c.v0, c.b_final, c.rho0);
    let shift_tol = tol.diamagnetic_coeff * c.b_final * c.b_final + tol.path_deviation;
    checks.push(Check::near("classical_diamagnetic_shift", traj.end().v_phi, v_target, shift_tol));
    if c.b_final != 0.0 {
        let dm = traj.end().magnetic_moment() - state.magnetic_moment();
        checks.push(Check::exceeds("classical_moment_opposes_field", -dm * c.b_final.signum(), 0.0));
    }
    let t_path = (PATH_CHECK_PERIODS * c.period()).min(c.t_end());
    for kind in [GaugeKind::Cylindrical, GaugeKind::Landau] {
        let d = hamiltonian_path_check(&state, &force, &field, kind, c.dt, t_path)?;
        checks.push(Check::at_most(format!("classical_path_{kind}"), d.max_position, tol.path_deviation));
    }
    let mut table = Table::new(&Trajectory::COLUMNS);
    for row in traj.rows() {
        table.push(row.iter().map(|&x| Cell::from(x)).collect());
    }
    Ok((SuiteOutput { checks, tables: vec![("trajectory", table)] }, traj))
}

pub fn cmd_verify(cfg: &ScenarioConfig, suite: Suite, seed: u64, out: &Path, jobs: usize) -> Result<ScenarioReport> {
    let cfg = validate_config(cfg.clone())?;
    let mut report = ScenarioReport::new("verify", params(&cfg, serde_json::json!({ "suite": suite, "seed": seed })));
    let quantum = matches!(suite, Suite::Quantum | Suite::All);
    let classical = matches!(suite, Suite::Classical | Suite::All);
    let cfg_ref = &cfg;
    let mut tasks: Vec<Box<dyn FnOnce() -> Result<SuiteOutput> + Send + '_>> = Vec::new();
    if quantum {
        tasks.push(Box::new(move || quantum_suite(cfg_ref, seed, jobs)));
    }
    if classical {
        tasks.push(Box::new(move || classical_suite(cfg_ref).map(|(s, _)| s)));
    }
    let outputs = run_jobs(jobs, tasks).into_iter().collect::<Result<Vec<_>>>()?;
    ensure_dir(out)?;
    for o in outputs {
        report.extend(o.checks);
        for (stem, table) in o.tables {
            let stem = if stem == "trajectory" { "verify_trajectory" } else { stem };
            report.output(&table.write(out, stem, cfg.output_format)?);
        }
    }
    report.write(out)?;
    Ok(report)
}

pub fn cmd_classical(cfg: &ScenarioConfig, out: &Path) -> Result<ScenarioReport> {
    let cfg = validate_config(cfg.clone())?;
    let mut report = ScenarioReport::new(
        "classical",
        serde_json::json!({ "classical": cfg.classical, "t_end": cfg.classical.t_end(), "tolerances": cfg.tolerances }),
    );
    let (suite, _) = classical_suite(&cfg)?;
    report.extend(suite.checks);
    ensure_dir(out)?;
    for (stem, table) in suite.tables {
        report.output(&table.write(out, stem, cfg.output_format)?);
    }
    report.write(out)?;
    Ok(report)
}
