//! Runs the full verification suite on a shortened classical ramp and
//! prints every check.

use ringgauge::scenario::{cmd_verify, Suite, DEFAULT_SEED};
use ringgauge::ScenarioConfig;
use std::f64::consts::TAU;

fn main() -> ringgauge::Result<()> {
    let mut cfg = ScenarioConfig::default();
    cfg.classical.ramp_time = 20.0 * TAU;
    cfg.classical.dt = 1e-3;
    let out = std::env::temp_dir().join("ringgauge-verify");
    let report = cmd_verify(&cfg, Suite::All, DEFAULT_SEED, &out, 4)?;
    for check in &report.checks {
        println!("{check}");
    }
    println!("{} checks, passed: {}", report.checks.len(), report.passed);
    Ok(())
}
