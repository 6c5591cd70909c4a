//! Versioned scenario configuration (JSON, lower_snake_case, unknown fields
//! rejected). See `docs/config.md` for the schema.

use std::f64::consts::TAU;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances::Tolerances;
use crate::units::{FluxRatio, GaugeKind};

pub const SCHEMA_VERSION: u32 = 1;
pub const MIN_L_MAX: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RampShape {
    /// The induced E field switches on and off discontinuously; fixed-step
    /// integration then loses its order at the ramp ends.
    Linear,
    /// 3x² − 2x³: B and E are continuous.
    #[default]
    Smoothstep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassicalConfig {
    pub rho0: f64,
    pub v0: f64,
    /// Harmonic force constant; `null` derives it from circular-orbit balance.
    pub k: Option<f64>,
    pub b_final: f64,
    pub ramp_time: f64,
    pub shape: RampShape,
    pub dt: f64,
    /// Defaults to `ramp_time` plus one unperturbed orbital period.
    pub t_end: Option<f64>,
    /// Keep every n-th integrator step in the exported trajectory.
    pub record_every: usize,
}

impl ClassicalConfig {
    pub fn period(&self) -> f64 {
        TAU * self.rho0 / self.v0
    }

    pub fn t_end(&self) -> f64 {
        self.t_end.unwrap_or(self.ramp_time + self.period())
    }
}

impl Default for ClassicalConfig {
    /// ρ₀ = v₀ = 1, B ramps to 0.01 over 100 orbits with dt = 1e-4.
    fn default() -> Self {
        ClassicalConfig {
            rho0: 1.0,
            v0: 1.0,
            k: None,
            b_final: 0.01,
            ramp_time: 100.0 * TAU,
            shape: RampShape::Smoothstep,
            dt: 1e-4,
            t_end: None,
            record_every: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema_version: u32,
    pub gauge: GaugeKind,
    pub flux: FluxRatio,
    pub l_max: usize,
    pub n_grid: usize,
    #[serde(default)]
    pub classical: ClassicalConfig,
    #[serde(default)]
    pub output_format: OutputFormat,
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            schema_version: SCHEMA_VERSION,
            gauge: GaugeKind::Cylindrical,
            flux: FluxRatio::new(1.0 / 3.0),
            l_max: 32,
            n_grid: 256,
            classical: ClassicalConfig::default(),
            output_format: OutputFormat::Csv,
            tolerances: Tolerances::default(),
        }
    }
}

/// One violated bound, tagged with the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigViolation {
    pub field: &'static str,
    pub message: String,
}

impl fmt::Display for ConfigViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = serde_json::from_str(text)?;
        validate_config(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Returns the config unchanged when every bound holds, otherwise an error
/// listing all violations.
pub fn validate_config(cfg: ScenarioConfig) -> Result<ScenarioConfig> {
    let mut v = Vec::new();
    let mut bad = |field: &'static str, message: String| v.push(ConfigViolation { field, message });

    if cfg.schema_version != SCHEMA_VERSION {
        bad(
            "schema_version",
            format!("unsupported version {} (expected {SCHEMA_VERSION})", cfg.schema_version),
        );
    }
    if cfg.l_max < MIN_L_MAX {
        bad("l_max", format!("l_max below minimum {MIN_L_MAX}"));
    }
    if cfg.n_grid < 4 * cfg.l_max {
        bad("n_grid", "n_grid < 4·l_max".to_string());
    }
    let c = &cfg.classical;
    for (field, value) in [("classical.rho0", c.rho0), ("classical.v0", c.v0)] {
        if !(value > 0.0 && value.is_finite()) {
            bad(field, format!("must be positive, got {value}"));
        }
    }
    if let Some(k) = c.k {
        if !(k > 0.0 && k.is_finite()) {
            bad("classical.k", format!("must be positive, got {k}"));
        }
    }
    if !c.b_final.is_finite() {
        bad("classical.b_final", "must be finite".to_string());
    }
    if !(c.dt > 0.0 && c.dt.is_finite()) {
        bad("classical.dt", format!("dt must be > 0, got {}", c.dt));
    }
    if !(c.ramp_time > 0.0 && c.ramp_time.is_finite()) {
        bad("classical.ramp_time", format!("ramp_time must be > 0, got {}", c.ramp_time));
    }
    if let Some(t) = c.t_end {
        if !(t > 0.0 && t.is_finite()) {
            bad("classical.t_end", format!("must be > 0, got {t}"));
        }
    }
    if c.record_every == 0 {
        bad("classical.record_every", "must be at least 1".to_string());
    }

    if v.is_empty() {
        Ok(cfg)
    } else {
        Err(Error::Config(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn violations(cfg: ScenarioConfig) -> Vec<ConfigViolation> {
        match validate_config(cfg) {
            Err(Error::Config(v)) => v,
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn accepts_valid_config() {
        let mut cfg = ScenarioConfig::default();
        cfg.classical.dt = 1e-3;
        cfg.classical.ramp_time = 10.0;
        assert_eq!(validate_config(cfg.clone()).unwrap(), cfg);
    }

    #[test]
    fn rejects_small_l_max() {
        let cfg = ScenarioConfig {
            l_max: 4,
            n_grid: 256,
            ..Default::default()
        };
        let v = violations(cfg);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].field, "l_max");
        assert_eq!(v[0].message, "l_max below minimum 8");
    }

    #[test]
    fn rejects_coarse_grid() {
        let cfg = ScenarioConfig {
            l_max: 32,
            n_grid: 16,
            ..Default::default()
        };
        let v = violations(cfg);
        assert_eq!(v[0].field, "n_grid");
        assert_eq!(v[0].message, "n_grid < 4·l_max");
    }

    #[test]
    fn reports_every_violation() {
        let mut cfg = ScenarioConfig {
            l_max: 2,
            n_grid: 4,
            ..Default::default()
        };
        cfg.classical.dt = 0.0;
        cfg.classical.ramp_time = -1.0;
        let fields: Vec<_> = violations(cfg).into_iter().map(|v| v.field).collect();
        assert_eq!(fields, ["l_max", "n_grid", "classical.dt", "classical.ramp_time"]);
    }

    #[test]
    fn json_round_trip_and_unknown_fields() {
        let cfg = ScenarioConfig::default();
        let back = ScenarioConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg);

        let text = r#"{"schema_version":1,"gauge":"landau","flux":0.5,"l_max":16,"n_grid":64,"bogus":1}"#;
        assert!(matches!(ScenarioConfig::from_json(text), Err(Error::Json(_))));

        let text = r#"{"schema_version":1,"gauge":"landau","flux":0.5,"l_max":16,"n_grid":64}"#;
        let cfg = ScenarioConfig::from_json(text).unwrap();
        assert_eq!(cfg.gauge, GaugeKind::Landau);
        assert_eq!(cfg.classical, ClassicalConfig::default());
    }

    #[test]
    fn partial_classical_block_keeps_defaults() {
        let text = r#"{"schema_version":1,"gauge":"cylindrical","flux":0.5,"l_max":16,"n_grid":64,
            "classical":{"b_final":0.02}}"#;
        let cfg = ScenarioConfig::from_json(text).unwrap();
        assert_eq!(cfg.classical.b_final, 0.02);
        assert_eq!(cfg.classical.record_every, 100);
        assert_eq!(cfg.classical.dt, 1e-4);

        let text = r#"{"schema_version":1,"gauge":"cylindrical","flux":0.5,"l_max":16,"n_grid":64,
            "classical":{"bfinal":0.02}}"#;
        assert!(matches!(ScenarioConfig::from_json(text), Err(Error::Json(_))));
    }
}
