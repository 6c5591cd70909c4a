//! Every pass/fail threshold used by the scenario runner, in one table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Interior eigenvalues against ½(l − f)² and across gauges.
    pub spectrum: f64,
    /// Pointwise L_z factor on the Landau eigenfunction.
    pub lz_pointwise: f64,
    /// ⟨L_z⟩ on the Landau eigenfunction.
    pub lz_expectation: f64,
    pub current: f64,
    pub current_fd: f64,
    pub boundary_ratio: f64,
    pub rotation: f64,
    pub evolution: f64,
    pub covariance: f64,
    /// ⟨i[H′, L_z]⟩ on eigenstates of H′.
    pub commutator: f64,
    pub lz_cyl_drift: f64,
    pub landau_residual: f64,
    /// Relative to |l_z|.
    pub orbit_average: f64,
    /// Coefficient C in |Δv − first-order shift| < C·B².
    pub diamagnetic_coeff: f64,
    pub path_deviation: f64,
    pub figure: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            spectrum: 1e-8,
            lz_pointwise: 1e-10,
            lz_expectation: 1e-9,
            current: 1e-9,
            current_fd: 1e-8,
            boundary_ratio: 1e-12,
            rotation: 1e-10,
            evolution: 1e-8,
            covariance: 1e-9,
            commutator: 1e-9,
            lz_cyl_drift: 1e-6,
            landau_residual: 1e-9,
            orbit_average: 1e-4,
            diamagnetic_coeff: 5.0,
            path_deviation: 1e-8,
            figure: 1e-12,
        }
    }
}

impl Tolerances {
    /// Override one entry by name, as given on the command line (`name=value`).
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::invalid(format!("tolerance {name} must be a non-negative number")));
        }
        let slot = match name {
            "spectrum" => &mut self.spectrum,
            "lz_pointwise" => &mut self.lz_pointwise,
            "lz_expectation" => &mut self.lz_expectation,
            "current" => &mut self.current,
            "current_fd" => &mut self.current_fd,
            "boundary_ratio" => &mut self.boundary_ratio,
            "rotation" => &mut self.rotation,
            "evolution" => &mut self.evolution,
            "covariance" => &mut self.covariance,
            "commutator" => &mut self.commutator,
            "lz_cyl_drift" => &mut self.lz_cyl_drift,
            "landau_residual" => &mut self.landau_residual,
            "orbit_average" => &mut self.orbit_average,
            "diamagnetic_coeff" => &mut self.diamagnetic_coeff,
            "path_deviation" => &mut self.path_deviation,
            "figure" => &mut self.figure,
            _ => return Err(Error::invalid(format!("unknown tolerance `{name}`"))),
        };
        *slot = value;
        Ok(())
    }

    pub fn apply_override(&mut self, spec: &str) -> Result<()> {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("expected name=value, got `{spec}`")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad tolerance value in `{spec}`")))?;
        self.set(name.trim(), value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_by_name() {
        let mut t = Tolerances::default();
        t.apply_override("spectrum=1e-6").unwrap();
        assert_eq!(t.spectrum, 1e-6);
        assert!(t.apply_override("nope=1").is_err());
        assert!(t.apply_override("spectrum").is_err());
        assert!(t.apply_override("spectrum=-1").is_err());
    }
}
