//! JSON dumps of operators and states for debugging and golden files.
//! Complex numbers are written as `[re, im]` pairs; matrices row-major.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Basis, RingOperator, RingState};
use crate::error::{Error, Result};
use crate::units::FluxRatio;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDump {
    pub l_max: usize,
    /// τ; informational, recomputed from `flux` on load.
    pub twist: f64,
    /// Present for twisted bases only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flux: Option<f64>,
}

impl From<&Basis> for BasisDump {
    fn from(b: &Basis) -> Self {
        BasisDump {
            l_max: b.l_max(),
            twist: b.twist(),
            flux: match b.frame() {
                super::Frame::Periodic => None,
                super::Frame::Twisted(f) => Some(f.value()),
            },
        }
    }
}

impl BasisDump {
    fn to_basis(&self) -> Result<Basis> {
        match self.flux {
            None => Ok(Basis::periodic(self.l_max)),
            Some(f) => FluxRatio::try_new(f)
                .map(|f| Basis::twisted(self.l_max, f))
                .ok_or_else(|| Error::invalid("non-finite flux in basis dump")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDump {
    pub label: String,
    pub basis: BasisDump,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl OperatorDump {
    pub fn from_operator(op: &RingOperator) -> Self {
        let m = op.matrix();
        OperatorDump {
            label: op.label().to_string(),
            basis: op.basis().into(),
            matrix: (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        }
    }

    pub fn to_operator(&self) -> Result<RingOperator> {
        let basis = self.basis.to_basis()?;
        let n = basis.dim();
        if self.matrix.len() != n || self.matrix.iter().any(|row| row.len() != n) {
            return Err(Error::invalid(format!("operator dump is not {n}x{n}")));
        }
        let m = DMatrix::from_fn(n, n, |i, j| {
            let [re, im] = self.matrix[i][j];
            Complex64::new(re, im)
        });
        RingOperator::new(basis, m, self.label.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("dump serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDump {
    pub basis: BasisDump,
    pub coeffs: Vec<[f64; 2]>,
}

impl StateDump {
    pub fn from_state(state: &RingState) -> Self {
        StateDump {
            basis: state.basis().into(),
            coeffs: state.coeffs().iter().map(|c| [c.re, c.im]).collect(),
        }
    }

    pub fn to_state(&self) -> Result<RingState> {
        let basis = self.basis.to_basis()?;
        let c = DVector::from_iterator(self.coeffs.len(), self.coeffs.iter().map(|&[re, im]| Complex64::new(re, im)));
        RingState::new(basis, c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("dump serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
