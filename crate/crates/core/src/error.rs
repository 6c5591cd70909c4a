use std::path::PathBuf;

use crate::config::ConfigViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {}", join_violations(.0))]
    Config(Vec<ConfigViolation>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("basis mismatch: {left} vs {right}")]
    BasisMismatch { left: String, right: String },

    #[error("basis {basis} is incompatible with the {gauge} gauge at flux {flux}")]
    IncompatibleBasis {
        basis: String,
        gauge: &'static str,
        flux: f64,
    },

    #[error("operator `{label}` is not Hermitian (defect {defect:e})")]
    NotHermitian { label: String, defect: f64 },

    #[error("expectation value has imaginary residue {residue:e}")]
    ComplexExpectation { residue: f64 },

    #[error("unsupported gauge transformation {from} -> {to}")]
    UnsupportedGaugePair {
        from: &'static str,
        to: &'static str,
    },

    #[error("multivalued gauge function cannot be transported by a periodic unitary; retwist the basis instead")]
    MultivaluedTransport,

    #[error("phase sidebands of l = {l} at flux {flux} do not fit in l_max = {l_max}")]
    SidebandOverflow { l: i64, flux: f64, l_max: usize },

    #[error("time step {dt} exceeds the limit {limit} for this orbit")]
    StepTooLarge { dt: f64, limit: f64 },

    #[error("trajectory left the plane domain (rho = {rho}) at t = {t}")]
    Escaped { rho: f64, t: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// 2 for configuration, usage and I/O problems; 1 for failed computations.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Config(_) | Error::InvalidArgument(_) | Error::Io { .. } | Error::Json(_) => 2,
            _ => 1,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

fn join_violations(v: &[ConfigViolation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
