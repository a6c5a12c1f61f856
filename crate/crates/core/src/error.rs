use thiserror::Error;

/// Errors raised by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A denominator vanished after substitution or specialization.
    #[error("pole: denominator `{denominator}` vanishes{detail}")]
    Pole { denominator: String, detail: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("weight mismatch: |a| = {left}, |b| = {right}")]
    WeightMismatch { left: u32, right: u32 },

    #[error("input polynomial is not symmetric")]
    NotSymmetric,

    #[error("input polynomial is not in the deformed algebra")]
    NotInDeformedAlgebra,

    /// Exact division that should always succeed did not; signals a bug.
    #[error("exact division failed: {0}")]
    DivisionFailure(String),

    /// Two diagonal entries coincide during a triangular eigen-solve.
    #[error("resonance solving for {label}: e({label}) - e({below}) = {denominator} vanishes")]
    Resonance {
        label: String,
        below: String,
        denominator: String,
    },

    #[error("duality fit failed: {0}")]
    DualityFailure(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no admissible parameter sample after {0} retries")]
    SamplingExhausted(usize),
}

impl Error {
    pub(crate) fn pole(denominator: impl ToString) -> Self {
        Error::Pole {
            denominator: denominator.to_string(),
            detail: String::new(),
        }
    }

    /// Attach a location (monomial, coefficient name, ...) to a pole error.
    pub fn with_context(self, ctx: impl AsRef<str>) -> Self {
        match self {
            Error::Pole {
                denominator,
                detail,
            } => Error::Pole {
                denominator,
                detail: format!("{detail} in {}", ctx.as_ref()),
            },
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
