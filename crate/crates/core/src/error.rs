use thiserror::Error;

/// Errors raised by the numerical kernels, the integrator and the sweep tools.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: argument outside domain ({detail})")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: argument {arg} within {threshold:e} of a gamma-function pole")]
    PoleProximity { op: &'static str, arg: f64, threshold: f64 },

    #[error("{op}: series did not converge within {terms} terms")]
    NonConvergence { op: &'static str, terms: usize },

    #[error("integrator exceeded {max_steps} steps at t = {t} (last good state u={u}, v={v}, w={w})")]
    StepLimit {
        max_steps: usize,
        t: f64,
        u: f64,
        v: f64,
        w: f64,
    },

    #[error("integrator step size underflowed at t = {t}; tolerance cannot be achieved")]
    StepUnderflow { t: f64 },

    #[error("no sign change on bracket [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("need at least {required} points, found {found}")]
    InsufficientPoints { found: usize, required: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    /// Last time reached by the integrator, when the error came from it.
    pub fn last_good_time(&self) -> Option<f64> {
        match *self {
            Error::StepLimit { t, .. } | Error::StepUnderflow { t } => Some(t),
            _ => None,
        }
    }

    /// True for failures of a numerical method (as opposed to bad input).
    pub fn is_numeric_failure(&self) -> bool {
        matches!(
            self,
            Error::StepLimit { .. }
                | Error::StepUnderflow { .. }
                | Error::NonConvergence { .. }
                | Error::Bracket { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
