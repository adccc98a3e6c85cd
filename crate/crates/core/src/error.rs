use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside the admissible thermodynamic domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no sign change of {what} on [{lo:e}, {hi:e}]")]
    BracketFailure {
        what: &'static str,
        lo: f64,
        hi: f64,
    },

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
    },

    #[error("{what} = {value} outside [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("degenerate: {0}")]
    Degenerate(String),

    /// State lies in the wrong phase region for the requested operation.
    #[error("region error: {0}")]
    Region(String),

    #[error("vacuum generated: {0}")]
    Vacuum(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("rows not strictly increasing in T at line {line}")]
    Monotonicity { line: u64 },

    #[error("unit sanity check failed at line {line}: {message}")]
    UnitSanity { line: u64, message: String },

    /// Wraps an error with the temperature at which it occurred.
    #[error("at T = {t} K: {source}")]
    AtTemperature {
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn at_temperature(self, t: f64) -> Self {
        Error::AtTemperature {
            t,
            source: Box::new(self),
        }
    }

    /// Strips any [`Error::AtTemperature`] wrappers.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::AtTemperature { source, .. } => source.root_cause(),
            other => other,
        }
    }

    /// True for errors caused by physical inputs rather than malformed
    /// configuration or data files.
    pub fn is_physical(&self) -> bool {
        matches!(
            self.root_cause(),
            Error::Domain(_)
                | Error::BracketFailure { .. }
                | Error::NonConvergence { .. }
                | Error::Degenerate(_)
                | Error::Vacuum(_)
        )
    }
}
