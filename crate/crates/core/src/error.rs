use thiserror::Error;

/// Errors raised by the analytical and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// Iterative evaluation gave up; `estimate` is the best value reached.
    #[error("{op} did not converge: best estimate {estimate:e}, error estimate {abs_error:e}")]
    Convergence {
        op: &'static str,
        estimate: f64,
        abs_error: f64,
    },

    #[error("cluster of {requested} base stations requested but only {available} points sampled")]
    Size { requested: usize, available: usize },

    #[error("degenerate channel: condition number {condition:e} exceeds threshold")]
    DegenerateChannel { condition: f64 },

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain {
        op,
        msg: msg.into(),
    }
}
