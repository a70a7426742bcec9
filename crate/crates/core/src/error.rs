use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the supported domain of an operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// Argument sits on a pole of a meromorphic function.
    #[error("pole of {op} at {at}")]
    Pole { op: &'static str, at: String },

    /// A numerical procedure could not reach its tolerance. `estimate` is the
    /// best value found and `error` its estimated absolute error.
    #[error("{quantity}: tolerance {tol:e} not met (estimate {estimate}, error {error:e})")]
    Accuracy {
        quantity: String,
        tol: f64,
        estimate: f64,
        error: f64,
    },

    /// Request too large to serve.
    #[error("resource limit in {op}: {detail}")]
    Resource { op: &'static str, detail: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }
}
