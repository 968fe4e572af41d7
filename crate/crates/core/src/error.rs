use thiserror::Error;

/// Errors raised by the numerical kernels and the identity harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// Argument sits exactly on a pole of the function.
    #[error("pole of {op} at s={location}, order {order}, residue {residue}")]
    Pole {
        op: &'static str,
        location: String,
        order: u32,
        residue: String,
    },

    /// A series or quadrature failed to reach the requested tolerance.
    #[error("{op} did not converge: best value {best}, error estimate {estimate:e}")]
    Accuracy {
        op: &'static str,
        best: f64,
        estimate: f64,
    },

    #[error("unknown identity `{0}`")]
    NotFound(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
