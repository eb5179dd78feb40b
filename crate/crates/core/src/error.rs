use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("config error at `{path}`: {reason}")]
    Config { path: String, reason: String },

    #[error("system is unstable (margin {margin:.3e} rad/s)")]
    Unstable { margin: f64 },

    #[error("resolvent singular at ω = {omega:.6e} rad/s (nearest drift eigenvalue {eig_re:.3e}{eig_im:+.3e}i)")]
    SingularResolvent {
        omega: f64,
        eig_re: f64,
        eig_im: f64,
    },

    #[error("eigen-solver failed on {dim}×{dim} matrix (norm {norm:.3e})")]
    EigenFailure { dim: usize, norm: f64 },

    #[error(
        "imaginary residue {residue:.3e} exceeds {limit:.3e}; quadrature convention inconsistent"
    )]
    ImaginaryResidue { residue: f64, limit: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("mode `{0}` has no output port")]
    InvalidSelection(String),

    #[error("degenerate resource: {0}")]
    DegenerateResource(String),

    #[error("bisection failed: {0}")]
    Bisection(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn config(path: &str, reason: impl Into<String>) -> Self {
        Error::Config {
            path: path.to_string(),
            reason: reason.into(),
        }
    }

    /// Configuration problems map to exit code 2, everything numerical to 3.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config { .. } | Error::InvalidParameter { .. } | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
