use thiserror::Error;

/// Errors raised by the numeric core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A†| = {residual:e})")]
    NonHermitianInput { residual: f64 },

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("bad dimension: expected {expected}, found {found}")]
    BadDimension { expected: String, found: String },

    #[error("unphysical state: eigenvalue {eigenvalue:e} is below the positivity tolerance")]
    UnphysicalState { eigenvalue: f64 },

    #[error("density matrix has trace {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("parameter `{name}` = {value} is outside {domain}")]
    BadParameter {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn bad_dim(expected: impl Into<String>, rows: usize, cols: usize) -> Error {
    Error::BadDimension {
        expected: expected.into(),
        found: format!("{rows}x{cols}"),
    }
}
