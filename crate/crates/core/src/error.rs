use thiserror::Error;

/// Failures raised by the estimation pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A caller broke an operation's documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Input data cannot support the requested computation.
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// A linear system was singular or too ill-conditioned to trust.
    #[error("numerical rank deficiency: {0}")]
    NumericalRank(String),

    /// Not enough observations for the requested test.
    #[error("insufficient sample size: n = {n}, conditioning set size = {set_size}")]
    InsufficientSample { n: usize, set_size: usize },

    /// The graph admits no consistent DAG extension.
    #[error("graph is not extendable to a DAG")]
    NotExtendable,

    /// A configured size cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse grouping of [`Error`] variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    /// Bad configuration or input.
    Input,
    /// The data or graph defeated the numerics.
    Numerical,
    /// A size cap was hit.
    Resource,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Precondition(_) | Error::Parse(_) => ErrorKind::Input,
            Error::DegenerateData(_)
            | Error::NumericalRank(_)
            | Error::InsufficientSample { .. }
            | Error::NotExtendable => ErrorKind::Numerical,
            Error::Resource(_) => ErrorKind::Resource,
        }
    }
}
