use alloc::string::String;

/// Error kinds shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Arguments outside an operation's domain (mismatched moduli, bad indices, ...).
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A structural precondition failed (not a subgroup, not normal, not color preserving, ...).
    #[error("structural error: {0}")]
    Structural(String),
    /// Malformed input data (not a face, not a cocycle, unassigned symbol, ...).
    #[error("input error: {0}")]
    Input(String),
    /// An explicit resource cap was exceeded.
    #[error("resource cap exceeded while {what}: reached {reached} (cap {cap})")]
    Resource { what: String, cap: u64, reached: u64 },
    /// An iterative numerical method failed to converge.
    #[error("numerical error: {msg} (residual {residual:e})")]
    Numerical { msg: String, residual: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(what: impl Into<String>, cap: u64, reached: u64) -> Self {
        Error::Resource { what: what.into(), cap, reached }
    }
}
