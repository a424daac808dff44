use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violated a documented precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),

    /// The supplied participants cannot determine the requested coefficient.
    #[error("subset {subset:?} is not authorized for s_{j}")]
    Unauthorized { subset: Vec<u64>, j: usize },

    /// Exhaustive work would exceed the configured bound.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("shares are inconsistent: no polynomial in the domain matches them")]
    InconsistentShares,

    /// A proven identity failed at runtime. Indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
