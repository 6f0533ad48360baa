use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
///
/// Variants fall into three families which the command line front end maps
/// to distinct exit codes: invalid input, exceeded size caps and internal
/// invariant violations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} has size {size}, above the cap of {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("surface relation violated: product of commutators and branch monodromies is not the identity")]
    RelationViolated,

    #[error("listed elements generate a subgroup of order {generated} in a group of order {order}; the cover is disconnected")]
    NotGenerating { generated: usize, order: usize },

    #[error("branch monodromy #{index} is the identity")]
    TrivialBranchMonodromy { index: usize },

    #[error("{k} is not coprime to the conductor {conductor}")]
    NotCoprime { k: i64, conductor: u32 },

    #[error("input word cannot be an embedded G-transverse circle: lifted classes are not isotropic ({0})")]
    NotIsotropic(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }

    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
