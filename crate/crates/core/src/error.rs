use num_bigint::BigInt;
use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Variants split into two families: invalid arguments (the caller passed a
/// value outside an operation's precondition) and domain errors (the input is
/// well-formed but the requested object does not exist for it, e.g. a period
/// table for an unbounded sequence). [`Error::is_domain`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("leading coefficient must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("expected an odd integer, got {0}")]
    EvenArgument(BigInt),
    #[error("valuation of a rational requires a nonzero value")]
    ZeroRational,
    #[error("residue {residue} out of range for level {level}")]
    ResidueOutOfRange { level: u32, residue: BigInt },
    #[error("dilation factor must be nonzero")]
    ZeroDilation,
    #[error("depth cap must be at least 1")]
    ZeroDepthCap,

    #[error("sequence not bounded")]
    NotBounded,
    #[error("no infinite branches")]
    NoInfiniteBranches,
    #[error("tree is not finite")]
    InfiniteTree,
    #[error("S-operator domain: {0}")]
    SOperatorDomain(String),
    #[error("canonicalization domain: {0}")]
    CanonicalDomain(String),
    #[error("period 2^{ell} is too large to materialize")]
    TableTooLarge { ell: u32 },
}

impl Error {
    /// True for errors that describe a mathematically valid input outside the
    /// operation's domain (as opposed to a malformed argument).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::NotBounded
                | Error::NoInfiniteBranches
                | Error::InfiniteTree
                | Error::SOperatorDomain(_)
                | Error::CanonicalDomain(_)
                | Error::TableTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
