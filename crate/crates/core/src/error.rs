use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("generators act on different point sets")]
    DegreeMismatch,
    #[error("group closure exceeded the configured cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("search budget exhausted")]
    BudgetExceeded,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not invariant under the automorphism")]
    NotInvariant,
    #[error("generator images do not extend to a homomorphism")]
    NotAHomomorphism,
    #[error("map is a homomorphism but not a bijection")]
    NotBijective,
    #[error("group order exceeds the character-table cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("no suitable prime found for the character table")]
    PrimeSearchFailed,
    #[error("ill-formed endomorphism: {0}")]
    IllFormedEndo(String),
    #[error("Reidemeister number is infinite")]
    InfiniteReidemeister,
    #[error("group is not soluble")]
    NotSoluble,
    #[error("quotient by the given subgroup is not abelian")]
    QuotientNotAbelian,
    #[error("unsupported subgroup form: {0}")]
    UnsupportedSubgroupForm(String),
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
