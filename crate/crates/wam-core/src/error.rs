use thiserror::Error;

/// Errors surfaced by the library.
///
/// The CLI maps these onto exit codes: input problems → 1, resource caps → 2,
/// violated internal invariants → 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unsupported group descriptor: {0}")]
    UnsupportedDescriptor(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("group order {order} exceeds the size cap {cap}")]
    SizeCapExceeded { order: u64, cap: u64 },

    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("the given subgroup is not contained in the parent group")]
    NotASubgroup,

    #[error("the given subgroup is not normal in the parent group")]
    NotNormal,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("modular lift ambiguity: residue {residue} not below p/2 for p = {prime}")]
    LiftAmbiguity { residue: u64, prime: u64 },

    #[error("no suitable prime found for exponent {exponent} above {lower_bound}")]
    PrimeSearchFailure { exponent: u64, lower_bound: u64 },

    #[error("eigenspace splitting did not terminate")]
    EigensplitFailure,

    #[error("generator matrix is rank deficient: rank {rank} < dimension {dim}")]
    RankDeficiency { rank: usize, dim: usize },

    #[error("unsupported schema version {got} (engine speaks {expected})")]
    SchemaVersionMismatch { expected: u32, got: u32 },

    #[error("digest mismatch: file claims {claimed}, recomputed {actual}")]
    DigestMismatch { claimed: String, actual: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI should use for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeCapExceeded { .. } | Error::DegreeTooLarge { .. } => 2,
            Error::LiftAmbiguity { .. }
            | Error::PrimeSearchFailure { .. }
            | Error::EigensplitFailure
            | Error::RankDeficiency { .. }
            | Error::Internal(_) => 3,
            _ => 1,
        }
    }
}
