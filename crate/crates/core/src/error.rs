use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring Z[omega_{{{p}^{level}}}] is not supported here")]
    UnsupportedRing { p: u64, level: u32 },

    #[error("{q} does not split: q is not 1 mod {modulus}")]
    NoSplit { q: u64, modulus: u64 },

    #[error("bounded generator search exhausted for q = {q} (bound {bound})")]
    SearchExhausted { q: u64, bound: u64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("index table too large for q = {0}")]
    TableTooLarge(u64),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("factorization budget exhausted on {0}")]
    FactorizationFailed(String),

    #[error("{0} is not coprime to {1}")]
    NotCoprime(String, u64),

    #[error("infeasible strata: {0}")]
    InfeasibleStrata(String),

    #[error("search budget exceeded; resume from prefix rank {resume_rank}")]
    BudgetExceeded { resume_rank: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
