use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root system {0:?}: {1}")]
    InvalidSpec(String, String),

    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("root enumeration exceeded {0} roots; the Cartan matrix is not of finite type")]
    InfiniteRootSystem(usize),

    #[error("resource budget exceeded: {what} needs ~{needed} bytes, budget is {budget} bytes")]
    BudgetExceeded {
        what: String,
        needed: u64,
        budget: u64,
    },

    #[error("face count overflow in dimension {dim}: {count} faces exceeds the limit {limit}")]
    FaceOverflow { dim: usize, count: usize, limit: usize },

    #[error("modular ranks disagree across primes {primes:?}: {ranks:?}; exact computation required")]
    PrimeDisagreement { primes: Vec<u64>, ranks: Vec<Vec<usize>> },

    #[error("exact elimination overflowed i128; input too large for the integral certificate")]
    ExactOverflow,

    #[error("precondition failed for vertex {vertex}: reduced Betti numbers of its link in degrees {degrees:?} do not vanish")]
    DegreePrecondition { vertex: u32, degrees: Vec<usize> },

    #[error("malformed cache file {path}: {reason}")]
    Cache { path: String, reason: String },

    #[error("verification mismatch: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
