use std::path::PathBuf;

/// Errors raised by the evaluators, searches and the prime cache.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range: table holds {available} primes")]
    OutOfRange { index: usize, available: usize },

    #[error("prime table up to {limit} cannot factor {n}: cofactor {cofactor} remains")]
    IncompleteTable { n: u64, limit: u64, cofactor: u64 },

    #[error("prime table up to {limit} does not cover {needed}")]
    TableTooSmall { needed: u64, limit: u64 },

    #[error("sieving up to {limit} needs ~{needed_bytes} bytes, budget is {budget_bytes}")]
    ResourceExhausted {
        limit: u64,
        needed_bytes: u64,
        budget_bytes: u64,
    },

    #[error("certificate too weak: {0}")]
    CertificateTooWeak(String),

    #[error("trace refinement failed after {evaluations} evaluations: phase jump {jump} at sigma {sigma}")]
    RefinementFailure {
        evaluations: usize,
        sigma: f64,
        jump: f64,
    },

    #[error(
        "theta {theta} unreachable: best certified lower bound {best_lower} with {primes} primes"
    )]
    UnreachableTheta {
        theta: f64,
        best_lower: f64,
        primes: usize,
    },

    #[error("search budget exhausted at prime #{stage}: {intervals} candidate intervals exceed {budget}")]
    BudgetExhausted {
        stage: usize,
        intervals: usize,
        budget: usize,
    },

    #[error("bad prime cache {path:?}: {reason}")]
    CacheFormat { path: PathBuf, reason: String },

    #[error("io error on {path:?}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 64,
            Error::ResourceExhausted { .. }
            | Error::CertificateTooWeak(_)
            | Error::RefinementFailure { .. }
            | Error::UnreachableTheta { .. }
            | Error::BudgetExhausted { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
