//! CLI-level errors and their exit codes.

use finloop::LoopError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("certificate error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error("verification failed: {0} check(s) did not pass")]
    VerificationFailed(usize),
}

impl CliError {
    /// Exit codes: 1 input/validation error, 2 precondition violation,
    /// 3 internal invariant violation (a theorem-level assertion failed).
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) | CliError::Json(_) => 1,
            CliError::VerificationFailed(_) => 1,
            CliError::Loop(err) => match err {
                LoopError::Dimension { .. }
                | LoopError::EntryOutOfRange { .. }
                | LoopError::LatinSquareViolation { .. }
                | LoopError::IdentityViolation { .. }
                | LoopError::MalformedTerm(_)
                | LoopError::BadFunctionTable
                | LoopError::CapExceeded { .. }
                | LoopError::OrderTooLarge { .. } => 1,
                LoopError::NotASubloop
                | LoopError::NotNormal
                | LoopError::NotNilpotent
                | LoopError::NotAssociative
                | LoopError::NotTwoNilpotent
                | LoopError::NotCentral
                | LoopError::QuotientNotSupernilpotent
                | LoopError::EvenExponent { .. } => 2,
                LoopError::CoprimalityViolation { .. }
                | LoopError::IterationBound { .. }
                | LoopError::MalcevIdentityViolation { .. }
                | LoopError::AssociativityViolation { .. }
                | LoopError::NoSolution
                | LoopError::NotInClonoid
                | LoopError::InternalInconsistency
                | LoopError::InternalInvariant(_) => 3,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
