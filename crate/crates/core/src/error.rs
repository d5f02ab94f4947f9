//! Error type shared by all loop-algebra operations.

use thiserror::Error;

/// Errors raised by table validation, structural queries and the reduct
/// construction.
///
/// Variants fall into three groups: input validation (bad tables, malformed
/// terms), precondition violations (the caller asked for something the input
/// does not support) and internal invariant violations (an assertion that is
/// a theorem failed, which always indicates a bug).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("table is not square: row {row} has {found} entries, expected {expected}")]
    Dimension {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("entry {value} at ({row},{col}) is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("{line} {index} is not a permutation of 0..n-1")]
    LatinSquareViolation { line: &'static str, index: usize },
    #[error("element 0 is not an identity (violated at index {index})")]
    IdentityViolation { index: usize },
    #[error("the given set is not a subloop")]
    NotASubloop,
    #[error("subloop is not normal")]
    NotNormal,
    #[error("loop is not nilpotent")]
    NotNilpotent,
    #[error("loop is not associative")]
    NotAssociative,
    #[error("group is not 2-nilpotent")]
    NotTwoNilpotent,
    #[error("subloop is not central")]
    NotCentral,
    #[error("quotient by the given subloop is not supernilpotent")]
    QuotientNotSupernilpotent,
    #[error("translation order moduli are not coprime: gcd({m_e}, {m_v}) != 1")]
    CoprimalityViolation { m_e: u64, m_v: u64 },
    #[error("derived subgroup has even exponent {exponent}")]
    EvenExponent { exponent: u64 },
    #[error("series failed to stabilize within {bound} steps")]
    IterationBound { bound: usize },
    #[error("Mal'cev identity fails for parameter c = {c}")]
    MalcevIdentityViolation { c: u64 },
    #[error("family member for c = {c} is not associative")]
    AssociativityViolation { c: u64 },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("function is not in the clonoid")]
    NotInClonoid,
    #[error("function table is not zero-preserving or out of range")]
    BadFunctionTable,
    #[error("malformed term: {0}")]
    MalformedTerm(String),
    #[error("clone closure exceeded cap of {cap} operations")]
    CapExceeded { cap: usize },
    #[error("enumeration order {order} exceeds the cap of {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("basis parameter search exhausted without finding a basis")]
    InternalInconsistency,
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub type Result<T> = std::result::Result<T, LoopError>;

impl LoopError {
    /// Shorthand for the internal-invariant variant. Every call site marks an
    /// assertion that is a theorem; reaching it means the implementation is
    /// broken, not the input.
    pub fn internal(msg: impl Into<String>) -> Self {
        LoopError::InternalInvariant(msg.into())
    }
}
