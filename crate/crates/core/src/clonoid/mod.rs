//! Clonoids of zero-preserving functions `Z_q -> Z_p` for primes `p`, `q`:
//! spans and dimensions, the orbit basis `{f(a^i x)}` with its coefficient
//! identities, normal-form rewriting for terms over `(Z_q x Z_p, +, f)`,
//! and the decomposition machinery for central-by-supernilpotent loops.

pub mod basis;
pub mod decompose;
pub mod span;
pub mod term;

pub use basis::{
    coefficient_rows, dimension_formula_check, find_basis_parameter, h_l_construct, ClonoidBasis,
    CoefficientRow,
};
pub use decompose::{
    central_by_sn_decompose, clone_decomposition_check, CentralBySn, CloneDecomposition,
};
pub use span::{clonoid_span, FnTable, SpanBasis};
pub use term::{normalize_term, terms_equal, ClonoidContext, NormalFormTerm, TermAst};
