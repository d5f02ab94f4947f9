//! Computational algebra for finite loops given as Cayley tables.
//!
//! The centerpiece is the constructive result that every finite nilpotent
//! loop has a binary term operation `*` making `(A,*)` a direct product of
//! nilpotent loops of prime power order (a supernilpotent loop). The
//! [`reduct`] module builds that operation stage by stage along a refined
//! central series and emits a term-DAG certificate that can be re-checked
//! independently.
//!
//! Supporting machinery:
//! - [`loops`]: loops, subloops, quotients, central series, isomorphism;
//! - [`perm`]: multiplication groups and stabilizer-chain queries;
//! - [`supernilpotence`]: the Sylow-decomposition and multiplication-group
//!   tests, usable as independent cross-checks;
//! - [`groups`]: the `x·y·[x,y]^c` reduct family of 2-nilpotent groups,
//!   the Baer construction, and fixture groups;
//! - [`clonoid`]: clonoids of zero-preserving functions `Z_q -> Z_p` with
//!   basis search, dimension counts and normal-form rewriting;
//! - [`clone`]: bounded closure of binary term operations.

pub mod arith;
pub mod clone;
pub mod clonoid;
pub mod error;
pub mod groups;
pub mod loops;
pub mod perm;
pub mod reduct;
pub mod supernilpotence;

pub use error::{LoopError, Result};
pub use loops::{CayleyTable, Elem, FiniteLoop};
