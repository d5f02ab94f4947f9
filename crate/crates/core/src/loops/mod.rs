//! Finite loops as Cayley tables: structural queries, subloops, quotients,
//! central series, morphisms and central extensions.

pub mod ext;
pub mod morphism;
pub mod quotient;
pub mod series;
pub mod subloop;
pub mod table;

pub use ext::central_extension;
pub use morphism::{internal_decomposition, is_isomorphic, LoopMap};
pub use quotient::{quotient, QuotientLoop};
pub use series::{nilpotence_class, upper_central_series, CentralSeries};
pub use subloop::{center, is_normal, subloop_generated, NormalSubloop, Subloop};
pub use table::{direct_product, direct_product_many, CayleyTable, Elem, FiniteLoop};
