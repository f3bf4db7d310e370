//! Named graphs and the builders for isospectral constructions.

mod catalog;
mod methods;

pub use catalog::{catalog, catalog_by_name, CatalogId};
pub use methods::{
    build_clarifying_example, clarifying_k, clarifying_q, inner_symmetry_quotient, method1_extend,
    method2_exchange, ClarifyingBlocks, Composition, Slot, EQUIVALENCE_TOL,
};
