pub mod algebra;
pub mod constructions;
pub mod discrete_spectrum;
pub mod error;
pub mod graph;
pub mod mfunction;
pub mod numfmt;
pub mod search;
pub mod secular;
