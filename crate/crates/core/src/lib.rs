//! Exact-arithmetic toolkit for binomial edge rings of graphs.
//!
//! The crate builds the generators of the binomial edge ring of a graph,
//! computes kernels and Krull dimensions through Groebner bases, tests SAGBI
//! bases by subduction, computes toric ideals of point configurations, and
//! handles finite posets and their Hibi rings. A verification pipeline ties
//! these together for complete bipartite graphs.

pub mod error;
pub mod field;
pub mod poly;

pub mod groebner;
pub mod toric;
pub mod poset;
pub mod sagbi;
pub mod edge_ring;
pub mod verify;

pub use error::Error;
