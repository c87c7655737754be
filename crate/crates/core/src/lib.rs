//! Exact 2-packing numbers for path token graphs, triangular half-grids and
//! grid graphs.
//!
//! A 2-packing (packing set) of a graph is a vertex set whose members are
//! pairwise at distance at least three. The crate builds the graph families,
//! explicit packing constructions, exact solvers, and a registry of
//! re-runnable certificates for the computational claims about them.

pub mod codes;
pub mod error;
pub mod graphs;
pub mod packing;
pub mod papercheck;
pub mod theory;

pub use error::{Error, Result};
