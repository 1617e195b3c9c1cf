//! Balanced bipartite graphs and their `K_{s,s}`-tilings: extremal constructions, exact and
//! heuristic tilers, crossing-signature non-tilability certificates, and the extremal-case
//! tiling pipeline.

pub mod bigraph;
pub mod constructions;
pub mod error;
pub mod io;
pub mod pipeline;
pub mod threshold;
pub mod tiler;

pub use bigraph::{
    verify_copies, verify_tiling, BalancedBigraph, Biclique, BigraphBuilder, DegreeProfile, Part,
    Tiling, TilingViolation, Vertex,
};
pub use error::{Error, Result};
