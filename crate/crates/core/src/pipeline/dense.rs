//! Tiling one near-complete diagonal block pair.

use crate::bigraph::{BalancedBigraph, Biclique};
use crate::error::{Error, Result};
use crate::tiler::{exact_tile_within, greedy_tile_within, Search};

/// How a block was tiled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DenseRoute {
    #[default]
    Greedy,
    /// Greedy copies kept, remainder tiled exactly.
    GreedyThenExact,
    /// Exact search over the whole block.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseTiling {
    pub copies: Vec<Biclique>,
    pub route: DenseRoute,
    pub nodes: u64,
}

/// Greedy first; exact search on whatever greedy leaves uncovered; exact search on the whole
/// block as the last resort. Requires `|A| = |B| ≡ 0 (mod s)`.
pub fn tile_dense_block(g: &BalancedBigraph, a: &[usize], b: &[usize], s: usize, budget: u64) -> Result<DenseTiling> {
    if a.len() != b.len() || !a.len().is_multiple_of(s) {
        return Err(Error::BlockTiling(format!("block sizes {} and {} are not equal multiples of s = {s}", a.len(), b.len())));
    }
    let us = g.vertex_set_of(a);
    let vs = g.vertex_set_of(b);
    let greedy = greedy_tile_within(g, s, &us, &vs);
    if greedy.is_complete() {
        return Ok(DenseTiling {
            copies: greedy.copies,
            route: DenseRoute::Greedy,
            nodes: 0,
        });
    }
    let rest = exact_tile_within(g, s, &g.vertex_set_of(&greedy.uncovered_u), &g.vertex_set_of(&greedy.uncovered_v), budget);
    let mut nodes = rest.nodes;
    if let Search::Found(t) = rest.outcome {
        let mut copies = greedy.copies;
        copies.extend(t.copies);
        return Ok(DenseTiling {
            copies,
            route: DenseRoute::GreedyThenExact,
            nodes,
        });
    }
    let whole = exact_tile_within(g, s, &us, &vs, budget);
    nodes += whole.nodes;
    match whole.outcome {
        Search::Found(t) => Ok(DenseTiling {
            copies: t.copies,
            route: DenseRoute::Exact,
            nodes,
        }),
        Search::Absent => Err(Error::BlockTiling(format!("block of {} + {} vertices has no tiling", a.len(), b.len()))),
        Search::Unknown => Err(Error::BlockTiling("node budget exhausted on a block".into())),
    }
}
