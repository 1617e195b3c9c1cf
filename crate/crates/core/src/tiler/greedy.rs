//! Non-backtracking tiler: repeatedly cover the uncovered vertex of least residual degree.

use fixedbitset::FixedBitSet;

use crate::bigraph::{BalancedBigraph, Biclique, Part, Vertex};
use crate::tiler::profile::{find_profiled, BlockDemand, ProfileQuery};
use crate::tiler::Search;

/// Nodes allowed when looking for a copy around one vertex.
const PER_VERTEX_BUDGET: u64 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyTiling {
    pub copies: Vec<Biclique>,
    pub uncovered_u: Vec<usize>,
    pub uncovered_v: Vec<usize>,
}

impl GreedyTiling {
    pub fn is_complete(&self) -> bool {
        self.uncovered_u.is_empty() && self.uncovered_v.is_empty()
    }
}

pub fn greedy_tile(g: &BalancedBigraph, s: usize) -> GreedyTiling {
    let full = g.full_set();
    greedy_tile_within(g, s, &full, &full)
}

/// Greedy tiling of `G[us, vs]`. A vertex around which no copy is found is left uncovered and
/// never retried.
pub fn greedy_tile_within(
    g: &BalancedBigraph,
    s: usize,
    us: &FixedBitSet,
    vs: &FixedBitSet,
) -> GreedyTiling {
    assert!(s >= 1, "block size must be positive");
    let n = g.n();
    let mut res_u = us.clone();
    let mut res_v = vs.clone();
    let mut skipped_u = FixedBitSet::with_capacity(n);
    let mut skipped_v = FixedBitSet::with_capacity(n);
    let mut copies = Vec::new();
    loop {
        let cand_u = res_u.difference(&skipped_u).map(|u| (g.degree_into(Part::U, u, &res_v), Vertex::u(u)));
        let cand_v = res_v.difference(&skipped_v).map(|v| (g.degree_into(Part::V, v, &res_u), Vertex::v(v)));
        let Some((_, x)) = cand_u.chain(cand_v).min() else {
            break;
        };
        let q = ProfileQuery {
            u: vec![BlockDemand {
                allowed: res_u.clone(),
                count: s,
            }],
            v: vec![BlockDemand {
                allowed: res_v.clone(),
                count: s,
            }],
            forced: vec![x],
        };
        match find_profiled(g, &q, PER_VERTEX_BUDGET).outcome {
            Search::Found(c) => {
                c.u.iter().for_each(|&u| res_u.set(u, false));
                c.v.iter().for_each(|&v| res_v.set(v, false));
                copies.push(c);
            }
            _ => match x.part {
                Part::U => skipped_u.insert(x.index),
                Part::V => skipped_v.insert(x.index),
            },
        }
    }
    GreedyTiling {
        copies,
        uncovered_u: res_u.ones().collect(),
        uncovered_v: res_v.ones().collect(),
    }
}
