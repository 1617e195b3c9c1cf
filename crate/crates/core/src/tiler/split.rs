//! A single `K_{s,s}` with all of its `U` side in `U0` and its `V` side split `b : s−b` between
//! two disjoint sets `V1'` and `V2'`.

use crate::bigraph::{BalancedBigraph, Biclique, Part};
use crate::tiler::profile::{find_profiled, BlockDemand, ProfileQuery};
use crate::tiler::Search;

/// The degree condition `δ(V1',U0) + δ(V2',U0) ≥ |U0| + s`, evaluated on the instance.
/// It guarantees a split copy when `V1'` and `V2'` are both large; the search never relies on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitHypothesis {
    pub delta_v1: usize,
    pub delta_v2: usize,
    pub u0: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub outcome: Search<Biclique>,
    pub nodes: u64,
    pub hypothesis: SplitHypothesis,
}

/// Exact search for the split copy. Vertices of `v2p` that also lie in `v1p` are treated as
/// belonging to `v1p` only.
pub fn split_kss(
    g: &BalancedBigraph,
    u0: &[usize],
    v1p: &[usize],
    v2p: &[usize],
    s: usize,
    b: usize,
    budget: u64,
) -> SplitResult {
    assert!(b <= s, "split size {b} exceeds s = {s}");
    let n = g.n();
    let u0_set = g.vertex_set_of(u0);
    let v2p: Vec<usize> = v2p.iter().copied().filter(|v| !v1p.contains(v)).collect();
    let min_into = |vs: &[usize]| vs.iter().map(|&v| g.degree_into(Part::V, v, &u0_set)).min().unwrap_or(0);
    let (delta_v1, delta_v2) = (min_into(v1p), min_into(&v2p));
    let hypothesis = SplitHypothesis {
        delta_v1,
        delta_v2,
        u0: u0.len(),
        holds: !v1p.is_empty() && !v2p.is_empty() && delta_v1 + delta_v2 >= u0.len() + s,
    };
    let q = ProfileQuery {
        u: vec![BlockDemand::new(n, u0.iter().copied(), s)],
        v: vec![
            BlockDemand::new(n, v1p.iter().copied(), b),
            BlockDemand::new(n, v2p.iter().copied(), s - b),
        ],
        forced: vec![],
    };
    let r = find_profiled(g, &q, budget);
    SplitResult {
        outcome: r.outcome,
        nodes: r.nodes,
        hypothesis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_blocks_every_split() {
        let g = BalancedBigraph::complete(8);
        let u0: Vec<usize> = (0..3).collect();
        let v1: Vec<usize> = (0..4).collect();
        let v2: Vec<usize> = (4..8).collect();
        for b in 0..=3 {
            let r = split_kss(&g, &u0, &v1, &v2, 3, b, 1000);
            let Search::Found(c) = r.outcome else { panic!() };
            assert_eq!(c.v.iter().filter(|&&v| v < 4).count(), b);
            assert!(c.is_complete_in(&g));
            assert!(r.hypothesis.holds);
        }
    }

    #[test]
    fn missing_side_is_absent() {
        // V2' has no neighbours in U0
        let mut bld = crate::bigraph::BigraphBuilder::new(6);
        bld.add_complete(&[0, 1, 2], &[0, 1, 2]);
        let g = bld.build();
        let r = split_kss(&g, &[0, 1, 2], &[0, 1, 2], &[3, 4, 5], 2, 1, 1000);
        assert!(r.outcome.is_absent());
        assert!(!r.hypothesis.holds);
        let r = split_kss(&g, &[0, 1, 2], &[0, 1, 2], &[3, 4, 5], 2, 2, 1000);
        assert!(matches!(r.outcome, Search::Found(_)));
    }
}
