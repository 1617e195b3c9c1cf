//! Complete backtracking search for a `K_{s,s}`-tiling.
//!
//! At every node the uncovered `U` vertex of minimum residual degree is covered in all possible
//! ways: `s`-subsets `T` of its residual neighbourhood in lexicographic order, then
//! `(s−1)`-subsets of the other common neighbours of `T`. A node is cut when some uncovered vertex
//! has residual degree below `s`, when a residual component is unbalanced or has size not
//! divisible by `s`, or when the same residual state already failed.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::bigraph::{BalancedBigraph, Biclique, Part, Tiling};
use crate::tiler::{Search, TileResult};

/// Decides whether `g` has a `K_{s,s}`-tiling, within `budget` copy placements.
pub fn exact_tile(g: &BalancedBigraph, s: usize, budget: u64) -> TileResult {
    let full = g.full_set();
    exact_tile_within(g, s, &full, &full, budget)
}

/// Decides whether the induced subgraph `G[us, vs]` has a `K_{s,s}`-tiling.
pub fn exact_tile_within(
    g: &BalancedBigraph,
    s: usize,
    us: &FixedBitSet,
    vs: &FixedBitSet,
    budget: u64,
) -> TileResult {
    assert!(s >= 1, "block size must be positive");
    let (nu, nv) = (us.count_ones(..), vs.count_ones(..));
    if nu != nv || nu % s != 0 {
        return TileResult {
            outcome: Search::Absent,
            nodes: 0,
        };
    }
    let mut search = Exact {
        g,
        s,
        budget,
        nodes: 0,
        failed: HashSet::new(),
        copies: Vec::new(),
    };
    let outcome = match search.solve(us.clone(), vs.clone()) {
        Some(true) => Search::Found(Tiling {
            s,
            copies: std::mem::take(&mut search.copies),
        }),
        Some(false) => Search::Absent,
        None => Search::Unknown,
    };
    TileResult {
        outcome,
        nodes: search.nodes,
    }
}

struct Exact<'a> {
    g: &'a BalancedBigraph,
    s: usize,
    budget: u64,
    nodes: u64,
    failed: HashSet<(FixedBitSet, FixedBitSet)>,
    copies: Vec<Biclique>,
}

impl Exact<'_> {
    /// `None` when the budget runs out.
    fn solve(&mut self, res_u: FixedBitSet, res_v: FixedBitSet) -> Option<bool> {
        let Some(u) = self.pick(&res_u, &res_v) else {
            return Some(res_u.is_clear());
        };
        if !self.components_ok(&res_u, &res_v) {
            return Some(false);
        }
        let key = (res_u, res_v);
        if self.failed.contains(&key) {
            return Some(false);
        }
        let (res_u, res_v) = key;
        let nbrs: Vec<usize> = self.g.neighbors(Part::U, u).intersection(&res_v).collect();
        let mut t = Vec::with_capacity(self.s);
        let found = self.choose_t(u, &nbrs, 0, &mut t, &res_u, &res_u, &res_v)?;
        if !found {
            self.failed.insert((res_u, res_v));
        }
        Some(found)
    }

    /// Uncovered `U` vertex of least residual degree, or `None` when nothing is left or some
    /// uncovered vertex has residual degree below `s` (signalled by `res_u` staying nonempty).
    fn pick(&self, res_u: &FixedBitSet, res_v: &FixedBitSet) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for u in res_u.ones() {
            let d = self.g.degree_into(Part::U, u, res_v);
            if d < self.s {
                return None;
            }
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, u));
            }
        }
        if res_v.ones().any(|v| self.g.degree_into(Part::V, v, res_u) < self.s) {
            return None;
        }
        best.map(|(_, u)| u)
    }

    /// Every residual component has as many `U` as `V` vertices, a multiple of `s`.
    fn components_ok(&self, res_u: &FixedBitSet, res_v: &FixedBitSet) -> bool {
        let mut left_u = res_u.clone();
        let mut left_v = res_v.clone();
        while let Some(start) = left_u.ones().next() {
            let (mut cu, mut cv) = (0usize, 0usize);
            let mut stack = vec![(Part::U, start)];
            left_u.set(start, false);
            while let Some((part, x)) = stack.pop() {
                let left_other = match part {
                    Part::U => {
                        cu += 1;
                        &mut left_v
                    }
                    Part::V => {
                        cv += 1;
                        &mut left_u
                    }
                };
                let next: Vec<usize> = self.g.neighbors(part, x).intersection(left_other).collect();
                for y in next {
                    left_other.set(y, false);
                    stack.push((part.other(), y));
                }
            }
            if cu != cv || cu % self.s != 0 {
                return false;
            }
        }
        left_v.is_clear()
    }

    /// Extends `t` to an `s`-subset of `nbrs` (indices ≥ `from`), keeping `common` = residual
    /// `U` vertices adjacent to all of `t`.
    #[allow(clippy::too_many_arguments)]
    fn choose_t(
        &mut self,
        u: usize,
        nbrs: &[usize],
        from: usize,
        t: &mut Vec<usize>,
        common: &FixedBitSet,
        res_u: &FixedBitSet,
        res_v: &FixedBitSet,
    ) -> Option<bool> {
        if t.len() == self.s {
            let others: Vec<usize> = common.ones().filter(|&x| x != u).collect();
            let mut side = vec![u];
            return self.choose_s(&others, 0, &mut side, t, res_u, res_v);
        }
        for i in from..nbrs.len() {
            if nbrs.len() - i < self.s - t.len() {
                break;
            }
            let next = common & self.g.neighbors(Part::V, nbrs[i]);
            if next.count_ones(..) < self.s {
                continue;
            }
            t.push(nbrs[i]);
            let r = self.choose_t(u, nbrs, i + 1, t, &next, res_u, res_v)?;
            t.pop();
            if r {
                return Some(true);
            }
        }
        Some(false)
    }

    fn choose_s(
        &mut self,
        others: &[usize],
        from: usize,
        side: &mut Vec<usize>,
        t: &[usize],
        res_u: &FixedBitSet,
        res_v: &FixedBitSet,
    ) -> Option<bool> {
        if side.len() == self.s {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let mut next_u = res_u.clone();
            let mut next_v = res_v.clone();
            side.iter().for_each(|&x| next_u.set(x, false));
            t.iter().for_each(|&y| next_v.set(y, false));
            self.copies.push(Biclique::new(side.clone(), t.to_vec()));
            if self.solve(next_u, next_v)? {
                return Some(true);
            }
            self.copies.pop();
            return Some(false);
        }
        for i in from..others.len() {
            if others.len() - i < self.s - side.len() {
                break;
            }
            side.push(others[i]);
            let r = self.choose_s(others, i + 1, side, t, res_u, res_v)?;
            side.pop();
            if r {
                return Some(true);
            }
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::{verify_tiling, BigraphBuilder};
    use crate::tiler::DEFAULT_NODE_BUDGET;

    #[test]
    fn complete_graph_tiles() {
        let g = BalancedBigraph::complete(4);
        let r = exact_tile(&g, 2, DEFAULT_NODE_BUDGET);
        let Search::Found(t) = r.outcome else { panic!() };
        assert_eq!(t.copies.len(), 2);
        assert_eq!(verify_tiling(&g, &t), Ok(()));
    }

    #[test]
    fn two_k33_cannot_be_tiled_by_k22() {
        let mut b = BigraphBuilder::new(6);
        b.add_complete(&[0, 1, 2], &[0, 1, 2]);
        b.add_complete(&[3, 4, 5], &[3, 4, 5]);
        assert!(exact_tile(&b.build(), 2, DEFAULT_NODE_BUDGET).outcome.is_absent());
    }

    #[test]
    fn divisibility_is_immediate() {
        let r = exact_tile(&BalancedBigraph::complete(5), 2, 0);
        assert_eq!(r, TileResult { outcome: Search::Absent, nodes: 0 });
    }

    #[test]
    fn budget_gives_unknown() {
        let g = crate::constructions::zhao_gadget(3, 1).unwrap().graph;
        assert_eq!(exact_tile(&g, 3, 1).outcome, Search::Unknown);
        assert_eq!(exact_tile(&g, 3, DEFAULT_NODE_BUDGET).outcome, Search::Absent);
    }

    #[test]
    fn sub_block_tiling() {
        let g = BalancedBigraph::complete(6);
        let mut us = FixedBitSet::with_capacity(6);
        let mut vs = FixedBitSet::with_capacity(6);
        [0, 2, 4, 5].iter().for_each(|&x| us.insert(x));
        [1, 2, 3, 5].iter().for_each(|&x| vs.insert(x));
        let r = exact_tile_within(&g, 2, &us, &vs, 100);
        let Search::Found(t) = r.outcome else { panic!() };
        assert_eq!(t.copies.len(), 2);
        assert!(t.copies.iter().all(|c| c.u.iter().all(|&u| us.contains(u))));
    }
}
