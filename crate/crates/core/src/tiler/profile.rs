//! Exact search for one `K_{s,s}` with a prescribed number of vertices in each of several blocks.
//!
//! Only one side is enumerated. Once those vertices are fixed, their common neighbourhood `C`
//! is known, and the other side can be filled from `C` block by block, because every vertex of
//! `C` is adjacent to all chosen vertices. A branch is feasible iff `C` still meets every
//! demand on the other side.

use fixedbitset::FixedBitSet;

use crate::bigraph::{BalancedBigraph, Biclique, Part, Vertex};
use crate::tiler::Search;

/// `count` vertices are wanted from `allowed`.
#[derive(Clone, Debug)]
pub struct BlockDemand {
    pub allowed: FixedBitSet,
    pub count: usize,
}

impl BlockDemand {
    pub fn new(n: usize, allowed: impl IntoIterator<Item = usize>, count: usize) -> Self {
        let mut set = FixedBitSet::with_capacity(n);
        allowed.into_iter().for_each(|x| set.insert(x));
        BlockDemand { allowed: set, count }
    }
}

/// Demands on `U` and on `V`; blocks on one side must be pairwise disjoint. Every forced vertex
/// must lie in a block of its part and is counted against that block.
#[derive(Clone, Debug, Default)]
pub struct ProfileQuery {
    pub u: Vec<BlockDemand>,
    pub v: Vec<BlockDemand>,
    pub forced: Vec<Vertex>,
}

impl ProfileQuery {
    fn side(&self, part: Part) -> &[BlockDemand] {
        match part {
            Part::U => &self.u,
            Part::V => &self.v,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProfileSearch {
    pub outcome: Search<Biclique>,
    pub nodes: u64,
}

/// Finds a biclique meeting `q`, enumerating the side with fewer candidate combinations.
pub fn find_profiled(g: &BalancedBigraph, q: &ProfileQuery, budget: u64) -> ProfileSearch {
    let absent = ProfileSearch {
        outcome: Search::Absent,
        nodes: 0,
    };
    let su: usize = q.u.iter().map(|b| b.count).sum();
    let sv: usize = q.v.iter().map(|b| b.count).sum();
    if su != sv {
        return absent;
    }
    for part in [Part::U, Part::V] {
        let blocks = q.side(part);
        debug_assert!(blocks.iter().enumerate().all(|(i, a)| blocks[i + 1..]
            .iter()
            .all(|b| a.allowed.is_disjoint(&b.allowed))));
        for b in blocks {
            let forced_here = q
                .forced
                .iter()
                .filter(|f| f.part == part && b.allowed.contains(f.index))
                .count();
            if forced_here > b.count || b.allowed.count_ones(..) < b.count {
                return absent;
            }
        }
    }
    if q.forced.iter().any(|f| !q.side(f.part).iter().any(|b| b.allowed.contains(f.index))) {
        return absent;
    }
    let cost = |part: Part| -> f64 {
        q.side(part)
            .iter()
            .map(|b| ln_binom(b.allowed.count_ones(..), b.count))
            .sum()
    };
    let enum_part = if cost(Part::U) <= cost(Part::V) { Part::U } else { Part::V };
    let mut search = Enumerator::new(g, q, enum_part, budget);
    let outcome = search.run();
    ProfileSearch {
        outcome,
        nodes: search.nodes,
    }
}

fn ln_binom(n: usize, k: usize) -> f64 {
    (0..k.min(n)).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum()
}

struct Enumerator<'a> {
    g: &'a BalancedBigraph,
    part: Part,
    /// Per enumerated block: remaining count and eligible candidates.
    blocks: Vec<(usize, Vec<usize>)>,
    /// Forced vertices on the enumerated side.
    fixed: Vec<usize>,
    /// Demands on the filled side and the forced vertices there.
    other: &'a [BlockDemand],
    other_forced: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
    start: FixedBitSet,
}

impl<'a> Enumerator<'a> {
    fn new(g: &'a BalancedBigraph, q: &'a ProfileQuery, part: Part, budget: u64) -> Self {
        let fixed: Vec<usize> = q.forced.iter().filter(|f| f.part == part).map(|f| f.index).collect();
        let other_forced: Vec<usize> =
            q.forced.iter().filter(|f| f.part != part).map(|f| f.index).collect();
        let other = q.side(part.other());
        let mut start = FixedBitSet::with_capacity(g.n());
        other.iter().for_each(|b| start.union_with(&b.allowed));
        for &f in &fixed {
            start.intersect_with(g.neighbors(part, f));
        }
        let eligible = |x: usize| {
            other_forced.iter().all(|&y| g.neighbors(part, x).contains(y))
                && other
                    .iter()
                    .all(|b| g.degree_into(part, x, &b.allowed) >= b.count)
        };
        let blocks = q
            .side(part)
            .iter()
            .map(|b| {
                let forced_here = fixed.iter().filter(|&&f| b.allowed.contains(f)).count();
                let cands = b
                    .allowed
                    .ones()
                    .filter(|x| !fixed.contains(x))
                    .filter(|&x| eligible(x))
                    .collect();
                (b.count - forced_here, cands)
            })
            .collect();
        Enumerator {
            g,
            part,
            blocks,
            fixed,
            other,
            other_forced,
            chosen: Vec::new(),
            nodes: 0,
            budget,
            start,
        }
    }

    fn run(&mut self) -> Search<Biclique> {
        let common = self.start.clone();
        if !self.other_forced.iter().all(|&y| common.contains(y)) {
            return Search::Absent;
        }
        match self.descend(0, 0, 0, &common) {
            Some(Some(b)) => Search::Found(b),
            Some(None) => Search::Absent,
            None => Search::Unknown,
        }
    }

    fn feasible(&self, common: &FixedBitSet) -> bool {
        self.other
            .iter()
            .all(|b| b.allowed.intersection_count(common) >= b.count)
    }

    /// `None` when the budget runs out.
    fn descend(
        &mut self,
        block: usize,
        picked: usize,
        from: usize,
        common: &FixedBitSet,
    ) -> Option<Option<Biclique>> {
        if !self.feasible(common) {
            return Some(None);
        }
        if block == self.blocks.len() {
            return Some(Some(self.complete(common)));
        }
        let (need, ref cands) = self.blocks[block];
        if picked == need {
            return self.descend(block + 1, 0, 0, common);
        }
        let cands = cands.clone();
        for i in from..cands.len() {
            if cands.len() - i < need - picked {
                break;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let x = cands[i];
            let next = common & self.g.neighbors(self.part, x);
            self.chosen.push(x);
            let r = self.descend(block, picked + 1, i + 1, &next)?;
            if r.is_some() {
                return Some(r);
            }
            self.chosen.pop();
        }
        Some(None)
    }

    fn complete(&self, common: &FixedBitSet) -> Biclique {
        let mut side: Vec<usize> = self.fixed.iter().chain(&self.chosen).copied().collect();
        let mut other = Vec::new();
        for b in self.other {
            let mut taken: Vec<usize> = self
                .other_forced
                .iter()
                .copied()
                .filter(|&y| b.allowed.contains(y))
                .collect();
            for y in common.ones().filter(|&y| b.allowed.contains(y)) {
                if taken.len() == b.count {
                    break;
                }
                if !taken.contains(&y) {
                    taken.push(y);
                }
            }
            other.extend(taken);
        }
        side.sort_unstable();
        match self.part {
            Part::U => Biclique::new(side, other),
            Part::V => Biclique::new(other, side),
        }
    }
}
