//! Vertex-disjoint `h`-stars between two opposite vertex sets.
//!
//! A set of centres `C` can carry disjoint `h`-stars iff the graph with every centre replicated
//! `h` times has a matching saturating all replicas. Maximum packings are found by
//! include/exclude search over centres with that test at each inclusion.

use fixedbitset::FixedBitSet;
use num::rational::Ratio;

use crate::bigraph::{BalancedBigraph, Part};
use crate::tiler::matching::h_fold_assignment;
use crate::tiler::Search;

/// Node budget for the exact maximum packing.
pub const STAR_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarPacking {
    /// Part holding the centres; leaves are in the other part.
    pub from: Part,
    pub h: usize,
    /// `(centre, leaves)` with `h` sorted leaves each.
    pub stars: Vec<(usize, Vec<usize>)>,
    /// Fewer stars than requested exist (or were found within budget).
    pub shortfall: bool,
}

impl StarPacking {
    pub fn to(&self) -> Part {
        self.from.other()
    }

    pub fn len(&self) -> usize {
        self.stars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stars.is_empty()
    }

    pub fn centers(&self) -> impl Iterator<Item = usize> + '_ {
        self.stars.iter().map(|(c, _)| *c)
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        self.stars.iter().flat_map(|(_, l)| l.iter().copied())
    }

    /// Stars are disjoint, have `h` leaves each, and every leaf is adjacent to its centre.
    pub fn is_valid_in(&self, g: &BalancedBigraph) -> bool {
        let mut seen_c = FixedBitSet::with_capacity(g.n());
        let mut seen_l = FixedBitSet::with_capacity(g.n());
        self.stars.iter().all(|(c, leaves)| {
            !seen_c.put(*c)
                && leaves.len() == self.h
                && leaves
                    .iter()
                    .all(|&l| !seen_l.put(l) && g.neighbors(self.from, *c).contains(l))
        })
    }
}

/// At least `needed` disjoint `h`-stars with centres in `centers ⊆ from` and leaves in
/// `leaves ⊆ from.other()`: greedy first, then an exact maximum packing if greedy falls short.
pub fn star_packing(
    g: &BalancedBigraph,
    from: Part,
    centers: &[usize],
    leaves: &[usize],
    h: usize,
    needed: usize,
) -> StarPacking {
    let greedy = greedy_stars(g, from, centers, leaves, h, needed);
    if greedy.len() >= needed {
        return StarPacking {
            from,
            h,
            stars: greedy,
            shortfall: false,
        };
    }
    let (stars, _complete) = max_star_packing(g, from, centers, leaves, h, needed, STAR_BUDGET);
    let stars = if stars.len() >= greedy.len() { stars } else { greedy };
    StarPacking {
        from,
        h,
        shortfall: stars.len() < needed,
        stars,
    }
}

/// Centres in ascending order of available degree; each takes the `h` available leaves that are
/// least in demand by the remaining centres.
fn greedy_stars(
    g: &BalancedBigraph,
    from: Part,
    centers: &[usize],
    leaves: &[usize],
    h: usize,
    needed: usize,
) -> Vec<(usize, Vec<usize>)> {
    let n = g.n();
    let mut free = FixedBitSet::with_capacity(n);
    leaves.iter().for_each(|&l| free.insert(l));
    let mut center_set = FixedBitSet::with_capacity(n);
    centers.iter().for_each(|&c| center_set.insert(c));
    let mut order: Vec<usize> = centers.to_vec();
    order.sort_by_key(|&c| (g.degree_into(from, c, &free), c));
    let mut out = Vec::new();
    for c in order {
        if out.len() >= needed {
            break;
        }
        center_set.set(c, false);
        let mut avail: Vec<usize> = g.neighbors(from, c).intersection(&free).collect();
        if avail.len() < h {
            continue;
        }
        avail.sort_by_key(|&l| (g.degree_into(from.other(), l, &center_set), l));
        let mut chosen: Vec<usize> = avail[..h].to_vec();
        chosen.sort_unstable();
        chosen.iter().for_each(|&l| free.set(l, false));
        out.push((c, chosen));
    }
    out
}

/// Maximum packing by include/exclude search, stopping early once `stop_at` stars are found.
/// The flag is false when the budget ran out (the packing is then only a lower bound).
pub fn max_star_packing(
    g: &BalancedBigraph,
    from: Part,
    centers: &[usize],
    leaves: &[usize],
    h: usize,
    stop_at: usize,
    budget: u64,
) -> (Vec<(usize, Vec<usize>)>, bool) {
    let leaf_index: Vec<usize> = leaves.to_vec();
    let mut pos = vec![usize::MAX; g.n()];
    leaf_index.iter().enumerate().for_each(|(i, &l)| pos[l] = i);
    let mut cands: Vec<(usize, Vec<usize>)> = centers
        .iter()
        .map(|&c| {
            let row: Vec<usize> = g
                .neighbors(from, c)
                .ones()
                .filter(|&l| pos[l] != usize::MAX)
                .map(|l| pos[l])
                .collect();
            (c, row)
        })
        .filter(|(_, row)| row.len() >= h)
        .collect();
    cands.sort_by_key(|(c, row)| (row.len(), *c));
    let cap = leaves.len().checked_div(h).unwrap_or(cands.len());
    let mut s = MaxStars {
        cands: &cands,
        n_leaves: leaves.len(),
        h,
        limit: stop_at.min(cap).min(cands.len()),
        best: Vec::new(),
        chosen: Vec::new(),
        nodes: 0,
        budget,
    };
    let complete = s.run(0);
    let best = s.best.clone();
    let rows: Vec<Vec<usize>> = best.iter().map(|&i| cands[i].1.clone()).collect();
    let assignment = h_fold_assignment(&rows, leaves.len(), h).expect("chosen set is feasible");
    let stars = best
        .iter()
        .zip(assignment)
        .map(|(&i, ls)| {
            let mut ls: Vec<usize> = ls.into_iter().map(|l| leaf_index[l]).collect();
            ls.sort_unstable();
            (cands[i].0, ls)
        })
        .collect();
    (stars, complete)
}

struct MaxStars<'a> {
    cands: &'a [(usize, Vec<usize>)],
    n_leaves: usize,
    h: usize,
    limit: usize,
    best: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl MaxStars<'_> {
    /// False when the budget ran out.
    fn run(&mut self, i: usize) -> bool {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if self.best.len() >= self.limit {
            return true;
        }
        if i == self.cands.len() || self.chosen.len() + (self.cands.len() - i) <= self.best.len() {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        self.chosen.push(i);
        let rows: Vec<Vec<usize>> = self.chosen.iter().map(|&c| self.cands[c].1.clone()).collect();
        if h_fold_assignment(&rows, self.n_leaves, self.h).is_some() && !self.run(i + 1) {
            return false;
        }
        self.chosen.pop();
        self.run(i + 1)
    }
}

/// The two lower bounds on disjoint `h`-star counts, with `δ = δ(A,B)` and `Δ = Δ(B,A)`:
/// `f_h ≥ (δ−h+1)|A| / (hΔ+δ−h+1)` (stars from `A` to `B`) and
/// `g_h ≥ (δ|A|−(h−1)|B|) / (Δ+hδ−h+1)` (stars from `B` to `A`). Nonpositive numerators give 0.
pub fn star_lower_bounds(delta: usize, big_delta: usize, a: usize, b: usize, h: usize) -> (Ratio<i64>, Ratio<i64>) {
    let (d, dd, a, b, h) = (delta as i64, big_delta as i64, a as i64, b as i64, h as i64);
    let bound = |num: i64, den: i64| {
        if num <= 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(num, den)
        }
    };
    (
        bound((d - h + 1) * a, h * dd + d - h + 1),
        bound(d * a - (h - 1) * b, dd + h * d - h + 1),
    )
}

/// `A` star systems from `A` and `b` from `B`, all pairwise vertex-disjoint. Stars from `A` have
/// `h_a` leaves in `B`, stars from `B` have `h_b` leaves in `A`. Both greedy orders are tried
/// (the side whose centres have less degree slack first), then an exact search over centre sets.
#[allow(clippy::too_many_arguments)]
pub fn bidirectional_star_systems(
    g: &BalancedBigraph,
    a_part: Part,
    a_set: &[usize],
    b_set: &[usize],
    a: usize,
    h_a: usize,
    b: usize,
    h_b: usize,
    budget: u64,
) -> Search<(StarPacking, StarPacking)> {
    let b_part = a_part.other();
    let pack = |from: Part, stars: Vec<(usize, Vec<usize>)>, h: usize| StarPacking {
        from,
        h,
        stars,
        shortfall: false,
    };
    if a == 0 && b == 0 {
        return Search::Found((pack(a_part, vec![], h_a), pack(b_part, vec![], h_b)));
    }
    if a * (h_a + 1) + b * (h_b + 1) > a_set.len() + b_set.len()
        || a + b * h_b > a_set.len()
        || b + a * h_a > b_set.len()
    {
        return Search::Absent;
    }

    let slack = |from: Part, centers: &[usize], other: &[usize], h: usize| -> i64 {
        let set = set_of(g.n(), other);
        centers
            .iter()
            .map(|&c| g.degree_into(from, c, &set) as i64 - h as i64)
            .min()
            .unwrap_or(i64::MAX)
    };
    let b_first = slack(b_part, b_set, a_set, h_b) <= slack(a_part, a_set, b_set, h_a);
    for first_b in [b_first, !b_first] {
        if let Some((sa, sb)) = greedy_pair(g, a_part, a_set, b_set, a, h_a, b, h_b, first_b) {
            return Search::Found((pack(a_part, sa, h_a), pack(b_part, sb, h_b)));
        }
    }

    let mut ex = Bidirectional {
        g,
        a_part,
        a_set,
        b_set,
        a,
        h_a,
        b,
        h_b,
        ca: Vec::new(),
        cb: Vec::new(),
        nodes: 0,
        budget,
    };
    match ex.choose_a(0) {
        Some(Some((sa, sb))) => Search::Found((pack(a_part, sa, h_a), pack(b_part, sb, h_b))),
        Some(None) => Search::Absent,
        None => Search::Unknown,
    }
}

fn set_of(n: usize, xs: &[usize]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    xs.iter().for_each(|&x| s.insert(x));
    s
}

type Stars = Vec<(usize, Vec<usize>)>;

#[allow(clippy::too_many_arguments)]
fn greedy_pair(
    g: &BalancedBigraph,
    a_part: Part,
    a_set: &[usize],
    b_set: &[usize],
    a: usize,
    h_a: usize,
    b: usize,
    h_b: usize,
    b_first: bool,
) -> Option<(Stars, Stars)> {
    let minus = |xs: &[usize], used: &[usize]| -> Vec<usize> {
        xs.iter().copied().filter(|x| !used.contains(x)).collect()
    };
    if b_first {
        let sb = greedy_stars(g, a_part.other(), b_set, a_set, h_b, b);
        if sb.len() < b {
            return None;
        }
        let used_b: Vec<usize> = sb.iter().map(|(c, _)| *c).collect();
        let used_a: Vec<usize> = sb.iter().flat_map(|(_, l)| l.clone()).collect();
        let sa = greedy_stars(g, a_part, &minus(a_set, &used_a), &minus(b_set, &used_b), h_a, a);
        (sa.len() >= a).then_some((sa, sb))
    } else {
        let sa = greedy_stars(g, a_part, a_set, b_set, h_a, a);
        if sa.len() < a {
            return None;
        }
        let used_a: Vec<usize> = sa.iter().map(|(c, _)| *c).collect();
        let used_b: Vec<usize> = sa.iter().flat_map(|(_, l)| l.clone()).collect();
        let sb = greedy_stars(g, a_part.other(), &minus(b_set, &used_b), &minus(a_set, &used_a), h_b, b);
        (sb.len() >= b).then_some((sa, sb))
    }
}

struct Bidirectional<'a> {
    g: &'a BalancedBigraph,
    a_part: Part,
    a_set: &'a [usize],
    b_set: &'a [usize],
    a: usize,
    h_a: usize,
    b: usize,
    h_b: usize,
    ca: Vec<usize>,
    cb: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Bidirectional<'_> {
    /// Leaves for `centers` (in `from`) drawn from `pool`, or `None` if impossible.
    fn assign(&self, from: Part, centers: &[usize], pool: &[usize], h: usize) -> Option<Stars> {
        let mut pos = vec![usize::MAX; self.g.n()];
        pool.iter().enumerate().for_each(|(i, &x)| pos[x] = i);
        let rows: Vec<Vec<usize>> = centers
            .iter()
            .map(|&c| self.g.neighbors(from, c).ones().filter(|&l| pos[l] != usize::MAX).map(|l| pos[l]).collect())
            .collect();
        let asg = h_fold_assignment(&rows, pool.len(), h)?;
        Some(
            centers
                .iter()
                .zip(asg)
                .map(|(&c, ls)| {
                    let mut ls: Vec<usize> = ls.into_iter().map(|i| pool[i]).collect();
                    ls.sort_unstable();
                    (c, ls)
                })
                .collect(),
        )
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }

    /// `None` on budget exhaustion, `Some(None)` when this branch has no solution.
    fn choose_a(&mut self, from: usize) -> Option<Option<(Stars, Stars)>> {
        if self.ca.len() == self.a {
            return self.choose_b(0);
        }
        for i in from..self.a_set.len() {
            if self.a_set.len() - i < self.a - self.ca.len() {
                break;
            }
            if !self.tick() {
                return None;
            }
            self.ca.push(self.a_set[i]);
            let ok = self.assign(self.a_part, &self.ca.clone(), self.b_set, self.h_a).is_some();
            if ok {
                if let Some(found) = self.choose_a(i + 1)? {
                    return Some(Some(found));
                }
            }
            self.ca.pop();
        }
        Some(None)
    }

    fn choose_b(&mut self, from: usize) -> Option<Option<(Stars, Stars)>> {
        let pool_a: Vec<usize> = self.a_set.iter().copied().filter(|x| !self.ca.contains(x)).collect();
        if self.cb.len() == self.b {
            let pool_b: Vec<usize> = self.b_set.iter().copied().filter(|x| !self.cb.contains(x)).collect();
            let sa = self.assign(self.a_part, &self.ca, &pool_b, self.h_a);
            let sb = self.assign(self.a_part.other(), &self.cb, &pool_a, self.h_b);
            return Some(sa.zip(sb));
        }
        for i in from..self.b_set.len() {
            if self.b_set.len() - i < self.b - self.cb.len() {
                break;
            }
            if !self.tick() {
                return None;
            }
            self.cb.push(self.b_set[i]);
            let ok = self
                .assign(self.a_part.other(), &self.cb.clone(), &pool_a, self.h_b)
                .is_some();
            if ok {
                if let Some(found) = self.choose_b(i + 1)? {
                    return Some(Some(found));
                }
            }
            self.cb.pop();
        }
        Some(None)
    }
}
