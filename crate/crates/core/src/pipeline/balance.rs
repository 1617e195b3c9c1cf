//! Making the two diagonal block pairs equal in size and divisible by `s`.
//!
//! Side 1 counts `U1` plus the flexible `U` vertices sent to it, and likewise on `V`. Flexible
//! vertices are the exceptional ones and the movable ones; each ends up in `absorb_into` and
//! later receives a private copy inside its side, which keeps the side counts balanced.
//!
//! Priority: (1) place flexible vertices so both side-1 counts hit a common multiple of `s`;
//! (2) otherwise reserve a few crossing copies from the proper blocks, planned over the realizable
//! crossing signatures and realized through star packings where the signature has a single
//! vertex in some block, then place flexible vertices again.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::bigraph::{BalancedBigraph, Biclique, Part, Vertex};
use crate::error::{Error, Result};
use crate::pipeline::partition::BlockPartition;
use crate::tiler::profile::{find_profiled, BlockDemand, ProfileQuery};
use crate::tiler::refute::CrossingSignature;
use crate::tiler::stars::star_packing;
use crate::tiler::Search;

/// Node budget for one copy search while balancing.
const COPY_BUDGET: u64 = 200_000;
/// Longest crossing-copy plan considered.
const MAX_PLAN_FACTOR: usize = 2;
/// Plans tried before giving up.
const MAX_PLAN_ATTEMPTS: usize = 64;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BalanceReport {
    /// Side-1 counts `(|U side|, |V side|)` before balancing with the default placement.
    pub before: (usize, usize),
    /// Common side-1 count after balancing (a multiple of `s`).
    pub target: usize,
    /// Flexible vertices placed against their default side.
    pub moved: usize,
    /// Crossing copies reserved, with how many came from a star packing.
    pub crossing_copies: usize,
    pub star_copies: usize,
}

/// A flexible vertex and the sides it may join.
#[derive(Clone, Copy, Debug)]
struct Flex {
    x: Vertex,
    default: usize,
    can: [bool; 3],
}

fn flexible(g: &BalancedBigraph, p: &BlockPartition) -> Result<Vec<Flex>> {
    let s = p.s;
    let mut out = Vec::new();
    for part in [Part::U, Part::V] {
        let own = p.side(part);
        let other = p.side(part.other());
        let sets = [FixedBitSet::default(), g.vertex_set_of(&other[1]), g.vertex_set_of(&other[2])];
        for &x in &own[0] {
            let d1 = g.degree_into(part, x, &sets[1]);
            let d2 = g.degree_into(part, x, &sets[2]);
            let can = [false, d1 >= s, d2 >= s];
            if !can[1] && !can[2] {
                return Err(Error::BalanceFailure(format!("exceptional {part}{x} has < s neighbours in both blocks")));
            }
            // larger relative degree decides the default side
            let rel1 = d1 * other[2].len().max(1);
            let rel2 = d2 * other[1].len().max(1);
            let default = if can[1] && (!can[2] || rel1 >= rel2) { 1 } else { 2 };
            out.push(Flex { x: Vertex { part, index: x }, default, can });
        }
    }
    for &u in &p.movable_u[2] {
        out.push(Flex { x: Vertex::u(u), default: 2, can: [false, true, true] });
    }
    for &v in &p.movable_v[1] {
        out.push(Flex { x: Vertex::v(v), default: 1, can: [false, true, true] });
    }
    Ok(out)
}

/// Side-1 count range and default for one part, given fixed (non-flexible) side-1 vertices.
fn range(fixed: usize, flex: &[Flex], part: Part) -> (usize, usize, usize) {
    let mine = flex.iter().filter(|f| f.x.part == part);
    let lo = fixed + mine.clone().filter(|f| !f.can[2]).count();
    let hi = fixed + mine.clone().filter(|f| f.can[1]).count();
    let def = fixed + mine.filter(|f| f.default == 1).count();
    (lo, hi, def)
}

/// The multiple of `s` in both ranges closest to the defaults.
fn best_target(s: usize, ru: (usize, usize, usize), rv: (usize, usize, usize)) -> Option<usize> {
    let lo = ru.0.max(rv.0);
    let hi = ru.1.min(rv.1);
    let first = lo.div_ceil(s) * s;
    (first..=hi)
        .step_by(s)
        .min_by_key(|&l| (l.abs_diff(ru.2) + l.abs_diff(rv.2), l))
}

/// Sends flexible vertices to sides so that exactly `target` land on side 1 per part,
/// preferring defaults.
fn place(flex: &[Flex], part: Part, fixed: usize, target: usize) -> (Vec<(Vertex, usize)>, usize) {
    let mine: Vec<&Flex> = flex.iter().filter(|f| f.x.part == part).collect();
    let mut side: Vec<usize> = mine.iter().map(|f| f.default).collect();
    let mut count = fixed + side.iter().filter(|&&i| i == 1).count();
    let mut moved = 0;
    for (i, f) in mine.iter().enumerate() {
        if count < target && side[i] == 2 && f.can[1] {
            side[i] = 1;
            count += 1;
            moved += 1;
        } else if count > target && side[i] == 1 && f.can[2] {
            side[i] = 2;
            count -= 1;
            moved += 1;
        }
    }
    debug_assert_eq!(count, target);
    (mine.iter().zip(side).map(|(f, i)| (f.x, i)).collect(), moved)
}

/// Reserved-copy pools: proper block vertices that are not flexible.
struct Pools {
    u: [FixedBitSet; 3],
    v: [FixedBitSet; 3],
}

impl Pools {
    fn new(g: &BalancedBigraph, p: &BlockPartition) -> Self {
        let mk = |xs: &[usize], drop: &[usize]| {
            let mut set = g.vertex_set_of(xs);
            drop.iter().for_each(|&x| set.set(x, false));
            set
        };
        Pools {
            u: [g.vertex_set(), mk(&p.u[1], &[]), mk(&p.u[2], &p.movable_u[2])],
            v: [g.vertex_set(), mk(&p.v[1], &p.movable_v[1]), mk(&p.v[2], &[])],
        }
    }

    fn query(&self, sig: CrossingSignature, forced: Vec<Vertex>) -> ProfileQuery {
        let d = |set: &FixedBitSet, count| BlockDemand { allowed: set.clone(), count };
        ProfileQuery {
            u: vec![d(&self.u[1], sig.x1), d(&self.u[2], sig.x2)],
            v: vec![d(&self.v[1], sig.y1), d(&self.v[2], sig.y2)],
            forced,
        }
    }

    fn take(&mut self, c: &Biclique) {
        for &u in &c.u {
            self.u[1].set(u, false);
            self.u[2].set(u, false);
        }
        for &v in &c.v {
            self.v[1].set(v, false);
            self.v[2].set(v, false);
        }
    }
}

/// Star shape of a signature: the single-vertex block holds the centre, and the leaves are the
/// vertices in the opposite block of the other diagonal pair. `(centre part, centre block, h)`.
fn star_shape(sig: CrossingSignature) -> Option<(Part, usize, usize)> {
    if sig.x1 == 1 && sig.y2 > 0 {
        Some((Part::U, 1, sig.y2))
    } else if sig.y2 == 1 && sig.x1 > 0 {
        Some((Part::V, 2, sig.x1))
    } else if sig.x2 == 1 && sig.y1 > 0 {
        Some((Part::U, 2, sig.y1))
    } else if sig.y1 == 1 && sig.x2 > 0 {
        Some((Part::V, 1, sig.x2))
    } else {
        None
    }
}

/// Realizes `count` disjoint copies of `sig`, first by completing stars, then directly.
fn realize(
    g: &BalancedBigraph,
    pools: &mut Pools,
    sig: CrossingSignature,
    count: usize,
    out: &mut Vec<Biclique>,
) -> Option<usize> {
    let mut from_stars = 0;
    let mut remaining = count;
    if let Some((part, block, h)) = star_shape(sig) {
        let (own, other) = match part {
            Part::U => (&pools.u, &pools.v),
            Part::V => (&pools.v, &pools.u),
        };
        let centers: Vec<usize> = own[block].ones().collect();
        let leaves: Vec<usize> = other[3 - block].ones().collect();
        let packing = star_packing(g, part, &centers, &leaves, h, count);
        for (c, ls) in packing.stars {
            if remaining == 0 {
                break;
            }
            let mut forced = vec![Vertex { part, index: c }];
            forced.extend(ls.iter().map(|&l| Vertex { part: part.other(), index: l }));
            if let Search::Found(copy) = find_profiled(g, &pools.query(sig, forced), COPY_BUDGET).outcome {
                pools.take(&copy);
                out.push(copy);
                remaining -= 1;
                from_stars += 1;
            }
        }
    }
    for _ in 0..remaining {
        match find_profiled(g, &pools.query(sig, vec![]), COPY_BUDGET).outcome {
            Search::Found(copy) => {
                pools.take(&copy);
                out.push(copy);
            }
            _ => return None,
        }
    }
    Some(from_stars)
}

/// Balances `p` in place, recording reserved copies and absorption targets.
pub fn balance_blocks(g: &BalancedBigraph, p: &mut BlockPartition) -> Result<BalanceReport> {
    let s = p.s;
    let flex = flexible(g, p)?;
    let fixed_u = p.u[1].len();
    let fixed_v = p.v[1].len() - p.movable_v[1].len();
    let ru = range(fixed_u, &flex, Part::U);
    let rv = range(fixed_v, &flex, Part::V);
    let mut report = BalanceReport {
        before: (ru.2, rv.2),
        ..Default::default()
    };

    let mut reserved = Vec::new();
    let target = match best_target(s, ru, rv) {
        Some(t) => t,
        None => {
            let (t, copies, stars) = plan_crossing(g, p, ru, rv)?;
            report.crossing_copies = copies.len();
            report.star_copies = stars;
            reserved = copies;
            t
        }
    };
    let used_u1: usize = reserved.iter().map(|c| c.u.iter().filter(|u| p.u[1].contains(u)).count()).sum();
    let used_v1: usize = reserved.iter().map(|c| c.v.iter().filter(|v| p.v[1].contains(v)).count()).sum();
    let (pu, mu) = place(&flex, Part::U, fixed_u - used_u1, target);
    let (pv, mv) = place(&flex, Part::V, fixed_v - used_v1, target);
    report.moved = mu + mv;
    report.target = target;

    // blocks keep only proper, unreserved, unflexible vertices
    let mut gone_u = g.vertex_set();
    let mut gone_v = g.vertex_set();
    for c in &reserved {
        c.u.iter().for_each(|&u| gone_u.insert(u));
        c.v.iter().for_each(|&v| gone_v.insert(v));
    }
    let targets: Vec<(Vertex, usize)> = pu.into_iter().chain(pv).collect();
    for (x, _) in &targets {
        match x.part {
            Part::U => gone_u.insert(x.index),
            Part::V => gone_v.insert(x.index),
        }
    }
    for i in 1..=2 {
        p.u[i].retain(|&u| !gone_u.contains(u));
        p.v[i].retain(|&v| !gone_v.contains(v));
    }
    p.u[0] = targets.iter().filter(|(x, _)| x.part == Part::U).map(|(x, _)| x.index).collect();
    p.v[0] = targets.iter().filter(|(x, _)| x.part == Part::V).map(|(x, _)| x.index).collect();
    p.u[0].sort_unstable();
    p.v[0].sort_unstable();
    p.absorb_into = targets;
    p.reserved.extend(reserved);

    let side1 = |part: Part| p.side(part)[1].len() + p.absorb_into.iter().filter(|(x, i)| x.part == part && *i == 1).count();
    if side1(Part::U) != target || side1(Part::V) != target || target % s != 0 {
        return Err(Error::BalanceFailure(format!(
            "side 1 holds {} U and {} V vertices, wanted {target}",
            side1(Part::U),
            side1(Part::V)
        )));
    }
    Ok(report)
}

/// Breadth-first over multisets of realizable crossing signatures, shortest first, until one
/// admits a common target and can be realized disjointly.
fn plan_crossing(
    g: &BalancedBigraph,
    p: &BlockPartition,
    ru: (usize, usize, usize),
    rv: (usize, usize, usize),
) -> Result<(usize, Vec<Biclique>, usize)> {
    let s = p.s;
    let pools = Pools::new(g, p);
    let mut sigs: Vec<CrossingSignature> = CrossingSignature::all(s)
        .filter(|g| g.is_crossing())
        .filter(|sig| matches!(find_profiled(g, &pools.query(*sig, vec![]), COPY_BUDGET).outcome, Search::Found(_)))
        .collect();
    // star-shaped signatures first, then by size of the shift they cause
    sigs.sort_by_key(|g| (star_shape(*g).is_none(), g.x1.abs_diff(g.y1), *g));
    if sigs.is_empty() {
        return Err(Error::BalanceFailure("no crossing copy exists and flexible vertices cannot balance".into()));
    }
    let shift = |r: (usize, usize, usize), by: usize| -> Option<(usize, usize, usize)> {
        Some((r.0.checked_sub(by)?, r.1.checked_sub(by)?, r.2.saturating_sub(by)))
    };
    let mut queue: VecDeque<Vec<usize>> = VecDeque::from([vec![]]);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut attempts = 0;
    while let Some(plan) = queue.pop_front() {
        if plan.len() > MAX_PLAN_FACTOR * s {
            break;
        }
        let x: usize = plan.iter().map(|&i| sigs[i].x1).sum();
        let y: usize = plan.iter().map(|&i| sigs[i].y1).sum();
        if let (Some(a), Some(b)) = (shift(ru, x), shift(rv, y)) {
            if let Some(target) = (!plan.is_empty()).then(|| best_target(s, a, b)).flatten() {
                attempts += 1;
                let mut pools = Pools::new(g, p);
                let mut copies = Vec::new();
                let mut stars = 0;
                let mut ok = true;
                let mut i = 0;
                while i < plan.len() {
                    let count = plan[i..].iter().take_while(|&&j| j == plan[i]).count();
                    match realize(g, &mut pools, sigs[plan[i]], count, &mut copies) {
                        Some(k) => stars += k,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                    i += count;
                }
                if ok {
                    return Ok((target, copies, stars));
                }
                if attempts >= MAX_PLAN_ATTEMPTS {
                    break;
                }
            }
        }
        let last = plan.last().copied().unwrap_or(0);
        for j in last..sigs.len() {
            let mut next = plan.clone();
            next.push(j);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Err(Error::BalanceFailure(format!(
        "no realizable crossing plan of at most {} copies balances the sides",
        MAX_PLAN_FACTOR * s
    )))
}
