//! Brute-force oracles sharing no code with the library searches.
#![allow(dead_code)]

use std::collections::HashSet;

use kss_core::{BalancedBigraph, BigraphBuilder};
use proptest::prelude::*;

/// A graph on `n + n` vertices from a row-major edge mask.
pub fn from_mask(n: usize, mask: &[bool]) -> BalancedBigraph {
    let mut b = BigraphBuilder::new(n);
    for u in 0..n {
        for v in 0..n {
            if mask[u * n + v] {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

/// Random balanced bigraphs with `n` in `lo..=hi`, edges kept with probability `rate`.
pub fn graphs(lo: usize, hi: usize, rate: f64) -> impl Strategy<Value = BalancedBigraph> {
    (lo..=hi).prop_flat_map(move |n| {
        prop::collection::vec(prop::bool::weighted(rate), n * n).prop_map(move |m| from_mask(n, &m))
    })
}

fn subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in pool.iter().enumerate() {
        for mut rest in subsets(&pool[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Tilability by plain enumeration: the lowest uncovered `U` vertex joins every `s`-subset of
/// uncovered `U` containing it, against every complete `s`-subset of uncovered `V`.
pub fn brute_tileable(g: &BalancedBigraph, s: usize) -> bool {
    let n = g.n();
    assert!(n <= 16, "oracle is for tiny graphs");
    if !n.is_multiple_of(s) {
        return false;
    }
    let full = (1u32 << n) - 1;
    let mut dead = HashSet::new();
    brute(g, s, full, full, &mut dead)
}

fn brute(g: &BalancedBigraph, s: usize, us: u32, vs: u32, dead: &mut HashSet<(u32, u32)>) -> bool {
    if us == 0 {
        return vs == 0;
    }
    if dead.contains(&(us, vs)) {
        return false;
    }
    let n = g.n();
    let first = us.trailing_zeros() as usize;
    let rest_u: Vec<usize> = (first + 1..n).filter(|&u| us >> u & 1 == 1).collect();
    let free_v: Vec<usize> = (0..n).filter(|&v| vs >> v & 1 == 1).collect();
    for mut side_u in subsets(&rest_u, s - 1) {
        side_u.push(first);
        for side_v in subsets(&free_v, s) {
            if side_u.iter().all(|&u| side_v.iter().all(|&v| g.has_edge(u, v))) {
                let mu = side_u.iter().fold(0u32, |m, &u| m | 1 << u);
                let mv = side_v.iter().fold(0u32, |m, &v| m | 1 << v);
                if brute(g, s, us & !mu, vs & !mv, dead) {
                    return true;
                }
            }
        }
    }
    dead.insert((us, vs));
    false
}

/// Largest number of disjoint `h`-stars with centres in `centers ⊆ U` and leaves in
/// `leaves ⊆ V`: the largest centre subset that can be given `h` private leaves each, decided
/// by Kuhn's augmenting paths on `h` copies of every centre.
pub fn brute_max_stars(g: &BalancedBigraph, centers: &[usize], leaves: &[usize], h: usize) -> usize {
    assert!(centers.len() <= 14);
    let mut best = 0;
    for mask in 0u32..1 << centers.len() {
        let chosen: Vec<usize> = (0..centers.len()).filter(|&i| mask >> i & 1 == 1).map(|i| centers[i]).collect();
        if chosen.len() > best && assignable(g, &chosen, leaves, h) {
            best = chosen.len();
        }
    }
    best
}

fn assignable(g: &BalancedBigraph, chosen: &[usize], leaves: &[usize], h: usize) -> bool {
    let slots: Vec<usize> = chosen.iter().flat_map(|&c| std::iter::repeat_n(c, h)).collect();
    let mut owner: Vec<Option<usize>> = vec![None; leaves.len()];
    for slot in 0..slots.len() {
        let mut seen = vec![false; leaves.len()];
        if !augment(g, &slots, leaves, slot, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(
    g: &BalancedBigraph,
    slots: &[usize],
    leaves: &[usize],
    slot: usize,
    owner: &mut Vec<Option<usize>>,
    seen: &mut Vec<bool>,
) -> bool {
    for (j, &v) in leaves.iter().enumerate() {
        if seen[j] || !g.has_edge(slots[slot], v) {
            continue;
        }
        seen[j] = true;
        if owner[j].is_none() || augment(g, slots, leaves, owner[j].unwrap(), owner, seen) {
            owner[j] = Some(slot);
            return true;
        }
    }
    false
}
