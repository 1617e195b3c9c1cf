//! The six-block partition `U0, U1, U2 | V0, V1, V2` and its structural inequalities.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::bigraph::{BalancedBigraph, Biclique, Part, Vertex};
use crate::pipeline::alpha::{Alpha, Expr};

/// Blocks are sorted index lists. Index 0 holds the exceptional vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub s: usize,
    pub k1: usize,
    pub k2: usize,
    pub alpha: Alpha,
    pub u: [Vec<usize>; 3],
    pub v: [Vec<usize>; 3],
    /// `U_i^M` for `i = 1, 2` (slot 0 unused).
    pub movable_u: [Vec<usize>; 3],
    /// `V_i^M` for `i = 1, 2` (slot 0 unused).
    pub movable_v: [Vec<usize>; 3],
    /// Copies committed before the diagonal blocks are tiled.
    pub reserved: Vec<Biclique>,
    /// Vertices waiting for a private copy, with the diagonal block (1 or 2) that will host it.
    pub absorb_into: Vec<(Vertex, usize)>,
}

impl BlockPartition {
    pub fn n(&self) -> usize {
        self.u.iter().map(Vec::len).sum()
    }

    pub fn side(&self, part: Part) -> &[Vec<usize>; 3] {
        match part {
            Part::U => &self.u,
            Part::V => &self.v,
        }
    }

    /// Each side is a partition of `0..n` (reserved copies excluded from the blocks are
    /// accounted separately by the pipeline).
    pub fn is_partition_of(&self, n: usize) -> bool {
        [&self.u, &self.v].iter().all(|side| {
            let mut seen = FixedBitSet::with_capacity(n);
            side.iter().flatten().all(|&x| x < n && !seen.put(x)) && seen.count_ones(..) == n
        })
    }

    pub fn sizes(&self) -> [usize; 6] {
        [
            self.u[0].len(),
            self.u[1].len(),
            self.u[2].len(),
            self.v[0].len(),
            self.v[1].len(),
            self.v[2].len(),
        ]
    }
}

impl fmt::Display for BlockPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [u0, u1, u2, v0, v1, v2] = self.sizes();
        write!(f, "|U0|={u0} |U1|={u1} |U2|={u2} |V0|={v0} |V1|={v1} |V2|={v2}")
    }
}

/// One evaluated inequality of the structural claim.
#[derive(Clone, Debug, PartialEq)]
pub struct ClaimCheck {
    pub item: u8,
    pub what: String,
    /// The measured side, e.g. a block size or a minimum degree.
    pub value: i64,
    /// The bound, rounded for display.
    pub bound: f64,
    pub holds: bool,
}

fn min_deg(g: &BalancedBigraph, part: Part, xs: &[usize], into: &[usize]) -> Option<usize> {
    let set = g.vertex_set_of(into);
    xs.iter().map(|&x| g.degree_into(part, x, &set)).min()
}

fn max_deg(g: &BalancedBigraph, part: Part, xs: &[usize], into: &[usize]) -> Option<usize> {
    let set = g.vertex_set_of(into);
    xs.iter().map(|&x| g.degree_into(part, x, &set)).max()
}

/// Evaluates all seven items on `p` (with `t = α^{1/3}`):
///
/// 1. `k1s − t²k2s ≤ |U1|, |V1| ≤ k1s + t²k1s`
/// 2. `k2s − t²k1s ≤ |U2|, |V2| ≤ k2s + t²k2s`
/// 3. `|U0|, |V0| ≤ t²n`
/// 4. `δ(U0,V1) ≥ t·k1s − t²k2s`, `δ(U0,V2) ≥ t·k1s − t²k1s`
/// 5. `δ(V0,U1) ≥ t·k2s − t²k2s`, `δ(V0,U2) ≥ t·k2s − t²k1s`
/// 6. `δ(G[Ui,Vi]) ≥ k_is − t·k_is − t²k_{3−i}s`
/// 7. `Δ(U1,V2) ≤ 2t·k1s`, `Δ(V2,U1) ≤ 2t·k2s`
///
/// Minima over empty sets are vacuous.
pub fn claim_checks(g: &BalancedBigraph, p: &BlockPartition) -> Vec<ClaimCheck> {
    let a = &p.alpha;
    let (k1s, k2s) = ((p.k1 * p.s) as i64, (p.k2 * p.s) as i64);
    let n = g.n() as i64;
    let mut out = Vec::new();
    let mut push = |item: u8, what: String, value: i64, bound: Expr, ge: bool| {
        let v = Expr::int(value);
        let holds = if ge { a.ge(&v, &bound) } else { a.le(&v, &bound) };
        out.push(ClaimCheck {
            item,
            what,
            value,
            bound: a.approx(&bound),
            holds,
        });
    };
    for (item, i, lo, hi) in [
        (1, 1, Expr::int(k1s).sub(&Expr::t2(k2s)), Expr::int(k1s).add(&Expr::t2(k1s))),
        (2, 2, Expr::int(k2s).sub(&Expr::t2(k1s)), Expr::int(k2s).add(&Expr::t2(k2s))),
    ] {
        for (name, block) in [("U", &p.u[i]), ("V", &p.v[i])] {
            let len = block.len() as i64;
            push(item, format!("|{name}{i}| ≥ lower"), len, lo.clone(), true);
            push(item, format!("|{name}{i}| ≤ upper"), len, hi.clone(), false);
        }
    }
    push(3, "|U0| ≤ t²n".into(), p.u[0].len() as i64, Expr::t2(n), false);
    push(3, "|V0| ≤ t²n".into(), p.v[0].len() as i64, Expr::t2(n), false);
    let exc = [
        (4, Part::U, 1, Expr::t(k1s).sub(&Expr::t2(k2s)), "δ(U0,V1)"),
        (4, Part::U, 2, Expr::t(k1s).sub(&Expr::t2(k1s)), "δ(U0,V2)"),
        (5, Part::V, 1, Expr::t(k2s).sub(&Expr::t2(k2s)), "δ(V0,U1)"),
        (5, Part::V, 2, Expr::t(k2s).sub(&Expr::t2(k1s)), "δ(V0,U2)"),
    ];
    for (item, part, i, bound, what) in exc {
        let into = &p.side(part.other())[i];
        if let Some(d) = min_deg(g, part, &p.side(part)[0], into) {
            push(item, what.into(), d as i64, bound, true);
        }
    }
    for (i, ki, kj) in [(1, k1s, k2s), (2, k2s, k1s)] {
        let du = min_deg(g, Part::U, &p.u[i], &p.v[i]);
        let dv = min_deg(g, Part::V, &p.v[i], &p.u[i]);
        if let Some(d) = du.into_iter().chain(dv).min() {
            let bound = Expr::int(ki).sub(&Expr::t(ki)).sub(&Expr::t2(kj));
            push(6, format!("δ(G[U{i},V{i}])"), d as i64, bound, true);
        }
    }
    if let Some(d) = max_deg(g, Part::U, &p.u[1], &p.v[2]) {
        push(7, "Δ(U1,V2)".into(), d as i64, Expr::t(2 * k1s), false);
    }
    if let Some(d) = max_deg(g, Part::V, &p.v[2], &p.u[1]) {
        push(7, "Δ(V2,U1)".into(), d as i64, Expr::t(2 * k2s), false);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::Ratio;

    fn two_blocks(n: usize, a: usize) -> (BalancedBigraph, BlockPartition) {
        let mut b = crate::bigraph::BigraphBuilder::new(n);
        let lo: Vec<usize> = (0..a).collect();
        let hi: Vec<usize> = (a..n).collect();
        b.add_complete(&lo, &lo);
        b.add_complete(&hi, &hi);
        let p = BlockPartition {
            s: 2,
            k1: a / 2,
            k2: (n - a) / 2,
            alpha: Alpha::new(Ratio::new(1, 64)).unwrap(),
            u: [vec![], lo.clone(), hi.clone()],
            v: [vec![], lo, hi],
            movable_u: Default::default(),
            movable_v: Default::default(),
            reserved: vec![],
            absorb_into: vec![],
        };
        (b.build(), p)
    }

    #[test]
    fn exact_blocks_satisfy_everything() {
        let (g, p) = two_blocks(20, 8);
        assert!(p.is_partition_of(20));
        let checks = claim_checks(&g, &p);
        assert!(checks.iter().all(|c| c.holds), "{checks:?}");
        let items: std::collections::BTreeSet<u8> = checks.iter().map(|c| c.item).collect();
        // no exceptional vertices, so items 4 and 5 are vacuous
        assert_eq!(items.into_iter().collect::<Vec<_>>(), vec![1, 2, 3, 6, 7]);
    }

    #[test]
    fn oversized_block_fails_item_one() {
        let (g, mut p) = two_blocks(20, 8);
        p.k1 = 2;
        p.k2 = 8;
        let bad: Vec<u8> = claim_checks(&g, &p).iter().filter(|c| !c.holds).map(|c| c.item).collect();
        assert!(bad.contains(&1));
    }
}
