//! Block extraction from the extremal witness, and the movable-vertex classification.
//!
//! With `U2' = U ∖ U1'`, `V1' = V ∖ V2'` and `t = α^{1/3}`:
//! `U1 = {x : deg(x,V2') < t·k1s}`, `V2 = {x : deg(x,U1') < t·k2s}`,
//! `U2 = {x : deg(x,V1') < t·k1s or deg(x,V2') > (1−t)·k2s}`,
//! `V1 = {x : deg(x,U2') < t·k2s or deg(x,U1') > (1−t)·k1s}`, and the rest is exceptional.
//! A vertex meeting both conditions of its side goes to `U1` (resp. `V2`).

use crate::bigraph::{BalancedBigraph, Part};
use crate::error::{Error, Result};
use crate::pipeline::alpha::{Alpha, Expr};
use crate::pipeline::detect::Detection;
use crate::pipeline::partition::{claim_checks, BlockPartition};

/// Builds the six blocks and checks every claim item, failing on the first violated one.
pub fn preprocess(g: &BalancedBigraph, s: usize, det: &Detection, alpha: &Alpha) -> Result<BlockPartition> {
    let (k1s, k2s) = ((det.k1 * s) as i64, (det.k2 * s) as i64);
    if det.u1p.len() as i64 != k1s || det.v2p.len() as i64 != k2s {
        return Err(Error::InvalidParameter(format!(
            "witness sizes {}/{} do not match k1·s = {k1s}, k2·s = {k2s}",
            det.u1p.len(),
            det.v2p.len()
        )));
    }
    let n = g.n();
    let u1p = g.vertex_set_of(&det.u1p);
    let v2p = g.vertex_set_of(&det.v2p);
    let mut u2p = g.full_set();
    u2p.difference_with(&u1p);
    let mut v1p = g.full_set();
    v1p.difference_with(&v2p);

    let below = |deg: usize, k: i64| alpha.lt(&Expr::int(deg as i64), &Expr::t(k));
    let above_complement = |deg: usize, k: i64| alpha.gt(&Expr::int(deg as i64), &Expr::int(k).sub(&Expr::t(k)));

    let mut u: [Vec<usize>; 3] = Default::default();
    for x in 0..n {
        let to_v2 = g.degree_into(Part::U, x, &v2p);
        let to_v1 = g.degree_into(Part::U, x, &v1p);
        let block = if below(to_v2, k1s) {
            1
        } else if below(to_v1, k1s) || above_complement(to_v2, k2s) {
            2
        } else {
            0
        };
        u[block].push(x);
    }
    let mut v: [Vec<usize>; 3] = Default::default();
    for y in 0..n {
        let to_u1 = g.degree_into(Part::V, y, &u1p);
        let to_u2 = g.degree_into(Part::V, y, &u2p);
        let block = if below(to_u1, k2s) {
            2
        } else if below(to_u2, k2s) || above_complement(to_u1, k1s) {
            1
        } else {
            0
        };
        v[block].push(y);
    }
    let p = BlockPartition {
        s,
        k1: det.k1,
        k2: det.k2,
        alpha: *alpha,
        u,
        v,
        movable_u: Default::default(),
        movable_v: Default::default(),
        reserved: Vec::new(),
        absorb_into: Vec::new(),
    };
    if let Some(bad) = claim_checks(g, &p).into_iter().find(|c| !c.holds) {
        return Err(Error::ClaimViolation {
            item: bad.item,
            detail: format!("{} = {} against bound {:.3}", bad.what, bad.value, bad.bound),
        });
    }
    Ok(p)
}

/// Marks `U_i^M = {u ∈ Ui : deg(u, V_{3−i}) > t·n}` and likewise on `V`. Fails if `U_1^M` or
/// `V_2^M` is nonempty, which the claim items rule out.
pub fn classify_movable(g: &BalancedBigraph, mut p: BlockPartition) -> Result<BlockPartition> {
    let n = g.n() as i64;
    let alpha = p.alpha;
    let movable = |part: Part, xs: &[usize], into: &[usize]| -> Vec<usize> {
        let set = g.vertex_set_of(into);
        xs.iter()
            .copied()
            .filter(|&x| alpha.gt(&Expr::int(g.degree_into(part, x, &set) as i64), &Expr::t(n)))
            .collect()
    };
    for i in 1..=2 {
        p.movable_u[i] = movable(Part::U, &p.u[i], &p.v[3 - i]);
        p.movable_v[i] = movable(Part::V, &p.v[i], &p.u[3 - i]);
    }
    if !p.movable_u[1].is_empty() || !p.movable_v[2].is_empty() {
        return Err(Error::MovableInvariant(format!(
            "U1^M = {:?}, V2^M = {:?}",
            p.movable_u[1], p.movable_v[2]
        )));
    }
    Ok(p)
}
