//! Heuristic search for the extremal witness: `|U1'| = k1·s`, `|V2'| = k2·s` and
//! `d(U1', V2') ≤ α`.

use num::rational::Ratio;

use crate::bigraph::{BalancedBigraph, Part};
use crate::pipeline::alpha::Alpha;

/// Rounds of alternating refinement before giving up on a fixpoint.
pub const DETECT_ROUNDS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detection {
    pub k1: usize,
    pub k2: usize,
    /// Sorted.
    pub u1p: Vec<usize>,
    /// Sorted.
    pub v2p: Vec<usize>,
    pub density: Ratio<u64>,
    pub rounds: usize,
}

/// The `count` vertices of `part` with the fewest neighbours in `into`, ties by index, sorted.
fn lowest(g: &BalancedBigraph, part: Part, into: &[usize], count: usize) -> Vec<usize> {
    let set = g.vertex_set_of(into);
    let mut order: Vec<(usize, usize)> = (0..g.n()).map(|x| (g.degree_into(part, x, &set), x)).collect();
    order.sort_unstable();
    let mut out: Vec<usize> = order.into_iter().take(count).map(|(_, x)| x).collect();
    out.sort_unstable();
    out
}

/// Alternates `U1' ← argmin deg(·, V2')`, `V2' ← argmin deg(·, U1')` to a fixpoint (at most
/// [`DETECT_ROUNDS`] rounds) and reports the pair if its density is at most `α`, compared exactly.
/// Two starts are tried, keeping the sparser result: `V2'` as the `k2·s` lowest-degree `V`
/// vertices, and `U1'` as the `k1·s` lowest-degree `U` vertices. `k1` comes from
/// `δ_U = k1·s + s + r`; no witness is sought when `k1 = 0`.
pub fn detect_extremal(g: &BalancedBigraph, s: usize, alpha: &Alpha) -> Option<Detection> {
    let dec = g.min_degrees(s).decomposition?;
    let (k1, k2) = (dec.k1, dec.k2);
    if k1 == 0 || k2 == 0 {
        return None;
    }
    let all: Vec<usize> = (0..g.n()).collect();
    let from_v = lowest(g, Part::V, &all, k2 * s);
    let from_u = lowest(g, Part::V, &lowest(g, Part::U, &all, k1 * s), k2 * s);
    let best = [from_v, from_u]
        .into_iter()
        .filter_map(|v2p| alternate(g, s, k1, k2, v2p))
        .min_by_key(|d| d.density)?;
    (best.density <= alpha.value()).then_some(best)
}

fn alternate(g: &BalancedBigraph, s: usize, k1: usize, k2: usize, mut v2p: Vec<usize>) -> Option<Detection> {
    let mut u1p = lowest(g, Part::U, &v2p, k1 * s);
    let mut rounds = 1;
    while rounds < DETECT_ROUNDS {
        let next_v = lowest(g, Part::V, &u1p, k2 * s);
        let next_u = lowest(g, Part::U, &next_v, k1 * s);
        rounds += 1;
        if next_v == v2p && next_u == u1p {
            break;
        }
        v2p = next_v;
        u1p = next_u;
    }
    let density = g.density(&u1p, &v2p).ok()?;
    Some(Detection {
        k1,
        k2,
        u1p,
        v2p,
        density,
        rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::zhao_gadget;

    #[test]
    fn complete_graph_has_no_witness() {
        let a = Alpha::new(Ratio::new(1, 2)).unwrap();
        assert!(detect_extremal(&BalancedBigraph::complete(12), 2, &a).is_none());
    }

    #[test]
    fn zhao_gadget_density_floor() {
        // δ_U = 12 = 3·3 + 3, so |U1'| = 9 and |V2'| = 12 while the V2 block has only 10
        // vertices: every witness meets 2 vertices of V1 plus one matching edge per U1' vertex
        let gad = zhao_gadget(3, 3).unwrap();
        let d = detect_extremal(&gad.graph, 3, &Alpha::new(Ratio::new(27, 64)).unwrap()).expect("detected");
        assert_eq!((d.u1p.len(), d.v2p.len()), (9, 12));
        assert_eq!(d.density, Ratio::new(1, 4));
        assert!(detect_extremal(&gad.graph, 3, &Alpha::new(Ratio::new(1, 20)).unwrap()).is_none());
    }

    #[test]
    fn both_starts_are_needed() {
        // blocks of 10 and 14: the V-degree start converges to the wrong orientation
        let mut b = crate::bigraph::BigraphBuilder::new(24);
        let lo: Vec<usize> = (0..10).collect();
        let hi: Vec<usize> = (10..24).collect();
        b.add_complete(&lo, &lo);
        b.add_complete(&hi, &hi);
        let g = b.build();
        let d = detect_extremal(&g, 2, &Alpha::new(Ratio::new(1, 8)).unwrap()).expect("detected");
        assert!(d.u1p.iter().all(|&u| u < 10));
        assert_eq!(d.density, Ratio::new(1, 8));
    }
}
