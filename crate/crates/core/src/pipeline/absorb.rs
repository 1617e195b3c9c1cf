//! Private copies for exceptional and relocated vertices.

use crate::bigraph::{BalancedBigraph, Biclique, Part, Vertex};
use crate::error::{Error, Result};
use crate::pipeline::partition::BlockPartition;
use crate::tiler::profile::{find_profiled, BlockDemand, ProfileQuery};
use crate::tiler::Search;

const ABSORB_BUDGET: u64 = 200_000;

/// Gives every `(x, i)` in `absorb_into` a copy made of `x`, `s−1` vertices of its own part in
/// block `i`, and `s` vertices of the other part in block `i`. Vertices with the fewest
/// neighbours in their target block go first. The copies are appended to `reserved`.
pub fn absorb_exceptional(g: &BalancedBigraph, p: &mut BlockPartition) -> Result<usize> {
    let s = p.s;
    let mut todo = std::mem::take(&mut p.absorb_into);
    todo.sort_by_key(|&(x, i)| {
        let into = g.vertex_set_of(&p.side(x.part.other())[i]);
        (g.degree_into(x.part, x.index, &into), x)
    });
    let absorbed = todo.len();
    for (x, i) in todo {
        let own = &p.side(x.part)[i];
        let other = &p.side(x.part.other())[i];
        let own_demand = BlockDemand::new(g.n(), own.iter().copied().chain([x.index]), s);
        let other_demand = BlockDemand::new(g.n(), other.iter().copied(), s);
        let (u, v) = match x.part {
            Part::U => (own_demand, other_demand),
            Part::V => (other_demand, own_demand),
        };
        let q = ProfileQuery {
            u: vec![u],
            v: vec![v],
            forced: vec![x],
        };
        let copy = match find_profiled(g, &q, ABSORB_BUDGET).outcome {
            Search::Found(c) => c,
            _ => {
                return Err(Error::AbsorptionFailure(format!(
                    "no copy around {}{} inside block {i}",
                    x.part, x.index
                )))
            }
        };
        remove(p, &copy, x);
        p.reserved.push(copy);
    }
    Ok(absorbed)
}

fn remove(p: &mut BlockPartition, c: &Biclique, x: Vertex) {
    for side in p.u.iter_mut() {
        side.retain(|u| !c.u.contains(u));
    }
    for side in p.v.iter_mut() {
        side.retain(|v| !c.v.contains(v));
    }
    debug_assert!(!p.side(x.part)[0].contains(&x.index));
}
