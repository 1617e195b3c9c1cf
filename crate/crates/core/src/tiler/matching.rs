//! Maximum bipartite matching (Hopcroft–Karp) and the `s = 1` tiler built on it.

use std::collections::VecDeque;

use crate::bigraph::{BalancedBigraph, Biclique, Part, Tiling};

const FREE: usize = usize::MAX;

/// Maximum matching of a bipartite graph given as left adjacency lists over `0..n_right`.
/// Returns `mate[l]` for every left vertex.
pub fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let n_left = adj.len();
    let mut mate_l = vec![FREE; n_left];
    let mut mate_r = vec![FREE; n_right];
    let mut dist = vec![0usize; n_left];
    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..n_left {
            if mate_l[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                match mate_r[r] {
                    FREE => found = true,
                    l2 if dist[l2] == usize::MAX => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        for l in 0..n_left {
            if mate_l[l] == FREE {
                augment(l, adj, &mut mate_l, &mut mate_r, &mut dist);
            }
        }
    }
    mate_l
        .into_iter()
        .map(|r| (r != FREE).then_some(r))
        .collect()
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &r in &adj[l] {
        let next = mate_r[r];
        if next == FREE || (dist[next] == dist[l] + 1 && augment(next, adj, mate_l, mate_r, dist)) {
            mate_l[l] = r;
            mate_r[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

/// A perfect matching of `g` as a `K_{1,1}`-tiling, or `None` if there is none.
pub fn hall_tile(g: &BalancedBigraph) -> Option<Tiling> {
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|u| g.neighbors(Part::U, u).ones().collect()).collect();
    let mate = hopcroft_karp(&adj, g.n());
    let copies = mate
        .into_iter()
        .enumerate()
        .map(|(u, v)| v.map(|v| Biclique::new(vec![u], vec![v])))
        .collect::<Option<Vec<_>>>()?;
    Some(Tiling { s: 1, copies })
}

/// Whether every left vertex can receive `h` private right neighbours, i.e. whether the graph with
/// each left vertex replicated `h` times has a left-saturating matching. Returns the assignment.
pub fn h_fold_assignment(adj: &[Vec<usize>], n_right: usize, h: usize) -> Option<Vec<Vec<usize>>> {
    let replicated: Vec<Vec<usize>> = adj
        .iter()
        .flat_map(|row| std::iter::repeat_n(row.clone(), h))
        .collect();
    let mate = hopcroft_karp(&replicated, n_right);
    let mut out = vec![Vec::with_capacity(h); adj.len()];
    for (i, r) in mate.into_iter().enumerate() {
        out[i / h.max(1)].push(r?);
    }
    out.iter_mut().for_each(|v| v.sort_unstable());
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::verify_tiling;

    #[test]
    fn even_cycle_has_perfect_matching() {
        // C8: u_i ~ v_i, v_{i+1}
        let g = BalancedBigraph::from_edges(4, (0..4).flat_map(|i| [(i, i), (i, (i + 1) % 4)])).unwrap();
        let t = hall_tile(&g).unwrap();
        assert_eq!(t.copies.len(), 4);
        assert_eq!(verify_tiling(&g, &t), Ok(()));
    }

    #[test]
    fn isolated_pair_blocks_matching() {
        let g = BalancedBigraph::from_edges(2, [(0, 0)]).unwrap();
        assert!(hall_tile(&g).is_none());
    }

    #[test]
    fn matching_size_against_brute_force() {
        // all 3×3 graphs
        for mask in 0u32..512 {
            let adj: Vec<Vec<usize>> = (0..3)
                .map(|l| (0..3).filter(|r| mask >> (3 * l + r) & 1 == 1).collect())
                .collect();
            let hk = hopcroft_karp(&adj, 3).iter().flatten().count();
            let mut best = 0;
            for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                for keep in 0u32..8 {
                    let ok = (0..3).all(|l| keep >> l & 1 == 0 || adj[l].contains(&perm[l]));
                    if ok {
                        best = best.max(keep.count_ones() as usize);
                    }
                }
            }
            assert_eq!(hk, best, "mask {mask:09b}");
        }
    }

    #[test]
    fn h_fold() {
        let adj = vec![vec![0, 1, 2], vec![2, 3]];
        let a = h_fold_assignment(&adj, 4, 2).unwrap();
        assert_eq!(a[1], vec![2, 3]);
        assert_eq!(a[0], vec![0, 1]);
        assert!(h_fold_assignment(&adj, 4, 3).is_none());
    }
}
