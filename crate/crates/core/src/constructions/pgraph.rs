//! `P(m, p)`: a `p`-regular balanced bipartite graph on `m + m` vertices with no `K_{2,2}`.
//!
//! Realized as the bipartite circulant `u_i ~ v_{i+d mod m}` for `d` in a Sidon set of size `p`.
//! Two `U` vertices `u_i, u_j` share `v` only if `i − j = d − d'` for `d, d'` in the set, which
//! happens for at most one pair because the differences are distinct.

use crate::bigraph::{BalancedBigraph, BigraphBuilder, Part};
use crate::constructions::sidon::sidon_set;
use crate::error::{Error, Result};

/// Adjacency lists of a circulant: entry `i` lists `(i + d) mod m` for each `d` in `set`.
pub fn circulant_lists(m: usize, set: &[usize]) -> Vec<Vec<usize>> {
    (0..m)
        .map(|i| {
            let mut row: Vec<usize> = set.iter().map(|&d| (i + d) % m).collect();
            row.sort_unstable();
            row
        })
        .collect()
}

/// Adjacency lists (U side) of `P(m, p)`.
pub fn p_graph_lists(m: usize, p: usize) -> Result<Vec<Vec<usize>>> {
    let set = sidon_set(m, p).ok_or(Error::NoSidonSet { m, p })?;
    let lists = circulant_lists(m, &set);
    check_c4_free(&lists, m)?;
    Ok(lists)
}

/// `P(m, p)` as a standalone graph, verified `p`-regular and `K_{2,2}`-free.
pub fn p_graph(m: usize, p: usize) -> Result<BalancedBigraph> {
    let lists = p_graph_lists(m, p)?;
    let mut b = BigraphBuilder::new(m);
    for (u, row) in lists.iter().enumerate() {
        for &v in row {
            b.add_edge(u, v);
        }
    }
    let g = b.build();
    for part in [Part::U, Part::V] {
        if let Some(x) = (0..m).find(|&x| g.degree(part, x) != p) {
            return Err(Error::IdentityViolation {
                family: "p_graph",
                what: format!("degree of {part}{x}"),
                expected: p as i64,
                actual: g.degree(part, x) as i64,
            });
        }
    }
    Ok(g)
}

/// Fails if two rows share two or more columns (a `K_{2,2}`).
pub(crate) fn check_c4_free(rows: &[Vec<usize>], cols: usize) -> Result<()> {
    let mut by_col: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for (i, row) in rows.iter().enumerate() {
        for &c in row {
            by_col[c].push(i);
        }
    }
    let mut pairs: Vec<(usize, usize)> = by_col
        .iter()
        .flat_map(|col| {
            col.iter()
                .enumerate()
                .flat_map(move |(a, &x)| col[a + 1..].iter().map(move |&y| (x, y)))
        })
        .collect();
    pairs.sort_unstable();
    match pairs.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::IdentityViolation {
            family: "p_graph",
            what: format!("common neighbours of rows {} and {}", w[0].0, w[0].1),
            expected: 1,
            actual: 2,
        }),
        None => Ok(()),
    }
}
