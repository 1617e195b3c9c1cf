//! Deleting source vertices from a cross block while keeping the other side's minimum degree up.

use crate::error::{Error, Result};

/// Nodes the exact fallback may expand before giving up.
const EXACT_BUDGET: u64 = 1_000_000;

/// A bipartite block seen from one side: `rows[i]` lists the columns adjacent to source vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossBlock {
    pub cols: usize,
    pub rows: Vec<Vec<usize>>,
}

impl CrossBlock {
    pub fn new(cols: usize, rows: Vec<Vec<usize>>) -> Self {
        debug_assert!(rows.iter().flatten().all(|&c| c < cols));
        CrossBlock { cols, rows }
    }

    pub fn col_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.cols];
        self.rows.iter().flatten().for_each(|&c| deg[c] += 1);
        deg
    }

    /// Minimum column degree; `None` when there are no columns.
    pub fn min_col_degree(&self) -> Option<usize> {
        self.col_degrees().into_iter().min()
    }

    /// The block restricted to the rows in `keep` (in that order).
    pub fn restrict(&self, keep: &[usize]) -> CrossBlock {
        CrossBlock::new(self.cols, keep.iter().map(|&r| self.rows[r].clone()).collect())
    }

    /// Rows and columns swapped.
    pub fn transpose(&self) -> CrossBlock {
        let mut t = vec![Vec::new(); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for &c in row {
                t[c].push(r);
            }
        }
        CrossBlock::new(self.rows.len(), t)
    }
}

/// Outcome of [`delete_preserving_min_degree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deletion {
    /// Surviving rows, ascending.
    pub kept: Vec<usize>,
    /// Deleted rows in deletion order.
    pub removed: Vec<usize>,
    /// Minimum column degree after deletion (`None` without columns).
    pub achieved: Option<usize>,
    /// True when the greedy order fell short and the exact search supplied the deletion set.
    pub used_exact: bool,
}

/// Removes exactly `count` rows so that every column keeps degree at least `floor`.
///
/// Each step deletes the lowest-index row whose removal leaves the minimum column degree as large
/// as possible. Removing row `r` lowers the minimum by one exactly when `r` touches a column that
/// currently attains it, so the greedy choice is the first row avoiding all such columns. If the
/// greedy order ends below `floor`, a budgeted exhaustive search over deletion sets decides.
pub fn delete_preserving_min_degree(
    block: &CrossBlock,
    count: usize,
    floor: usize,
) -> Result<Deletion> {
    let rows = block.rows.len();
    if count > rows {
        return Err(Error::InvalidParameter(format!(
            "cannot delete {count} of {rows} vertices"
        )));
    }
    let mut deg = block.col_degrees();
    let start = deg.iter().copied().min();
    if let Some(current) = start.filter(|&d| d < floor) {
        return Err(Error::FloorViolation {
            floor,
            achieved: current,
        });
    }

    let mut alive = vec![true; rows];
    let mut removed = Vec::with_capacity(count);
    for _ in 0..count {
        let min = deg.iter().copied().min().unwrap_or(usize::MAX);
        let pick = (0..rows)
            .filter(|&r| alive[r])
            .find(|&r| block.rows[r].iter().all(|&c| deg[c] > min))
            .or_else(|| (0..rows).find(|&r| alive[r]))
            .expect("count ≤ rows");
        alive[pick] = false;
        block.rows[pick].iter().for_each(|&c| deg[c] -= 1);
        removed.push(pick);
    }
    let achieved = deg.iter().copied().min();
    if achieved.is_none_or(|a| a >= floor) {
        return Ok(Deletion {
            kept: (0..rows).filter(|&r| alive[r]).collect(),
            removed,
            achieved,
            used_exact: false,
        });
    }

    let greedy_min = achieved.unwrap_or(0);
    let mut search = ExactDeletion {
        block,
        floor,
        deg: block.col_degrees(),
        chosen: Vec::with_capacity(count),
        nodes: 0,
    };
    match search.run(0, count) {
        Some(true) => {
            let removed = search.chosen.clone();
            let mut alive = vec![true; rows];
            removed.iter().for_each(|&r| alive[r] = false);
            Ok(Deletion {
                kept: (0..rows).filter(|&r| alive[r]).collect(),
                removed,
                achieved: search.deg.iter().copied().min(),
                used_exact: true,
            })
        }
        _ => Err(Error::FloorViolation {
            floor,
            achieved: greedy_min,
        }),
    }
}

struct ExactDeletion<'a> {
    block: &'a CrossBlock,
    floor: usize,
    deg: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
}

impl ExactDeletion<'_> {
    /// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
    fn run(&mut self, from: usize, left: usize) -> Option<bool> {
        if left == 0 {
            return Some(true);
        }
        let rows = self.block.rows.len();
        for r in from..rows {
            if rows - r < left {
                break;
            }
            self.nodes += 1;
            if self.nodes > EXACT_BUDGET {
                return None;
            }
            let row = &self.block.rows[r];
            if row.iter().any(|&c| self.deg[c] == self.floor) {
                continue;
            }
            row.iter().for_each(|&c| self.deg[c] -= 1);
            self.chosen.push(r);
            let res = self.run(r + 1, left - 1);
            if res == Some(true) {
                return res;
            }
            self.chosen.pop();
            row.iter().for_each(|&c| self.deg[c] += 1);
            res?;
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::pgraph::p_graph_lists;

    #[test]
    fn zero_count_is_identity() {
        let block = CrossBlock::new(7, p_graph_lists(7, 3).unwrap());
        let d = delete_preserving_min_degree(&block, 0, 3).unwrap();
        assert_eq!(d.kept, (0..7).collect::<Vec<_>>());
        assert_eq!(d.achieved, Some(3));
    }

    #[test]
    fn regular_block_loses_one_per_overlap() {
        // P(31, 3) has plenty of rows with disjoint neighbourhoods
        let block = CrossBlock::new(31, p_graph_lists(31, 3).unwrap());
        let d = delete_preserving_min_degree(&block, 2, 2).unwrap();
        assert_eq!(d.removed.len(), 2);
        let rest = block.restrict(&d.kept);
        assert!(rest.min_col_degree().unwrap() >= 2);
        assert!(!d.used_exact);
    }

    #[test]
    fn floor_above_current_minimum_fails_immediately() {
        let block = CrossBlock::new(7, p_graph_lists(7, 3).unwrap());
        assert!(matches!(
            delete_preserving_min_degree(&block, 1, 4),
            Err(Error::FloorViolation { floor: 4, achieved: 3 })
        ));
    }

    #[test]
    fn impossible_floor_is_reported() {
        // every two lines of the Fano plane meet, so two deletions drop some point to 1
        let block = CrossBlock::new(7, p_graph_lists(7, 3).unwrap());
        assert!(matches!(
            delete_preserving_min_degree(&block, 2, 2),
            Err(Error::FloorViolation { floor: 2, achieved: 1 })
        ));
    }

    #[test]
    fn exact_search_rescues_greedy() {
        // greedy deletes row 0 first, after which any second deletion empties a column
        let block = CrossBlock::new(2, vec![vec![0, 1], vec![0], vec![1]]);
        let d = delete_preserving_min_degree(&block, 2, 1).unwrap_or_else(|e| panic!("{e}"));
        assert!(d.used_exact);
        assert_eq!(d.removed, vec![1, 2]);
        assert!(block.restrict(&d.kept).min_col_degree().unwrap() >= 1);
    }
}
