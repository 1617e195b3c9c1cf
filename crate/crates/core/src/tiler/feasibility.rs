//! Nonnegative integer solutions of the transfer system
//! `Σ n_i·x_i = X`, `Σ n_i·y_i = Y`, `Σ n_i = m` over a small set of columns `(x_i, y_i)`.
//!
//! Two independent solvers: a depth-first search over the columns with a failure memo, which also
//! produces a solution, and a forward reachability sweep over `(count, X, Y)` states, which only
//! decides existence. Callers that certify infeasibility should require both to agree.

use std::collections::HashSet;

/// Right-hand side of the system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Targets {
    pub x: usize,
    pub y: usize,
    pub count: usize,
}

/// A solution `n_i` (one per column), or `None` if the system is infeasible.
pub fn solve(columns: &[(usize, usize)], t: Targets) -> Option<Vec<usize>> {
    let mut dead = HashSet::new();
    let mut sol = vec![0; columns.len()];
    dfs(columns, 0, t, &mut sol, &mut dead).then_some(sol)
}

fn dfs(
    columns: &[(usize, usize)],
    i: usize,
    t: Targets,
    sol: &mut [usize],
    dead: &mut HashSet<(usize, Targets)>,
) -> bool {
    if i == columns.len() {
        return t == Targets { x: 0, y: 0, count: 0 };
    }
    if dead.contains(&(i, t)) {
        return false;
    }
    let (cx, cy) = columns[i];
    let mut k = 0;
    loop {
        if k * cx > t.x || k * cy > t.y || k > t.count {
            break;
        }
        let rest = Targets {
            x: t.x - k * cx,
            y: t.y - k * cy,
            count: t.count - k,
        };
        sol[i] = k;
        if dfs(columns, i + 1, rest, sol, dead) {
            return true;
        }
        k += 1;
    }
    sol[i] = 0;
    dead.insert((i, t));
    false
}

/// Existence by forward sweep: the set of `(count, x, y)` reachable with columns `0..=i` is
/// grown one column at a time, each column usable any number of times.
pub fn reachable(columns: &[(usize, usize)], t: Targets) -> bool {
    let (dx, dy) = (t.x + 1, t.y + 1);
    let idx = |c: usize, x: usize, y: usize| (c * dx + x) * dy + y;
    let mut seen = vec![false; (t.count + 1) * dx * dy];
    seen[idx(0, 0, 0)] = true;
    for &(cx, cy) in columns {
        // ascending count order lets one column be reused within the same pass
        for c in 0..t.count {
            for x in 0..dx {
                for y in 0..dy {
                    if seen[idx(c, x, y)] && x + cx <= t.x && y + cy <= t.y {
                        seen[idx(c + 1, x + cx, y + cy)] = true;
                    }
                }
            }
        }
    }
    seen[idx(t.count, t.x, t.y)]
}

/// Checks a claimed solution.
pub fn satisfies(columns: &[(usize, usize)], t: Targets, sol: &[usize]) -> bool {
    sol.len() == columns.len()
        && sol.iter().sum::<usize>() == t.count
        && columns.iter().zip(sol).map(|(c, n)| c.0 * n).sum::<usize>() == t.x
        && columns.iter().zip(sol).map(|(c, n)| c.1 * n).sum::<usize>() == t.y
}
