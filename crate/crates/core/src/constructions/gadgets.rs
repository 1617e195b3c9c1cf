//! The two-block extremal gadgets: complete diagonal blocks `U1×V1`, `U2×V2` joined by sparse
//! cross blocks.

use crate::bigraph::{BalancedBigraph, BigraphBuilder};
use crate::constructions::deletion::{delete_preserving_min_degree, CrossBlock, Deletion};
use crate::constructions::pgraph::{check_c4_free, circulant_lists};
use crate::constructions::sidon::{algebraic_candidates, find_sidon_set, search_sidon_set, SidonSearch};
use crate::constructions::{identity, BlockSizes, Family, Gadget, GadgetSpec};
use crate::error::{Error, Result};
use crate::threshold::{c_of_s, ceil_sqrt};

/// Node budget for the Sidon searches behind gadget cross blocks.
const GADGET_SIDON_BUDGET: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn family(self) -> Family {
        match self {
            Parity::Even => Family::UnbalancedEven,
            Parity::Odd => Family::UnbalancedOdd,
        }
    }
}

/// Adjacency lists of `P(m, p)`, falling back to an algebraic Sidon set when the search stalls.
fn p_lists(m: usize, p: i64) -> Result<Vec<Vec<usize>>> {
    let p = usize::try_from(p)
        .map_err(|_| Error::InvalidParameter(format!("P({m}, {p}) needs p ≥ 0")))?;
    let set = find_sidon_set(m, p, GADGET_SIDON_BUDGET).ok_or(Error::NoSidonSet { m, p })?;
    let lists = circulant_lists(m, &set);
    check_c4_free(&lists, m)?;
    Ok(lists)
}

/// Complete diagonal blocks plus the two cross blocks, given as local adjacency lists
/// (`u1_v2[i]` ⊆ local `V2` indices of `U1` vertex `i`; `u2_v1[i]` likewise).
fn assemble(sizes: BlockSizes, u1_v2: &[Vec<usize>], u2_v1: &[Vec<usize>]) -> BalancedBigraph {
    debug_assert_eq!(sizes.n_u(), sizes.n_v());
    debug_assert_eq!(u1_v2.len(), sizes.u1);
    debug_assert_eq!(u2_v1.len(), sizes.u2);
    let mut b = BigraphBuilder::new(sizes.n_u());
    let u1: Vec<usize> = sizes.u1_range().collect();
    let u2: Vec<usize> = sizes.u2_range().collect();
    let v1: Vec<usize> = sizes.v1_range().collect();
    let v2: Vec<usize> = sizes.v2_range().collect();
    b.add_complete(&u1, &v1);
    b.add_complete(&u2, &v2);
    for (i, row) in u1_v2.iter().enumerate() {
        for &c in row {
            b.add_edge(u1[i], v2[c]);
        }
    }
    for (i, row) in u2_v1.iter().enumerate() {
        for &c in row {
            b.add_edge(u2[i], v1[c]);
        }
    }
    b.build()
}

/// Zhao's construction: `n = (2k+1)s`, `G[U1,V2] ≅ P(ks+1, s−2)`, `G[U2,V1] ≅ P(ks+s−1, 2s−4)`.
pub fn zhao_gadget(s: usize, k: usize) -> Result<Gadget> {
    if s < 2 || k < 1 {
        return Err(Error::InvalidParameter(format!(
            "zhao gadget needs s ≥ 2 and k ≥ 1, got s = {s}, k = {k}"
        )));
    }
    let sizes = BlockSizes {
        u1: k * s + 1,
        u2: k * s + s - 1,
        v1: k * s + s - 1,
        v2: k * s + 1,
    };
    let u1_v2 = p_lists(k * s + 1, s as i64 - 2)?;
    let u2_v1 = p_lists(k * s + s - 1, 2 * s as i64 - 4)?;
    let graph = assemble(sizes, &u1_v2, &u2_v1);
    let n = graph.n();
    let prof = graph.min_degrees(s);
    let expected = (n + 3 * s - 6) as i64;
    identity(Family::Zhao, "δ_U+δ_V", expected, prof.delta_sum() as i64)?;
    identity(Family::Zhao, "n", ((2 * k + 1) * s) as i64, n as i64)?;
    Ok(Gadget {
        spec: GadgetSpec {
            family: Family::Zhao,
            s,
            params: vec![("k".into(), k as u64)],
            block_sizes: sizes,
        },
        graph,
        notes: vec![format!("δ_U+δ_V = {} = n+3s−6", prof.delta_sum())],
    })
}

/// A cross block realizing `P(m, p)` whose rows are labelled so that a family of rows with
/// pairwise disjoint neighbourhoods comes first, followed by the deletion of `count` rows.
///
/// The relabelling is a graph isomorphism; it only steers the lowest-index tie-breaking of the
/// greedy deletion towards a deletion set that keeps every column at degree `≥ p − 1`.
pub fn deletable_block(m: usize, p: usize, count: usize, floor: usize) -> Result<(CrossBlock, Deletion)> {
    let mut candidates: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    if let SidonSearch::Found(set) = search_sidon_set(m, p, GADGET_SIDON_BUDGET) {
        let disjoint = disjoint_rows(m, &set, count);
        candidates.push((set, disjoint));
    }
    if count > 0 {
        for (set, q) in algebraic_candidates(m, p).filter(|&(_, q)| q > count) {
            // the differences of a Bose set avoid the multiples of q + 1
            let rows = (0..count).map(|c| c * (q + 1)).collect();
            candidates.push((set, rows));
        }
    }
    let mut last = Error::NoSidonSet { m, p };
    for (set, first) in candidates {
        let lists = circulant_lists(m, &set);
        let mut order = first.clone();
        let mut taken = vec![false; m];
        first.iter().for_each(|&r| taken[r] = true);
        order.extend((0..m).filter(|&r| !taken[r]));
        let block = CrossBlock::new(m, order.iter().map(|&r| lists[r].clone()).collect());
        check_c4_free(&block.rows, m)?;
        match delete_preserving_min_degree(&block, count, floor) {
            Ok(d) => return Ok((block, d)),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Greedy family of up to `want` rows of the circulant with pairwise disjoint neighbourhoods.
fn disjoint_rows(m: usize, set: &[usize], want: usize) -> Vec<usize> {
    let mut diff = vec![false; m];
    for &a in set {
        for &b in set {
            diff[(a + m - b) % m] = true;
        }
    }
    let mut rows: Vec<usize> = Vec::new();
    for r in 0..m {
        if rows.len() == want {
            break;
        }
        if rows.iter().all(|&t| !diff[(r + m - t) % m]) {
            rows.push(r);
        }
    }
    rows
}

/// The unbalanced family, even (`m = 2k`) or odd (`m = 2k+1`) number of blocks.
///
/// Even: `|U1| = (k−j)s+1`, `|U2| = (k+j)s−1`, `|V1| = (k−j+1)s−1`, `|V2| = (k+j−1)s+1`;
/// `G[U1,V2]` is `P((k+j−1)s+1, s−2)` minus `(2j−1)s` rows and `G[U2,V1]` is
/// `P((k+j)s−1, (2j+1)s−5)` minus `(2j−1)s` columns.
/// Odd: `|U1| = (k−j)s+1`, `|U2| = (k+j)s+s−1`, `|V1| = (k−j)s+s−1`, `|V2| = (k+j)s+1`;
/// cross blocks `P((k+j)s+1, s−2)` and `P((k+j)s+s−1, (2j+2)s−5)`, each minus `2js`.
pub fn unbalanced_gadget(s: usize, k: usize, j: usize, parity: Parity) -> Result<Gadget> {
    let plan = UnbalancedPlan::new(s, k, j, parity)?;
    let (block1, del1) = deletable_block(plan.m1, plan.p1, plan.count, plan.floor1)?;
    let (block2, del2) = deletable_block(plan.m2, plan.p2, plan.count, plan.floor2)?;
    let u1_v2: Vec<Vec<usize>> = del1.kept.iter().map(|&r| block1.rows[r].clone()).collect();
    // block 2 rows are V1' vertices; the kept ones become V1 = 0..|V1|
    let u2_v1 = block2.restrict(&del2.kept).transpose().rows;
    let sizes = plan.sizes;
    let graph = assemble(sizes, &u1_v2, &u2_v1);
    let family = parity.family();
    let n = graph.n();
    let prof = graph.min_degrees(s);
    let sum = prof.delta_sum() as i64;
    identity(family, "n", plan.n as i64, n as i64)?;
    identity(family, "δ_U+δ_V", (n + 3 * s) as i64 - 7, sum)?;
    let gap = prof.delta_gap();
    let (lo, hi) = gap_window(s, j);
    if gap < lo || gap > hi {
        return Err(Error::IdentityViolation {
            family: family.name(),
            what: format!("δ_V−δ_U (allowed {lo}..={hi})"),
            expected: hi,
            actual: gap,
        });
    }
    Ok(Gadget {
        spec: GadgetSpec {
            family,
            s,
            params: vec![("k".into(), k as u64), ("j".into(), j as u64)],
            block_sizes: sizes,
        },
        graph,
        notes: vec![
            format!("δ_U+δ_V = {sum} = n+3s−7"),
            format!("δ_V−δ_U = {gap} ∈ [{lo}, {hi}] = [2sj−s−1, 2sj−1]"),
        ],
    })
}

/// `[2sj − s − 1, 2sj − 1]`.
pub fn gap_window(s: usize, j: usize) -> (i64, i64) {
    let (s, j) = (s as i64, j as i64);
    (2 * s * j - s - 1, 2 * s * j - 1)
}

/// Sizes and cross-block parameters of the unbalanced family, before any graph is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnbalancedPlan {
    pub n: usize,
    pub sizes: BlockSizes,
    /// `U1' × V2` is `P(m1, p1)`.
    pub m1: usize,
    pub p1: usize,
    /// `U2 × V1'` is `P(m2, p2)`.
    pub m2: usize,
    pub p2: usize,
    /// Rows deleted from each of `U1'` and `V1'`.
    pub count: usize,
    pub floor1: usize,
    pub floor2: usize,
}

impl UnbalancedPlan {
    pub fn new(s: usize, k: usize, j: usize, parity: Parity) -> Result<Self> {
        let bad = |why: &str| {
            Error::InvalidParameter(format!(
                "unbalanced gadget (s = {s}, k = {k}, j = {j}, {parity:?}): {why}"
            ))
        };
        if s < 2 {
            return Err(bad("needs s ≥ 2"));
        }
        if k < j.max(1) {
            return Err(bad("needs k ≥ max(j, 1)"));
        }
        let (si, ji) = (s as i64, j as i64);
        let (n, sizes, m1, p1, m2, p2, count) = match parity {
            Parity::Even => {
                let count = (2 * ji - 1) * si;
                if count < 0 {
                    return Err(bad("deletes (2j−1)s < 0 vertices"));
                }
                (
                    2 * k * s,
                    BlockSizes {
                        u1: (k - j) * s + 1,
                        u2: (k + j) * s - 1,
                        v1: (k - j + 1) * s - 1,
                        v2: (k + j - 1) * s + 1,
                    },
                    (k + j - 1) * s + 1,
                    si - 2,
                    (k + j) * s - 1,
                    (2 * ji + 1) * si - 5,
                    count as usize,
                )
            }
            Parity::Odd => (
                (2 * k + 1) * s,
                BlockSizes {
                    u1: (k - j) * s + 1,
                    u2: (k + j) * s + s - 1,
                    v1: (k - j) * s + s - 1,
                    v2: (k + j) * s + 1,
                },
                (k + j) * s + 1,
                si - 2,
                (k + j) * s + s - 1,
                (2 * ji + 2) * si - 5,
                2 * j * s,
            ),
        };
        if p2 < 0 {
            return Err(bad("the U2×V1 block would be P(m, p) with p < 0"));
        }
        let p1 = p1 as usize;
        let p2 = p2 as usize;
        Ok(UnbalancedPlan {
            n,
            sizes,
            m1,
            p1,
            m2,
            p2,
            count,
            floor1: p1.saturating_sub(1),
            floor2: p2.saturating_sub(1),
        })
    }

    /// Quick necessary conditions for the deletions: the Sidon bound `p(p−1) ≤ m−1` and room
    /// for `count` rows with pairwise disjoint neighbourhoods.
    pub fn may_be_feasible(&self) -> bool {
        let ok = |m: usize, p: usize| {
            p * p.saturating_sub(1) < m.max(1) && (p < 2 || self.count * p <= m)
        };
        ok(self.m1, self.p1) && ok(self.m2, self.p2)
    }
}

/// Smallest `k ≤ k_max` for which the unbalanced gadget can be built, checked by running both
/// deletions without assembling the graph.
pub fn unbalanced_min_k(s: usize, j: usize, parity: Parity, k_max: usize) -> Option<usize> {
    (j.max(1)..=k_max).find(|&k| {
        let Ok(plan) = UnbalancedPlan::new(s, k, j, parity) else {
            return false;
        };
        plan.may_be_feasible()
            && deletable_block(plan.m1, plan.p1, plan.count, plan.floor1).is_ok()
            && deletable_block(plan.m2, plan.p2, plan.count, plan.floor2).is_ok()
    })
}

/// `(x, y)` for the square-root family: `x = y = ⌈√s⌉`, except `x = ⌈√s⌉ − 1` when `c(s) = 1`.
pub fn sqrt_parameters(s: usize) -> (usize, usize) {
    let r = ceil_sqrt(s as u64) as usize;
    let c = c_of_s(s as u64) as usize;
    (r - c, r)
}

/// Smallest `k2 ≥ s·k1` with `|V2| = k2·s − s + 1 > (s − x)|U1|`.
pub fn sqrt_min_k2(s: usize, k1: usize) -> usize {
    let (x, y) = sqrt_parameters(s);
    let need = (s - x) * (k1 * s + y);
    let mut k2 = (s * k1).max(1);
    while k2 * s - s < need {
        k2 += 1;
    }
    k2
}

/// Square-root family with the smallest admissible `k2`; see [`sqrt_gadget_with`].
pub fn sqrt_gadget(s: usize, k1: usize) -> Result<Gadget> {
    if s < 2 || k1 < 1 {
        return Err(Error::InvalidParameter(format!(
            "sqrt gadget needs s ≥ 2 and k1 ≥ 1, got s = {s}, k1 = {k1}"
        )));
    }
    sqrt_gadget_with(s, k1, sqrt_min_k2(s, k1))
}

/// `|U1| = k1s+y`, `|U2| = k2s−y`, `|V1| = k1s+s−1`, `|V2| = k2s−s+1`; `U1×V1`, `U2×V2` and
/// `U2×V1` complete; each `U1` vertex has `s − x` private neighbours in `V2`.
pub fn sqrt_gadget_with(s: usize, k1: usize, k2: usize) -> Result<Gadget> {
    let (x, y) = sqrt_parameters(s);
    if s < 2 || k1 < 1 || k2 * s < y + s {
        return Err(Error::InvalidParameter(format!(
            "sqrt gadget needs s ≥ 2, k1 ≥ 1 and k2·s ≥ y + s, got s = {s}, k1 = {k1}, k2 = {k2}"
        )));
    }
    let sizes = BlockSizes {
        u1: k1 * s + y,
        u2: k2 * s - y,
        v1: k1 * s + s - 1,
        v2: k2 * s - s + 1,
    };
    let private = s - x;
    if sizes.v2 < private * sizes.u1 {
        return Err(Error::Capacity {
            needed: private * sizes.u1,
            available: sizes.v2,
        });
    }
    let u1_v2: Vec<Vec<usize>> = (0..sizes.u1)
        .map(|i| (i * private..(i + 1) * private).collect())
        .collect();
    let u2_v1: Vec<Vec<usize>> = vec![(0..sizes.v1).collect(); sizes.u2];
    let graph = assemble(sizes, &u1_v2, &u2_v1);
    let n = graph.n();
    let prof = graph.min_degrees(s);
    let r = ceil_sqrt(s as u64) as i64;
    let expected = (n + 2 * s) as i64 - 2 * r + c_of_s(s as u64) as i64 - 1;
    identity(Family::SqrtGadget, "δ_U+δ_V", expected, prof.delta_sum() as i64)?;
    if x * y < s {
        return Err(Error::IdentityViolation {
            family: Family::SqrtGadget.name(),
            what: "x·y − s (must be ≥ 0)".into(),
            expected: 0,
            actual: (x * y) as i64 - s as i64,
        });
    }
    Ok(Gadget {
        spec: GadgetSpec {
            family: Family::SqrtGadget,
            s,
            params: vec![
                ("k1".into(), k1 as u64),
                ("k2".into(), k2 as u64),
                ("x".into(), x as u64),
                ("y".into(), y as u64),
            ],
            block_sizes: sizes,
        },
        graph,
        notes: vec![
            format!("x={x} y={y} xy={} ≥ s", x * y),
            format!("δ_U+δ_V = {} = n+2s−2⌈√s⌉+c(s)−1", prof.delta_sum()),
        ],
    })
}
