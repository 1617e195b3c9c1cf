//! Balanced bipartite graphs `G[U, V]` with `|U| = |V| = n`.
//!
//! Vertices are dense indices `0..n` in each part. Adjacency is stored twice, once per part, as
//! fixed-width bitsets so that neighbourhood intersections are word-parallel. Graphs are built
//! through [`BigraphBuilder`] and are immutable afterwards.

use std::fmt;

use fixedbitset::FixedBitSet;
use num::rational::Ratio;

use crate::error::{Error, Result};

/// One of the two sides of a balanced bipartite graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    U,
    V,
}

impl Part {
    pub fn other(self) -> Part {
        match self {
            Part::U => Part::V,
            Part::V => Part::U,
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::U => "U",
            Part::V => "V",
        })
    }
}

/// A vertex tagged with its part, for APIs that accept vertices from either side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub part: Part,
    pub index: usize,
}

impl Vertex {
    pub fn u(index: usize) -> Self {
        Vertex { part: Part::U, index }
    }

    pub fn v(index: usize) -> Self {
        Vertex { part: Part::V, index }
    }
}

/// Balanced bipartite graph with mirrored bitset adjacency.
#[derive(Clone, PartialEq, Eq)]
pub struct BalancedBigraph {
    n: usize,
    adj_u: Vec<FixedBitSet>,
    adj_v: Vec<FixedBitSet>,
    edges: usize,
}

impl fmt::Debug for BalancedBigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BalancedBigraph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl BalancedBigraph {
    /// The edgeless graph on `n + n` vertices.
    pub fn empty(n: usize) -> Self {
        BigraphBuilder::new(n).build()
    }

    /// `K_{n,n}`.
    pub fn complete(n: usize) -> Self {
        let mut b = BigraphBuilder::new(n);
        let all: Vec<usize> = (0..n).collect();
        b.add_complete(&all, &all);
        b.build()
    }

    /// Builds a graph from `(u, v)` pairs. Duplicate pairs are collapsed.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = BigraphBuilder::new(n);
        for (u, v) in edges {
            b.try_add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// The same graph with the roles of `U` and `V` exchanged.
    pub fn transpose(&self) -> BalancedBigraph {
        BalancedBigraph {
            n: self.n,
            adj_u: self.adj_v.clone(),
            adj_v: self.adj_u.clone(),
            edges: self.edges,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj_u[u].contains(v)
    }

    /// Neighbourhood of `x` (a vertex of `part`) as a bitset over the other part.
    pub fn neighbors(&self, part: Part, x: usize) -> &FixedBitSet {
        match part {
            Part::U => &self.adj_u[x],
            Part::V => &self.adj_v[x],
        }
    }

    pub fn degree(&self, part: Part, x: usize) -> usize {
        self.neighbors(part, x).count_ones(..)
    }

    /// `|N(x) ∩ set|` where `set` is a bitset over the opposite part.
    pub fn degree_into(&self, part: Part, x: usize, set: &FixedBitSet) -> usize {
        self.neighbors(part, x).intersection_count(set)
    }

    /// All edges sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj_u
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().map(move |v| (u, v)))
    }

    /// An empty bitset sized for one part.
    pub fn vertex_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.n)
    }

    /// A bitset sized for one part containing the given indices.
    pub fn vertex_set_of(&self, indices: &[usize]) -> FixedBitSet {
        let mut set = self.vertex_set();
        for &i in indices {
            set.insert(i);
        }
        set
    }

    /// A bitset containing every vertex of one part.
    pub fn full_set(&self) -> FixedBitSet {
        let mut set = self.vertex_set();
        set.insert_range(..);
        set
    }

    /// Minimum degrees on each side plus the `(k1, r)` decomposition of `δ_U` relative to `s`.
    pub fn min_degrees(&self, s: usize) -> DegreeProfile {
        let delta_u = (0..self.n).map(|u| self.degree(Part::U, u)).min().unwrap_or(0);
        let delta_v = (0..self.n).map(|v| self.degree(Part::V, v)).min().unwrap_or(0);
        let decomposition = if s > 0 && self.n.is_multiple_of(s) && delta_u >= s {
            let k1 = (delta_u - s) / s;
            let r = (delta_u - s) % s;
            Some(Decomposition {
                k1,
                r,
                k2: self.n / s - k1,
            })
        } else {
            None
        };
        DegreeProfile {
            s,
            delta_u,
            delta_v,
            decomposition,
        }
    }

    /// Exact edge density `e(A, B) / (|A| |B|)` for `A ⊆ U`, `B ⊆ V`.
    pub fn density(&self, a: &[usize], b: &[usize]) -> Result<Ratio<u64>> {
        if a.is_empty() {
            return Err(Error::EmptyVertexSet("A"));
        }
        if b.is_empty() {
            return Err(Error::EmptyVertexSet("B"));
        }
        self.check_indices(Part::U, a)?;
        self.check_indices(Part::V, b)?;
        let b_set = self.vertex_set_of(b);
        let mut seen = self.vertex_set();
        let mut edges = 0u64;
        let mut a_len = 0u64;
        for &u in a {
            if seen.put(u) {
                continue;
            }
            a_len += 1;
            edges += self.degree_into(Part::U, u, &b_set) as u64;
        }
        Ok(Ratio::new(edges, a_len * b_set.count_ones(..) as u64))
    }

    /// `⋂_{x ∈ set} N(x)` for `set` inside `part`; the whole opposite part when `set` is empty.
    pub fn common_neighborhood(&self, part: Part, set: &[usize]) -> Result<FixedBitSet> {
        self.check_indices(part, set)?;
        let mut acc = self.full_set();
        for &x in set {
            acc.intersect_with(self.neighbors(part, x));
        }
        Ok(acc)
    }

    /// Like [`common_neighborhood`](Self::common_neighborhood) but takes tagged vertices and rejects
    /// sets that mix both parts. An empty set has no part, so it is rejected as well.
    pub fn common_neighborhood_of(&self, set: &[Vertex]) -> Result<(Part, FixedBitSet)> {
        let part = set.first().ok_or(Error::EmptyVertexSet("S"))?.part;
        if set.iter().any(|x| x.part != part) {
            return Err(Error::MixedParts);
        }
        let indices: Vec<usize> = set.iter().map(|x| x.index).collect();
        Ok((part.other(), self.common_neighborhood(part, &indices)?))
    }

    pub(crate) fn check_indices(&self, part: Part, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&x| x >= self.n) {
            Some(&index) => Err(Error::VertexOutOfRange {
                part,
                index,
                n: self.n,
            }),
            None => Ok(()),
        }
    }
}

/// Incremental builder that keeps both adjacency mirrors in sync.
#[derive(Clone, Debug)]
pub struct BigraphBuilder {
    n: usize,
    adj_u: Vec<FixedBitSet>,
    adj_v: Vec<FixedBitSet>,
}

impl BigraphBuilder {
    pub fn new(n: usize) -> Self {
        BigraphBuilder {
            n,
            adj_u: vec![FixedBitSet::with_capacity(n); n],
            adj_v: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `uv`. Panics on out-of-range indices; see [`try_add_edge`](Self::try_add_edge).
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj_u[u].insert(v);
        self.adj_v[v].insert(u);
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for (part, x) in [(Part::U, u), (Part::V, v)] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    part,
                    index: x,
                    n: self.n,
                });
            }
        }
        self.add_edge(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj_u[u].set(v, false);
        self.adj_v[v].set(u, false);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj_u[u].contains(v)
    }

    /// Makes `us × vs` complete.
    pub fn add_complete(&mut self, us: &[usize], vs: &[usize]) {
        let mut v_set = FixedBitSet::with_capacity(self.n);
        vs.iter().for_each(|&v| v_set.insert(v));
        let mut u_set = FixedBitSet::with_capacity(self.n);
        us.iter().for_each(|&u| u_set.insert(u));
        for &u in us {
            self.adj_u[u].union_with(&v_set);
        }
        for &v in vs {
            self.adj_v[v].union_with(&u_set);
        }
    }

    pub fn build(self) -> BalancedBigraph {
        let edges = self.adj_u.iter().map(|row| row.count_ones(..)).sum();
        debug_assert_eq!(
            edges,
            self.adj_v.iter().map(|row| row.count_ones(..)).sum::<usize>()
        );
        debug_assert!(self
            .adj_u
            .iter()
            .enumerate()
            .all(|(u, row)| row.ones().all(|v| self.adj_v[v].contains(u))));
        BalancedBigraph {
            n: self.n,
            adj_u: self.adj_u,
            adj_v: self.adj_v,
            edges,
        }
    }
}

/// `δ_U = k1·s + s + r` with `0 ≤ r < s`, and `k2 = n/s − k1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub k1: usize,
    pub r: usize,
    pub k2: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub s: usize,
    pub delta_u: usize,
    pub delta_v: usize,
    /// Absent when `δ_U < s` or `s ∤ n`.
    pub decomposition: Option<Decomposition>,
}

impl DegreeProfile {
    pub fn delta_sum(&self) -> usize {
        self.delta_u + self.delta_v
    }

    /// `δ_V − δ_U`, signed.
    pub fn delta_gap(&self) -> i64 {
        self.delta_v as i64 - self.delta_u as i64
    }
}

/// One copy of `K_{s,s}`: `s` vertices of `U` and `s` vertices of `V`, both sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Biclique {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

impl Biclique {
    pub fn new(mut u: Vec<usize>, mut v: Vec<usize>) -> Self {
        u.sort_unstable();
        v.sort_unstable();
        Biclique { u, v }
    }

    pub fn side(&self, part: Part) -> &[usize] {
        match part {
            Part::U => &self.u,
            Part::V => &self.v,
        }
    }

    pub fn is_complete_in(&self, g: &BalancedBigraph) -> bool {
        self.u
            .iter()
            .all(|&u| self.v.iter().all(|&v| g.has_edge(u, v)))
    }
}

/// A set of vertex-disjoint `K_{s,s}` copies covering `U ∪ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    pub s: usize,
    pub copies: Vec<Biclique>,
}

/// First reason a candidate tiling fails to be a `K_{s,s}`-tiling of a graph.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TilingViolation {
    #[error("block size must be positive")]
    ZeroBlock,
    #[error("copy {copy} has {u_len}+{v_len} vertices, expected {s}+{s}")]
    WrongSize {
        copy: usize,
        u_len: usize,
        v_len: usize,
        s: usize,
    },
    #[error("copy {copy} uses {part}{vertex}, which is out of range")]
    OutOfRange { copy: usize, part: Part, vertex: usize },
    #[error("copy {copy} reuses {part}{vertex} (already in copy {first})")]
    Overlap {
        copy: usize,
        part: Part,
        vertex: usize,
        first: usize,
    },
    #[error("copy {copy} is missing edge U{u}–V{v}")]
    MissingEdge { copy: usize, u: usize, v: usize },
    #[error("{part}{vertex} is not covered")]
    Uncovered { part: Part, vertex: usize },
}

/// Checks that `copies` are well-formed, complete in `g` and pairwise disjoint, without requiring
/// that they cover every vertex.
pub fn verify_copies(
    g: &BalancedBigraph,
    s: usize,
    copies: &[Biclique],
) -> std::result::Result<(), TilingViolation> {
    if s == 0 {
        return Err(TilingViolation::ZeroBlock);
    }
    let n = g.n();
    let mut owner_u = vec![usize::MAX; n];
    let mut owner_v = vec![usize::MAX; n];
    for (i, c) in copies.iter().enumerate() {
        if c.u.len() != s || c.v.len() != s {
            return Err(TilingViolation::WrongSize {
                copy: i,
                u_len: c.u.len(),
                v_len: c.v.len(),
                s,
            });
        }
        for (part, side, owner) in [(Part::U, &c.u, &mut owner_u), (Part::V, &c.v, &mut owner_v)] {
            for &x in side {
                if x >= n {
                    return Err(TilingViolation::OutOfRange {
                        copy: i,
                        part,
                        vertex: x,
                    });
                }
                if owner[x] != usize::MAX {
                    return Err(TilingViolation::Overlap {
                        copy: i,
                        part,
                        vertex: x,
                        first: owner[x],
                    });
                }
                owner[x] = i;
            }
        }
        for &u in &c.u {
            for &v in &c.v {
                if !g.has_edge(u, v) {
                    return Err(TilingViolation::MissingEdge { copy: i, u, v });
                }
            }
        }
    }
    Ok(())
}

/// Checks every [`Tiling`] invariant against `g`, reporting the first violation found.
pub fn verify_tiling(g: &BalancedBigraph, t: &Tiling) -> std::result::Result<(), TilingViolation> {
    verify_copies(g, t.s, &t.copies)?;
    let mut covered_u = g.vertex_set();
    let mut covered_v = g.vertex_set();
    for c in &t.copies {
        c.u.iter().for_each(|&u| covered_u.insert(u));
        c.v.iter().for_each(|&v| covered_v.insert(v));
    }
    for (part, covered) in [(Part::U, &covered_u), (Part::V, &covered_v)] {
        if let Some(vertex) = covered.zeroes().next() {
            return Err(TilingViolation::Uncovered { part, vertex });
        }
    }
    Ok(())
}
