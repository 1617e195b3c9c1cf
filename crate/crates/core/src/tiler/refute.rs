//! Non-tilability certificates from block-profile counting.
//!
//! Fix a partition `U = U1 ∪ U2`, `V = V1 ∪ V2`. Every copy `F` in a tiling has a signature
//! `(|F∩U1|, |F∩U2|, |F∩V1|, |F∩V2|)`, and the copies of a tiling cover each block exactly. So
//! if no nonnegative integer combination of the signatures that actually occur in `G` hits
//! `(|U1|, |V1|, n/s)`, then `G` has no tiling.

use std::fmt;

use crate::bigraph::BalancedBigraph;
use crate::constructions::BlockSizes;
use crate::error::{Error, Result};
use crate::tiler::feasibility::{self, Targets};
use crate::tiler::profile::{find_profiled, BlockDemand, ProfileQuery};
use crate::tiler::Search;

/// Vertices per block of one copy. `x1 + x2 = y1 + y2 = s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingSignature {
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
}

impl CrossingSignature {
    pub fn new(x1: usize, x2: usize, y1: usize, y2: usize) -> Self {
        CrossingSignature { x1, x2, y1, y2 }
    }

    pub fn s(&self) -> usize {
        self.x1 + self.x2
    }

    /// Meets both `U1 × V2` and `U2 × V1` sides of the partition.
    pub fn is_crossing(&self) -> bool {
        !((self.x1 == self.s() && self.y1 == self.s()) || (self.x2 == self.s() && self.y2 == self.s()))
    }

    /// All `(s+1)²` signatures in lexicographic order.
    pub fn all(s: usize) -> impl Iterator<Item = Self> {
        (0..=s).flat_map(move |x1| (0..=s).map(move |y1| CrossingSignature::new(x1, s - x1, y1, s - y1)))
    }
}

impl fmt::Display for CrossingSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.x1, self.x2, self.y1, self.y2)
    }
}

/// Explicit vertex lists for the four blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition4 {
    pub u1: Vec<usize>,
    pub u2: Vec<usize>,
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
}

impl BlockPartition4 {
    /// Contiguous blocks `U1 = 0..u1`, `U2 = u1..`, likewise on `V`.
    pub fn from_sizes(b: &BlockSizes) -> Self {
        BlockPartition4 {
            u1: (0..b.u1).collect(),
            u2: (b.u1..b.u1 + b.u2).collect(),
            v1: (0..b.v1).collect(),
            v2: (b.v1..b.v1 + b.v2).collect(),
        }
    }

    /// Both sides are partitions of `0..n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        for (side, a, b) in [("U", &self.u1, &self.u2), ("V", &self.v1, &self.v2)] {
            let mut seen = vec![false; n];
            for &x in a.iter().chain(b) {
                if x >= n {
                    return Err(Error::MalformedBlocks(format!("{side}{x} out of range (n = {n})")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::MalformedBlocks(format!("{side}{x} appears twice")));
                }
            }
            if let Some(x) = seen.iter().position(|&s| !s) {
                return Err(Error::MalformedBlocks(format!("{side}{x} is in no block")));
            }
        }
        Ok(())
    }

    fn query(&self, n: usize, sig: CrossingSignature) -> ProfileQuery {
        let d = |xs: &[usize], c| BlockDemand::new(n, xs.iter().copied(), c);
        ProfileQuery {
            u: vec![d(&self.u1, sig.x1), d(&self.u2, sig.x2)],
            v: vec![d(&self.v1, sig.y1), d(&self.v2, sig.y2)],
            forced: vec![],
        }
    }
}

/// A certificate that `G` has no `K_{s,s}`-tiling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub s: usize,
    /// Every signature that embeds in `G`, plus any whose search ran out of budget.
    pub realizable: Vec<CrossingSignature>,
    /// Subset of `realizable` kept only because its search was inconclusive.
    pub undetermined: Vec<CrossingSignature>,
    /// `(|U1|, |V1|, n/s)`.
    pub target: Targets,
}

impl Refutation {
    fn columns(&self) -> Vec<(usize, usize)> {
        self.realizable.iter().map(|g| (g.x1, g.y1)).collect()
    }

    /// Re-solves the system with both solvers; true iff both report it infeasible.
    pub fn system_infeasible(&self) -> bool {
        let cols = self.columns();
        feasibility::solve(&cols, self.target).is_none() && !feasibility::reachable(&cols, self.target)
    }

    /// Full independent check against `g`: block sizes match the targets, every signature left
    /// out of `realizable` provably does not embed, and the system is infeasible.
    pub fn verify(&self, g: &BalancedBigraph, blocks: &BlockPartition4, budget: u64) -> std::result::Result<(), String> {
        blocks.validate(g.n()).map_err(|e| e.to_string())?;
        if self.s == 0 || !g.n().is_multiple_of(self.s) {
            return Err(format!("s = {} does not divide n = {}", self.s, g.n()));
        }
        let expect = Targets {
            x: blocks.u1.len(),
            y: blocks.v1.len(),
            count: g.n() / self.s,
        };
        if self.target != expect {
            return Err(format!("targets {:?} do not match the blocks {:?}", self.target, expect));
        }
        if let Some(bad) = self.realizable.iter().find(|g| g.s() != self.s || g.y1 + g.y2 != self.s) {
            return Err(format!("signature {bad} does not have sums {}", self.s));
        }
        for sig in CrossingSignature::all(self.s).filter(|g| !self.realizable.contains(g)) {
            match find_profiled(g, &blocks.query(g.n(), sig), budget).outcome {
                Search::Absent => {}
                Search::Found(c) => return Err(format!("signature {sig} is omitted but embeds: {c:?}")),
                Search::Unknown => return Err(format!("could not confirm that {sig} is absent")),
            }
        }
        if !self.system_infeasible() {
            return Err("the transfer system has a solution".into());
        }
        Ok(())
    }
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "realizable signatures (x1,x2,y1,y2), s = {}:", self.s)?;
        for (i, g) in self.realizable.iter().enumerate() {
            let mark = if self.undetermined.contains(g) { "  (undetermined)" } else { "" };
            writeln!(f, "  n{i}: {g}{mark}")?;
        }
        let row = |coef: &dyn Fn(&CrossingSignature) -> usize| -> String {
            let terms: Vec<String> = self
                .realizable
                .iter()
                .enumerate()
                .filter(|(_, g)| coef(g) != 0)
                .map(|(i, g)| format!("{}·n{i}", coef(g)))
                .collect();
            if terms.is_empty() { "0".into() } else { terms.join(" + ") }
        };
        writeln!(f, "system over nonnegative integers:")?;
        writeln!(f, "  {} = {}   (|U1|)", row(&|g| g.x1), self.target.x)?;
        writeln!(f, "  {} = {}   (|V1|)", row(&|g| g.y1), self.target.y)?;
        writeln!(f, "  {} = {}   (copies)", row(&|_| 1), self.target.count)?;
        write!(f, "has no solution")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefuteOutcome {
    Refuted(Refutation),
    /// The counting system is solvable; `solution` pairs each signature with its multiplicity.
    Inconclusive {
        realizable: Vec<CrossingSignature>,
        solution: Vec<(CrossingSignature, usize)>,
    },
}

impl RefuteOutcome {
    pub fn is_refuted(&self) -> bool {
        matches!(self, RefuteOutcome::Refuted(_))
    }
}

/// Decides realizability of every signature by exact search (each with `budget` nodes; an
/// inconclusive search counts as realizable), then solves the counting system.
pub fn refute_by_crossing(g: &BalancedBigraph, blocks: &BlockPartition4, s: usize, budget: u64) -> Result<RefuteOutcome> {
    blocks.validate(g.n())?;
    if s == 0 || !g.n().is_multiple_of(s) {
        return Err(Error::InvalidParameter(format!("s = {s} must divide n = {}", g.n())));
    }
    let mut realizable = Vec::new();
    let mut undetermined = Vec::new();
    for sig in CrossingSignature::all(s) {
        match find_profiled(g, &blocks.query(g.n(), sig), budget).outcome {
            Search::Found(_) => realizable.push(sig),
            Search::Unknown => {
                realizable.push(sig);
                undetermined.push(sig);
            }
            Search::Absent => {}
        }
    }
    let target = Targets {
        x: blocks.u1.len(),
        y: blocks.v1.len(),
        count: g.n() / s,
    };
    let cols: Vec<(usize, usize)> = realizable.iter().map(|g| (g.x1, g.y1)).collect();
    match feasibility::solve(&cols, target) {
        Some(sol) => {
            debug_assert!(feasibility::satisfies(&cols, target, &sol));
            let solution = realizable.iter().copied().zip(sol).filter(|(_, k)| *k > 0).collect();
            Ok(RefuteOutcome::Inconclusive { realizable, solution })
        }
        None => {
            let r = Refutation {
                s,
                realizable,
                undetermined,
                target,
            };
            // the sweep is an independent solver; disagreement would be a bug in one of them
            assert!(r.system_infeasible(), "feasibility solvers disagree on {target:?}");
            Ok(RefuteOutcome::Refuted(r))
        }
    }
}
