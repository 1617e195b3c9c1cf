//! Generators for the extremal families. Every generator re-checks its degree identity exactly
//! before returning.

pub mod deletion;
pub mod gadgets;
pub mod pgraph;
pub mod random;
pub mod random_lower;
pub mod sidon;

use std::fmt;
use std::ops::Range;

use crate::bigraph::BalancedBigraph;

pub use deletion::{delete_preserving_min_degree, CrossBlock, Deletion};
pub use gadgets::{sqrt_gadget, sqrt_parameters, unbalanced_gadget, zhao_gadget, Parity};
pub use pgraph::p_graph;
pub use random::{noisy_blocks, random_bigraph};
pub use random_lower::{random_lower_gadget, PropertyReport};
pub use sidon::sidon_set;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    PGraph,
    Zhao,
    UnbalancedEven,
    UnbalancedOdd,
    SqrtGadget,
    RandomLower,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::PGraph,
        Family::Zhao,
        Family::UnbalancedEven,
        Family::UnbalancedOdd,
        Family::SqrtGadget,
        Family::RandomLower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::PGraph => "p_graph",
            Family::Zhao => "zhao",
            Family::UnbalancedEven => "unbalanced_even",
            Family::UnbalancedOdd => "unbalanced_odd",
            Family::SqrtGadget => "sqrt_gadget",
            Family::RandomLower => "random_lower",
        }
    }

    /// Accepts the canonical names plus the short aliases `pgraph` and `sqrt`.
    pub fn parse(name: &str) -> Option<Family> {
        match name {
            "pgraph" => Some(Family::PGraph),
            "sqrt" => Some(Family::SqrtGadget),
            _ => Family::ALL.into_iter().find(|f| f.name() == name),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Cardinalities of `U1, U2, V1, V2`. Blocks are laid out contiguously: `U1 = 0..u1`,
/// `U2 = u1..u1+u2`, and likewise on `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockSizes {
    pub u1: usize,
    pub u2: usize,
    pub v1: usize,
    pub v2: usize,
}

impl BlockSizes {
    pub fn n_u(&self) -> usize {
        self.u1 + self.u2
    }

    pub fn n_v(&self) -> usize {
        self.v1 + self.v2
    }

    pub fn u1_range(&self) -> Range<usize> {
        0..self.u1
    }

    pub fn u2_range(&self) -> Range<usize> {
        self.u1..self.u1 + self.u2
    }

    pub fn v1_range(&self) -> Range<usize> {
        0..self.v1
    }

    pub fn v2_range(&self) -> Range<usize> {
        self.v1..self.v1 + self.v2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSpec {
    pub family: Family,
    pub s: usize,
    /// Named parameters in a fixed per-family order (`k`, `j`, `k1`, `m`, `p`, `seed`, ...).
    pub params: Vec<(String, u64)>,
    pub block_sizes: BlockSizes,
}

impl GadgetSpec {
    pub fn param(&self, key: &str) -> Option<u64> {
        self.params.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }

    /// `key=value` pairs joined by spaces.
    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A constructed instance together with its spec and the identities it was checked against.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub spec: GadgetSpec,
    pub graph: BalancedBigraph,
    /// Human-readable statements of the verified identities.
    pub notes: Vec<String>,
}

pub(crate) fn identity(
    family: Family,
    what: impl Into<String>,
    expected: i64,
    actual: i64,
) -> crate::error::Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(crate::error::Error::IdentityViolation {
            family: family.name(),
            what: what.into(),
            expected,
            actual,
        })
    }
}
