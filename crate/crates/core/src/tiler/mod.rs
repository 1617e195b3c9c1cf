//! Tilers, star packings and the crossing-signature refuter.

pub mod exact;
pub mod feasibility;
pub mod greedy;
pub mod matching;
pub mod profile;
pub mod refute;
pub mod split;
pub mod stars;

pub use exact::{exact_tile, exact_tile_within};
pub use greedy::{greedy_tile, greedy_tile_within, GreedyTiling};
pub use matching::hall_tile;
pub use profile::{find_profiled, BlockDemand, ProfileQuery};
pub use refute::{refute_by_crossing, BlockPartition4, CrossingSignature, Refutation, RefuteOutcome};
pub use split::{split_kss, SplitResult};
pub use stars::{bidirectional_star_systems, star_packing, StarPacking};

use crate::bigraph::Tiling;

/// Default node budget for the exact searches.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Three-valued result of a budgeted exact search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The search space was exhausted: a proof that no solution exists.
    Absent,
    /// The node budget ran out first.
    Unknown,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Search::Absent)
    }
}

/// Verdict of a tiler plus the number of search nodes it expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileResult {
    pub outcome: Search<Tiling>,
    pub nodes: u64,
}
