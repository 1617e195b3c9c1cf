//! The extremal-case tiling procedure: detect a sparse `U1' × V2'` witness, split the graph into
//! blocks, balance the two diagonal block pairs, absorb exceptional vertices into private copies
//! and tile the near-complete blocks. Any stage failure falls back to the exact tiler, so the
//! pipeline only ever affects speed, never the verdict.

pub mod absorb;
pub mod alpha;
pub mod balance;
pub mod dense;
pub mod detect;
pub mod partition;
pub mod preprocess;

use std::fmt;

pub use absorb::absorb_exceptional;
pub use alpha::{Alpha, Expr, DEFAULT_ALPHA};
pub use balance::{balance_blocks, BalanceReport};
pub use dense::{tile_dense_block, DenseRoute, DenseTiling};
pub use detect::{detect_extremal, Detection};
pub use partition::{claim_checks, BlockPartition, ClaimCheck};
pub use preprocess::{classify_movable, preprocess};

use crate::bigraph::{verify_copies, verify_tiling, BalancedBigraph, Biclique, Tiling};
use crate::error::{Error, Result};
use crate::tiler::{exact_tile, Search};

/// One line of the pipeline trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceLine {
    pub stage: &'static str,
    pub detail: String,
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<10} {}", self.stage, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub outcome: Search<Tiling>,
    /// The verdict came from the exact tiler.
    pub fell_back: bool,
    pub fallback_reason: Option<String>,
    pub trace: Vec<TraceLine>,
    /// The partition as produced by `preprocess`, when it accepted the instance. Indices refer
    /// to the transposed graph when `transposed` is set.
    pub accepted: Option<BlockPartition>,
    pub transposed: bool,
    pub nodes: u64,
}

/// Runs the pipeline, falling back to `exact_tile(g, s, budget)` on any stage failure.
pub fn extremal_tile(g: &BalancedBigraph, s: usize, alpha: &Alpha, budget: u64) -> PipelineResult {
    assert!(s >= 1, "block size must be positive");
    let prof = g.min_degrees(s);
    // the stages assume δ_V ≥ δ_U
    let transposed = prof.delta_u > prof.delta_v;
    let work = if transposed { g.transpose() } else { g.clone() };
    let mut trace = vec![TraceLine {
        stage: "start",
        detail: format!(
            "n={} s={s} δ_U={} δ_V={} α={alpha}{}",
            g.n(),
            prof.delta_u,
            prof.delta_v,
            if transposed { " (sides exchanged)" } else { "" }
        ),
    }];
    let mut accepted = None;
    let mut nodes = 0;
    let staged = if !g.n().is_multiple_of(s) {
        Err(Error::InvalidParameter(format!("s = {s} does not divide n = {}", g.n())))
    } else {
        run_stages(&work, s, alpha, budget, &mut trace, &mut accepted, &mut nodes)
    };
    let reason = match staged {
        Ok(copies) => {
            let copies = if transposed {
                copies.into_iter().map(|c| Biclique::new(c.v, c.u)).collect()
            } else {
                copies
            };
            let tiling = Tiling { s, copies };
            match verify_tiling(g, &tiling) {
                Ok(()) => {
                    trace.push(TraceLine {
                        stage: "done",
                        detail: format!("{} copies, verified", tiling.copies.len()),
                    });
                    return PipelineResult {
                        outcome: Search::Found(tiling),
                        fell_back: false,
                        fallback_reason: None,
                        trace,
                        accepted,
                        transposed,
                        nodes,
                    };
                }
                Err(e) => format!("stitched tiling failed verification: {e}"),
            }
        }
        Err(e) => e.to_string(),
    };
    trace.push(TraceLine {
        stage: "fallback",
        detail: reason.clone(),
    });
    let exact = exact_tile(g, s, budget);
    trace.push(TraceLine {
        stage: "exact",
        detail: format!(
            "{} after {} nodes",
            match &exact.outcome {
                Search::Found(_) => "tiled",
                Search::Absent => "absent",
                Search::Unknown => "unknown",
            },
            exact.nodes
        ),
    });
    PipelineResult {
        outcome: exact.outcome,
        fell_back: true,
        fallback_reason: Some(reason),
        trace,
        accepted,
        transposed,
        nodes: nodes + exact.nodes,
    }
}

fn run_stages(
    g: &BalancedBigraph,
    s: usize,
    alpha: &Alpha,
    budget: u64,
    trace: &mut Vec<TraceLine>,
    accepted: &mut Option<BlockPartition>,
    nodes: &mut u64,
) -> Result<Vec<Biclique>> {
    let mut line = |stage: &'static str, detail: String| trace.push(TraceLine { stage, detail });
    let det = detect_extremal(g, s, alpha)
        .ok_or_else(|| Error::InvalidParameter("no extremal witness detected".into()))?;
    line(
        "detect",
        format!("k1={} k2={} d(U1',V2')={} after {} rounds", det.k1, det.k2, det.density, det.rounds),
    );
    let p = preprocess(g, s, &det, alpha)?;
    *accepted = Some(p.clone());
    line("preprocess", p.to_string());
    let mut p = classify_movable(g, p)?;
    line(
        "movable",
        format!("|U2^M|={} |V1^M|={}", p.movable_u[2].len(), p.movable_v[1].len()),
    );
    let report = balance_blocks(g, &mut p)?;
    line(
        "balance",
        format!(
            "side-1 counts {:?} → {} ; moved {} ; crossing copies {} ({} from stars)",
            report.before, report.target, report.moved, report.crossing_copies, report.star_copies
        ),
    );
    let absorbed = absorb_exceptional(g, &mut p)?;
    line("absorb", format!("{absorbed} private copies ; {p}"));

    verify_copies(g, s, &p.reserved).map_err(|e| Error::BlockTiling(format!("reserved copies: {e}")))?;
    let residual: usize = p.u.iter().chain(&p.v).map(Vec::len).sum();
    if p.reserved.len() * 2 * s + residual != 2 * g.n() || !p.u[0].is_empty() || !p.v[0].is_empty() {
        return Err(Error::BlockTiling(format!(
            "conservation: {} reserved copies and {residual} residual vertices for n = {}",
            p.reserved.len(),
            g.n()
        )));
    }
    let mut copies = p.reserved.clone();
    for i in 1..=2 {
        let t = tile_dense_block(g, &p.u[i], &p.v[i], s, budget)?;
        *nodes += t.nodes;
        line("tile", format!("block {i}: {} copies via {:?}", t.copies.len(), t.route));
        copies.extend(t.copies);
    }
    Ok(copies)
}
