//! Parameter sweeps. A grid is a TOML file:
//!
//! ```toml
//! mode = "exact"      # exact | pipeline | greedy
//! budget = 1000000
//! alpha = "1/64"
//! refute = true       # try the crossing refuter first when the family has blocks
//!
//! [[run]]
//! family = "unbalanced"
//! s = [2]
//! k = [3]
//! j = [0, 1, 2, 3]
//! parity = ["even", "odd"]
//! seed = [0]
//! repeat = 1          # instances per point, seeds seed, seed+1, ...
//! ```
//!
//! Every `[[run]]` expands to the cartesian product of its lists, in the key order
//! `s, k, k1, k2, j, m, p, n, a, rate, drop, noise, parity, seed`, then the repeats. Rows come out
//! in that order whatever order they finish in.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use kss_core::io::{graph_to_string, refutation_to_string, write_tiling, Metadata};
use kss_core::pipeline::{extremal_tile, Alpha, DEFAULT_ALPHA};
use kss_core::tiler::{exact_tile, greedy_tile, refute_by_crossing, RefuteOutcome, Search, DEFAULT_NODE_BUDGET};
use kss_core::{verify_tiling, BalancedBigraph, Tiling};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::family::{build, Kind, Params};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Pipeline,
    Greedy,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    #[serde(default)]
    pub mode: Mode,
    #[serde(default = "default_budget")]
    pub budget: u64,
    pub alpha: Option<String>,
    #[serde(default)]
    pub refute: bool,
    #[serde(default)]
    pub run: Vec<Run>,
}

fn default_budget() -> u64 {
    DEFAULT_NODE_BUDGET
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Run {
    pub family: String,
    #[serde(default)]
    pub s: Vec<usize>,
    #[serde(default)]
    pub k: Vec<usize>,
    #[serde(default)]
    pub k1: Vec<usize>,
    #[serde(default)]
    pub k2: Vec<usize>,
    #[serde(default)]
    pub j: Vec<usize>,
    #[serde(default)]
    pub m: Vec<usize>,
    #[serde(default)]
    pub p: Vec<usize>,
    #[serde(default)]
    pub n: Vec<usize>,
    #[serde(default)]
    pub a: Vec<usize>,
    #[serde(default)]
    pub rate: Vec<f64>,
    #[serde(default)]
    pub drop: Vec<f64>,
    #[serde(default)]
    pub noise: Vec<f64>,
    #[serde(default)]
    pub parity: Vec<String>,
    #[serde(default)]
    pub seed: Vec<u64>,
    #[serde(default = "one")]
    pub repeat: u64,
}

fn one() -> u64 {
    1
}

/// `[None]` for an empty list so that absent keys do not empty the product.
fn opts<T: Clone>(xs: &[T]) -> Vec<Option<T>> {
    if xs.is_empty() {
        vec![None]
    } else {
        xs.iter().cloned().map(Some).collect()
    }
}

impl Run {
    pub fn expand(&self) -> Vec<Params> {
        let mut out = vec![Params::default()];
        macro_rules! axis {
            ($field:ident) => {
                out = out
                    .into_iter()
                    .flat_map(|p| {
                        opts(&self.$field).into_iter().map(move |v| Params { $field: v, ..p.clone() })
                    })
                    .collect();
            };
        }
        axis!(s);
        axis!(k);
        axis!(k1);
        axis!(k2);
        axis!(j);
        axis!(m);
        axis!(p);
        axis!(n);
        axis!(a);
        axis!(rate);
        axis!(drop);
        axis!(noise);
        axis!(parity);
        axis!(seed);
        out.into_iter()
            .flat_map(|p| {
                (0..self.repeat.max(1)).map(move |r| Params {
                    seed: if self.repeat > 1 { Some(p.seed.unwrap_or(0) + r) } else { p.seed },
                    ..p.clone()
                })
            })
            .collect()
    }
}

/// One table row. `wall_time` is the only column allowed to differ between identical runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub family: String,
    pub s: usize,
    pub n: usize,
    pub parameters: String,
    pub delta_u: usize,
    pub delta_v: usize,
    pub delta_sum: usize,
    pub delta_gap: i64,
    /// `tiled`, `absent`, `refuted`, `unknown`, or `error` when the row could not be evaluated.
    pub verdict: String,
    pub nodes_explored: u64,
    pub wall_time: f64,
    pub error: String,
}

pub const HEADER: &str =
    "family,s,n,parameters,delta_u,delta_v,delta_sum,delta_gap,verdict,nodes_explored,wall_time,error";

/// A certificate produced for a row, already re-verified.
#[derive(Clone, Debug)]
pub enum RowCertificate {
    Tiling(Tiling),
    Refutation(String),
}

#[derive(Clone, Debug)]
pub struct RowResult {
    pub row: ScanRow,
    pub graph: Option<(BalancedBigraph, usize, Metadata)>,
    pub certificate: Option<RowCertificate>,
}

fn error_row(family: &str, params: &Params, err: String) -> RowResult {
    RowResult {
        row: ScanRow {
            family: family.to_string(),
            s: params.s.unwrap_or(0),
            n: params.n.unwrap_or(0),
            parameters: params.describe(),
            delta_u: 0,
            delta_v: 0,
            delta_sum: 0,
            delta_gap: 0,
            verdict: "error".into(),
            nodes_explored: 0,
            wall_time: 0.0,
            error: err,
        },
        graph: None,
        certificate: None,
    }
}

/// Builds and decides one instance. Never panics on bad parameters; failures land in the row.
pub fn evaluate(grid: &Grid, alpha: &Alpha, family: &str, params: &Params) -> RowResult {
    let start = Instant::now();
    let inst = match Kind::parse(family).and_then(|k| build(k, params)) {
        Ok(inst) => inst,
        Err(e) => return error_row(family, params, format!("{e:#}")),
    };
    let g = &inst.graph;
    let s = inst.s;
    let prof = g.min_degrees(s);
    let mut row = ScanRow {
        family: inst.family.clone(),
        s,
        n: g.n(),
        parameters: params.describe(),
        delta_u: prof.delta_u,
        delta_v: prof.delta_v,
        delta_sum: prof.delta_sum(),
        delta_gap: prof.delta_gap(),
        verdict: String::new(),
        nodes_explored: 0,
        wall_time: 0.0,
        error: String::new(),
    };
    let mut certificate = None;
    if g.n() % s != 0 {
        row.verdict = "absent".into();
    } else {
        if grid.refute {
            if let Some(blocks) = inst.meta.partition4() {
                match refute_by_crossing(g, &blocks, s, grid.budget) {
                    Ok(RefuteOutcome::Refuted(r)) => match r.verify(g, &blocks, grid.budget) {
                        Ok(()) => {
                            row.verdict = "refuted".into();
                            certificate = Some(RowCertificate::Refutation(refutation_to_string(&r, &blocks)));
                        }
                        Err(e) => row.error = format!("refutation failed its own check: {e}"),
                    },
                    Ok(RefuteOutcome::Inconclusive { .. }) => {}
                    Err(e) => row.error = e.to_string(),
                }
            }
        }
        if row.verdict.is_empty() {
            let (outcome, nodes) = match grid.mode {
                Mode::Exact => {
                    let r = exact_tile(g, s, grid.budget);
                    (r.outcome, r.nodes)
                }
                Mode::Pipeline => {
                    let r = extremal_tile(g, s, alpha, grid.budget);
                    (r.outcome, r.nodes)
                }
                Mode::Greedy => {
                    let r = greedy_tile(g, s);
                    let out = if r.is_complete() {
                        Search::Found(Tiling { s, copies: r.copies })
                    } else {
                        Search::Unknown
                    };
                    (out, 0)
                }
            };
            row.nodes_explored = nodes;
            row.verdict = match outcome {
                Search::Found(t) => match verify_tiling(g, &t) {
                    Ok(()) => {
                        certificate = Some(RowCertificate::Tiling(t));
                        "tiled".into()
                    }
                    Err(e) => {
                        row.error = format!("tiling failed verification: {e}");
                        "error".into()
                    }
                },
                Search::Absent => "absent".into(),
                Search::Unknown => "unknown".into(),
            };
        }
    }
    row.wall_time = start.elapsed().as_secs_f64();
    RowResult {
        row,
        graph: Some((inst.graph, s, inst.meta)),
        certificate,
    }
}

pub fn parse_grid(text: &str) -> Result<Grid> {
    let grid: Grid = toml::from_str(text).context("invalid grid")?;
    for run in &grid.run {
        Kind::parse(&run.family)?;
    }
    Ok(grid)
}

/// Evaluates every point of the grid, in parallel, returning rows in grid order.
pub fn run_grid(grid: &Grid) -> Result<Vec<RowResult>> {
    let alpha = match &grid.alpha {
        Some(a) => Alpha::parse(a)?,
        None => Alpha::new(DEFAULT_ALPHA)?,
    };
    let points: Vec<(&str, Params)> = grid
        .run
        .iter()
        .flat_map(|r| r.expand().into_iter().map(move |p| (r.family.as_str(), p)))
        .collect();
    Ok(points.par_iter().map(|(f, p)| evaluate(grid, &alpha, f, p)).collect())
}

/// Appends rows to `path` (writing the header when the file is new or empty), or truncates
/// first when `force` is set. Refuses to append to a file with a different header.
pub fn write_rows(path: &Path, rows: &[ScanRow], force: bool) -> Result<()> {
    let fresh = force || std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    if !fresh {
        let first = BufReader::new(std::fs::File::open(path)?).lines().next().transpose()?;
        if first.as_deref() != Some(HEADER) {
            bail!("{} exists with a different header; pass --force to overwrite", path.display());
        }
    }
    let file = OpenOptions::new()
        .create(true)
        .write(true)
        .append(!force)
        .truncate(force)
        .open(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    if fresh {
        w.write_record(HEADER.split(','))?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `row<i>.graph` plus `row<i>.tiling` or `row<i>.refutation` into `dir`, numbering
/// rows from `offset`.
pub fn write_certificates(dir: &Path, results: &[RowResult], offset: usize) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (i, r) in results.iter().enumerate() {
        let (Some((g, s, meta)), Some(cert)) = (&r.graph, &r.certificate) else {
            continue;
        };
        let stem = dir.join(format!("row{}", offset + i));
        std::fs::write(stem.with_extension("graph"), graph_to_string(g, *s, meta))?;
        match cert {
            RowCertificate::Tiling(t) => {
                let mut f = std::fs::File::create(stem.with_extension("tiling"))?;
                write_tiling(&mut f, t)?;
                f.flush()?;
            }
            RowCertificate::Refutation(text) => std::fs::write(stem.with_extension("refutation"), text)?,
        }
    }
    Ok(())
}
