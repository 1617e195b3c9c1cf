use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use kss_core::io::{graph_to_string, parse_block_spec, read_graph, refutation_to_string, write_tiling, GraphFile};
use kss_core::pipeline::{extremal_tile, Alpha, DEFAULT_ALPHA};
use kss_core::threshold::{main2_max_d, threshold, ThresholdKind};
use kss_core::tiler::{exact_tile, greedy_tile, refute_by_crossing, RefuteOutcome, Search, DEFAULT_NODE_BUDGET};
use kss_core::{verify_tiling, Tiling};
use kss_cli::certify::{check, Certificate};
use kss_cli::family::{build, Kind, Params};
use kss_cli::scan::{parse_grid, run_grid, write_certificates, write_rows, Mode};

/// Exit status for errors; 0, 1 and 2 are verdicts.
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "kss", version, about = "K_{s,s}-tilings of balanced bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an instance of a family and write it as a graph file.
    Construct {
        /// zhao, unbalanced, unbalanced_even, unbalanced_odd, sqrt, pgraph, random_lower, random, blocks
        family: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide tilability. Exit 0 tiled, 1 absent, 2 unknown.
    Tile {
        graph: PathBuf,
        /// Defaults to the block size in the file header.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Pipeline density threshold, as p/q or a decimal.
        #[arg(long)]
        alpha: Option<String>,
        /// Where to write the tiling.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the pipeline trace.
        #[arg(long)]
        trace: bool,
    },
    /// Look for a crossing-signature refutation. Exit 0 refuted, 1 inconclusive.
    Refute {
        graph: PathBuf,
        #[arg(long)]
        s: Option<usize>,
        /// `U1=0..2;U2=3..5;V1=..;V2=..` (inclusive ranges); defaults to the file's blocks.
        #[arg(long)]
        blocks: Option<String>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a tiling or refutation against a graph. Exit 0 valid, 1 invalid.
    Verify {
        graph: PathBuf,
        certificate: PathBuf,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Run a parameter grid and append one CSV row per instance.
    Scan {
        grid: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overwrite instead of appending.
        #[arg(long)]
        force: bool,
        /// Also write each row's graph and certificate here.
        #[arg(long)]
        certs: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Degrees, the (k1, r) decomposition, thresholds and metadata of a graph file.
    Info {
        graph: PathBuf,
        #[arg(long)]
        s: Option<usize>,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    k1: Option<usize>,
    #[arg(long)]
    k2: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// First block size for `blocks`.
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// even or odd, for `unbalanced`.
    #[arg(long)]
    parity: Option<String>,
    #[arg(long)]
    rate: Option<f64>,
    #[arg(long)]
    drop: Option<f64>,
    #[arg(long)]
    noise: Option<f64>,
}

impl From<ParamArgs> for Params {
    fn from(a: ParamArgs) -> Self {
        Params {
            s: a.s,
            k: a.k,
            k1: a.k1,
            k2: a.k2,
            j: a.j,
            m: a.m,
            p: a.p,
            n: a.n,
            a: a.a,
            seed: a.seed,
            parity: a.parity,
            rate: a.rate,
            drop: a.drop,
            noise: a.noise,
        }
    }
}

fn load(path: &Path) -> Result<GraphFile> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    read_graph(&text).with_context(|| format!("{}", path.display()))
}

/// Stack for every worker: the exact search recurses once per placed copy.
const STACK_BYTES: usize = 512 << 20;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let worker = std::thread::Builder::new()
        .stack_size(STACK_BYTES)
        .spawn(move || run(cli.command))
        .expect("spawn main worker");
    match worker.join().unwrap_or_else(|_| Err(anyhow::anyhow!("worker panicked"))) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Construct { family, params, out } => construct(&family, params.into(), out),
        Command::Tile {
            graph,
            s,
            mode,
            budget,
            alpha,
            out,
            trace,
        } => tile(&graph, s, mode, budget, alpha.as_deref(), out, trace),
        Command::Refute {
            graph,
            s,
            blocks,
            budget,
            out,
        } => refute(&graph, s, blocks.as_deref(), budget, out),
        Command::Verify {
            graph,
            certificate,
            s,
            budget,
        } => {
            let f = load(&graph)?;
            let text = fs::read_to_string(&certificate).with_context(|| format!("cannot read {}", certificate.display()))?;
            match check(&f.graph, &text, s, budget) {
                Ok(Certificate::Tiling { s, copies }) => {
                    println!("valid tiling: {copies} copies of K_{{{s},{s}}}");
                    Ok(0)
                }
                Ok(Certificate::Refutation { s, signatures }) => {
                    println!("valid refutation for s = {s}: {signatures} realizable signatures, system infeasible");
                    Ok(0)
                }
                Err(e) => {
                    println!("invalid: {e}");
                    Ok(1)
                }
            }
        }
        Command::Scan {
            grid,
            out,
            force,
            certs,
            threads,
        } => {
            let text = fs::read_to_string(&grid).with_context(|| format!("cannot read {}", grid.display()))?;
            let grid = parse_grid(&text)?;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0))
                .stack_size(STACK_BYTES)
                .build()?;
            let results = pool.install(|| run_grid(&grid))?;
            let offset = if force {
                0
            } else {
                fs::read_to_string(&out).map(|t| t.lines().count().saturating_sub(1)).unwrap_or(0)
            };
            let rows: Vec<_> = results.iter().map(|r| r.row.clone()).collect();
            write_rows(&out, &rows, force)?;
            if let Some(dir) = certs {
                write_certificates(&dir, &results, offset)?;
            }
            let errors = rows.iter().filter(|r| r.verdict == "error").count();
            println!("{} rows written to {} ({errors} errors)", rows.len(), out.display());
            Ok(0)
        }
        Command::Info { graph, s } => info(&graph, s),
    }
}

fn construct(family: &str, params: Params, out: Option<PathBuf>) -> Result<u8> {
    let kind = Kind::parse(family)?;
    let inst = build(kind, &params).with_context(|| format!("constructing {family}"))?;
    let text = graph_to_string(&inst.graph, inst.s, &inst.meta);
    let n = inst.graph.n();
    // the summary goes to stderr when stdout carries the graph
    let mut summary = format!("{}: n = {n}, s = {}, {} edges\n", inst.family, inst.s, inst.graph.edge_count());
    for note in &inst.notes {
        summary.push_str(note);
        summary.push('\n');
    }
    if out.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    match out {
        Some(path) => {
            fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn tile(
    path: &Path,
    s: Option<usize>,
    mode: Mode,
    budget: u64,
    alpha: Option<&str>,
    out: Option<PathBuf>,
    trace: bool,
) -> Result<u8> {
    let f = load(path)?;
    let s = s.unwrap_or(f.s);
    if s == 0 {
        bail!("s must be positive");
    }
    let g = &f.graph;
    let (outcome, nodes) = match mode {
        Mode::Exact => {
            let r = exact_tile(g, s, budget);
            (r.outcome, r.nodes)
        }
        Mode::Greedy => {
            let r = greedy_tile(g, s);
            if r.is_complete() {
                (Search::Found(Tiling { s, copies: r.copies }), 0)
            } else {
                (Search::Unknown, 0)
            }
        }
        Mode::Pipeline => {
            let alpha = match alpha {
                Some(a) => Alpha::parse(a)?,
                None => Alpha::new(DEFAULT_ALPHA)?,
            };
            let r = extremal_tile(g, s, &alpha, budget);
            if trace {
                for line in &r.trace {
                    println!("{line}");
                }
            }
            if let Some(why) = &r.fallback_reason {
                println!("fell back to exact search: {why}");
            }
            (r.outcome, r.nodes)
        }
    };
    match outcome {
        Search::Found(t) => {
            let mut buf = Vec::new();
            write_tiling(&mut buf, &t)?;
            let text = String::from_utf8(buf)?;
            // re-read what will be written, so the file and the report cannot disagree
            if let Err(e) = check(g, &text, Some(s), budget) {
                bail!("produced tiling failed verification: {e}");
            }
            verify_tiling(g, &t).map_err(|e| anyhow::anyhow!("{e}"))?;
            match out {
                Some(p) => {
                    fs::File::create(&p)?.write_all(text.as_bytes())?;
                    println!("tiled: {} copies of K_{{{s},{s}}} after {nodes} nodes, written to {}", t.copies.len(), p.display());
                }
                None => {
                    println!("tiled: {} copies of K_{{{s},{s}}} after {nodes} nodes", t.copies.len());
                    print!("{text}");
                }
            }
            Ok(0)
        }
        Search::Absent => {
            println!("absent: no K_{{{s},{s}}}-tiling ({nodes} nodes)");
            Ok(1)
        }
        Search::Unknown => {
            println!("unknown: budget of {budget} nodes exhausted");
            Ok(2)
        }
    }
}

fn refute(path: &Path, s: Option<usize>, blocks: Option<&str>, budget: u64, out: Option<PathBuf>) -> Result<u8> {
    let f = load(path)?;
    let s = s.unwrap_or(f.s);
    let blocks = match blocks {
        Some(spec) => parse_block_spec(spec)?,
        None => f
            .meta
            .partition4()
            .context("the graph file names no U1/U2/V1/V2 blocks; pass --blocks")?,
    };
    match refute_by_crossing(&f.graph, &blocks, s, budget)? {
        RefuteOutcome::Refuted(r) => {
            let text = refutation_to_string(&r, &blocks);
            if let Err(e) = check(&f.graph, &text, Some(s), budget) {
                bail!("produced refutation failed verification: {e}");
            }
            println!("refuted");
            println!("{r}");
            if let Some(p) = out {
                fs::write(&p, text)?;
                println!("written to {}", p.display());
            }
            Ok(0)
        }
        RefuteOutcome::Inconclusive { realizable, solution } => {
            println!("inconclusive: the system over {} realizable signatures is solvable", realizable.len());
            let used: Vec<String> = solution
                .iter()
                .filter(|(_, k)| *k > 0)
                .map(|(g, k)| format!("{k}×{g}"))
                .collect();
            println!("  e.g. {}", used.join(" + "));
            Ok(1)
        }
    }
}

fn info(path: &Path, s: Option<usize>) -> Result<u8> {
    let f = load(path)?;
    let s = s.unwrap_or(f.s);
    let g = &f.graph;
    let prof = g.min_degrees(s);
    let n = g.n();
    if let Some(fam) = &f.meta.family {
        println!("family      {fam}");
    }
    for (k, v) in &f.meta.params {
        println!("param       {k}={v}");
    }
    for (name, members) in &f.meta.blocks {
        println!("block       {name}: {} vertices", members.len());
    }
    println!("n           {n}");
    println!("edges       {}", g.edge_count());
    println!("s           {s}");
    println!("δ_U, δ_V    {}, {}", prof.delta_u, prof.delta_v);
    println!("δ_U+δ_V     {} = n{:+}", prof.delta_sum(), prof.delta_sum() as i64 - n as i64);
    println!("δ_V−δ_U     {}", prof.delta_gap());
    match prof.decomposition {
        Some(d) => println!("δ_U         = k1·s + s + r with k1 = {}, r = {}, k2 = {}", d.k1, d.r, d.k2),
        None => println!("δ_U         no (k1, r) decomposition (δ_U < s or s ∤ n)"),
    }
    if s >= 2 && n % s == 0 {
        let m = (n / s) as u64;
        let s64 = s as u64;
        println!("threshold   δ(G) ≥ {} (minimum degree)", threshold(s64, m, ThresholdKind::Zhao)?);
        println!("threshold   δ_U+δ_V ≥ {} (general)", threshold(s64, m, ThresholdKind::Main1)?);
        if let Some(max_d) = main2_max_d(s64) {
            let lo = threshold(s64, m, ThresholdKind::Main2 { d: 0 })?;
            let hi = threshold(s64, m, ThresholdKind::Main2 { d: max_d })?;
            println!("threshold   δ_U+δ_V ≥ {lo}..{hi} (d = 0..{max_d}, when δ_V−δ_U is large)");
        }
    }
    for note in &f.meta.notes {
        println!("note        {note}");
    }
    Ok(0)
}
