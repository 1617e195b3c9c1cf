//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the console. The process fails
//! when a criterion fails for any reason other than the entries of `KNOWN_UNATTAINABLE`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use kss_core::bigraph::Part;
use kss_core::constructions::{
    noisy_blocks, p_graph, random_bigraph, sqrt_gadget, unbalanced_gadget, zhao_gadget, Gadget, Parity,
};
use kss_core::io::{graph_to_string, refutation_to_string, Metadata};
use kss_core::pipeline::{claim_checks, extremal_tile, Alpha, BlockPartition};
use kss_core::tiler::stars::star_lower_bounds;
use kss_core::tiler::{
    exact_tile, hall_tile, refute_by_crossing, star_packing, BlockPartition4, RefuteOutcome, Search,
    DEFAULT_NODE_BUDGET,
};
use kss_core::{verify_tiling, BalancedBigraph, BigraphBuilder, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

/// Failures that are expected, with the reason. Matched against failure-item prefixes.
const KNOWN_UNATTAINABLE: &[(&str, &str)] = &[(
    "unbalanced j=0",
    "j = 0 admits no construction: even parity deletes (2j−1)s < 0 vertices, odd parity lands one short of n+3s−7",
)];

// pinned limits
const BUILD_LIMIT: Duration = Duration::from_secs(1);
const PGRAPH_TOTAL_LIMIT: Duration = Duration::from_secs(10);
const ZHAO_EXACT_LIMIT: Duration = Duration::from_secs(60);
const ZHAO_EXACT_NODES: u64 = 10_000_000;
const TWO_K33_LIMIT: Duration = Duration::from_secs(1);
const REFUTE_LIMIT: Duration = Duration::from_secs(10);
const PIPELINE_LIMIT: Duration = Duration::from_secs(30);
const PIPELINE_MIN_DIRECT: usize = 40;
const CLAIM_EPS: f64 = 1e-9;

/// Blocks of the pipeline corpus: `n = 60`, two diagonal blocks of 30.
const CORPUS_N: usize = 60;
const CORPUS_ALPHA: &str = "2744/15625";

fn zhao_ks(s: usize) -> [usize; 3] {
    match s {
        2 | 3 => [1, 2, 3],
        4 => [3, 4, 5],
        5 => [7, 8, 9],
        6 => [10, 11, 12],
        7 => [15, 16, 17],
        8 => [22, 23, 24],
        _ => unreachable!(),
    }
}

/// Smallest `k` admitting the unbalanced construction, from `unbalanced_min_k`. `j = 0` reuses
/// the `j = 1` value since no `k` works there.
fn unbalanced_k(s: usize, j: usize, parity: Parity) -> usize {
    let table = match s {
        2 => [1, 7, 25, 57],
        3 => [6, 29, 66, 109],
        4 => [15, 46, 118, 177],
        5 => [26, 72, 196, 333],
        6 => [37, 118, 278, 317],
        7 => [53, 149, 273, 388],
        8 => [74, 208, 340, 459],
        _ => unreachable!(),
    };
    let col = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    table[2 * j.saturating_sub(1) + col]
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

struct Outcome {
    summary: String,
    failures: Vec<String>,
}

fn ceil_sqrt(s: usize) -> usize {
    (0..).find(|c| c * c >= s).unwrap()
}

fn c_of(s: usize) -> usize {
    let p = (0..).take_while(|p| p * p <= s).last().unwrap();
    let q = s - p * p;
    usize::from(1 <= q && q <= p)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn kss(args: &[&str], dir: &Path) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_kss"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (o.status.code().unwrap_or(-1), String::from_utf8_lossy(&o.stdout).into_owned())
}

fn degree_identities() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut slowest = Duration::ZERO;
    let mut check = |label: String, built: Result<Gadget, Error>, took: Duration, want: &dyn Fn(&Gadget) -> Option<String>| {
        slowest = slowest.max(took);
        if took >= BUILD_LIMIT {
            failures.push(format!("{label}: build took {took:?}"));
        }
        match built {
            Ok(gad) => {
                checked += 1;
                if let Some(e) = want(&gad) {
                    failures.push(format!("{label}: {e}"));
                }
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    };
    for s in 2..=8 {
        for k in zhao_ks(s) {
            let (built, took) = timed(|| zhao_gadget(s, k));
            check(format!("zhao s={s} k={k}"), built, took, &|gad| {
                let prof = gad.graph.min_degrees(s);
                let want = gad.graph.n() + 3 * s - 6;
                (prof.delta_sum() != want).then(|| format!("δ_U+δ_V = {} ≠ {want}", prof.delta_sum()))
            });
        }
        for j in 0..=2 {
            for parity in [Parity::Even, Parity::Odd] {
                let k = unbalanced_k(s, j, parity);
                let (built, took) = timed(|| unbalanced_gadget(s, k, j, parity));
                check(format!("unbalanced j={j} s={s} {} k={k}", parity_name(parity)), built, took, &|gad| {
                    let prof = gad.graph.min_degrees(s);
                    let want = gad.graph.n() + 3 * s - 7;
                    let gap = prof.delta_gap();
                    let (lo, hi) = ((2 * s * j) as i64 - s as i64 - 1, (2 * s * j) as i64 - 1);
                    if prof.delta_sum() != want {
                        Some(format!("δ_U+δ_V = {} ≠ {want}", prof.delta_sum()))
                    } else if gap < lo || gap > hi {
                        Some(format!("δ_V−δ_U = {gap} outside [{lo}, {hi}]"))
                    } else {
                        None
                    }
                });
            }
        }
        for k1 in 1..=3 {
            let (built, took) = timed(|| sqrt_gadget(s, k1));
            check(format!("sqrt s={s} k1={k1}"), built, took, &|gad| {
                let prof = gad.graph.min_degrees(s);
                let want = gad.graph.n() + 2 * s + c_of(s) - 2 * ceil_sqrt(s) - 1;
                (prof.delta_sum() != want).then(|| format!("δ_U+δ_V = {} ≠ {want}", prof.delta_sum()))
            });
        }
    }
    Outcome {
        summary: format!("{checked} constructions checked, slowest build {slowest:.2?}"),
        failures,
    }
}

fn p_graph_properties() -> Outcome {
    let mut failures = Vec::new();
    let (mut built, mut skipped) = (0, 0);
    let start = Instant::now();
    for m in 1..=500 {
        for p in 1..=10 {
            let g = match p_graph(m, p) {
                Ok(g) => g,
                Err(Error::NoSidonSet { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => {
                    failures.push(format!("P({m},{p}): {e}"));
                    continue;
                }
            };
            built += 1;
            if (0..m).any(|x| g.degree(Part::U, x) != p || g.degree(Part::V, x) != p) {
                failures.push(format!("P({m},{p}) is not {p}-regular"));
            }
            // a U-pair with two common neighbours is seen twice while scanning V neighbourhoods
            let mut seen = vec![false; m * m];
            'pairs: for v in 0..m {
                let nbrs: Vec<usize> = g.neighbors(Part::V, v).ones().collect();
                for (i, &a) in nbrs.iter().enumerate() {
                    for &b in &nbrs[i + 1..] {
                        if std::mem::replace(&mut seen[a * m + b], true) {
                            failures.push(format!("P({m},{p}): U{a}, U{b} share two neighbours"));
                            break 'pairs;
                        }
                    }
                }
            }
        }
    }
    let took = start.elapsed();
    if took >= PGRAPH_TOTAL_LIMIT {
        failures.push(format!("total {took:?}"));
    }
    Outcome {
        summary: format!("{built} graphs checked, {skipped} pairs without a Sidon set, {took:.2?}"),
        failures,
    }
}

fn exhaustive_non_tilability() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for k in [1, 2] {
        let gad = zhao_gadget(2, k).expect("zhao(2, k) exists");
        let (r, took) = timed(|| exact_tile(&gad.graph, 2, ZHAO_EXACT_NODES));
        notes.push(format!("zhao(2,{k}) {} nodes {took:.2?}", r.nodes));
        if !r.outcome.is_absent() || r.nodes > ZHAO_EXACT_NODES || took >= ZHAO_EXACT_LIMIT {
            failures.push(format!("zhao(2,{k}): absent {} after {} nodes in {took:?}", r.outcome.is_absent(), r.nodes));
        }
    }
    let mut b = BigraphBuilder::new(6);
    b.add_complete(&[0, 1, 2], &[0, 1, 2]);
    b.add_complete(&[3, 4, 5], &[3, 4, 5]);
    let (r, took) = timed(|| exact_tile(&b.build(), 2, DEFAULT_NODE_BUDGET));
    notes.push(format!("2×K3,3 {took:.2?}"));
    if !r.outcome.is_absent() || took >= TWO_K33_LIMIT {
        failures.push(format!("2×K3,3: absent {} in {took:?}", r.outcome.is_absent()));
    }
    Outcome {
        summary: notes.join(", "),
        failures,
    }
}

fn refuter_soundness() -> Outcome {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let (mut refuted, mut verified) = (0, 0);
    let mut cases: Vec<(String, Result<Gadget, Error>)> = Vec::new();
    for s in 2..=4 {
        for k in 1..=3 {
            cases.push((format!("zhao({s},{k})"), zhao_gadget(s, k)));
        }
    }
    for s in [2, 4, 5] {
        cases.push((format!("sqrt({s},1)"), sqrt_gadget(s, 1)));
    }
    for (i, (label, built)) in cases.into_iter().enumerate() {
        let gad = match built {
            Ok(g) => g,
            Err(e) if label.starts_with("zhao") => {
                notes.push(format!("{label} not constructible ({e})"));
                continue;
            }
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        let s = gad.spec.s;
        let blocks = BlockPartition4::from_sizes(&gad.spec.block_sizes);
        let (outcome, took) = timed(|| refute_by_crossing(&gad.graph, &blocks, s, DEFAULT_NODE_BUDGET));
        if took >= REFUTE_LIMIT {
            failures.push(format!("{label}: refuter took {took:?}"));
        }
        let r = match outcome {
            Ok(RefuteOutcome::Refuted(r)) => r,
            Ok(_) => {
                failures.push(format!("{label}: inconclusive"));
                continue;
            }
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        refuted += 1;
        let (g_name, r_name) = (format!("c{i}.graph"), format!("c{i}.refutation"));
        std::fs::write(d.join(&g_name), graph_to_string(&gad.graph, s, &Metadata::from_gadget(&gad))).unwrap();
        std::fs::write(d.join(&r_name), refutation_to_string(&r, &blocks)).unwrap();
        match kss(&["verify", &g_name, &r_name], d) {
            (0, _) => verified += 1,
            (code, out) => failures.push(format!("{label}: verify exited {code}: {}", out.trim())),
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut tileable, mut tried) = (0, 0);
    while tileable < 100 && tried < 10_000 {
        tried += 1;
        let n = 2 * rng.gen_range(2..=8);
        let g = random_bigraph(n, rng.gen_range(0.6..0.95), rng.gen()).unwrap();
        if !matches!(exact_tile(&g, 2, DEFAULT_NODE_BUDGET).outcome, Search::Found(_)) {
            continue;
        }
        tileable += 1;
        let a = rng.gen_range(0..=n);
        let blocks = BlockPartition4 {
            u1: (0..a).collect(),
            u2: (a..n).collect(),
            v1: (0..a).collect(),
            v2: (a..n).collect(),
        };
        match refute_by_crossing(&g, &blocks, 2, DEFAULT_NODE_BUDGET) {
            Ok(RefuteOutcome::Refuted(_)) => failures.push(format!("false refutation on a tileable n = {n} graph")),
            Ok(_) => {}
            Err(e) => failures.push(format!("random n = {n}: {e}")),
        }
    }
    if tileable < 100 {
        failures.push(format!("only {tileable} tileable random instances"));
    }
    notes.insert(0, format!("{refuted} refuted, {verified} re-validated by verify, 0/{tileable} tileable refuted"));
    Outcome {
        summary: notes.join("; "),
        failures,
    }
}

fn hall_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let mut agree = 0;
    for i in 0..200 {
        let n = rng.gen_range(1..=12);
        let rate = [0.3, 0.5, 0.8][i % 3];
        let g = random_bigraph(n, rate, rng.gen()).unwrap();
        let exact = exact_tile(&g, 1, DEFAULT_NODE_BUDGET).outcome;
        let hall = hall_tile(&g).is_some();
        match exact {
            Search::Unknown => failures.push(format!("instance {i}: exact search ran out of budget")),
            e if matches!(e, Search::Found(_)) == hall => agree += 1,
            _ => failures.push(format!("instance {i}: exact and Hall disagree")),
        }
    }
    Outcome {
        summary: format!("{agree}/200 verdicts agree"),
        failures,
    }
}

/// Largest number of disjoint `h`-stars centred in `centers ⊆ U` with leaves in `leaves ⊆ V`:
/// every centre subset, tested with augmenting paths on `h` slots per centre.
fn max_stars(g: &BalancedBigraph, centers: &[usize], leaves: &[usize], h: usize) -> usize {
    fn augment(g: &BalancedBigraph, slots: &[usize], leaves: &[usize], s: usize, owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for (j, &v) in leaves.iter().enumerate() {
            if !seen[j] && g.has_edge(slots[s], v) {
                seen[j] = true;
                if owner[j].is_none_or(|o| augment(g, slots, leaves, o, owner, seen)) {
                    owner[j] = Some(s);
                    return true;
                }
            }
        }
        false
    }
    let mut best = 0;
    for mask in 0u32..1 << centers.len() {
        if mask.count_ones() as usize <= best {
            continue;
        }
        let slots: Vec<usize> = (0..centers.len())
            .filter(|&i| mask >> i & 1 == 1)
            .flat_map(|i| std::iter::repeat_n(centers[i], h))
            .collect();
        let mut owner = vec![None; leaves.len()];
        if (0..slots.len()).all(|s| augment(g, &slots, leaves, s, &mut owner, &mut vec![false; leaves.len()])) {
            best = mask.count_ones() as usize;
        }
    }
    best
}

fn star_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let (mut bounds_ok, mut exact_ok) = (0, 0);
    for i in 0..200 {
        let (a, b, h) = (rng.gen_range(1..=12), rng.gen_range(1..=12), 2 + i % 2);
        let mut builder = BigraphBuilder::new(a.max(b));
        for x in 0..a {
            for y in 0..b {
                if rng.gen_bool(0.6) {
                    builder.add_edge(x, y);
                }
            }
        }
        let g = builder.build();
        let (centers, leaves): (Vec<usize>, Vec<usize>) = ((0..a).collect(), (0..b).collect());
        let leaf_set = g.vertex_set_of(&leaves);
        let center_set = g.vertex_set_of(&centers);
        let delta = centers.iter().map(|&x| g.degree_into(Part::U, x, &leaf_set)).min().unwrap();
        let big_delta = leaves.iter().map(|&y| g.degree_into(Part::V, y, &center_set)).max().unwrap();
        let (f, gb) = star_lower_bounds(delta, big_delta, a, b, h);
        let forward = max_stars(&g, &centers, &leaves, h);
        let backward = max_stars(&g.transpose(), &leaves, &centers, h);
        // x ≥ p/q with q > 0
        let at_least = |x: usize, p: i64, q: i64| x as i64 * q >= p;
        if at_least(forward, *f.numer(), *f.denom()) && at_least(backward, *gb.numer(), *gb.denom()) {
            bounds_ok += 1;
        } else {
            failures.push(format!("instance {i}: maxima {forward}/{backward} below bounds {f}/{gb}"));
        }
        let packing = star_packing(&g, Part::U, &centers, &leaves, h, a);
        if packing.is_valid_in(&g) && packing.len() == forward {
            exact_ok += 1;
        } else {
            failures.push(format!("instance {i}: star_packing gave {} against maximum {forward}", packing.len()));
        }
    }
    Outcome {
        summary: format!("bounds hold {bounds_ok}/200, star_packing exact {exact_ok}/200"),
        failures,
    }
}

/// The seven claim items re-evaluated in floating point from the raw blocks.
fn claims_in_f64(g: &BalancedBigraph, p: &BlockPartition) -> Vec<String> {
    let t = (*p.alpha.value().numer() as f64 / *p.alpha.value().denom() as f64).cbrt();
    let (k1s, k2s, n) = ((p.k1 * p.s) as f64, (p.k2 * p.s) as f64, g.n() as f64);
    let eps = CLAIM_EPS;
    let mut bad = Vec::new();
    let mut need = |ok: bool, what: &str| {
        if !ok {
            bad.push(what.to_string());
        }
    };
    let len = |xs: &Vec<usize>| xs.len() as f64;
    for x in [len(&p.u[1]), len(&p.v[1])] {
        need(x >= k1s - t * t * k2s - eps && x <= k1s + t * t * k1s + eps, "item 1");
    }
    for x in [len(&p.u[2]), len(&p.v[2])] {
        need(x >= k2s - t * t * k1s - eps && x <= k2s + t * t * k2s + eps, "item 2");
    }
    need(len(&p.u[0]) <= t * t * n + eps && len(&p.v[0]) <= t * t * n + eps, "item 3");
    let degs = |part: Part, xs: &[usize], ys: &[usize]| -> Vec<f64> {
        xs.iter()
            .map(|&x| {
                ys.iter()
                    .filter(|&&y| match part {
                        Part::U => g.has_edge(x, y),
                        Part::V => g.has_edge(y, x),
                    })
                    .count() as f64
            })
            .collect()
    };
    let min = |v: Vec<f64>| v.into_iter().fold(f64::INFINITY, f64::min);
    let max = |v: Vec<f64>| v.into_iter().fold(f64::NEG_INFINITY, f64::max);
    need(min(degs(Part::U, &p.u[0], &p.v[1])) >= t * k1s - t * t * k2s - eps, "item 4");
    need(min(degs(Part::U, &p.u[0], &p.v[2])) >= t * k1s - t * t * k1s - eps, "item 4");
    need(min(degs(Part::V, &p.v[0], &p.u[1])) >= t * k2s - t * t * k2s - eps, "item 5");
    need(min(degs(Part::V, &p.v[0], &p.u[2])) >= t * k2s - t * t * k1s - eps, "item 5");
    for (i, ki, kj) in [(1, k1s, k2s), (2, k2s, k1s)] {
        let d = min(degs(Part::U, &p.u[i], &p.v[i])).min(min(degs(Part::V, &p.v[i], &p.u[i])));
        need(d >= ki - t * ki - t * t * kj - eps, "item 6");
    }
    need(max(degs(Part::U, &p.u[1], &p.v[2])) <= 2.0 * t * k1s + eps, "item 7");
    need(max(degs(Part::V, &p.v[2], &p.u[1])) <= 2.0 * t * k2s + eps, "item 7");
    bad
}

/// Criteria 7 and 8 share the corpus.
fn pipeline_and_claims() -> (Outcome, Outcome) {
    let alpha = Alpha::parse(CORPUS_ALPHA).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut direct, mut returned, mut valid) = (0, 0, 0);
    let mut slowest = Duration::ZERO;
    let mut failures = Vec::new();
    let (mut accepted, mut claim_failures) = (0, Vec::new());
    for i in 0..50 {
        let s = 2 + i % 2;
        let g = noisy_blocks(CORPUS_N, CORPUS_N / 2, 0.02, 0.01, rng.gen()).unwrap();
        let (r, took) = timed(|| extremal_tile(&g, s, &alpha, DEFAULT_NODE_BUDGET));
        slowest = slowest.max(took);
        if took >= PIPELINE_LIMIT {
            failures.push(format!("instance {i}: {took:?}"));
        }
        if let Search::Found(t) = &r.outcome {
            returned += 1;
            match verify_tiling(&g, t) {
                Ok(()) => valid += 1,
                Err(e) => failures.push(format!("instance {i}: {e}")),
            }
            if !r.fell_back {
                direct += 1;
            }
        }
        if let Some(p) = &r.accepted {
            accepted += 1;
            let work = if r.transposed { g.transpose() } else { g.clone() };
            let mut bad = claims_in_f64(&work, p);
            bad.extend(claim_checks(&work, p).into_iter().filter(|c| !c.holds).map(|c| format!("item {} (exact)", c.item)));
            if !bad.is_empty() {
                claim_failures.push(format!("instance {i}: {bad:?}"));
            }
        }
    }
    if direct < PIPELINE_MIN_DIRECT {
        failures.push(format!("only {direct}/50 tiled without fallback"));
    }
    if accepted == 0 {
        claim_failures.push("no instance was accepted by preprocess".into());
    }
    (
        Outcome {
            summary: format!("{direct}/50 without fallback, {valid}/{returned} returned tilings verify, slowest {slowest:.2?}"),
            failures,
        },
        Outcome {
            summary: format!("{accepted} accepted partitions, {} with violations", claim_failures.len()),
            failures: claim_failures,
        },
    )
}

fn scan_reproducibility() -> Outcome {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let mut grid = String::from("mode = \"exact\"\nbudget = 10\n");
    for s in 2..=8 {
        for j in 0..=2 {
            for parity in [Parity::Even, Parity::Odd] {
                grid.push_str(&format!(
                    "\n[[run]]\nfamily = \"unbalanced\"\ns = [{s}]\nj = [{j}]\nk = [{}]\nparity = [\"{}\"]\n",
                    unbalanced_k(s, j, parity),
                    parity_name(parity)
                ));
            }
        }
    }
    std::fs::write(d.join("sweep.toml"), grid).unwrap();
    let mut failures = Vec::new();
    let mut tables = Vec::new();
    for out in ["first.csv", "second.csv"] {
        let (code, text) = kss(&["scan", "sweep.toml", "--out", out], d);
        if code != 0 {
            failures.push(format!("scan exited {code}: {}", text.trim()));
        }
        let raw = std::fs::read_to_string(d.join(out)).unwrap_or_default();
        let mut reader = csv::Reader::from_reader(raw.as_bytes());
        let headers = reader.headers().cloned().unwrap_or_default();
        let wall = headers.iter().position(|h| h == "wall_time");
        let rows: Vec<String> = reader
            .records()
            .map(|r| {
                let r = r.unwrap();
                r.iter().enumerate().filter(|&(i, _)| Some(i) != wall).map(|(_, f)| f).collect::<Vec<_>>().join(",")
            })
            .collect();
        tables.push(rows);
    }
    if tables[0] != tables[1] {
        failures.push("tables differ outside wall_time".into());
    }
    if tables[0].len() != 42 {
        failures.push(format!("{} rows, expected 42", tables[0].len()));
    }
    Outcome {
        summary: format!("{} rows, identical excluding wall_time: {}", tables[0].len(), tables[0] == tables[1]),
        failures,
    }
}

fn main() {
    // the harness passes its own flags; only a listing request needs handling
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let (c7, c8) = pipeline_and_claims();
    let results = [
        ("1", "degree identities", degree_identities()),
        ("2", "P(m,p) regular and C4-free", p_graph_properties()),
        ("3", "exhaustive non-tilability", exhaustive_non_tilability()),
        ("4", "refuter soundness and coverage", refuter_soundness()),
        ("5", "s = 1 agrees with Hall", hall_equivalence()),
        ("6", "star-packing bounds", star_bounds()),
        ("7", "pipeline end to end", c7),
        ("8", "claim inequalities", c8),
        ("9", "scan reproducibility", scan_reproducibility()),
    ];
    let mut unexpected = 0;
    for (id, name, out) in &results {
        let known = |f: &String| KNOWN_UNATTAINABLE.iter().find(|(prefix, _)| f.starts_with(prefix));
        let status = if out.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {id} {status} {name}: {}", out.summary);
        for f in &out.failures {
            match known(f) {
                Some((_, why)) => println!("    known: {f} ({why})"),
                None => {
                    unexpected += 1;
                    println!("    {f}");
                }
            }
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} unexpected acceptance failures");
        std::process::exit(1);
    }
}
