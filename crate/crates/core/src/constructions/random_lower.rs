//! The random lower-bound family: a sparse random bipartite graph `H` on `A × B` with no
//! `K_{d,s}` having its `d` side in `A`, padded by a set `A'` complete to all of `V`.

use fixedbitset::FixedBitSet;
use num::rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bigraph::{BalancedBigraph, BigraphBuilder, Part};
use crate::constructions::{BlockSizes, Family, Gadget, GadgetSpec};
use crate::error::{Error, Result};

pub const DEFAULT_RETRY_CAP: usize = 20;

/// Integer parameters `c ≈ s^{1/3}`, `d = 2c`, `a = s^c`, `b ≈ s·a/d`, and the edge probability
/// `min(1, 3d/s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomLowerParams {
    pub s: usize,
    pub c: usize,
    pub d: usize,
    pub a: usize,
    pub b: usize,
    pub prob: Ratio<u64>,
}

impl RandomLowerParams {
    pub fn new(s: usize) -> Result<Self> {
        if s < 2 {
            return Err(Error::InvalidParameter(format!("random lower gadget needs s ≥ 2, got {s}")));
        }
        let c = ((s as f64).cbrt().round() as usize).max(1);
        let d = 2 * c;
        let a = u32::try_from(c)
            .ok()
            .and_then(|c| s.checked_pow(c))
            .ok_or_else(|| Error::InvalidParameter(format!("s^c overflows for s = {s}")))?;
        let b = (s * a + d / 2) / d;
        let prob = Ratio::new(3 * d as u64, s as u64).min(Ratio::from_integer(1));
        Ok(RandomLowerParams { s, c, d, a, b, prob })
    }

    /// `2s^c`, the degree every `A` vertex must reach.
    pub fn required_a(&self) -> usize {
        2 * self.a
    }

    /// `2d·s^{c−1}`.
    pub fn required_b(&self) -> usize {
        2 * self.d * self.a / self.s
    }
}

/// Outcome of the property checks on one sample of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub params: RandomLowerParams,
    /// Samples drawn so far, this one included.
    pub attempts: usize,
    pub min_deg_a: usize,
    pub min_deg_b: usize,
    pub degrees_ok: bool,
    /// `d` vertices of `A` and `s` vertices of `B` forming a `K_{d,s}`, if one exists.
    pub kds_witness: Option<(Vec<usize>, Vec<usize>)>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.degrees_ok && self.kds_witness.is_none()
    }
}

/// Samples `H` until both properties hold, up to `retry_cap` times, and pads it to `n + n`
/// vertices. The returned gadget satisfies `δ_U + δ_V ≥ n + s^c`.
pub fn random_lower_gadget(s: usize, n: usize, seed: u64) -> Result<(Gadget, PropertyReport)> {
    random_lower_gadget_with(s, n, seed, DEFAULT_RETRY_CAP)
}

pub fn random_lower_gadget_with(
    s: usize,
    n: usize,
    seed: u64,
    retry_cap: usize,
) -> Result<(Gadget, PropertyReport)> {
    let params = RandomLowerParams::new(s)?;
    if n < params.a.max(params.b) {
        return Err(Error::InvalidParameter(format!(
            "n = {n} cannot host |A| = {} and |B| = {}",
            params.a, params.b
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for attempt in 1..=retry_cap.max(1) {
        let h = sample_h(&params, &mut rng);
        let report = check_properties(&params, &h, attempt);
        if report.passed() {
            let gadget = pad(&params, &h, n, seed)?;
            return Ok((gadget, report));
        }
        last = Some(report);
    }
    Err(Error::RetryExhausted {
        attempts: retry_cap.max(1),
        last: Box::new(last.expect("at least one attempt")),
    })
}

/// `H` as adjacency bitsets from `A` into `B`.
fn sample_h(params: &RandomLowerParams, rng: &mut ChaCha8Rng) -> Vec<FixedBitSet> {
    let num = *params.prob.numer() as u32;
    let den = *params.prob.denom() as u32;
    (0..params.a)
        .map(|_| {
            let mut row = FixedBitSet::with_capacity(params.b);
            for v in 0..params.b {
                if rng.gen_ratio(num, den) {
                    row.insert(v);
                }
            }
            row
        })
        .collect()
}

fn check_properties(params: &RandomLowerParams, h: &[FixedBitSet], attempts: usize) -> PropertyReport {
    let min_deg_a = h.iter().map(|r| r.count_ones(..)).min().unwrap_or(0);
    let mut deg_b = vec![0usize; params.b];
    h.iter().flat_map(|r| r.ones()).for_each(|v| deg_b[v] += 1);
    let min_deg_b = deg_b.into_iter().min().unwrap_or(0);
    let degrees_ok = min_deg_a >= params.required_a() && min_deg_b >= params.required_b();
    let mut full = FixedBitSet::with_capacity(params.b);
    full.insert_range(..);
    let mut chosen = Vec::with_capacity(params.d);
    let kds_witness = find_kds(h, params.d, params.s, 0, &full, &mut chosen)
        .map(|common| (chosen.clone(), common.ones().take(params.s).collect()));
    PropertyReport {
        params: *params,
        attempts,
        min_deg_a,
        min_deg_b,
        degrees_ok,
        kds_witness,
    }
}

/// Exhaustive search for `d` rows of `h` (indices ≥ `from`) with `≥ s` common columns.
fn find_kds(
    h: &[FixedBitSet],
    d: usize,
    s: usize,
    from: usize,
    common: &FixedBitSet,
    chosen: &mut Vec<usize>,
) -> Option<FixedBitSet> {
    if chosen.len() == d {
        return Some(common.clone());
    }
    for r in from..h.len() {
        if h.len() - r < d - chosen.len() {
            break;
        }
        let next = &h[r] & common;
        if next.count_ones(..) < s {
            continue;
        }
        chosen.push(r);
        if let Some(found) = find_kds(h, d, s, r + 1, &next, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

fn pad(params: &RandomLowerParams, h: &[FixedBitSet], n: usize, seed: u64) -> Result<Gadget> {
    let mut b = BigraphBuilder::new(n);
    for (u, row) in h.iter().enumerate() {
        row.ones().for_each(|v| b.add_edge(u, v));
    }
    let a_prime: Vec<usize> = (params.a..n).collect();
    let all_v: Vec<usize> = (0..n).collect();
    b.add_complete(&a_prime, &all_v);
    let graph: BalancedBigraph = b.build();
    let prof = graph.min_degrees(params.s);
    let bound = n + params.a;
    if prof.delta_sum() < bound {
        return Err(Error::IdentityViolation {
            family: Family::RandomLower.name(),
            what: "δ_U+δ_V (lower bound n + s^c)".into(),
            expected: bound as i64,
            actual: prof.delta_sum() as i64,
        });
    }
    debug_assert!((0..params.a).all(|u| graph.degree(Part::U, u) <= params.b));
    Ok(Gadget {
        spec: GadgetSpec {
            family: Family::RandomLower,
            s: params.s,
            params: vec![
                ("n".into(), n as u64),
                ("seed".into(), seed),
                ("c".into(), params.c as u64),
                ("d".into(), params.d as u64),
            ],
            block_sizes: BlockSizes {
                u1: params.a,
                u2: n - params.a,
                v1: params.b,
                v2: n - params.b,
            },
        },
        graph,
        notes: vec![format!(
            "δ_U+δ_V = {} ≥ n+s^c = {bound}",
            prof.delta_sum()
        )],
    })
}
