//! Family names and parameters shared by `construct` and `scan`.

use anyhow::{anyhow, bail, Context, Result};
use kss_core::constructions::gadgets::{sqrt_gadget_with, unbalanced_min_k};
use kss_core::constructions::{
    noisy_blocks, p_graph, random_bigraph, random_lower_gadget, sqrt_gadget, unbalanced_gadget, zhao_gadget, Family,
    Gadget, Parity,
};
use kss_core::io::Metadata;
use kss_core::BalancedBigraph;

/// Every instance family the CLI can build: the extremal constructions plus two random models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Gadget(Family),
    /// Unbalanced gadget with the parity given separately.
    Unbalanced,
    /// Uniform `G(n, n, rate)`.
    Random,
    /// Two complete diagonal blocks with dropped edges and cross noise.
    Blocks,
}

impl Kind {
    pub fn parse(name: &str) -> Result<Kind> {
        match name {
            "unbalanced" => Ok(Kind::Unbalanced),
            "random" | "gnp" => Ok(Kind::Random),
            "blocks" => Ok(Kind::Blocks),
            _ => Family::parse(name).map(Kind::Gadget).ok_or_else(|| {
                anyhow!(
                    "unknown family {name:?}; expected one of zhao, unbalanced, unbalanced_even, unbalanced_odd, \
                     sqrt, pgraph, random_lower, random, blocks"
                )
            }),
        }
    }
}

/// Optional parameters; each family reads the ones it needs and rejects missing ones.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params {
    pub s: Option<usize>,
    pub k: Option<usize>,
    pub k1: Option<usize>,
    pub k2: Option<usize>,
    pub j: Option<usize>,
    pub m: Option<usize>,
    pub p: Option<usize>,
    pub n: Option<usize>,
    pub a: Option<usize>,
    pub seed: Option<u64>,
    pub parity: Option<String>,
    pub rate: Option<f64>,
    pub drop: Option<f64>,
    pub noise: Option<f64>,
}

impl Params {
    /// `key=value` pairs in field order, for the scan table.
    pub fn describe(&self) -> String {
        let mut out = Vec::new();
        let ints = [
            ("k", self.k),
            ("k1", self.k1),
            ("k2", self.k2),
            ("j", self.j),
            ("m", self.m),
            ("p", self.p),
            ("a", self.a),
        ];
        out.extend(ints.iter().filter_map(|(k, v)| v.map(|v| format!("{k}={v}"))));
        let floats = [("rate", self.rate), ("drop", self.drop), ("noise", self.noise)];
        out.extend(floats.iter().filter_map(|(k, v)| v.map(|v| format!("{k}={v}"))));
        if let Some(par) = &self.parity {
            out.push(format!("parity={par}"));
        }
        if let Some(seed) = self.seed {
            out.push(format!("seed={seed}"));
        }
        out.join(" ")
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("{family} needs --{flag}"))
}

pub fn parse_parity(text: &str) -> Result<Parity> {
    match text {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        _ => bail!("parity must be even or odd, got {text:?}"),
    }
}

/// A built instance ready to be written or tiled.
#[derive(Clone, Debug)]
pub struct Instance {
    pub family: String,
    pub graph: BalancedBigraph,
    pub s: usize,
    pub meta: Metadata,
    /// Identities the generator checked, for display.
    pub notes: Vec<String>,
}

impl Instance {
    fn from_gadget(gad: Gadget) -> Self {
        Instance {
            family: gad.spec.family.name().to_string(),
            s: gad.spec.s,
            meta: Metadata::from_gadget(&gad),
            notes: gad.notes,
            graph: gad.graph,
        }
    }

    fn plain(family: &str, graph: BalancedBigraph, s: usize, params: Vec<(&str, u64)>) -> Self {
        Instance {
            family: family.to_string(),
            graph,
            s,
            meta: Metadata {
                family: Some(family.to_string()),
                params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
                ..Metadata::default()
            },
            notes: Vec::new(),
        }
    }
}

pub fn build(kind: Kind, p: &Params) -> Result<Instance> {
    let inst = match kind {
        Kind::Gadget(Family::Zhao) => {
            Instance::from_gadget(zhao_gadget(need(p.s, "s", "zhao")?, need(p.k, "k", "zhao")?)?)
        }
        Kind::Unbalanced => {
            let parity = parse_parity(p.parity.as_deref().ok_or_else(|| anyhow!("unbalanced needs --parity"))?)?;
            unbalanced(p, parity)?
        }
        Kind::Gadget(Family::UnbalancedEven) => unbalanced(p, Parity::Even)?,
        Kind::Gadget(Family::UnbalancedOdd) => unbalanced(p, Parity::Odd)?,
        Kind::Gadget(Family::SqrtGadget) => {
            let s = need(p.s, "s", "sqrt")?;
            let k1 = need(p.k1, "k1", "sqrt")?;
            Instance::from_gadget(match p.k2 {
                Some(k2) => sqrt_gadget_with(s, k1, k2)?,
                None => sqrt_gadget(s, k1)?,
            })
        }
        Kind::Gadget(Family::PGraph) => {
            let (m, deg) = (need(p.m, "m", "pgraph")?, need(p.p, "p", "pgraph")?);
            let g = p_graph(m, deg)?;
            let mut inst = Instance::plain("p_graph", g, p.s.unwrap_or(1), vec![("m", m as u64), ("p", deg as u64)]);
            inst.notes.push(format!("{deg}-regular on {m}+{m} vertices, no K_{{2,2}}"));
            inst
        }
        Kind::Gadget(Family::RandomLower) => {
            let s = need(p.s, "s", "random_lower")?;
            let (gad, report) = random_lower_gadget(s, need(p.n, "n", "random_lower")?, p.seed.unwrap_or(0))?;
            let mut inst = Instance::from_gadget(gad);
            inst.notes.push(format!("property checks passed on attempt {}", report.attempts));
            inst
        }
        Kind::Random => {
            let (n, rate) = (need(p.n, "n", "random")?, need(p.rate, "rate", "random")?);
            let seed = p.seed.unwrap_or(0);
            let mut inst = Instance::plain("random", random_bigraph(n, rate, seed)?, p.s.unwrap_or(1), vec![("n", n as u64), ("seed", seed)]);
            inst.meta.notes.push(format!("edge rate {rate}"));
            inst
        }
        Kind::Blocks => {
            let n = need(p.n, "n", "blocks")?;
            let a = p.a.unwrap_or(n / 2);
            let seed = p.seed.unwrap_or(0);
            let (drop, noise) = (p.drop.unwrap_or(0.0), p.noise.unwrap_or(0.0));
            let g = noisy_blocks(n, a, drop, noise, seed)?;
            let mut inst = Instance::plain("blocks", g, p.s.unwrap_or(1), vec![("n", n as u64), ("a", a as u64), ("seed", seed)]);
            inst.meta.notes.push(format!("drop rate {drop}, noise rate {noise}"));
            inst.meta.blocks = vec![
                ("U1".into(), (0..a).collect()),
                ("U2".into(), (a..n).collect()),
                ("V1".into(), (0..a).collect()),
                ("V2".into(), (a..n).collect()),
            ];
            inst
        }
    };
    Ok(inst)
}

fn unbalanced(p: &Params, parity: Parity) -> Result<Instance> {
    let s = need(p.s, "s", "unbalanced")?;
    let j = need(p.j, "j", "unbalanced")?;
    let k = match p.k {
        Some(k) => k,
        None => unbalanced_min_k(s, j, parity, 64)
            .with_context(|| format!("no feasible k ≤ 64 for s = {s}, j = {j}; pass --k explicitly"))?,
    };
    Ok(Instance::from_gadget(unbalanced_gadget(s, k, j, parity)?))
}
