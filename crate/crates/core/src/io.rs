//! Text formats for graphs, tilings and refutations.
//!
//! Graphs: a header `bigraph <n> <s>`, then one `e <u> <v>` line per edge (0-based, `u ∈ U`,
//! `v ∈ V`). Blank lines and `#` comments are ignored by the graph reader; a few comment forms
//! carry metadata: `# family=zhao`, `# param k=1`, `# block U1=0..2` (inclusive) and
//! `# note <text>`.
//!
//! Tilings: one `c u1 .. us | v1 .. vs` line per copy.
//!
//! Refutations: `refutation <s>`, four `block` lines, one `sig x1 x2 y1 y2` line per realizable
//! signature (suffixed `?` when only kept because its search was inconclusive) and a
//! `target <|U1|> <|V1|> <n/s>` line. The linear system is repeated as comments.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::bigraph::{BalancedBigraph, Biclique, Tiling};
use crate::constructions::{BlockSizes, Gadget};
use crate::error::{Error, Result};
use crate::tiler::feasibility::Targets;
use crate::tiler::{BlockPartition4, CrossingSignature, Refutation};

/// Named vertex blocks and construction parameters carried as comments in a graph file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metadata {
    pub family: Option<String>,
    pub params: Vec<(String, u64)>,
    /// `(name, members)`, e.g. `("U1", [0, 1, 2])`.
    pub blocks: Vec<(String, Vec<usize>)>,
    pub notes: Vec<String>,
}

impl Metadata {
    pub fn from_gadget(gad: &Gadget) -> Self {
        let b = &gad.spec.block_sizes;
        let mut params = vec![("s".to_string(), gad.spec.s as u64)];
        params.extend(gad.spec.params.iter().cloned());
        Metadata {
            family: Some(gad.spec.family.name().to_string()),
            params,
            blocks: vec![
                ("U1".into(), b.u1_range().collect()),
                ("U2".into(), b.u2_range().collect()),
                ("V1".into(), b.v1_range().collect()),
                ("V2".into(), b.v2_range().collect()),
            ],
            notes: gad.notes.clone(),
        }
    }

    pub fn block(&self, name: &str) -> Option<&[usize]> {
        self.blocks.iter().find(|(b, _)| b == name).map(|(_, m)| m.as_slice())
    }

    /// The four blocks `U1, U2, V1, V2`, if all are present.
    pub fn partition4(&self) -> Option<BlockPartition4> {
        Some(BlockPartition4 {
            u1: self.block("U1")?.to_vec(),
            u2: self.block("U2")?.to_vec(),
            v1: self.block("V1")?.to_vec(),
            v2: self.block("V2")?.to_vec(),
        })
    }

    pub fn param(&self, key: &str) -> Option<u64> {
        self.params.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }
}

#[derive(Clone, Debug)]
pub struct GraphFile {
    pub graph: BalancedBigraph,
    /// The block size recorded in the header.
    pub s: usize,
    pub meta: Metadata,
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected {what}, found {tok:?}"),
    })
}

/// Parses `0..2,5,7..9` (ranges inclusive) into a sorted, duplicate-free list.
pub fn parse_index_list(text: &str, line: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (parse_usize(a.trim(), line, "index")?, parse_usize(b.trim(), line, "index")?);
                if a > b {
                    return Err(Error::Parse {
                        line,
                        msg: format!("empty range {item}"),
                    });
                }
                out.extend(a..=b);
            }
            None => out.push(parse_usize(item, line, "index")?),
        }
    }
    out.sort_unstable();
    let len = out.len();
    out.dedup();
    if out.len() != len {
        return Err(Error::Parse {
            line,
            msg: format!("repeated index in {text:?}"),
        });
    }
    Ok(out)
}

/// Inverse of [`parse_index_list`] on sorted input, using the shortest range form.
pub fn format_index_list(xs: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < xs.len() {
        let mut j = i;
        while j + 1 < xs.len() && xs[j + 1] == xs[j] + 1 {
            j += 1;
        }
        parts.push(if j == i { xs[i].to_string() } else { format!("{}..{}", xs[i], xs[j]) });
        i = j + 1;
    }
    parts.join(",")
}

/// `U1=0..2;U2=3..5;V1=0..1;V2=2..5`, the explicit form of the four refuter blocks.
pub fn parse_block_spec(text: &str) -> Result<BlockPartition4> {
    let mut meta = Metadata::default();
    for item in text.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (name, list) = item.split_once('=').ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("block {item:?} is not NAME=indices"),
        })?;
        meta.blocks.push((name.trim().to_string(), parse_index_list(list, 0)?));
    }
    meta.partition4()
        .ok_or_else(|| Error::MalformedBlocks("a block spec needs U1, U2, V1 and V2".into()))
}

fn metadata_line(meta: &mut Metadata, body: &str, line: usize) -> Result<()> {
    let body = body.trim();
    if let Some(f) = body.strip_prefix("family=") {
        meta.family = Some(f.trim().to_string());
    } else if let Some(p) = body.strip_prefix("param ") {
        let (k, v) = p.split_once('=').ok_or_else(|| Error::Parse {
            line,
            msg: format!("parameter {p:?} is not key=value"),
        })?;
        let v = v.trim().parse().map_err(|_| Error::Parse {
            line,
            msg: format!("parameter value {v:?} is not an integer"),
        })?;
        meta.params.push((k.trim().to_string(), v));
    } else if let Some(b) = body.strip_prefix("block ") {
        let (name, list) = b.split_once('=').ok_or_else(|| Error::Parse {
            line,
            msg: format!("block {b:?} is not NAME=indices"),
        })?;
        meta.blocks.push((name.trim().to_string(), parse_index_list(list, line)?));
    } else if let Some(n) = body.strip_prefix("note ") {
        meta.notes.push(n.to_string());
    }
    Ok(())
}

pub fn read_graph(text: &str) -> Result<GraphFile> {
    let mut meta = Metadata::default();
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if let Some(body) = trimmed.strip_prefix('#') {
            metadata_line(&mut meta, body, line)?;
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match (toks.as_slice(), header) {
            ([], _) => {}
            (["bigraph", n, s], None) => {
                let s = parse_usize(s, line, "block size")?;
                if s == 0 {
                    return Err(Error::Parse {
                        line,
                        msg: "block size must be positive".into(),
                    });
                }
                header = Some((parse_usize(n, line, "vertex count")?, s));
            }
            (["e", u, v], Some((n, _))) => {
                let (u, v) = (parse_usize(u, line, "U index")?, parse_usize(v, line, "V index")?);
                if u >= n || v >= n {
                    return Err(Error::Parse {
                        line,
                        msg: format!("edge ({u},{v}) out of range for n = {n}"),
                    });
                }
                edges.push((u, v));
            }
            (["bigraph", ..], Some(_)) => {
                return Err(Error::Parse {
                    line,
                    msg: "second header".into(),
                })
            }
            (_, None) => {
                return Err(Error::Parse {
                    line,
                    msg: "expected header `bigraph <n> <s>`".into(),
                })
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unrecognised line {trimmed:?}"),
                })
            }
        }
    }
    let (n, s) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing header `bigraph <n> <s>`".into(),
    })?;
    for (name, members) in &meta.blocks {
        if let Some(&x) = members.iter().find(|&&x| x >= n) {
            return Err(Error::Parse {
                line: 0,
                msg: format!("block {name} contains {x}, out of range for n = {n}"),
            });
        }
    }
    Ok(GraphFile {
        graph: BalancedBigraph::from_edges(n, edges)?,
        s,
        meta,
    })
}

/// Edges are written sorted by `(u, v)`.
pub fn write_graph<W: Write>(mut w: W, g: &BalancedBigraph, s: usize, meta: &Metadata) -> io::Result<()> {
    if let Some(f) = &meta.family {
        writeln!(w, "# family={f}")?;
    }
    for (k, v) in &meta.params {
        writeln!(w, "# param {k}={v}")?;
    }
    for (name, members) in &meta.blocks {
        writeln!(w, "# block {name}={}", format_index_list(members))?;
    }
    for note in &meta.notes {
        writeln!(w, "# note {note}")?;
    }
    writeln!(w, "bigraph {} {s}", g.n())?;
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.sort_unstable();
    for (u, v) in edges {
        writeln!(w, "e {u} {v}")?;
    }
    Ok(())
}

pub fn graph_to_string(g: &BalancedBigraph, s: usize, meta: &Metadata) -> String {
    let mut buf = Vec::new();
    write_graph(&mut buf, g, s, meta).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

pub fn write_tiling<W: Write>(mut w: W, t: &Tiling) -> io::Result<()> {
    for c in &t.copies {
        let join = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        writeln!(w, "c {} | {}", join(&c.u), join(&c.v))?;
    }
    Ok(())
}

/// Reads copies; `s` is taken from the first copy (a file without copies reads as `s = 0`).
/// Copy sizes are not checked here, that is the verifier's job.
pub fn read_tiling(text: &str) -> Result<Tiling> {
    let mut copies = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let body = trimmed.strip_prefix("c ").ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected `c u.. | v..`, found {trimmed:?}"),
        })?;
        let (us, vs) = body.split_once('|').ok_or_else(|| Error::Parse {
            line,
            msg: "copy without `|` separator".into(),
        })?;
        let side = |part: &str| -> Result<Vec<usize>> {
            part.split_whitespace().map(|t| parse_usize(t, line, "vertex index")).collect()
        };
        // keep file order inside a copy so that duplicates stay visible to the verifier
        copies.push(Biclique { u: side(us)?, v: side(vs)? });
    }
    let s = copies.first().map_or(0, |c| c.u.len());
    Ok(Tiling { s, copies })
}

/// A refutation together with the blocks it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefutationFile {
    pub refutation: Refutation,
    pub blocks: BlockPartition4,
}

pub fn refutation_to_string(r: &Refutation, blocks: &BlockPartition4) -> String {
    let mut out = String::new();
    writeln!(out, "refutation {}", r.s).unwrap();
    for (name, members) in [("U1", &blocks.u1), ("U2", &blocks.u2), ("V1", &blocks.v1), ("V2", &blocks.v2)] {
        writeln!(out, "block {name}={}", format_index_list(members)).unwrap();
    }
    for g in &r.realizable {
        let mark = if r.undetermined.contains(g) { " ?" } else { "" };
        writeln!(out, "sig {} {} {} {}{mark}", g.x1, g.x2, g.y1, g.y2).unwrap();
    }
    writeln!(out, "target {} {} {}", r.target.x, r.target.y, r.target.count).unwrap();
    for line in r.to_string().lines() {
        writeln!(out, "# {line}").unwrap();
    }
    out
}

pub fn read_refutation(text: &str) -> Result<RefutationFile> {
    let mut s = None;
    let mut meta = Metadata::default();
    let mut realizable = Vec::new();
    let mut undetermined = Vec::new();
    let mut target = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match toks.as_slice() {
            ["refutation", k] if s.is_none() => s = Some(parse_usize(k, line, "block size")?),
            ["block", ..] => metadata_line(&mut meta, trimmed, line)?,
            ["sig", a, b, c, d, rest @ ..] if rest.is_empty() || rest == ["?"] => {
                let g = CrossingSignature::new(
                    parse_usize(a, line, "x1")?,
                    parse_usize(b, line, "x2")?,
                    parse_usize(c, line, "y1")?,
                    parse_usize(d, line, "y2")?,
                );
                if !rest.is_empty() {
                    undetermined.push(g);
                }
                realizable.push(g);
            }
            ["target", x, y, count] => {
                target = Some(Targets {
                    x: parse_usize(x, line, "|U1|")?,
                    y: parse_usize(y, line, "|V1|")?,
                    count: parse_usize(count, line, "copy count")?,
                })
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unrecognised line {trimmed:?}"),
                })
            }
        }
    }
    let missing = |what: &str| Error::Parse {
        line: 0,
        msg: format!("refutation without {what}"),
    };
    Ok(RefutationFile {
        refutation: Refutation {
            s: s.ok_or_else(|| missing("`refutation <s>` header"))?,
            realizable,
            undetermined,
            target: target.ok_or_else(|| missing("`target` line"))?,
        },
        blocks: meta.partition4().ok_or_else(|| missing("all four blocks"))?,
    })
}

/// Contiguous block sizes, when the four blocks are `0..a`, `a..n` on both sides.
pub fn contiguous_sizes(b: &BlockPartition4) -> Option<BlockSizes> {
    let contiguous = |first: &[usize], second: &[usize]| {
        first.iter().chain(second).enumerate().all(|(i, &x)| i == x)
    };
    (contiguous(&b.u1, &b.u2) && contiguous(&b.v1, &b.v2)).then_some(BlockSizes {
        u1: b.u1.len(),
        u2: b.u2.len(),
        v1: b.v1.len(),
        v2: b.v2.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::zhao_gadget;
    use crate::tiler::{refute_by_crossing, RefuteOutcome};

    #[test]
    fn graph_round_trip_keeps_metadata() {
        let gad = zhao_gadget(2, 1).unwrap();
        let meta = Metadata::from_gadget(&gad);
        let text = graph_to_string(&gad.graph, 2, &meta);
        let back = read_graph(&text).unwrap();
        assert_eq!(back.graph, gad.graph);
        assert_eq!(back.s, 2);
        assert_eq!(back.meta, meta);
        assert_eq!(back.meta.partition4(), Some(BlockPartition4::from_sizes(&gad.spec.block_sizes)));
    }

    #[test]
    fn edges_are_sorted_and_comments_ignored() {
        let text = "# hello\n\nbigraph 2 1\ne 1 0\n# between\ne 0 1\n";
        let f = read_graph(text).unwrap();
        assert_eq!(graph_to_string(&f.graph, 1, &Metadata::default()), "bigraph 2 1\ne 0 1\ne 1 0\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        for (text, line) in [
            ("e 0 0\n", 1),
            ("bigraph 2 1\ne 0 2\n", 2),
            ("bigraph 2 1\n\nx\n", 3),
            ("bigraph 2 0\n", 1),
            ("# block U1=3..1\nbigraph 4 1\n", 1),
        ] {
            match read_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(read_graph("").is_err());
    }

    #[test]
    fn index_lists() {
        assert_eq!(parse_index_list("0..2, 5,7..8", 0).unwrap(), vec![0, 1, 2, 5, 7, 8]);
        assert_eq!(format_index_list(&[0, 1, 2, 5, 7, 8]), "0..2,5,7..8");
        assert_eq!(format_index_list(&[]), "");
        assert!(parse_index_list("1,1", 0).is_err());
    }

    #[test]
    fn tiling_round_trip() {
        let t = Tiling {
            s: 2,
            copies: vec![Biclique::new(vec![0, 1], vec![2, 3]), Biclique::new(vec![2, 3], vec![0, 1])],
        };
        let mut buf = Vec::new();
        write_tiling(&mut buf, &t).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "c 0 1 | 2 3\nc 2 3 | 0 1\n");
        assert_eq!(read_tiling(std::str::from_utf8(&buf).unwrap()).unwrap(), t);
    }

    #[test]
    fn refutation_round_trip() {
        let gad = zhao_gadget(3, 1).unwrap();
        let blocks = BlockPartition4::from_sizes(&gad.spec.block_sizes);
        let RefuteOutcome::Refuted(r) = refute_by_crossing(&gad.graph, &blocks, 3, 1_000_000).unwrap() else {
            panic!("zhao(3,1) is refuted");
        };
        let text = refutation_to_string(&r, &blocks);
        let back = read_refutation(&text).unwrap();
        assert_eq!(back.refutation, r);
        assert_eq!(back.blocks, blocks);
        assert_eq!(contiguous_sizes(&back.blocks), Some(gad.spec.block_sizes));
    }

    #[test]
    fn block_spec() {
        let b = parse_block_spec("U1=0..1; U2=2..5; V1=0; V2=1..5").unwrap();
        assert_eq!((b.u1.len(), b.u2.len(), b.v1.len(), b.v2.len()), (2, 4, 1, 5));
        assert!(matches!(parse_block_spec("U1=0"), Err(Error::MalformedBlocks(_))));
    }
}
