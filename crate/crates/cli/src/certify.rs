//! Independent re-checking of certificate files.

use kss_core::io::{read_refutation, read_tiling};
use kss_core::{verify_tiling, BalancedBigraph};

/// What a certificate file claims.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Tiling { s: usize, copies: usize },
    Refutation { s: usize, signatures: usize },
}

/// Parses `text` as a refutation if its first content line is `refutation <s>`, otherwise as a
/// tiling, and checks it against `g`. `s`, when given, must match the certificate.
/// Errors are human-readable and name the violated copy or signature.
pub fn check(g: &BalancedBigraph, text: &str, s: Option<usize>, budget: u64) -> Result<Certificate, String> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let claimed = if first.starts_with("refutation") {
        let f = read_refutation(text).map_err(|e| format!("unreadable refutation: {e}"))?;
        f.refutation.verify(g, &f.blocks, budget)?;
        Certificate::Refutation {
            s: f.refutation.s,
            signatures: f.refutation.realizable.len(),
        }
    } else {
        let t = read_tiling(text).map_err(|e| format!("unreadable tiling: {e}"))?;
        if t.copies.is_empty() && g.n() > 0 {
            return Err("empty tiling of a nonempty graph".into());
        }
        verify_tiling(g, &t).map_err(|e| e.to_string())?;
        Certificate::Tiling {
            s: t.s,
            copies: t.copies.len(),
        }
    };
    let cert_s = match claimed {
        Certificate::Tiling { s, .. } | Certificate::Refutation { s, .. } => s,
    };
    match s {
        Some(want) if want != cert_s => Err(format!("certificate is for s = {cert_s}, expected s = {want}")),
        _ => Ok(claimed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swapped_vertex_names_the_copy() {
        let g = BalancedBigraph::from_edges(4, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]).unwrap();
        assert_eq!(
            check(&g, "c 0 1 | 0 1\nc 2 3 | 2 3\n", Some(2), 10),
            Ok(Certificate::Tiling { s: 2, copies: 2 })
        );
        let err = check(&g, "c 0 1 | 0 2\nc 2 3 | 1 3\n", None, 10).unwrap_err();
        assert!(err.contains("copy 0"), "{err}");
        assert!(check(&g, "c 0 1 | 0 1\nc 2 3 | 2 3\n", Some(1), 10).is_err());
    }
}
