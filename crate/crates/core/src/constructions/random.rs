//! Seeded random instances: uniform `G(n, n, p)` and noisy two-block graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bigraph::{BalancedBigraph, BigraphBuilder};
use crate::error::{Error, Result};

fn check_rate(what: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} = {p} is not a probability")))
    }
}

/// Every pair `(u, v)` is an edge independently with probability `p`, in row-major order.
pub fn random_bigraph(n: usize, p: f64, seed: u64) -> Result<BalancedBigraph> {
    check_rate("edge rate", p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = BigraphBuilder::new(n);
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v);
            }
        }
    }
    Ok(b.build())
}

/// Complete diagonal blocks `0..a` and `a..n` on both sides, each diagonal edge dropped with
/// probability `drop`, each cross pair added with probability `noise`.
pub fn noisy_blocks(n: usize, a: usize, drop: f64, noise: f64, seed: u64) -> Result<BalancedBigraph> {
    check_rate("drop rate", drop)?;
    check_rate("noise rate", noise)?;
    if a > n {
        return Err(Error::InvalidParameter(format!("block size {a} exceeds n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = BigraphBuilder::new(n);
    for u in 0..n {
        for v in 0..n {
            let diagonal = (u < a) == (v < a);
            let keep = if diagonal { !rng.gen_bool(drop) } else { rng.gen_bool(noise) };
            if keep {
                b.add_edge(u, v);
            }
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_bounded() {
        let g = random_bigraph(10, 0.5, 3).unwrap();
        assert_eq!(g, random_bigraph(10, 0.5, 3).unwrap());
        assert_eq!(random_bigraph(6, 1.0, 0).unwrap(), BalancedBigraph::complete(6));
        assert_eq!(random_bigraph(6, 0.0, 0).unwrap().edge_count(), 0);
        assert!(random_bigraph(3, 1.5, 0).is_err());
    }

    #[test]
    fn clean_blocks_are_disjoint() {
        let g = noisy_blocks(10, 4, 0.0, 0.0, 1).unwrap();
        assert_eq!(g.edge_count(), 16 + 36);
        assert!(g.has_edge(0, 3) && !g.has_edge(0, 4) && g.has_edge(9, 4));
    }
}
