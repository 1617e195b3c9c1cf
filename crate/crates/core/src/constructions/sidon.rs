//! Modular Sidon sets: `S ⊆ Z_m` whose nonzero differences `a − b` are pairwise distinct.

/// Search nodes allowed by [`sidon_set`].
pub const DEFAULT_SIDON_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SidonSearch {
    Found(Vec<usize>),
    /// The search space was exhausted: no Sidon set of that size exists in `Z_m`.
    Exhausted,
    /// The node budget ran out before the search finished.
    BudgetExceeded,
}

/// Smallest-first Sidon set of size `p` in `Z_m`, or `None` if the budgeted search finds none.
pub fn sidon_set(m: usize, p: usize) -> Option<Vec<usize>> {
    match search_sidon_set(m, p, DEFAULT_SIDON_BUDGET) {
        SidonSearch::Found(set) => Some(set),
        SidonSearch::Exhausted | SidonSearch::BudgetExceeded => None,
    }
}

/// Depth-first search over increasing sequences starting at `0`, trying candidates in increasing
/// order. The first set found is therefore the greedy one whenever greedy succeeds.
pub fn search_sidon_set(m: usize, p: usize, budget: u64) -> SidonSearch {
    if p == 0 {
        return SidonSearch::Found(Vec::new());
    }
    if m == 0 || p > m {
        return SidonSearch::Exhausted;
    }
    // p(p−1) ordered differences must be distinct nonzero residues
    if p * (p - 1) > m - 1 {
        return SidonSearch::Exhausted;
    }
    let mut search = Search {
        m,
        p,
        set: vec![0],
        used: vec![false; m],
        nodes: 0,
        budget,
    };
    match search.extend() {
        Some(true) => SidonSearch::Found(search.set),
        Some(false) => SidonSearch::Exhausted,
        None => SidonSearch::BudgetExceeded,
    }
}

/// True when every nonzero difference of `set` (mod `m`) occurs once.
pub fn is_sidon(set: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    for (i, &a) in set.iter().enumerate() {
        for (j, &b) in set.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = (a + m - b) % m;
            if d == 0 || seen[d] {
                return false;
            }
            seen[d] = true;
        }
    }
    true
}

/// Bose's Sidon set of size `q` in `Z_{q²−1}`, for an odd prime `q`.
///
/// With `θ` a generator of `GF(q²)*`, the set is `{a : θ^a − θ ∈ GF(q)}`. Its differences are
/// exactly the residues that are not multiples of `q + 1`.
pub fn bose_sidon_set(q: usize) -> Option<Vec<usize>> {
    if q < 3 || !is_prime(q) {
        return None;
    }
    let order = q * q - 1;
    // GF(q²) = GF(q)[w] / (w² − r) for a quadratic non-residue r
    let r = (2..q).find(|&r| pow_mod(r, (q - 1) / 2, q) == q - 1)?;
    let mul = |x: (usize, usize), y: (usize, usize)| {
        ((x.0 * y.0 + r * (x.1 * y.1 % q)) % q, (x.0 * y.1 + x.1 * y.0) % q)
    };
    let pow = |mut x: (usize, usize), mut e: usize| {
        let mut acc = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, x);
            }
            x = mul(x, x);
            e >>= 1;
        }
        acc
    };
    let factors = prime_factors(order);
    let theta = (0..q)
        .flat_map(|a| (1..q).map(move |b| (a, b)))
        .find(|&g| factors.iter().all(|&l| pow(g, order / l) != (1, 0)))?;
    let mut set = Vec::with_capacity(q);
    let mut x = (1, 0);
    for a in 0..order {
        if x.1 == theta.1 {
            set.push(a);
        }
        x = mul(x, theta);
    }
    Some(set)
}

/// A Sidon set of size `p` in `Z_m` taken from [`bose_sidon_set`], together with the prime `q` used.
///
/// A Bose set lives in `Z_M` with `M = q² − 1`. Its integer differences lie in `(−M, M)`, so it stays
/// Sidon in any `Z_m` with `m ≥ 2M − 1`, and trivially in `Z_M` itself. Subsets of Sidon sets are
/// Sidon, so any `q ≥ p` works.
pub fn algebraic_sidon_set(m: usize, p: usize) -> Option<(Vec<usize>, usize)> {
    algebraic_candidates(m, p).next()
}

/// All primes `q` usable by [`algebraic_sidon_set`] for `(m, p)`, smallest first.
pub(crate) fn algebraic_candidates(m: usize, p: usize) -> impl Iterator<Item = (Vec<usize>, usize)> {
    (p.max(3)..)
        .take_while(move |&q| q * q - 1 <= m)
        .filter(|&q| is_prime(q))
        .filter(move |&q| {
            let big = q * q - 1;
            m == big || m + 1 >= 2 * big
        })
        .filter_map(move |q| {
            let mut set = bose_sidon_set(q)?;
            set.truncate(p);
            Some((set, q))
        })
}

/// [`sidon_set`] with a node budget, then [`algebraic_sidon_set`].
pub fn find_sidon_set(m: usize, p: usize, budget: u64) -> Option<Vec<usize>> {
    match search_sidon_set(m, p, budget) {
        SidonSearch::Found(set) => Some(set),
        SidonSearch::Exhausted => None,
        SidonSearch::BudgetExceeded => algebraic_sidon_set(m, p).map(|(set, _)| set),
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn pow_mod(mut b: usize, mut e: usize, m: usize) -> usize {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

struct Search {
    m: usize,
    p: usize,
    set: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search {
    /// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
    fn extend(&mut self) -> Option<bool> {
        if self.set.len() == self.p {
            return Some(true);
        }
        let need = self.p - self.set.len();
        let last = *self.set.last().unwrap();
        for y in last + 1..self.m {
            if self.m - y < need {
                break;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let Some(marked) = self.try_mark(y) else {
                continue;
            };
            self.set.push(y);
            let r = self.extend();
            if r != Some(false) {
                return r;
            }
            self.set.pop();
            for d in marked {
                self.used[d] = false;
            }
        }
        Some(false)
    }

    /// Marks the differences `y` adds, or leaves `used` untouched and returns `None` on a clash.
    fn try_mark(&mut self, y: usize) -> Option<Vec<usize>> {
        let m = self.m;
        let mut marked = Vec::with_capacity(2 * self.set.len());
        for &a in &self.set {
            for d in [(y + m - a) % m, (a + m - y) % m] {
                if self.used[d] {
                    for &e in &marked {
                        self.used[e] = false;
                    }
                    return None;
                }
                self.used[d] = true;
                marked.push(d);
            }
        }
        Some(marked)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Multiset of nonzero differences, counted directly.
    fn difference_multiset(set: &[usize], m: usize) -> Vec<usize> {
        let mut counts = vec![0; m];
        for &a in set {
            for &b in set {
                if a != b {
                    counts[(a + m - b) % m] += 1;
                }
            }
        }
        counts
    }

    #[test]
    fn small_cases() {
        assert_eq!(sidon_set(7, 3), Some(vec![0, 1, 3]));
        assert_eq!(sidon_set(13, 4), Some(vec![0, 1, 3, 9]));
        assert_eq!(sidon_set(10, 1), Some(vec![0]));
        assert_eq!(sidon_set(5, 0), Some(vec![]));
        assert!(difference_multiset(&[0, 1, 3], 7).iter().all(|&c| c <= 1));
        assert!(difference_multiset(&[0, 1, 3, 9], 13).iter().skip(1).all(|&c| c == 1));
    }

    #[test]
    fn impossible_sizes_are_exhausted() {
        assert_eq!(search_sidon_set(7, 4, 1_000), SidonSearch::Exhausted);
        assert_eq!(search_sidon_set(2, 2, 1_000), SidonSearch::Exhausted);
        // {0, 2} in Z_4: the difference 2 is its own negative
        assert_eq!(search_sidon_set(4, 2, 1_000), SidonSearch::Found(vec![0, 1]));
        assert_eq!(search_sidon_set(11, 4, 1_000_000), SidonSearch::Exhausted);
    }

    #[test]
    fn found_sets_are_sidon() {
        for m in 1..60 {
            for p in 0..8 {
                if let Some(set) = sidon_set(m, p) {
                    assert_eq!(set.len(), p);
                    assert!(is_sidon(&set, m), "m={m} p={p} {set:?}");
                    assert!(difference_multiset(&set, m).iter().all(|&c| c <= 1));
                }
            }
        }
    }
    #[test]
    fn bose_sets() {
        for q in [3, 5, 7, 11, 13, 37, 43] {
            let set = bose_sidon_set(q).unwrap();
            let m = q * q - 1;
            assert_eq!(set.len(), q);
            assert!(is_sidon(&set, m), "q = {q}");
            // differences avoid exactly the nonzero multiples of q + 1
            let counts = difference_multiset(&set, m);
            for (d, &c) in counts.iter().enumerate().skip(1) {
                assert_eq!(c, usize::from(d % (q + 1) != 0), "q = {q}, d = {d}");
            }
        }
        assert_eq!(bose_sidon_set(9), None);
        assert_eq!(bose_sidon_set(2), None);
    }

    #[test]
    fn algebraic_fallback_embeds() {
        // Z_24 = Z_{5²−1} directly, and Z_47 = Z_{2·24−1} by integer embedding
        for m in [24, 47, 60] {
            let (set, q) = algebraic_sidon_set(m, 4).unwrap();
            assert_eq!(q, 5);
            assert!(is_sidon(&set, m), "m = {m}");
        }
        assert_eq!(algebraic_sidon_set(30, 4), None);
        assert!(find_sidon_set(500, 10, 1).is_some_and(|s| is_sidon(&s, 500)));
    }
}
