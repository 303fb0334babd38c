//! Greedy self-referential LZ77 factorization via the suffix array.
//!
//! For each position the longest previous factor is attained by one of the
//! two lexicographic neighbours among earlier positions (previous and next
//! smaller values in suffix array order), so only those two candidates are
//! scanned at each factor start.

use crate::suffix;
use crate::text::Text;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    /// A symbol with no earlier occurrence (internal code).
    Literal(u8),
    /// Copy of `len` symbols from 1-based `src`; may overlap its own target.
    Copy { src: usize, len: usize },
}

impl Factor {
    pub fn len(&self) -> usize {
        match *self {
            Factor::Literal(_) => 1,
            Factor::Copy { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LzFactorization {
    /// All factors, including the final sentinel literal.
    pub factors: Vec<Factor>,
}

impl LzFactorization {
    /// Factor count excluding the trailing sentinel literal.
    pub fn z(&self) -> usize {
        self.factors.len() - 1
    }

    /// Factor count including the sentinel literal.
    pub fn z_with_sentinel(&self) -> usize {
        self.factors.len()
    }

    /// 1-based start position of every factor.
    pub fn starts(&self) -> Vec<usize> {
        let mut p = 1;
        self.factors
            .iter()
            .map(|f| {
                let s = p;
                p += f.len();
                s
            })
            .collect()
    }

    /// Rebuilds the symbol sequence the factorization describes.
    pub fn expand(&self) -> Vec<u8> {
        let mut out: Vec<u8> = Vec::new();
        for f in &self.factors {
            match *f {
                Factor::Literal(c) => out.push(c),
                Factor::Copy { src, len } => {
                    for k in 0..len {
                        out.push(out[src - 1 + k]);
                    }
                }
            }
        }
        out
    }
}

pub fn lz77_factorize(text: &Text) -> LzFactorization {
    let s = text.symbols();
    let n = s.len();
    let sa = suffix::suffix_array(s);

    // For every position, the nearest smaller start on each side in SA order.
    const NONE: u32 = u32::MAX;
    let mut prev_smaller = vec![NONE; n];
    let mut next_smaller = vec![NONE; n];
    let mut stack: Vec<u32> = Vec::new();
    for &p in &sa {
        while let Some(&top) = stack.last() {
            if top > p {
                next_smaller[top as usize] = p;
                stack.pop();
            } else {
                break;
            }
        }
        prev_smaller[p as usize] = stack.last().copied().unwrap_or(NONE);
        stack.push(p);
    }

    let mut factors = Vec::new();
    let mut p = 0usize;
    while p < n {
        let mut best = (0usize, 0usize);
        for cand in [prev_smaller[p], next_smaller[p]] {
            if cand == NONE {
                continue;
            }
            let c = cand as usize;
            let l = crate::oracle::scan(s, c, p);
            if l > best.0 || (l == best.0 && l > 0 && c < best.1) {
                best = (l, c);
            }
        }
        if best.0 == 0 {
            factors.push(Factor::Literal(s[p]));
            p += 1;
        } else {
            factors.push(Factor::Copy {
                src: best.1 + 1,
                len: best.0,
            });
            p += best.0;
        }
    }
    LzFactorization { factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::text::SentinelPolicy;

    /// Quadratic longest-previous-factor scan.
    fn brute_force(s: &[u8]) -> Vec<usize> {
        let mut lens = Vec::new();
        let mut p = 0;
        while p < s.len() {
            let l = (0..p)
                .map(|c| s[c..].iter().zip(&s[p..]).take_while(|(x, y)| x == y).count())
                .max()
                .unwrap_or(0)
                .max(1);
            lens.push(l);
            p += l;
        }
        lens
    }

    fn decoded(text: &Text, lz: &LzFactorization) -> Vec<Vec<u8>> {
        let starts = lz.starts();
        lz.factors
            .iter()
            .zip(starts)
            .map(|(f, s)| text.substring(s, s + f.len() - 1).unwrap())
            .collect()
    }

    #[test]
    fn running_example() {
        let t = Text::load(b"abababcabababcabababcd", SentinelPolicy::Auto).unwrap();
        let lz = lz77_factorize(&t);
        assert_eq!(lz.z(), 6);
        assert_eq!(lz.z_with_sentinel(), 7);
        let parts = decoded(&t, &lz);
        let want: [&[u8]; 6] = [b"a", b"b", b"abab", b"c", b"abababcabababc", b"d"];
        for (got, w) in parts.iter().zip(want) {
            assert_eq!(got.as_slice(), w);
        }
    }

    #[test]
    fn unary_run() {
        let t = Text::load(&[b'a'; 64], SentinelPolicy::Auto).unwrap();
        let lz = lz77_factorize(&t);
        assert_eq!(lz.z(), 2);
        assert_eq!(lz.factors[1], Factor::Copy { src: 1, len: 63 });
    }

    #[test]
    fn matches_brute_force_and_expands() {
        for seed in 0..20 {
            let raw = corpus::random(512, 3, seed);
            let t = Text::load(&raw, SentinelPolicy::Auto).unwrap();
            let lz = lz77_factorize(&t);
            let lens: Vec<usize> = lz.factors.iter().map(Factor::len).collect();
            assert_eq!(lens, brute_force(t.symbols()));
            assert_eq!(lz.expand(), t.symbols());
        }
        for raw in [corpus::fibonacci(2000), corpus::thue_morse(2000)] {
            let t = Text::load(&raw, SentinelPolicy::Auto).unwrap();
            let lz = lz77_factorize(&t);
            let lens: Vec<usize> = lz.factors.iter().map(Factor::len).collect();
            assert_eq!(lens, brute_force(t.symbols()));
            assert_eq!(lz.expand(), t.symbols());
        }
    }

    #[test]
    fn copies_are_valid_and_maximal() {
        let t = Text::load(&corpus::random(800, 2, 3), SentinelPolicy::Auto).unwrap();
        let s = t.symbols();
        let lz = lz77_factorize(&t);
        for (f, p) in lz.factors.iter().zip(lz.starts()) {
            if let Factor::Copy { src, len } = *f {
                assert!(src < p);
                assert_eq!(s[src - 1..src - 1 + len], s[p - 1..p - 1 + len]);
                let best = (1..p)
                    .map(|c| crate::oracle::scan(s, c - 1, p - 1))
                    .max()
                    .unwrap();
                assert_eq!(best, len);
            }
        }
        assert!(matches!(lz.factors.last(), Some(Factor::Literal(0))));
    }

    #[test]
    fn squaring_adds_at_most_two() {
        for raw in [b"abababcabababcabababcd".to_vec(), corpus::fibonacci(100)] {
            let z = lz77_factorize(&Text::load(&raw, SentinelPolicy::Auto).unwrap()).z();
            let doubled = [raw.clone(), raw].concat();
            let z2 = lz77_factorize(&Text::load(&doubled, SentinelPolicy::Auto).unwrap()).z();
            assert!(z2 <= z + 2, "{z2} > {z} + 2");
        }
    }
}
