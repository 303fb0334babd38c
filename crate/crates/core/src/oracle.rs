//! Ground-truth LCE: the character scan and the classical inverse suffix
//! array + LCP + RMQ structure.

use std::mem::size_of;

use crate::error::Result;
use crate::rmq::SparseTable;
use crate::suffix;
use crate::text::Text;

/// Longest common prefix of `w[i..]` and `w[j..]` by direct comparison.
pub fn naive_lce(text: &Text, i: usize, j: usize) -> Result<usize> {
    text.check(i)?;
    text.check(j)?;
    Ok(scan(text.symbols(), i - 1, j - 1))
}

/// 0-based scan helper.
pub(crate) fn scan<T: PartialEq>(s: &[T], a: usize, b: usize) -> usize {
    s[a..].iter().zip(&s[b..]).take_while(|(x, y)| x == y).count()
}

/// Inverse suffix array, LCP array and a sparse-table RMQ over the raw text.
#[derive(Debug, Clone)]
pub struct IsaOracle {
    sa: Vec<u32>,
    isa: Vec<u32>,
    lcp: Vec<u32>,
    rmq: SparseTable<u32>,
}

impl IsaOracle {
    pub fn build(text: &Text) -> Self {
        let s = text.symbols();
        let sa = suffix::suffix_array(s);
        let isa = suffix::inverse(&sa);
        let lcp = suffix::lcp_array(s, &sa, &isa);
        let rmq = SparseTable::new(&lcp);
        Self { sa, isa, lcp, rmq }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    pub fn isa(&self) -> &[u32] {
        &self.isa
    }

    pub fn lcp(&self) -> &[u32] {
        &self.lcp
    }

    /// LCE of 1-based positions `i` and `j`.
    pub fn lce(&self, i: usize, j: usize) -> Result<usize> {
        let n = self.len();
        for p in [i, j] {
            if p == 0 || p > n {
                return Err(crate::Error::OutOfRange { pos: p, n });
            }
        }
        if i == j {
            return Ok(n - i + 1);
        }
        let (a, b) = (self.isa[i - 1] as usize, self.isa[j - 1] as usize);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        Ok(self.rmq.min(lo + 1, hi) as usize)
    }

    /// Bytes held by the arrays and the RMQ table.
    pub fn heap_bytes(&self) -> usize {
        (self.sa.len() + self.isa.len() + self.lcp.len()) * size_of::<u32>() + self.rmq.heap_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::text::SentinelPolicy;

    #[test]
    fn example_values() {
        let t = Text::load(b"abababcabababcabababcd", SentinelPolicy::Auto).unwrap();
        assert_eq!(naive_lce(&t, 1, 8).unwrap(), 14);
        assert_eq!(naive_lce(&t, 4, 4).unwrap(), 20);
        assert_eq!(naive_lce(&t, 1, 2).unwrap(), 0);
        assert!(naive_lce(&t, 0, 2).is_err());
        assert!(naive_lce(&t, 1, 24).is_err());
    }

    #[test]
    fn isa_matches_naive_exhaustively() {
        let mut texts = vec![
            corpus::fibonacci(300),
            corpus::thue_morse(300),
            b"baabbaabbaaabbaabba".to_vec(),
        ];
        for s in 0..4 {
            texts.push(corpus::random(400, 4, s));
        }
        for raw in texts {
            let t = Text::load(&raw, SentinelPolicy::Auto).unwrap();
            let o = IsaOracle::build(&t);
            for i in 1..=t.len() {
                for j in 1..=t.len() {
                    assert_eq!(o.lce(i, j).unwrap(), naive_lce(&t, i, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn adjacent_and_extreme_ranks() {
        let t = Text::load(&corpus::random(200, 2, 9), SentinelPolicy::Auto).unwrap();
        let o = IsaOracle::build(&t);
        let sa = o.sa();
        for k in 1..sa.len() {
            let (a, b) = (sa[k - 1] as usize + 1, sa[k] as usize + 1);
            assert_eq!(o.lce(a, b).unwrap(), o.lcp()[k] as usize);
        }
        let (first, last) = (sa[0] as usize + 1, *sa.last().unwrap() as usize + 1);
        let direct = *o.lcp()[1..].iter().min().unwrap() as usize;
        assert_eq!(o.lce(first, last).unwrap(), direct);
    }
}
