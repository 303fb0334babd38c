//! Suffix array by prefix doubling and LCP array by the inverse-permutation
//! scan. Shared by the oracle, the truncated suffix tree builder, the LZ77
//! parser and the block code.

use crate::par;

/// Suffix array of `s` (0-based start positions in lexicographic order).
///
/// Prefix doubling over `(rank[i], rank[i + k])` pairs, `O(n log^2 n)` with
/// comparison sorting. Stops as soon as every rank is distinct.
pub fn suffix_array<T: Copy + Ord + Send + Sync>(s: &[T]) -> Vec<u32> {
    let n = s.len();
    assert!(n < u32::MAX as usize, "input too long for 32-bit suffix array");
    if n == 0 {
        return Vec::new();
    }
    let mut order: Vec<(T, u32)> = s.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    par::sort_unstable(&mut order);
    let mut rank = vec![0u32; n];
    let mut distinct = 0u32;
    for k in 0..n {
        if k > 0 && order[k].0 != order[k - 1].0 {
            distinct += 1;
        }
        rank[order[k].1 as usize] = distinct;
    }
    let mut sa: Vec<u32> = order.iter().map(|&(_, i)| i).collect();
    drop(order);

    let mut keys: Vec<(u64, u32)> = Vec::with_capacity(n);
    let mut k = 1usize;
    while (distinct as usize) < n - 1 {
        keys.clear();
        keys.extend((0..n).map(|i| {
            let second = if i + k < n { rank[i + k] as u64 + 1 } else { 0 };
            (((rank[i] as u64) << 32) | second, i as u32)
        }));
        par::sort_unstable(&mut keys);
        distinct = 0;
        for idx in 0..n {
            if idx > 0 && keys[idx].0 != keys[idx - 1].0 {
                distinct += 1;
            }
            rank[keys[idx].1 as usize] = distinct;
        }
        k *= 2;
    }
    for (i, &r) in rank.iter().enumerate() {
        sa[r as usize] = i as u32;
    }
    sa
}

/// Inverse of a suffix array: `isa[sa[k]] = k`.
pub fn inverse(sa: &[u32]) -> Vec<u32> {
    let mut isa = vec![0u32; sa.len()];
    for (k, &p) in sa.iter().enumerate() {
        isa[p as usize] = k as u32;
    }
    isa
}

/// `lcp[k]` = longest common prefix of suffixes `sa[k-1]` and `sa[k]`;
/// `lcp[0] = 0`.
pub fn lcp_array<T: PartialEq>(s: &[T], sa: &[u32], isa: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = isa[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_sa(s: &[u8]) -> Vec<u32> {
        let mut v: Vec<u32> = (0..s.len() as u32).collect();
        v.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
        v
    }

    #[test]
    fn banana() {
        let s = b"banana$";
        let sa = suffix_array(s);
        assert_eq!(sa, vec![6, 5, 3, 1, 0, 4, 2]);
        let lcp = lcp_array(s, &sa, &inverse(&sa));
        assert_eq!(lcp, vec![0, 0, 1, 3, 0, 0, 2]);
    }

    #[test]
    fn tiny() {
        assert!(suffix_array::<u8>(&[]).is_empty());
        assert_eq!(suffix_array(&[7u32]), vec![0]);
        assert_eq!(suffix_array(b"aaaa"), vec![3, 2, 1, 0]);
    }

    proptest! {
        #[test]
        fn matches_naive_sort(s in proptest::collection::vec(0u8..3, 1..200)) {
            let sa = suffix_array(&s);
            prop_assert_eq!(&sa, &naive_sa(&s));
            let lcp = lcp_array(&s, &sa, &inverse(&sa));
            for k in 1..s.len() {
                let (a, b) = (sa[k - 1] as usize, sa[k] as usize);
                let l = s[a..].iter().zip(&s[b..]).take_while(|(x, y)| x == y).count();
                prop_assert_eq!(lcp[k] as usize, l);
            }
        }
    }
}
