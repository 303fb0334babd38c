//! LongLCE engine. Every t-block starting at a cover position is replaced by
//! its lexicographic rank; the per-residue rank sequences, each closed by a
//! unique separator, form the block code. One RMQ over the block code's LCP
//! array then yields `⌊LCE(i, j) / t⌋` for any two cover positions.

use std::cmp::Ordering;
use std::mem::size_of;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::diffcover::CoverIndex;
use crate::navtree::NavTree;
use crate::par;
use crate::rmq::BlockRmq;
use crate::suffix;
use crate::tst::TruncatedSuffixTree;

/// Ranks of the defined t-blocks, listed in block code order
/// (see [`CoverIndex::blocks`]). Ranks start at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRanks {
    pub ranks: Vec<u32>,
}

/// Ranks blocks through the depth-`t` ancestors of their leaves in
/// `TST(w, 2t)`. The tree must carry t-gram marks for the same `t`.
pub fn rank_blocks(tree: &TruncatedSuffixTree, nav: &NavTree, cover: &CoverIndex) -> BlockRanks {
    let marks = tree.tgram().expect("t-gram marks required");
    assert_eq!(marks.t(), cover.t());
    assert_eq!(nav.t(), cover.t());
    let ranks = cover
        .blocks()
        .map(|i| {
            let r = marks.rank(nav.locate_leaf(i));
            debug_assert!(r > 0);
            r
        })
        .collect();
    BlockRanks { ranks }
}

/// Compares the t-blocks at `i` and `j` with chained `short_lce` calls of a
/// smaller navigation tree; the first mismatch is ordered by leaf rank.
pub(crate) fn compare_blocks(
    tree: &TruncatedSuffixTree,
    nav: &NavTree,
    t: usize,
    i: usize,
    j: usize,
    calls: &AtomicU64,
) -> Ordering {
    if i == j {
        return Ordering::Equal;
    }
    let step = nav.t();
    let mut acc = 0;
    while acc < t {
        let (a, b) = (nav.locate_leaf(i + acc), nav.locate_leaf(j + acc));
        let s = tree.lca_prefix_len(a, b).min(step);
        calls.fetch_add(1, AtomicOrdering::Relaxed);
        if s < step {
            return if acc + s >= t { Ordering::Equal } else { a.cmp(&b) };
        }
        acc += s;
    }
    Ordering::Equal
}

/// Ranks blocks by comparison sorting, for navigation trees built at a
/// smaller parameter than the block length.
pub fn rank_blocks_by_comparison(
    tree: &TruncatedSuffixTree,
    nav: &NavTree,
    cover: &CoverIndex,
) -> BlockRanks {
    let t = cover.t();
    let calls = AtomicU64::new(0);
    let positions: Vec<u32> = cover.blocks().map(|i| i as u32).collect();
    let mut order: Vec<u32> = (0..positions.len() as u32).collect();
    par::sort_unstable_by(&mut order, |&x, &y| {
        compare_blocks(tree, nav, t, positions[x as usize] as usize, positions[y as usize] as usize, &calls)
    });
    let mut ranks = vec![0u32; positions.len()];
    let mut r = 0u32;
    for (k, &x) in order.iter().enumerate() {
        let fresh = k == 0
            || compare_blocks(
                tree,
                nav,
                t,
                positions[order[k - 1] as usize] as usize,
                positions[x as usize] as usize,
                &calls,
            ) != Ordering::Equal;
        if fresh {
            r += 1;
        }
        ranks[x as usize] = r;
    }
    log::debug!(
        "ranked {} blocks with {} short_lce calls",
        positions.len(),
        calls.load(AtomicOrdering::Relaxed)
    );
    BlockRanks { ranks }
}

#[derive(Debug, Clone)]
pub struct BlockCode {
    cover: CoverIndex,
    code: Vec<u32>,
    sa: Vec<u32>,
    isa: Vec<u32>,
    lcp: Vec<u32>,
    rmq: BlockRmq<u32>,
}

/// Assembles the block code and its suffix machinery.
///
/// Separators take the values `S-1, S-2, .., 0` in segment order, with `S`
/// the number of non-empty segments; rank `r` is stored as `r + S - 1`.
pub fn build_blockcode(ranks: &BlockRanks, cover: CoverIndex) -> BlockCode {
    let seps = cover.separator_count() as u32;
    let mut code = Vec::with_capacity(cover.code_len());
    let mut next = ranks.ranks.iter();
    let mut sep = seps;
    for k in 0..cover.residue_order().len() {
        let len = cover.seg_len(k);
        if len == 0 {
            continue;
        }
        debug_assert_eq!(code.len(), cover.seg_offset(k));
        for _ in 0..len {
            let r = *next.next().expect("one rank per block");
            assert!(r >= 1, "rank 0 is reserved");
            code.push(r + seps - 1);
        }
        sep -= 1;
        code.push(sep);
    }
    assert!(next.next().is_none(), "more ranks than blocks");
    BlockCode::from_code(cover, code)
}

impl BlockCode {
    pub(crate) fn from_code(cover: CoverIndex, code: Vec<u32>) -> Self {
        let sa = suffix::suffix_array(&code);
        let isa = suffix::inverse(&sa);
        let lcp = suffix::lcp_array(&code, &sa, &isa);
        let rmq = BlockRmq::new(&lcp);
        Self {
            cover,
            code,
            sa,
            isa,
            lcp,
            rmq,
        }
    }

    pub fn t(&self) -> usize {
        self.cover.t()
    }

    pub fn cover(&self) -> &CoverIndex {
        &self.cover
    }

    pub fn code(&self) -> &[u32] {
        &self.code
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

    /// Rank of the block at cover position `i`, if defined.
    pub fn rank_at(&self, i: usize) -> Option<u32> {
        if !self.cover.in_cover(i) || !self.cover.block_defined(i) {
            return None;
        }
        let seps = self.cover.separator_count() as u32;
        Some(self.code[self.cover.code_position(i)] + 1 - seps)
    }

    /// `⌊LCE(i, j) / t⌋` when both positions lie in the cover, else `None`.
    #[inline]
    pub fn long_lce(&self, i: usize, j: usize) -> Option<usize> {
        let c = &self.cover;
        let (pi, pj) = (c.code_position_checked(i)?, c.code_position_checked(j)?);
        if !c.block_defined(i) || !c.block_defined(j) {
            return Some(0);
        }
        if i == j {
            return Some(c.seg_len(c.slot_of(i)) - c.seg_rank(i));
        }
        let a = self.isa[pi] as usize;
        let b = self.isa[pj] as usize;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        Some(self.rmq.min(&self.lcp, lo + 1, hi) as usize)
    }

    pub fn heap_bytes(&self) -> usize {
        (self.code.len() + self.sa.len() + self.isa.len() + self.lcp.len()) * size_of::<u32>()
            + self.rmq.heap_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::diffcover::DifferenceCover;
    use crate::navtree::{build_navtree, AncestorKind};
    use crate::oracle::naive_lce;
    use crate::text::{SentinelPolicy, Text};
    use crate::tst::build_tst;

    fn build(raw: &[u8], t: usize) -> (Text, BlockCode) {
        let text = Text::load(raw, SentinelPolicy::Explicit(b'$')).unwrap();
        let tree = build_tst(&text, 2 * t).mark_tgram_nodes(t);
        let nav = build_navtree(&text, &tree, t, AncestorKind::BinaryLifting);
        let cover = CoverIndex::build(DifferenceCover::build(t), text.len());
        let ranks = rank_blocks(&tree, &nav, &cover);
        (text, build_blockcode(&ranks, cover))
    }

    #[test]
    fn periodic_blocks_share_rank() {
        let raw = b"ab".repeat(8);
        let (_, bc) = build(&raw, 2);
        let odd: Vec<u32> = (1..=16).step_by(2).filter_map(|i| bc.rank_at(i)).collect();
        assert!(!odd.is_empty());
        assert!(odd.windows(2).all(|w| w[0] == w[1]));
        // Block starting at the sentinel is undefined.
        assert_eq!(bc.rank_at(17), None);
    }

    #[test]
    fn ranks_match_direct_sort() {
        let raw = b"baabbaabbaaabbaabba";
        let (text, bc) = build(raw, 2);
        let s = text.symbols();
        let c = bc.cover();
        let positions: Vec<usize> = c.blocks().collect();
        let mut grams: Vec<&[u8]> = positions.iter().map(|&i| &s[i - 1..i + 1]).collect();
        grams.sort();
        grams.dedup();
        for &i in &positions {
            let want = grams.iter().position(|g| *g == &s[i - 1..i + 1]).unwrap() as u32 + 1;
            assert_eq!(bc.rank_at(i), Some(want));
        }
    }

    #[test]
    fn unit_cover_is_plain_rank_string() {
        let raw = b"abracadabra";
        let (text, bc) = build(raw, 1);
        let n = text.len();
        assert_eq!(bc.code().len(), n + 1);
        for i in 1..=n {
            assert_eq!(bc.cover().code_position(i), i - 1);
        }
        assert_eq!(*bc.code().last().unwrap(), 0);
    }

    #[test]
    fn code_lcp_counts_equal_blocks() {
        let raw = b"abc".repeat(6);
        let (_, bc) = build(&raw, 3);
        let code = bc.code();
        for a in 0..code.len() {
            for b in 0..code.len() {
                if a == b {
                    continue;
                }
                let l = code[a..].iter().zip(&code[b..]).take_while(|(x, y)| x == y).count();
                let (x, y) = (bc.isa()[a] as usize, bc.isa()[b] as usize);
                let (lo, hi) = (x.min(y), x.max(y));
                assert_eq!(*bc.lcp()[lo + 1..=hi].iter().min().unwrap() as usize, l);
            }
        }
    }

    #[test]
    fn posmap_round_trip() {
        let (_, bc) = build(&corpus::random(500, 4, 3), 4);
        let c = bc.cover();
        for i in c.blocks() {
            let r = bc.rank_at(i).unwrap();
            assert!(r >= 1);
            let seps = c.separator_count() as u32;
            assert_eq!(bc.code()[c.code_position(i)], r + seps - 1);
        }
        // Every separator sits below every rank, closes its segment, and
        // shares no prefix with its suffix-array neighbours.
        let seps = c.separator_count();
        for k in 0..c.residue_order().len() {
            if c.seg_len(k) > 0 {
                let at = c.seg_offset(k) + c.seg_len(k);
                assert!((bc.code()[at] as usize) < seps);
                let r = bc.isa()[at] as usize;
                assert_eq!(bc.lcp()[r], 0);
                if r + 1 < bc.lcp().len() {
                    assert_eq!(bc.lcp()[r + 1], 0);
                }
            }
        }
    }

    #[test]
    fn long_lce_matches_naive() {
        for (raw, ts) in [
            (b"baabbaabbaaabbaabba".to_vec(), vec![2, 4]),
            (b"ab".repeat(8), vec![2]),
            (corpus::random(300, 2, 4), vec![3, 5]),
        ] {
            for t in ts {
                let (text, bc) = build(&raw, t);
                let n = text.len();
                for i in 1..=n {
                    for j in 1..=n {
                        let got = bc.long_lce(i, j);
                        if !bc.cover().in_cover(i) || !bc.cover().in_cover(j) {
                            assert_eq!(got, None);
                        } else if i != j {
                            assert_eq!(got, Some(naive_lce(&text, i, j).unwrap() / t), "t={t} ({i},{j})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn comparison_ranks_equal_tgram_ranks() {
        let raw = corpus::random(400, 2, 6);
        let text = Text::load(&raw, SentinelPolicy::Auto).unwrap();
        let t = 6;
        let big = build_tst(&text, 2 * t).mark_tgram_nodes(t);
        let big_nav = build_navtree(&text, &big, t, AncestorKind::BinaryLifting);
        let small = build_tst(&text, 4);
        let small_nav = build_navtree(&text, &small, 2, AncestorKind::BinaryLifting);
        let cover = CoverIndex::build(DifferenceCover::build(t), text.len());
        let a = rank_blocks(&big, &big_nav, &cover);
        let b = rank_blocks_by_comparison(&small, &small_nav, &cover);
        assert_eq!(a.ranks.len(), b.ranks.len());
        for x in 0..a.ranks.len() {
            for y in 0..a.ranks.len() {
                assert_eq!(a.ranks[x].cmp(&a.ranks[y]), b.ranks[x].cmp(&b.ranks[y]));
            }
        }
    }
}
