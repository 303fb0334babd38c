//! The composed encoding LCE index.
//!
//! A query first asks ShortLCE for up to `t` symbols. If the suffixes agree
//! on all of them, an offset `δ = h(i, j) < t` aligns both positions on the
//! t-cover, LongLCE counts the equal t-blocks that follow, and a final
//! ShortLCE measures the remainder: `LCE(i, j) = δ + t·l₂ + l₃`. Positions
//! too close to the end for the cover fall back to at most three chained
//! ShortLCE steps.

use crate::blockcode::{build_blockcode, rank_blocks, rank_blocks_by_comparison, BlockCode};
use crate::diffcover::{CoverIndex, DifferenceCover};
use crate::error::{Error, Result};
use crate::lz77::lz77_factorize;
use crate::navtree::{AncestorKind, NavTree};
use crate::packed::PackedLce;
use crate::par;
use crate::suffix;
use crate::text::Text;
use crate::tst::{self, TruncatedSuffixTree};

#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    /// Navigation parameter `t' <= t`; `None` means `t' = t`.
    pub t_prime: Option<usize>,
    /// Also build the packed-bit variant.
    pub packed: bool,
    pub ancestor: AncestorKind,
    /// Run LZ77 to report `z` in the statistics.
    pub compute_z: bool,
}

/// Size accounting of a built index.
///
/// ```text
/// estimated_words = 3·tst_nodes + ⌈tst_ref_len/8⌉ + 2·nav_nodes + sampled_count + 3·code_len
/// ```
///
/// The terms are parent, depth and label start per tree node; the reference
/// string in 8-byte words; parent and depth per navigation node; one pointer
/// per sampled position; and code, inverse suffix array and LCP entry per
/// block code symbol.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpaceStats {
    pub n: usize,
    pub t: usize,
    pub t_prime: usize,
    pub tst_nodes: usize,
    pub tst_leaves: usize,
    pub tst_ref_len: usize,
    pub nav_nodes: usize,
    pub sampled_count: usize,
    pub code_len: usize,
    pub z: Option<usize>,
    pub estimated_words: usize,
    /// Bytes held in memory by all query structures.
    pub heap_bytes: usize,
}

impl SpaceStats {
    pub fn estimate_words(
        tst_nodes: usize,
        tst_ref_len: usize,
        nav_nodes: usize,
        sampled_count: usize,
        code_len: usize,
    ) -> usize {
        3 * tst_nodes + tst_ref_len.div_ceil(8) + 2 * nav_nodes + sampled_count + 3 * code_len
    }
}

/// Which branch answered a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryPath {
    Diagonal,
    /// ShortLCE alone settled the answer.
    Short,
    /// Near the end of the text; chained ShortLCE steps.
    Boundary,
    Main { delta: usize, l2: usize, l3: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryTrace {
    pub lce: usize,
    pub path: QueryPath,
    /// `short_lce` calls on the navigation tree over the whole query.
    pub short_calls: usize,
    /// Largest number of `short_lce` calls spent on one ShortLCE_t.
    pub max_calls_per_short: usize,
}

trait Probe {
    fn record(&mut self, calls: usize);
}

struct NoProbe;

impl Probe for NoProbe {
    #[inline(always)]
    fn record(&mut self, _: usize) {}
}

#[derive(Default)]
struct CountProbe {
    total: usize,
    max: usize,
}

impl Probe for CountProbe {
    fn record(&mut self, calls: usize) {
        self.total += calls;
        self.max = self.max.max(calls);
    }
}

#[derive(Debug, Clone)]
pub struct LceIndex {
    pub(crate) n: usize,
    pub(crate) t: usize,
    pub(crate) t_prime: usize,
    pub(crate) tree: TruncatedSuffixTree,
    pub(crate) nav: NavTree,
    pub(crate) bc: BlockCode,
    pub(crate) packed: Option<PackedLce>,
    pub(crate) stats: SpaceStats,
}

/// Builds the index with block length `t`.
pub fn build_index(text: &Text, t: usize, opts: BuildOptions) -> Result<LceIndex> {
    let n = text.len();
    let t_prime = opts.t_prime.unwrap_or(t);
    if t_prime < 1 || t_prime > t || t > n || 2 * t_prime > n {
        return Err(Error::ParamOutOfRange(format!(
            "need 1 <= t' <= t <= n and 2t' <= n (t = {t}, t' = {t_prime}, n = {n})"
        )));
    }
    let s = text.symbols();
    let sa = suffix::suffix_array(s);
    let lcp = suffix::lcp_array(s, &sa, &suffix::inverse(&sa));
    let build = tst::build_from_suffix_array(s, &sa, &lcp, 2 * t_prime);
    drop((sa, lcp));

    let mut tree = build.tree;
    if t_prime == t {
        tree = tree.mark_tgram_nodes(t);
    }
    let nav = NavTree::build(&tree, &build.leaf_of_pos, t_prime, opts.ancestor);
    drop(build.leaf_of_pos);

    let cover = CoverIndex::build(DifferenceCover::build(t), n);
    let ranks = if t_prime == t {
        rank_blocks(&tree, &nav, &cover)
    } else {
        rank_blocks_by_comparison(&tree, &nav, &cover)
    };
    let bc = build_blockcode(&ranks, cover);
    let tree = tree.compact_reference();

    let packed = if opts.packed {
        Some(PackedLce::build(text, 64)?)
    } else {
        None
    };
    let z = opts.compute_z.then(|| lz77_factorize(text).z());
    let mut ix = LceIndex {
        n,
        t,
        t_prime,
        tree,
        nav,
        bc,
        packed,
        stats: SpaceStats::default(),
    };
    ix.stats = ix.measure(z);
    log::info!(
        "built index n={n} t={t} t'={t_prime}: {} tree nodes, code length {}",
        ix.stats.tst_nodes,
        ix.stats.code_len
    );
    Ok(ix)
}

impl LceIndex {
    pub(crate) fn measure(&self, z: Option<usize>) -> SpaceStats {
        let tst_nodes = self.tree.node_count();
        let tst_ref_len = self.tree.refstr().len();
        let nav_nodes = self.nav.node_count();
        let sampled_count = self.nav.sampled_count();
        let code_len = self.bc.code().len();
        SpaceStats {
            n: self.n,
            t: self.t,
            t_prime: self.t_prime,
            tst_nodes,
            tst_leaves: self.tree.leaf_count(),
            tst_ref_len,
            nav_nodes,
            sampled_count,
            code_len,
            z,
            estimated_words: SpaceStats::estimate_words(
                tst_nodes,
                tst_ref_len,
                nav_nodes,
                sampled_count,
                code_len,
            ),
            heap_bytes: self.tree.heap_bytes()
                + self.nav.heap_bytes()
                + self.bc.heap_bytes()
                + self.packed.as_ref().map_or(0, PackedLce::heap_bytes),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn t_prime(&self) -> usize {
        self.t_prime
    }

    pub fn tree(&self) -> &TruncatedSuffixTree {
        &self.tree
    }

    pub fn nav(&self) -> &NavTree {
        &self.nav
    }

    pub fn blockcode(&self) -> &BlockCode {
        &self.bc
    }

    pub fn cover(&self) -> &CoverIndex {
        self.bc.cover()
    }

    pub fn packed(&self) -> Option<&PackedLce> {
        self.packed.as_ref()
    }

    pub fn space_report(&self) -> SpaceStats {
        self.stats
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::OutOfRange { pos: i, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Longest common prefix of `w[i..]` and `w[j..]` (1-based).
    pub fn lce(&self, i: usize, j: usize) -> Result<usize> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.query(i, j, &mut NoProbe).0)
    }

    /// Like [`LceIndex::lce`], also reporting the branch taken and the
    /// number of `short_lce` calls.
    pub fn lce_traced(&self, i: usize, j: usize) -> Result<QueryTrace> {
        self.check(i)?;
        self.check(j)?;
        let mut probe = CountProbe::default();
        let (lce, path) = self.query(i, j, &mut probe);
        Ok(QueryTrace {
            lce,
            path,
            short_calls: probe.total,
            max_calls_per_short: probe.max,
        })
    }

    /// `min(LCE(i, j), t)`, chaining `t'`-capped calls when `t' < t`.
    pub fn short_lce_t(&self, i: usize, j: usize) -> Result<usize> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.short_t(i, j, &mut NoProbe))
    }

    /// `⌊LCE(i, j)/t⌋` for cover positions, `None` otherwise.
    pub fn long_lce(&self, i: usize, j: usize) -> Result<Option<usize>> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.bc.long_lce(i, j))
    }

    /// Symbol-level LCE through the packed-bit variant.
    pub fn lce_packed(&self, i: usize, j: usize) -> Result<usize> {
        let p = self
            .packed
            .as_ref()
            .ok_or_else(|| Error::ParamOutOfRange("index built without packed variant".into()))?;
        p.packed_lce(i, j)
    }

    /// Answers a batch of queries, in parallel when the `parallel` feature
    /// is enabled.
    pub fn lce_batch(&self, pairs: &[(usize, usize)]) -> Result<Vec<usize>> {
        self.validate(pairs)?;
        Ok(par::map_collect(pairs, |&(i, j)| self.query(i, j, &mut NoProbe).0))
    }

    /// Sequential batch evaluation.
    pub fn lce_batch_seq(&self, pairs: &[(usize, usize)]) -> Result<Vec<usize>> {
        self.validate(pairs)?;
        Ok(pairs
            .iter()
            .map(|&(i, j)| self.query(i, j, &mut NoProbe).0)
            .collect())
    }

    fn validate(&self, pairs: &[(usize, usize)]) -> Result<()> {
        pairs.iter().try_for_each(|&(i, j)| {
            self.check(i)?;
            self.check(j)
        })
    }

    #[inline]
    fn short_t<P: Probe>(&self, i: usize, j: usize, probe: &mut P) -> usize {
        let t = self.t;
        if i == j {
            return (self.n - i + 1).min(t);
        }
        if self.t_prime == t {
            probe.record(1);
            return self.nav.short_lce(&self.tree, i, j);
        }
        let step = self.t_prime;
        let mut acc = 0;
        let mut calls = 0;
        loop {
            let s = self.nav.short_lce(&self.tree, i + acc, j + acc);
            calls += 1;
            acc += s;
            if s < step || acc >= t {
                break;
            }
        }
        probe.record(calls);
        acc.min(t)
    }

    #[inline]
    fn query<P: Probe>(&self, i: usize, j: usize, probe: &mut P) -> (usize, QueryPath) {
        if i == j {
            return (self.n - i + 1, QueryPath::Diagonal);
        }
        let t = self.t;
        let l1 = self.short_t(i, j, probe);
        if l1 < t {
            return (l1, QueryPath::Short);
        }
        if i.max(j) + 2 * t + 1 > self.n {
            let mut acc = l1;
            loop {
                let s = self.short_t(i + acc, j + acc, probe);
                acc += s;
                if s < t {
                    return (acc, QueryPath::Boundary);
                }
            }
        }
        let delta = self.bc.cover().cover().h(i, j);
        let l2 = self
            .bc
            .long_lce(i + delta, j + delta)
            .expect("aligned positions lie in the cover");
        let skip = delta + t * l2;
        let l3 = self.short_t(i + skip, j + skip, probe);
        (skip + l3, QueryPath::Main { delta, l2, l3 })
    }
}

/// One probed parameter in [`tune_tau`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TuneProbe {
    pub t: usize,
    /// Leaves of `TST(w, 2t)`.
    pub tst_leaves: usize,
    /// `⌈n/√t⌉`.
    pub cover_term: usize,
    pub cost: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuneReport {
    pub chosen: usize,
    pub probes: Vec<TuneProbe>,
}

/// Weight of one tree leaf against one unit of `⌈n/√t⌉` in [`tune_tau`].
pub const TUNE_LEAF_WEIGHT: usize = 2;

/// Picks `t` by doubling while the tree is smaller than the cover term, then
/// binary-searching between the last two probes. The objective is
/// `TUNE_LEAF_WEIGHT · leaves(TST(w, 2t)) + ⌈n/√t⌉`, measured, never via `z`.
pub fn tune_tau(text: &Text, budget: usize) -> TuneReport {
    let n = text.len();
    let s = text.symbols();
    let sa = suffix::suffix_array(s);
    let lcp = suffix::lcp_array(s, &sa, &suffix::inverse(&sa));
    drop(sa);
    let max_t = (n / 2).max(1);
    let mut probes: Vec<TuneProbe> = Vec::new();
    let probe = |t: usize, probes: &mut Vec<TuneProbe>| -> TuneProbe {
        if let Some(p) = probes.iter().find(|p| p.t == t) {
            return *p;
        }
        let tst_leaves = tst::leaf_count_from_lcp(&lcp, (2 * t).min(n));
        let cover_term = (n as f64 / (t as f64).sqrt()).ceil() as usize;
        let p = TuneProbe {
            t,
            tst_leaves,
            cover_term,
            cost: TUNE_LEAF_WEIGHT * tst_leaves + cover_term,
        };
        probes.push(p);
        p
    };
    let budget = budget.max(1);

    let mut t = 1;
    let mut prev = 1;
    loop {
        let p = probe(t, &mut probes);
        if probes.len() >= budget || p.tst_leaves >= p.cover_term || t >= max_t {
            break;
        }
        prev = t;
        t = (2 * t).min(max_t);
    }
    let (mut lo, mut hi) = (prev, t);
    while hi > lo + 1 && probes.len() + 2 <= budget {
        let mid = lo + (hi - lo) / 2;
        let (a, b) = (probe(mid, &mut probes), probe(mid + 1, &mut probes));
        if a.cost <= b.cost {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let chosen = probes
        .iter()
        .min_by_key(|p| (p.cost, p.t))
        .map(|p| p.t)
        .unwrap_or(1);
    TuneReport { chosen, probes }
}
