//! q-truncated suffix trees: the compacted trie of all substrings of length
//! at most `q`, one leaf per distinct `w[i..min(i+q-1, n)]`.
//!
//! Construction truncates the LCP array of the full text at `q` and builds
//! the trie from the resulting leaf groups in one left-to-right stack sweep.
//! Nodes are numbered in preorder, so leaves appear in lexicographic order.
//! Every node stores the start of one occurrence of its path label in the
//! reference string; edge labels are slices of that occurrence.

use std::mem::size_of;

use crate::rmq::SparseTable;
use crate::suffix;
use crate::text::Text;

pub(crate) const NONE: u32 = u32::MAX;

/// Lexicographic rank of a leaf, 0-based.
pub type LeafId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TgramMarks {
    t: u32,
    /// Rank (1-based) of each leaf's depth-`t` ancestor; 0 for leaves
    /// shorter than `t`.
    leaf_rank: Vec<u32>,
    count: u32,
}

impl TgramMarks {
    pub fn t(&self) -> usize {
        self.t as usize
    }

    /// Number of distinct t-grams.
    pub fn count(&self) -> usize {
        self.count as usize
    }

    #[inline]
    pub fn rank(&self, leaf: LeafId) -> u32 {
        self.leaf_rank[leaf]
    }
}

#[derive(Debug, Clone)]
pub struct TruncatedSuffixTree {
    q: u32,
    parent: Vec<u32>,
    depth: Vec<u32>,
    start: Vec<u32>,
    refstr: Vec<u8>,
    compacted: bool,
    child_off: Vec<u32>,
    child_list: Vec<u32>,
    leaves: Vec<u32>,
    leaf_of_node: Vec<u32>,
    euler_first: Vec<u32>,
    lca: SparseTable<u32>,
    tgram: Option<TgramMarks>,
}

/// A tree together with the leaf of every text position (0-based index).
pub(crate) struct TstBuild {
    pub tree: TruncatedSuffixTree,
    pub leaf_of_pos: Vec<u32>,
}

/// Builds `TST(w, q)` with edges referencing the text.
pub fn build_tst(text: &Text, q: usize) -> TruncatedSuffixTree {
    let s = text.symbols();
    let sa = suffix::suffix_array(s);
    let isa = suffix::inverse(&sa);
    let lcp = suffix::lcp_array(s, &sa, &isa);
    build_from_suffix_array(s, &sa, &lcp, q).tree
}

/// Number of leaves of `TST(w, q)`, read off the LCP array.
pub(crate) fn leaf_count_from_lcp(lcp: &[u32], q: usize) -> usize {
    lcp.iter()
        .enumerate()
        .filter(|&(k, &l)| k == 0 || (l as usize) < q)
        .count()
}

pub(crate) fn build_from_suffix_array(s: &[u8], sa: &[u32], lcp: &[u32], q: usize) -> TstBuild {
    let n = s.len();
    assert!(q >= 1 && q <= n, "truncation depth {q} outside [1..{n}]");

    // Leaf groups: consecutive suffixes sharing their q-prefix.
    let mut leaf_of_pos = vec![0u32; n];
    let mut leaf_depth: Vec<u32> = Vec::new();
    let mut leaf_start: Vec<u32> = Vec::new();
    let mut leaf_lcp: Vec<u32> = Vec::new();
    for (k, &p) in sa.iter().enumerate() {
        let l = lcp[k] as usize;
        if k == 0 || l < q {
            leaf_depth.push(q.min(n - p as usize) as u32);
            leaf_start.push(p);
            leaf_lcp.push(if k == 0 { 0 } else { l as u32 });
        } else {
            let last = leaf_start.len() - 1;
            leaf_start[last] = leaf_start[last].min(p);
        }
        leaf_of_pos[p as usize] = (leaf_start.len() - 1) as u32;
    }

    // Stack sweep over leaves in lexicographic order.
    let leaf_count = leaf_depth.len();
    let mut depth: Vec<u32> = Vec::with_capacity(2 * leaf_count);
    let mut start: Vec<u32> = Vec::with_capacity(2 * leaf_count);
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(2 * leaf_count);
    depth.push(0);
    start.push(leaf_start.first().copied().unwrap_or(0));
    let root = 0u32;
    let mut stack: Vec<u32> = vec![root];
    let mut leaf_nodes = Vec::with_capacity(leaf_count);
    for k in 0..leaf_count {
        let l = leaf_lcp[k];
        while depth[*stack.last().unwrap() as usize] > l {
            let v = stack.pop().unwrap();
            let top = *stack.last().unwrap();
            if depth[top as usize] >= l {
                edges.push((top, v));
            } else {
                let x = depth.len() as u32;
                depth.push(l);
                start.push(start[v as usize]);
                edges.push((x, v));
                stack.push(x);
            }
        }
        let leaf = depth.len() as u32;
        depth.push(leaf_depth[k]);
        start.push(leaf_start[k]);
        leaf_nodes.push(leaf);
        stack.push(leaf);
    }
    while stack.len() > 1 {
        let v = stack.pop().unwrap();
        edges.push((*stack.last().unwrap(), v));
    }

    let (tree, order) = TruncatedSuffixTree::assemble(q as u32, &depth, &start, &edges, s.to_vec(), false);
    // Map construction leaf order onto preorder leaf ids; both are lexicographic.
    debug_assert!(leaf_nodes
        .iter()
        .enumerate()
        .all(|(k, &v)| tree.leaf_of_node[order[v as usize] as usize] == k as u32));
    TstBuild { tree, leaf_of_pos }
}

impl TruncatedSuffixTree {
    /// Renumbers nodes in preorder and derives child lists, leaf order and
    /// the LCA structure. `edges` must list each node's children in
    /// lexicographic order. Returns the tree and the old-to-new id map.
    fn assemble(
        q: u32,
        depth: &[u32],
        start: &[u32],
        edges: &[(u32, u32)],
        refstr: Vec<u8>,
        compacted: bool,
    ) -> (Self, Vec<u32>) {
        let v_count = depth.len();
        let (off, list) = csr(v_count, edges);

        let mut order = vec![NONE; v_count];
        let mut pre: Vec<u32> = Vec::with_capacity(v_count);
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            order[v as usize] = pre.len() as u32;
            pre.push(v);
            let (a, b) = (off[v as usize] as usize, off[v as usize + 1] as usize);
            stack.extend(list[a..b].iter().rev());
        }
        debug_assert_eq!(pre.len(), v_count, "edges do not form a tree");

        let mut parent = vec![NONE; v_count];
        let mut new_edges = Vec::with_capacity(edges.len());
        for &old in &pre {
            let v = order[old as usize];
            let (a, b) = (off[old as usize] as usize, off[old as usize + 1] as usize);
            for &c in &list[a..b] {
                parent[order[c as usize] as usize] = v;
                new_edges.push((v, order[c as usize]));
            }
        }
        let depth: Vec<u32> = pre.iter().map(|&v| depth[v as usize]).collect();
        let start: Vec<u32> = pre.iter().map(|&v| start[v as usize]).collect();
        let tree = Self::from_preorder(q, parent, depth, start, refstr, compacted, None);
        (tree, order)
    }

    /// Rebuilds derived structures from preorder arrays.
    pub(crate) fn from_preorder(
        q: u32,
        parent: Vec<u32>,
        depth: Vec<u32>,
        start: Vec<u32>,
        refstr: Vec<u8>,
        compacted: bool,
        tgram: Option<TgramMarks>,
    ) -> Self {
        let v_count = depth.len();
        let edges: Vec<(u32, u32)> = (1..v_count as u32).map(|v| (parent[v as usize], v)).collect();
        let (child_off, child_list) = csr(v_count, &edges);

        let mut leaves = Vec::new();
        let mut leaf_of_node = vec![NONE; v_count];
        for v in 0..v_count {
            if child_off[v] == child_off[v + 1] {
                leaf_of_node[v] = leaves.len() as u32;
                leaves.push(v as u32);
            }
        }

        let mut euler: Vec<u32> = Vec::with_capacity(2 * v_count);
        let mut euler_first = vec![0u32; leaves.len()];
        let mut stack: Vec<(u32, u32)> = vec![(0, child_off[0])];
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            if next == child_off[v as usize] {
                let lf = leaf_of_node[v as usize];
                if lf != NONE {
                    euler_first[lf as usize] = euler.len() as u32;
                }
            }
            euler.push(depth[v as usize]);
            if next < child_off[v as usize + 1] {
                top.1 += 1;
                let c = child_list[next as usize];
                stack.push((c, child_off[c as usize]));
            } else {
                stack.pop();
            }
        }
        let lca = SparseTable::new(&euler);

        Self {
            q,
            parent,
            depth,
            start,
            refstr,
            compacted,
            child_off,
            child_list,
            leaves,
            leaf_of_node,
            euler_first,
            lca,
            tgram,
        }
    }

    pub fn q(&self) -> usize {
        self.q as usize
    }

    pub fn node_count(&self) -> usize {
        self.depth.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_compacted(&self) -> bool {
        self.compacted
    }

    pub fn refstr(&self) -> &[u8] {
        &self.refstr
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        let p = self.parent[v];
        (p != NONE).then_some(p as usize)
    }

    pub fn string_depth(&self, v: usize) -> usize {
        self.depth[v] as usize
    }

    pub fn children(&self, v: usize) -> &[u32] {
        &self.child_list[self.child_off[v] as usize..self.child_off[v + 1] as usize]
    }

    /// Edge into `v` as `(start, len)` within the reference string.
    pub fn edge(&self, v: usize) -> (usize, usize) {
        let pd = self.parent(v).map_or(0, |p| self.depth[p] as usize);
        (self.start[v] as usize + pd, self.depth[v] as usize - pd)
    }

    pub fn leaf_node(&self, leaf: LeafId) -> usize {
        self.leaves[leaf] as usize
    }

    pub fn leaf_of_node(&self, v: usize) -> Option<LeafId> {
        let l = self.leaf_of_node[v];
        (l != NONE).then_some(l as usize)
    }

    /// Path label of node `v`.
    pub fn node_str(&self, v: usize) -> &[u8] {
        let s = self.start[v] as usize;
        &self.refstr[s..s + self.depth[v] as usize]
    }

    pub fn leaf_str(&self, leaf: LeafId) -> &[u8] {
        self.node_str(self.leaves[leaf] as usize)
    }

    pub fn leaf_depth(&self, leaf: LeafId) -> usize {
        self.depth[self.leaves[leaf] as usize] as usize
    }

    /// Path label of `v` rebuilt by concatenating edge labels from the root.
    pub fn decode_by_edges(&self, v: usize) -> Vec<u8> {
        let mut path = vec![v];
        while let Some(p) = self.parent(*path.last().unwrap()) {
            path.push(p);
        }
        let mut out = Vec::with_capacity(self.depth[v] as usize);
        for &u in path.iter().rev().skip(1) {
            let (s, l) = self.edge(u);
            out.extend_from_slice(&self.refstr[s..s + l]);
        }
        out
    }

    /// Leaf spelling the q-clipped `pattern`, found by descending from the root.
    pub fn find_leaf(&self, pattern: &[u8]) -> Option<LeafId> {
        let pattern = &pattern[..pattern.len().min(self.q as usize)];
        let mut v = 0usize;
        loop {
            let d = self.depth[v] as usize;
            if d == pattern.len() {
                return self.leaf_of_node(v);
            }
            let c = pattern[d];
            let kids = self.children(v);
            let k = kids
                .binary_search_by_key(&c, |&u| self.refstr[self.start[u as usize] as usize + d])
                .ok()?;
            let u = kids[k] as usize;
            let end = (self.depth[u] as usize).min(pattern.len());
            let s = self.start[u] as usize;
            if self.refstr[s + d..s + end] != pattern[d..end] {
                return None;
            }
            if end < self.depth[u] as usize {
                return None;
            }
            v = u;
        }
    }

    /// String depth of the lowest common ancestor of two leaves, i.e. the
    /// longest common prefix of their labels.
    #[inline]
    pub fn lca_prefix_len(&self, a: LeafId, b: LeafId) -> usize {
        if a == b {
            return self.leaf_depth(a);
        }
        let (x, y) = (self.euler_first[a], self.euler_first[b]);
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        self.lca.min(lo as usize, hi as usize) as usize
    }

    /// Replaces the text reference by a self-contained reference string built
    /// from the merged leftmost-occurrence intervals of the leaves.
    pub fn compact_reference(self) -> Self {
        if self.compacted {
            return self;
        }
        let mut intervals: Vec<(u32, u32)> = self
            .leaves
            .iter()
            .map(|&v| (self.start[v as usize], self.start[v as usize] + self.depth[v as usize]))
            .collect();
        intervals.sort_unstable();
        // Pieces: (old start, old end, new start).
        let mut pieces: Vec<(u32, u32, u32)> = Vec::new();
        let mut refstr = Vec::new();
        for (a, b) in intervals {
            match pieces.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => pieces.push((a, b, 0)),
            }
        }
        for p in &mut pieces {
            p.2 = refstr.len() as u32;
            refstr.extend_from_slice(&self.refstr[p.0 as usize..p.1 as usize]);
        }
        let start: Vec<u32> = self
            .start
            .iter()
            .zip(&self.depth)
            .map(|(&s, &d)| {
                let k = pieces.partition_point(|p| p.0 <= s) - 1;
                let p = pieces[k];
                debug_assert!(s + d <= p.1);
                p.2 + (s - p.0)
            })
            .collect();
        Self {
            start,
            refstr,
            compacted: true,
            ..self
        }
    }

    /// Makes every `t`-gram an explicit node and ranks them lexicographically.
    pub fn mark_tgram_nodes(self, t: usize) -> Self {
        assert!(t >= 1 && t <= self.q as usize, "t-gram length {t} outside [1..q]");
        let t32 = t as u32;
        let v_count = self.node_count();
        let mut depth = self.depth.clone();
        let mut start = self.start.clone();
        let mut edges = Vec::with_capacity(v_count + v_count / 2);
        for v in 0..v_count {
            for &c in self.children(v) {
                let dc = self.depth[c as usize];
                if self.depth[v] < t32 && t32 < dc {
                    let m = depth.len() as u32;
                    depth.push(t32);
                    start.push(self.start[c as usize]);
                    edges.push((v as u32, m));
                    edges.push((m, c));
                } else {
                    edges.push((v as u32, c));
                }
            }
        }
        let (tree, _) = Self::assemble(self.q, &depth, &start, &edges, self.refstr, self.compacted);

        let mut rank_at = vec![0u32; tree.node_count()];
        let mut count = 0u32;
        for v in 0..tree.node_count() {
            if tree.depth[v] == t32 {
                count += 1;
                rank_at[v] = count;
            } else if tree.depth[v] > t32 {
                rank_at[v] = rank_at[tree.parent[v] as usize];
            }
        }
        let leaf_rank = tree.leaves.iter().map(|&v| rank_at[v as usize]).collect();
        Self {
            tgram: Some(TgramMarks {
                t: t32,
                leaf_rank,
                count,
            }),
            ..tree
        }
    }

    pub fn tgram(&self) -> Option<&TgramMarks> {
        self.tgram.as_ref()
    }

    pub(crate) fn raw_parts(&self) -> (&[u32], &[u32], &[u32]) {
        (&self.parent, &self.depth, &self.start)
    }

    pub(crate) fn tgram_parts(&self) -> Option<(u32, u32, &[u32])> {
        self.tgram.as_ref().map(|m| (m.t, m.count, m.leaf_rank.as_slice()))
    }

    pub(crate) fn make_tgram(t: u32, count: u32, leaf_rank: Vec<u32>) -> TgramMarks {
        TgramMarks { t, leaf_rank, count }
    }

    pub fn heap_bytes(&self) -> usize {
        let words = self.parent.len()
            + self.depth.len()
            + self.start.len()
            + self.child_off.len()
            + self.child_list.len()
            + self.leaves.len()
            + self.leaf_of_node.len()
            + self.euler_first.len()
            + self.tgram.as_ref().map_or(0, |m| m.leaf_rank.len());
        words * size_of::<u32>() + self.refstr.len() + self.lca.heap_bytes()
    }
}

/// Compressed child lists, stable in edge order.
fn csr(v_count: usize, edges: &[(u32, u32)]) -> (Vec<u32>, Vec<u32>) {
    let mut off = vec![0u32; v_count + 1];
    for &(p, _) in edges {
        off[p as usize + 1] += 1;
    }
    for v in 0..v_count {
        off[v + 1] += off[v];
    }
    let mut fill = off.clone();
    let mut list = vec![0u32; edges.len()];
    for &(p, c) in edges {
        list[fill[p as usize] as usize] = c;
        fill[p as usize] += 1;
    }
    (off, list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::lz77::lz77_factorize;
    use crate::text::SentinelPolicy;
    use std::collections::{BTreeSet, HashSet};

    const BAAB: &[u8] = b"baabbaabbaaabbaabba";

    fn text(raw: &[u8]) -> Text {
        Text::load(raw, SentinelPolicy::Explicit(b'$')).unwrap()
    }

    fn qgrams(s: &[u8], q: usize) -> BTreeSet<Vec<u8>> {
        (0..s.len()).map(|i| s[i..(i + q).min(s.len())].to_vec()).collect()
    }

    fn check_structure(t: &Text, tree: &TruncatedSuffixTree) {
        let s = t.symbols();
        let q = tree.q();
        let want: Vec<Vec<u8>> = qgrams(s, q).into_iter().collect();
        let got: Vec<Vec<u8>> = (0..tree.leaf_count()).map(|l| tree.leaf_str(l).to_vec()).collect();
        assert_eq!(got, want);
        for v in 0..tree.node_count() {
            assert_eq!(tree.decode_by_edges(v), tree.node_str(v));
            if tree.leaf_of_node(v).is_none() && tree.tgram().is_none() {
                assert!(tree.children(v).len() >= 2 || v == 0 && tree.leaf_count() == 1);
            }
        }
        for i in 0..s.len() {
            let p = &s[i..(i + q).min(s.len())];
            let leaf = tree.find_leaf(p).expect("position has a leaf");
            assert_eq!(tree.leaf_str(leaf), p);
        }
    }

    #[test]
    fn baab_tree() {
        let t = text(BAAB);
        let tree = build_tst(&t, 5);
        let distinct: HashSet<&[u8]> = (0..20).map(|i| &t.symbols()[i..(i + 5).min(20)]).collect();
        assert_eq!(tree.leaf_count(), distinct.len());
        check_structure(&t, &tree);
        let tree = tree.compact_reference();
        check_structure(&t, &tree);
    }

    #[test]
    fn full_depth_gives_all_suffixes() {
        let t = text(BAAB);
        let tree = build_tst(&t, t.len());
        assert_eq!(tree.leaf_count(), t.len());
        check_structure(&t, &tree);
    }

    #[test]
    fn lz_bound_on_example() {
        let t = text(b"abababcabababcabababcd");
        let z = lz77_factorize(&t).z();
        assert_eq!(z, 6);
        let tree = build_tst(&t, 4);
        assert!(tree.leaf_count() <= z * 3 + 4);
        assert_eq!(tree.leaf_count(), qgrams(t.symbols(), 4).len());
    }

    #[test]
    fn compaction_on_unary_run() {
        let t = Text::load(&[b'a'; 100], SentinelPolicy::Auto).unwrap();
        let z = lz77_factorize(&t).z();
        assert_eq!(z, 2);
        let tree = build_tst(&t, 8);
        let before: Vec<Vec<u8>> = (0..tree.leaf_count()).map(|l| tree.leaf_str(l).to_vec()).collect();
        let tree = tree.compact_reference();
        let after: Vec<Vec<u8>> = (0..tree.leaf_count()).map(|l| tree.leaf_str(l).to_vec()).collect();
        assert_eq!(before, after);
        assert!(tree.refstr().len() <= (101usize).min(2 * 8 * (z + 1)));
    }

    #[test]
    fn depth_one_reference_holds_each_symbol_once() {
        let t = text(BAAB);
        let tree = build_tst(&t, 1).compact_reference();
        assert_eq!(tree.refstr().len(), t.sigma());
    }

    #[test]
    fn compaction_on_fibonacci() {
        let t = Text::load(&corpus::fibonacci(999), SentinelPolicy::Auto).unwrap();
        let z = lz77_factorize(&t).z();
        let tree = build_tst(&t, 16);
        let before: Vec<Vec<u8>> = (0..tree.leaf_count()).map(|l| tree.leaf_str(l).to_vec()).collect();
        let tree = tree.compact_reference();
        check_structure(&t, &tree);
        let after: Vec<Vec<u8>> = (0..tree.leaf_count()).map(|l| tree.leaf_str(l).to_vec()).collect();
        assert_eq!(before, after);
        assert!(tree.refstr().len() <= t.len().min(2 * 16 * (z + 1)));
    }

    #[test]
    fn lca_matches_scan() {
        let t = text(BAAB);
        let tree = build_tst(&t, 5).compact_reference();
        for a in 0..tree.leaf_count() {
            for b in 0..tree.leaf_count() {
                let (x, y) = (tree.leaf_str(a), tree.leaf_str(b));
                let l = x.iter().zip(y).take_while(|(p, q)| p == q).count();
                assert_eq!(tree.lca_prefix_len(a, b), l);
            }
        }
        let r = Text::load(&corpus::random(300, 3, 5), SentinelPolicy::Auto).unwrap();
        let tree = build_tst(&r, 7);
        assert!(tree.leaf_count() <= 512);
        for a in 0..tree.leaf_count() {
            for b in 0..tree.leaf_count() {
                let (x, y) = (tree.leaf_str(a), tree.leaf_str(b));
                let l = x.iter().zip(y).take_while(|(p, q)| p == q).count();
                assert_eq!(tree.lca_prefix_len(a, b), l);
            }
            if a > 0 {
                assert!(tree.leaf_str(a - 1) < tree.leaf_str(a));
            }
        }
    }

    #[test]
    fn tgram_marks_unary_run() {
        let t = Text::load(b"aaaa", SentinelPolicy::Auto).unwrap();
        let tree = build_tst(&t, 2).mark_tgram_nodes(1);
        let m = tree.tgram().unwrap();
        assert_eq!(m.count(), 2);
        // Leaf 0 is "$" (code 0), the rest start with 'a'.
        assert_eq!(m.rank(0), 1);
        assert!((1..tree.leaf_count()).all(|l| m.rank(l) == 2));
    }

    #[test]
    fn tgram_ranks_match_sorted_grams() {
        let t = text(BAAB);
        let s = t.symbols().to_vec();
        let build = {
            let sa = suffix::suffix_array(&s);
            let lcp = suffix::lcp_array(&s, &sa, &suffix::inverse(&sa));
            build_from_suffix_array(&s, &sa, &lcp, 4)
        };
        let tree = build.tree.mark_tgram_nodes(2);
        let grams: Vec<&[u8]> = {
            let set: BTreeSet<&[u8]> = (0..s.len() - 1).map(|i| &s[i..i + 2]).collect();
            set.into_iter().collect()
        };
        let m = tree.tgram().unwrap();
        assert_eq!(m.count(), grams.len());
        for i in 0..s.len() - 1 {
            let want = grams.iter().position(|g| *g == &s[i..i + 2]).unwrap() + 1;
            assert_eq!(m.rank(build.leaf_of_pos[i] as usize) as usize, want);
        }
        assert_eq!(m.rank(build.leaf_of_pos[s.len() - 1] as usize), 0);
        check_structure(&t, &tree);
        for v in 0..tree.node_count() {
            if tree.children(v).len() == 1 {
                assert_eq!(tree.string_depth(v), 2);
            }
        }
    }

    #[test]
    fn tgram_count_random() {
        let t = Text::load(&corpus::random(300, 4, 11), SentinelPolicy::Auto).unwrap();
        let s = t.symbols();
        let tree = build_tst(&t, 8).mark_tgram_nodes(4);
        let distinct: HashSet<&[u8]> = (0..=s.len() - 4).map(|i| &s[i..i + 4]).collect();
        assert_eq!(tree.tgram().unwrap().count(), distinct.len());
    }

    #[test]
    fn leaf_count_shortcut() {
        let t = Text::load(&corpus::thue_morse(500), SentinelPolicy::Auto).unwrap();
        let s = t.symbols();
        let sa = suffix::suffix_array(s);
        let lcp = suffix::lcp_array(s, &sa, &suffix::inverse(&sa));
        for q in [1, 2, 5, 16, 64, 501] {
            assert_eq!(leaf_count_from_lcp(&lcp, q), qgrams(s, q).len());
        }
    }
}
