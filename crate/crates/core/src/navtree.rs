//! ShortLCE engine: a spanning tree of the edge-reversed de Bruijn graph of
//! order `2t`, whose nodes are the leaves of `TST(w, 2t)`.
//!
//! The parent of the node spelling `p_i = w[i..i+2t-1]` is the node of
//! `p_{i+1}` for the rightmost occurrence `i` of `p_i`, so walking `d` steps
//! up deletes the first `d` symbols. Every `t`-th position keeps a pointer to
//! its node; any other position is reached by a level-ancestor query of
//! depth `< t` from the closest sampled position on its left.

use std::mem::size_of;

use crate::diffcover::Divisor;
use crate::tst::{LeafId, TruncatedSuffixTree, NONE};
use crate::text::Text;

/// Level-ancestor backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AncestorKind {
    /// Jump pointers at every power of two below `t`; `O(log t)` query.
    #[default]
    BinaryLifting,
    /// Long-path ladders plus jump pointers; `O(1)` query.
    Ladder,
}

impl AncestorKind {
    pub(crate) fn code(self) -> u8 {
        match self {
            AncestorKind::BinaryLifting => 0,
            AncestorKind::Ladder => 1,
        }
    }

    pub(crate) fn from_code(c: u8) -> Option<Self> {
        match c {
            0 => Some(AncestorKind::BinaryLifting),
            1 => Some(AncestorKind::Ladder),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
struct LevelAncestor {
    kind: AncestorKind,
    v_count: usize,
    /// `jump[k * v_count + v]` is the `2^k`-th ancestor of `v` (root-clamped).
    jump: Vec<u32>,
    levels: usize,
    /// Ladder layout, only for [`AncestorKind::Ladder`].
    ladders: Vec<u32>,
    ladder_pos: Vec<u32>,
}

impl LevelAncestor {
    fn build(kind: AncestorKind, parent: &[u32], root: u32, max_d: usize) -> Self {
        let v_count = parent.len();
        let levels = if max_d == 0 { 0 } else { max_d.ilog2() as usize + 1 };
        let mut jump = Vec::with_capacity(levels * v_count);
        if levels > 0 {
            jump.extend(parent.iter().map(|&p| if p == NONE { root } else { p }));
            for k in 1..levels {
                let prev = (k - 1) * v_count;
                for v in 0..v_count {
                    let mid = jump[prev + v] as usize;
                    jump.push(jump[prev + mid]);
                }
            }
        }
        let (ladders, ladder_pos) = match kind {
            AncestorKind::BinaryLifting => (Vec::new(), Vec::new()),
            AncestorKind::Ladder => build_ladders(parent, root),
        };
        Self {
            kind,
            v_count,
            jump,
            levels,
            ladders,
            ladder_pos,
        }
    }

    #[inline]
    fn query(&self, mut v: u32, d: usize) -> u32 {
        if d == 0 {
            return v;
        }
        debug_assert!(d < 1 << self.levels);
        match self.kind {
            AncestorKind::BinaryLifting => {
                let mut rest = d;
                while rest != 0 {
                    let k = rest.trailing_zeros() as usize;
                    v = self.jump[k * self.v_count + v as usize];
                    rest &= rest - 1;
                }
                v
            }
            AncestorKind::Ladder => {
                let k = d.ilog2() as usize;
                let u = self.jump[k * self.v_count + v as usize];
                let r = d - (1 << k);
                self.ladders[self.ladder_pos[u as usize] as usize - r]
            }
        }
    }

    fn heap_bytes(&self) -> usize {
        (self.jump.len() + self.ladders.len() + self.ladder_pos.len()) * size_of::<u32>()
    }
}

/// Long-path decomposition; each path is extended upward by its own length.
fn build_ladders(parent: &[u32], root: u32) -> (Vec<u32>, Vec<u32>) {
    let v_count = parent.len();
    let mut off = vec![0u32; v_count + 1];
    for &p in parent {
        if p != NONE {
            off[p as usize + 1] += 1;
        }
    }
    for v in 0..v_count {
        off[v + 1] += off[v];
    }
    let mut fill = off.clone();
    let mut kids = vec![0u32; v_count.saturating_sub(1)];
    for (v, &p) in parent.iter().enumerate() {
        if p != NONE {
            kids[fill[p as usize] as usize] = v as u32;
            fill[p as usize] += 1;
        }
    }
    let mut bfs = Vec::with_capacity(v_count);
    bfs.push(root);
    let mut head = 0;
    while head < bfs.len() {
        let v = bfs[head] as usize;
        head += 1;
        bfs.extend_from_slice(&kids[off[v] as usize..off[v + 1] as usize]);
    }
    let mut height = vec![0u32; v_count];
    let mut long_child = vec![NONE; v_count];
    for &v in bfs.iter().rev() {
        let p = parent[v as usize];
        if p != NONE {
            let p = p as usize;
            if long_child[p] == NONE || height[v as usize] + 1 > height[p] {
                height[p] = height[v as usize] + 1;
                long_child[p] = v;
            }
        }
    }
    let mut ladders = Vec::with_capacity(2 * v_count);
    let mut ladder_pos = vec![0u32; v_count];
    let mut path = Vec::new();
    let mut ext = Vec::new();
    for &top in &bfs {
        let p = parent[top as usize];
        if p != NONE && long_child[p as usize] == top {
            continue;
        }
        path.clear();
        let mut v = top;
        while v != NONE {
            path.push(v);
            v = long_child[v as usize];
        }
        ext.clear();
        let mut a = parent[top as usize];
        while a != NONE && ext.len() < path.len() {
            ext.push(a);
            a = parent[a as usize];
        }
        ladders.extend(ext.iter().rev());
        for &u in &path {
            ladder_pos[u as usize] = ladders.len() as u32;
            ladders.push(u);
        }
    }
    (ladders, ladder_pos)
}

#[derive(Debug, Clone)]
pub struct NavTree {
    t: u32,
    n: u32,
    root: u32,
    parent: Vec<u32>,
    depth: Vec<u32>,
    sampled: Vec<u32>,
    la: LevelAncestor,
    div: Divisor,
}

/// Builds the navigation tree over `tree = TST(w, 2t)`, locating each
/// position's leaf by descending the tree.
pub fn build_navtree(text: &Text, tree: &TruncatedSuffixTree, t: usize, kind: AncestorKind) -> NavTree {
    let s = text.symbols();
    let q = tree.q();
    let leaf_of_pos: Vec<u32> = (0..s.len())
        .map(|i| {
            tree.find_leaf(&s[i..(i + q).min(s.len())])
                .expect("every position spells a leaf") as u32
        })
        .collect();
    NavTree::build(tree, &leaf_of_pos, t, kind)
}

impl NavTree {
    /// Right-to-left scan: the first visit of a node fixes its parent to the
    /// node of the next position.
    pub(crate) fn build(tree: &TruncatedSuffixTree, leaf_of_pos: &[u32], t: usize, kind: AncestorKind) -> Self {
        let n = leaf_of_pos.len();
        assert!(t >= 1 && 2 * t <= n, "navigation needs 1 <= t and 2t <= n");
        assert_eq!(tree.q(), 2 * t, "navigation tree needs TST(w, 2t)");
        let v_count = tree.leaf_count();
        let mut parent = vec![NONE; v_count];
        let mut depth = vec![0u32; v_count];
        let mut seen = vec![false; v_count];
        let root = leaf_of_pos[n - 1];
        seen[root as usize] = true;
        for i in (0..n - 1).rev() {
            let u = leaf_of_pos[i] as usize;
            if !seen[u] {
                seen[u] = true;
                let p = leaf_of_pos[i + 1];
                parent[u] = p;
                depth[u] = depth[p as usize] + 1;
            }
        }
        debug_assert!(seen.iter().all(|&s| s), "some leaf has no position");
        let sampled = (0..n).step_by(t).map(|p| leaf_of_pos[p]).collect();
        Self::from_parts(t, n, root, parent, depth, sampled, kind)
    }

    pub(crate) fn from_parts(
        t: usize,
        n: usize,
        root: u32,
        parent: Vec<u32>,
        depth: Vec<u32>,
        sampled: Vec<u32>,
        kind: AncestorKind,
    ) -> Self {
        let la = LevelAncestor::build(kind, &parent, root, t - 1);
        Self {
            t: t as u32,
            n: n as u32,
            root,
            parent,
            depth,
            sampled,
            la,
            div: Divisor::new(t as u32),
        }
    }

    pub fn t(&self) -> usize {
        self.t as usize
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> LeafId {
        self.root as usize
    }

    pub fn parent(&self, u: LeafId) -> Option<LeafId> {
        let p = self.parent[u];
        (p != NONE).then_some(p as usize)
    }

    pub fn depth(&self, u: LeafId) -> usize {
        self.depth[u] as usize
    }

    pub fn ancestor_kind(&self) -> AncestorKind {
        self.la.kind
    }

    pub fn sampled_count(&self) -> usize {
        self.sampled.len()
    }

    /// Node of sampled position `1 + k t`.
    pub fn sampled_node(&self, k: usize) -> LeafId {
        self.sampled[k] as usize
    }

    /// `d`-th ancestor of `u`, for `d < t` and `d <= depth(u)`.
    #[inline]
    pub fn level_ancestor(&self, u: LeafId, d: usize) -> LeafId {
        debug_assert!(d < self.t as usize && d <= self.depth[u] as usize);
        self.la.query(u as u32, d) as usize
    }

    /// A leaf whose label agrees with `w[i..]` on its first `min(t, n-i+1)`
    /// symbols (1-based `i`).
    #[inline]
    pub fn locate_leaf(&self, i: usize) -> LeafId {
        debug_assert!(i >= 1 && i <= self.n as usize);
        let (k, d) = self.div.div_rem(i - 1);
        self.la.query(self.sampled[k], d) as usize
    }

    /// `min(LCE(i, j), t)`.
    #[inline]
    pub fn short_lce(&self, tree: &TruncatedSuffixTree, i: usize, j: usize) -> usize {
        let (a, b) = (self.locate_leaf(i), self.locate_leaf(j));
        tree.lca_prefix_len(a, b).min(self.t as usize)
    }

    pub(crate) fn raw_parts(&self) -> (&[u32], &[u32], &[u32]) {
        (&self.parent, &self.depth, &self.sampled)
    }

    pub fn heap_bytes(&self) -> usize {
        (self.parent.len() + self.depth.len() + self.sampled.len()) * size_of::<u32>()
            + self.la.heap_bytes()
    }
}
