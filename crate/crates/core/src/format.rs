//! Binary index format: the magic `LCEX`, a `u16` version, then tagged
//! sections (`[u8; 4]` tag, `u64` byte length, payload). All integers are
//! little-endian. Only primary arrays are stored; RMQ tables, child lists,
//! suffix arrays of the block code and ancestor structures are rebuilt on
//! load.

use std::fs;
use std::path::Path;

use crate::blockcode::BlockCode;
use crate::diffcover::{CoverIndex, DifferenceCover};
use crate::error::{Error, Result};
use crate::lce::{LceIndex, SpaceStats};
use crate::navtree::{AncestorKind, NavTree};
use crate::packed::{PackedLce, PackedText};
use crate::tst::TruncatedSuffixTree;

pub const MAGIC: &[u8; 4] = b"LCEX";
pub const VERSION: u16 = 1;

#[derive(Default)]
struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    fn u16(&mut self, v: u16) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn bytes(&mut self, v: &[u8]) {
        self.u64(v.len() as u64);
        self.buf.extend_from_slice(v);
    }

    fn u32s(&mut self, v: &[u32]) {
        self.u64(v.len() as u64);
        for &x in v {
            self.u32(x);
        }
    }

    fn u64s(&mut self, v: &[u64]) {
        self.u64(v.len() as u64);
        for &x in v {
            self.u64(x);
        }
    }

    fn section(&mut self, tag: &[u8; 4], f: impl FnOnce(&mut Writer)) {
        let mut inner = Writer::default();
        f(&mut inner);
        self.buf.extend_from_slice(tag);
        self.u64(inner.buf.len() as u64);
        self.buf.extend_from_slice(&inner.buf);
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

fn truncated() -> Error {
    Error::Format("truncated input".into())
}

impl<'a> Reader<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(k).ok_or_else(truncated)?;
        let s = self.buf.get(self.pos..end).ok_or_else(truncated)?;
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn usize(&mut self) -> Result<usize> {
        usize::try_from(self.u64()?).map_err(|_| Error::Format("value exceeds usize".into()))
    }

    fn len(&mut self, width: usize) -> Result<usize> {
        let k = self.usize()?;
        if k.checked_mul(width).is_none_or(|b| b > self.buf.len() - self.pos) {
            return Err(truncated());
        }
        Ok(k)
    }

    fn bytes(&mut self) -> Result<Vec<u8>> {
        let k = self.len(1)?;
        Ok(self.take(k)?.to_vec())
    }

    fn u32s(&mut self) -> Result<Vec<u32>> {
        let k = self.len(4)?;
        (0..k).map(|_| self.u32()).collect()
    }

    fn u64s(&mut self) -> Result<Vec<u64>> {
        let k = self.len(8)?;
        (0..k).map(|_| self.u64()).collect()
    }

    fn section(&mut self, tag: &[u8; 4]) -> Result<Reader<'a>> {
        let got = self.take(4)?;
        if got != tag {
            return Err(Error::Format(format!(
                "expected section {}, found {}",
                String::from_utf8_lossy(tag),
                String::from_utf8_lossy(got)
            )));
        }
        let k = self.len(1)?;
        Ok(Reader::new(self.take(k)?))
    }

    fn peek_tag(&self) -> Option<&'a [u8]> {
        self.buf.get(self.pos..self.pos + 4)
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.buf.len() {
            Ok(())
        } else {
            Err(Error::Format("trailing bytes".into()))
        }
    }
}

fn opt(v: Option<usize>) -> u64 {
    v.map_or(u64::MAX, |x| x as u64)
}

impl LceIndex {
    /// Serializes the index.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::default();
        w.buf.extend_from_slice(MAGIC);
        w.u16(VERSION);
        w.section(b"PARM", |w| {
            w.u64(self.n as u64);
            w.u64(self.t as u64);
            w.u64(self.t_prime as u64);
            w.u8(self.nav.ancestor_kind().code());
            w.u8(self.packed.is_some() as u8);
            w.u32s(self.bc.cover().cover().members());
        });
        w.section(b"TSTR", |w| {
            let (parent, depth, start) = self.tree.raw_parts();
            w.u32(self.tree.q() as u32);
            w.u8(self.tree.is_compacted() as u8);
            w.u32s(parent);
            w.u32s(depth);
            w.u32s(start);
            w.bytes(self.tree.refstr());
            match self.tree.tgram_parts() {
                Some((t, count, ranks)) => {
                    w.u8(1);
                    w.u32(t);
                    w.u32(count);
                    w.u32s(ranks);
                }
                None => w.u8(0),
            }
        });
        w.section(b"NAVT", |w| {
            let (parent, depth, sampled) = self.nav.raw_parts();
            w.u32(self.nav.root() as u32);
            w.u32s(parent);
            w.u32s(depth);
            w.u32s(sampled);
        });
        w.section(b"BLKC", |w| w.u32s(self.bc.code()));
        w.section(b"STAT", |w| w.u64(opt(self.stats.z)));
        if let Some(p) = &self.packed {
            w.section(b"PACK", |w| {
                let pt = p.text();
                let (words, dense) = pt.raw_parts();
                w.u32(pt.bits_per_symbol());
                w.u32(pt.word_size());
                w.u64(pt.len() as u64);
                w.u64s(words);
                w.bytes(dense);
                w.u32s(p.blockcode().code());
            });
        }
        w.buf
    }

    /// Decodes an index written by [`LceIndex::to_bytes`].
    pub fn from_bytes(buf: &[u8]) -> Result<Self> {
        let mut r = Reader::new(buf);
        if r.take(4).map_err(|_| Error::Format("missing magic".into()))? != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = r.u16()?;
        if version != VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }

        let mut p = r.section(b"PARM")?;
        let n = p.usize()?;
        let t = p.usize()?;
        let t_prime = p.usize()?;
        let kind = AncestorKind::from_code(p.u8()?)
            .ok_or_else(|| Error::Format("unknown ancestor structure".into()))?;
        let has_packed = p.u8()? != 0;
        let members = p.u32s()?;
        p.finish()?;
        if t_prime < 1 || t_prime > t || t > n || 2 * t_prime > n {
            return Err(Error::Format("inconsistent parameters".into()));
        }
        let dc = DifferenceCover::from_members(t, &members)
            .map_err(|e| Error::Format(format!("bad cover: {e}")))?;

        let mut s = r.section(b"TSTR")?;
        let q = s.u32()?;
        let compacted = s.u8()? != 0;
        let parent = s.u32s()?;
        let depth = s.u32s()?;
        let start = s.u32s()?;
        let refstr = s.bytes()?;
        let tgram = if s.u8()? != 0 {
            let tt = s.u32()?;
            let count = s.u32()?;
            let ranks = s.u32s()?;
            Some(TruncatedSuffixTree::make_tgram(tt, count, ranks))
        } else {
            None
        };
        s.finish()?;
        let v_count = depth.len();
        if q as usize != 2 * t_prime
            || v_count == 0
            || parent.len() != v_count
            || start.len() != v_count
            || parent.iter().enumerate().skip(1).any(|(v, &x)| x as usize >= v)
            || depth
                .iter()
                .zip(&start)
                .any(|(&d, &st)| d as usize + st as usize > refstr.len())
        {
            return Err(Error::Format("inconsistent tree".into()));
        }
        let tree = TruncatedSuffixTree::from_preorder(q, parent, depth, start, refstr, compacted, tgram);
        if tree.tgram().is_some_and(|m| m.t() != t || tree.leaf_count() != m_len(&tree)) {
            return Err(Error::Format("inconsistent t-gram marks".into()));
        }

        let mut v = r.section(b"NAVT")?;
        let root = v.u32()?;
        let nparent = v.u32s()?;
        let ndepth = v.u32s()?;
        let sampled = v.u32s()?;
        v.finish()?;
        let leaves = tree.leaf_count();
        if nparent.len() != leaves
            || ndepth.len() != leaves
            || root as usize >= leaves
            || sampled.len() != n.div_ceil(t_prime)
            || sampled.iter().any(|&x| x as usize >= leaves)
            || !nav_shape_ok(root, &nparent, &ndepth)
        {
            return Err(Error::Format("inconsistent navigation tree".into()));
        }
        let nav = NavTree::from_parts(t_prime, n, root, nparent, ndepth, sampled, kind);

        let mut b = r.section(b"BLKC")?;
        let code = b.u32s()?;
        b.finish()?;
        let cover = CoverIndex::build(dc, n);
        if code.len() != cover.code_len() {
            return Err(Error::Format("block code length mismatch".into()));
        }
        let bc = BlockCode::from_code(cover, code);

        let mut st = r.section(b"STAT")?;
        let z = st.u64()?;
        st.finish()?;
        let z = (z != u64::MAX).then_some(z as usize);

        let packed = if has_packed {
            let mut k = r.section(b"PACK")?;
            let bits = k.u32()?;
            let word_size = k.u32()?;
            let pn = k.usize()?;
            let words = k.u64s()?;
            let dense = k.bytes()?;
            let pcode = k.u32s()?;
            k.finish()?;
            if pn != n || !(1..=8).contains(&bits) {
                return Err(Error::Format("inconsistent packed text".into()));
            }
            let pt = PackedText::from_parts(words, bits, pn, word_size, dense)?;
            Some(PackedLce::from_parts(pt, pcode)?)
        } else {
            None
        };
        if let Some(tag) = r.peek_tag() {
            return Err(Error::Format(format!(
                "unexpected section {}",
                String::from_utf8_lossy(tag)
            )));
        }
        r.finish()?;

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
        Ok(ix)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&fs::read(path)?)
    }
}

/// Every non-root node hangs one level below a valid parent, which rules
/// out cycles.
fn nav_shape_ok(root: u32, parent: &[u32], depth: &[u32]) -> bool {
    parent.iter().zip(depth).enumerate().all(|(u, (&p, &d))| {
        if u == root as usize {
            d == 0
        } else {
            (p as usize) < parent.len() && depth[p as usize].checked_add(1) == Some(d)
        }
    })
}

fn m_len(tree: &TruncatedSuffixTree) -> usize {
    tree.tgram_parts().map_or(0, |(_, _, r)| r.len())
}
