//! Difference covers of `Z_t`, the induced t-cover `S(t)` of `[1..n]`, and
//! the constant-time alignment offset `h(i, j)`.

use strength_reduce::StrengthReducedU32;

use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Division by a fixed modulus through multiply-and-shift.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Divisor(StrengthReducedU32);

impl Divisor {
    pub(crate) fn new(t: u32) -> Self {
        Self(StrengthReducedU32::new(t))
    }

    #[inline]
    pub(crate) fn div_rem(self, x: usize) -> (usize, usize) {
        let (q, r) = StrengthReducedU32::div_rem(x as u32, self.0);
        (q as usize, r as usize)
    }

    #[inline]
    pub(crate) fn rem(self, x: usize) -> usize {
        (x as u32 % self.0) as usize
    }
}

impl PartialEq for Divisor {
    fn eq(&self, other: &Self) -> bool {
        self.0.get() == other.0.get()
    }
}

impl Eq for Divisor {}

/// A set `D ⊆ [0..t)` whose pairwise differences modulo `t` hit every residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceCover {
    t: u32,
    members: Vec<u32>,
    /// `hdelta[d]` is the smallest `x ∈ D` with `(x + d) mod t ∈ D`.
    hdelta: Vec<u32>,
    div: Divisor,
}

impl DifferenceCover {
    /// Block construction: `{0, .., r-1} ∪ {r, 2r, ..}` below `t`, with
    /// `r = ceil(sqrt(t))`. Size at most `2 sqrt(t) + 1`.
    pub fn build(t: usize) -> Self {
        assert!(t >= 1, "modulus must be positive");
        let r = (1..).find(|r: &usize| r * r >= t).unwrap();
        let mut members: Vec<u32> = (0..r.min(t) as u32).collect();
        members.extend((1..).map(|k| k * r).take_while(|&x| x < t).map(|x| x as u32));
        members.sort_unstable();
        members.dedup();
        Self::from_members(t, &members).expect("block construction always covers")
    }

    /// Validates and indexes an explicit cover.
    pub fn from_members(t: usize, members: &[u32]) -> Result<Self> {
        if t == 0 || t > u32::MAX as usize {
            return Err(Error::ParamOutOfRange(format!("modulus {t}")));
        }
        let t32 = t as u32;
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&x| x >= t32) {
            return Err(Error::ParamOutOfRange(format!("cover member >= {t}")));
        }
        let mut is_member = vec![false; t];
        for &x in &members {
            is_member[x as usize] = true;
        }
        let hdelta: Vec<u32> = (0..t32)
            .map(|d| {
                members
                    .iter()
                    .copied()
                    .find(|&x| is_member[((x + d) % t32) as usize])
                    .unwrap_or(NONE)
            })
            .collect();
        if let Some(d) = hdelta.iter().position(|&x| x == NONE) {
            return Err(Error::ParamOutOfRange(format!(
                "not a difference cover of Z_{t}: difference {d} is missing"
            )));
        }
        Ok(Self {
            t: t32,
            members,
            hdelta,
            div: Divisor::new(t32),
        })
    }

    pub fn t(&self) -> usize {
        self.t as usize
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn hdelta(&self) -> &[u32] {
        &self.hdelta
    }

    /// Offset `δ ∈ [0, t)` with `i + δ` and `j + δ` both in the cover.
    #[inline]
    pub fn h(&self, i: usize, j: usize) -> usize {
        let t = self.t as usize;
        let (ri, rj) = (self.div.rem(i), self.div.rem(j));
        let d = if rj >= ri { rj - ri } else { rj + t - ri };
        let x = self.hdelta[d] as usize;
        if x >= ri {
            x - ri
        } else {
            x + t - ri
        }
    }
}

/// Membership and segment bookkeeping for `S(t) = {i ∈ [1..n] | i mod t ∈ D}`.
///
/// Residue `x` owns the arithmetic progression `x, x+t, ..` (starting at `t`
/// when `x = 0`). Its segment in the block code lists the positions whose
/// t-block `w[i..i+t-1]` fits in the text; segments are laid out in
/// ascending residue order, each non-empty one followed by a separator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverIndex {
    dc: DifferenceCover,
    n: usize,
    /// Slot of each residue in `members`, or `NONE`.
    slot: Vec<u32>,
    seg_offset: Vec<u32>,
    seg_len: Vec<u32>,
}

impl CoverIndex {
    pub fn build(dc: DifferenceCover, n: usize) -> Self {
        let t = dc.t();
        let mut slot = vec![NONE; t];
        for (k, &x) in dc.members.iter().enumerate() {
            slot[x as usize] = k as u32;
        }
        let last_block = (n + 1).checked_sub(t);
        let mut seg_offset = Vec::with_capacity(dc.members.len());
        let mut seg_len = Vec::with_capacity(dc.members.len());
        let mut offset = 0u32;
        for &x in &dc.members {
            let first = first_position(x as usize, t);
            let len = match last_block {
                Some(last) if first <= last => (last - first) / t + 1,
                _ => 0,
            } as u32;
            seg_offset.push(offset);
            seg_len.push(len);
            if len > 0 {
                offset += len + 1;
            }
        }
        Self {
            dc,
            n,
            slot,
            seg_offset,
            seg_len,
        }
    }

    pub fn cover(&self) -> &DifferenceCover {
        &self.dc
    }

    pub fn t(&self) -> usize {
        self.dc.t()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `D` in ascending order; segment `k` belongs to `residue_order()[k]`.
    pub fn residue_order(&self) -> &[u32] {
        &self.dc.members
    }

    #[inline]
    pub fn in_cover(&self, i: usize) -> bool {
        i >= 1 && i <= self.n && self.slot[self.dc.div.rem(i)] != NONE
    }

    /// Index of `i` within its residue's progression.
    #[inline]
    pub fn seg_rank(&self, i: usize) -> usize {
        let (q, r) = self.dc.div.div_rem(i);
        if r == 0 {
            q - 1
        } else {
            q
        }
    }

    /// Start of segment `k` inside the block code.
    pub fn seg_offset(&self, k: usize) -> usize {
        self.seg_offset[k] as usize
    }

    /// Number of defined t-blocks in segment `k`.
    pub fn seg_len(&self, k: usize) -> usize {
        self.seg_len[k] as usize
    }

    /// Segment index of a cover position's residue.
    #[inline]
    pub fn slot_of(&self, i: usize) -> usize {
        self.slot[self.dc.div.rem(i)] as usize
    }

    /// Whether `w[i..i+t-1]` fits in the text.
    #[inline]
    pub fn block_defined(&self, i: usize) -> bool {
        i + self.t() <= self.n + 1
    }

    /// Position of a cover position's block inside the block code.
    #[inline]
    pub fn code_position(&self, i: usize) -> usize {
        self.code_position_checked(i).expect("cover position")
    }

    /// Block code position of `i`, or `None` when `i` is outside the cover.
    #[inline]
    pub fn code_position_checked(&self, i: usize) -> Option<usize> {
        if i == 0 || i > self.n {
            return None;
        }
        let (q, r) = self.dc.div.div_rem(i);
        let slot = self.slot[r];
        if slot == NONE {
            return None;
        }
        let rank = if r == 0 { q - 1 } else { q };
        Some(self.seg_offset[slot as usize] as usize + rank)
    }

    /// Total block code length (blocks plus separators).
    pub fn code_len(&self) -> usize {
        self.seg_len
            .iter()
            .map(|&l| if l > 0 { l as usize + 1 } else { 0 })
            .sum()
    }

    /// Number of non-empty segments, i.e. separators in the code.
    pub fn separator_count(&self) -> usize {
        self.seg_len.iter().filter(|&&l| l > 0).count()
    }

    /// `|S(t)|`.
    pub fn size(&self) -> usize {
        let t = self.t();
        self.dc
            .members
            .iter()
            .map(|&x| {
                let first = first_position(x as usize, t);
                if first <= self.n {
                    (self.n - first) / t + 1
                } else {
                    0
                }
            })
            .sum()
    }

    /// Cover positions in code order: segment by segment, defined blocks only.
    pub fn blocks(&self) -> impl Iterator<Item = usize> + '_ {
        let t = self.t();
        self.dc
            .members
            .iter()
            .zip(&self.seg_len)
            .flat_map(move |(&x, &len)| {
                let first = first_position(x as usize, t);
                (0..len as usize).map(move |k| first + k * t)
            })
    }
}

#[inline]
fn first_position(residue: usize, t: usize) -> usize {
    if residue == 0 {
        t
    } else {
        residue
    }
}
