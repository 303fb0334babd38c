//! Packed-bit variant. The text is stored at `b = ⌈log₂ σ⌉` bits per symbol
//! in 64-bit words; ShortLCE becomes an xor of two word-aligned fetches, and
//! LongLCE runs over word-size bit blocks ranked by their integer values.

use std::mem::size_of;

use crate::blockcode::{build_blockcode, BlockCode, BlockRanks};
use crate::diffcover::{CoverIndex, DifferenceCover};
use crate::error::{Error, Result};
use crate::par;
use crate::text::Text;

const LEADING_ZEROS_BYTE: [u8; 256] = {
    let mut table = [0u8; 256];
    let mut v = 0;
    while v < 256 {
        table[v] = (v as u8).leading_zeros() as u8;
        v += 1;
    }
    table
};

/// Portable leading-zero count through a byte table.
pub fn leading_zeros_by_table(x: u64) -> u32 {
    let mut count = 0;
    for shift in (0..8).rev() {
        let byte = ((x >> (shift * 8)) & 0xff) as usize;
        if byte != 0 {
            return count + LEADING_ZEROS_BYTE[byte] as u32;
        }
        count += 8;
    }
    64
}

/// Bit-packed copy of a text, most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedText {
    words: Vec<u64>,
    bits: u32,
    n: usize,
    word_size: u32,
    /// Dense code of each text symbol.
    dense: Vec<u8>,
}

impl PackedText {
    /// Packs `text`, reading blocks of `word_size <= 64` bits.
    pub fn pack(text: &Text, word_size: u32) -> Result<Self> {
        if !(1..=64).contains(&word_size) {
            return Err(Error::ParamOutOfRange(format!(
                "word size {word_size} outside 1..=64"
            )));
        }
        let s = text.symbols();
        let mut present = [false; 256];
        for &c in s {
            present[c as usize] = true;
        }
        let mut dense = vec![0u8; 256];
        let mut sigma = 0usize;
        for (c, &p) in present.iter().enumerate() {
            if p {
                dense[c] = sigma as u8;
                sigma += 1;
            }
        }
        let bits = (usize::BITS - (sigma - 1).leading_zeros()).max(1);
        let n = s.len();
        let len_bits = n * bits as usize;
        let mut words = vec![0u64; len_bits.div_ceil(64) + 1];
        for (k, &c) in s.iter().enumerate() {
            let v = dense[c as usize] as u64;
            for b in 0..bits as usize {
                if v >> (bits as usize - 1 - b) & 1 == 1 {
                    let p = k * bits as usize + b;
                    words[p / 64] |= 1u64 << (63 - p % 64);
                }
            }
        }
        Ok(Self {
            words,
            bits,
            n,
            word_size,
            dense,
        })
    }

    pub(crate) fn from_parts(words: Vec<u64>, bits: u32, n: usize, word_size: u32, dense: Vec<u8>) -> Result<Self> {
        let len_bits = n * bits as usize;
        if dense.len() != 256 || words.len() != len_bits.div_ceil(64) + 1 || !(1..=64).contains(&word_size) {
            return Err(Error::Format("inconsistent packed text".into()));
        }
        Ok(Self {
            words,
            bits,
            n,
            word_size,
            dense,
        })
    }

    pub(crate) fn raw_parts(&self) -> (&[u64], &[u8]) {
        (&self.words, &self.dense)
    }

    /// Bits per symbol.
    pub fn bits_per_symbol(&self) -> u32 {
        self.bits
    }

    pub fn word_size(&self) -> u32 {
        self.word_size
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Length in bits.
    pub fn len_bits(&self) -> usize {
        self.n * self.bits as usize
    }

    /// Dense code of text symbol `c`.
    pub fn dense_code(&self, c: u8) -> u8 {
        self.dense[c as usize]
    }

    /// The 64 bits starting at bit position `p` (1-based), zero-padded.
    #[inline]
    pub fn fetch(&self, p: usize) -> u64 {
        let off = p - 1;
        let (w, r) = (off / 64, off % 64);
        let hi = self.words.get(w).copied().unwrap_or(0) << r;
        if r == 0 {
            hi
        } else {
            hi | self.words.get(w + 1).copied().unwrap_or(0) >> (64 - r)
        }
    }

    /// The `word_size`-bit block starting at `p`, right-aligned.
    #[inline]
    pub fn block(&self, p: usize) -> u64 {
        self.fetch(p) >> (64 - self.word_size)
    }

    /// Dense code of symbol `i` (1-based).
    pub fn symbol(&self, i: usize) -> u8 {
        (self.fetch((i - 1) * self.bits as usize + 1) >> (64 - self.bits)) as u8
    }

    /// `min(bitLCE(p, q), word_size)`; 0 past the end.
    #[inline]
    pub fn bit_short_lce(&self, p: usize, q: usize) -> usize {
        let len = self.len_bits();
        if p == 0 || q == 0 || p > len || q > len {
            return 0;
        }
        let eq = (self.fetch(p) ^ self.fetch(q)).leading_zeros() as usize;
        eq.min(self.word_size as usize).min(len - p.max(q) + 1)
    }

    pub fn heap_bytes(&self) -> usize {
        self.words.len() * size_of::<u64>() + self.dense.len()
    }
}

/// Symbol and bit LCE over a [`PackedText`].
#[derive(Debug, Clone)]
pub struct PackedLce {
    text: PackedText,
    bc: BlockCode,
}

impl PackedLce {
    pub fn build(text: &Text, word_size: u32) -> Result<Self> {
        let text = PackedText::pack(text, word_size)?;
        let cover = CoverIndex::build(DifferenceCover::build(word_size as usize), text.len_bits());
        let positions: Vec<usize> = cover.blocks().collect();
        let values = par::map_collect(&positions, |&p| text.block(p));
        let mut distinct = values.clone();
        par::sort_unstable(&mut distinct);
        distinct.dedup();
        let ranks = values
            .iter()
            .map(|v| distinct.binary_search(v).expect("value present") as u32 + 1)
            .collect();
        let bc = build_blockcode(&BlockRanks { ranks }, cover);
        Ok(Self { text, bc })
    }

    pub(crate) fn from_parts(text: PackedText, code: Vec<u32>) -> Result<Self> {
        let cover = CoverIndex::build(DifferenceCover::build(text.word_size as usize), text.len_bits());
        if code.len() != cover.code_len() {
            return Err(Error::Format("packed block code length mismatch".into()));
        }
        Ok(Self {
            bc: BlockCode::from_code(cover, code),
            text,
        })
    }

    pub fn text(&self) -> &PackedText {
        &self.text
    }

    pub fn blockcode(&self) -> &BlockCode {
        &self.bc
    }

    /// LCE of the bit suffixes at `p` and `q` (1-based bit positions).
    pub fn bit_lce(&self, p: usize, q: usize) -> Result<usize> {
        let len = self.text.len_bits();
        for x in [p, q] {
            if x == 0 || x > len {
                return Err(Error::OutOfRange { pos: x, n: len });
            }
        }
        Ok(self.bit_query(p, q))
    }

    fn bit_query(&self, p: usize, q: usize) -> usize {
        let len = self.text.len_bits();
        if p == q {
            return len - p + 1;
        }
        let w = self.text.word_size as usize;
        let l1 = self.text.bit_short_lce(p, q);
        if l1 < w {
            return l1;
        }
        if p.max(q) + 2 * w + 1 > len {
            let mut acc = l1;
            loop {
                let s = self.text.bit_short_lce(p + acc, q + acc);
                acc += s;
                if s < w {
                    return acc;
                }
            }
        }
        let delta = self.bc.cover().cover().h(p, q);
        let l2 = self
            .bc
            .long_lce(p + delta, q + delta)
            .expect("aligned positions lie in the cover");
        let skip = delta + w * l2;
        skip + self.text.bit_short_lce(p + skip, q + skip)
    }

    /// Symbol LCE: `⌊bitLCE / b⌋` at the symbols' first bits.
    pub fn packed_lce(&self, i: usize, j: usize) -> Result<usize> {
        let n = self.text.len();
        for x in [i, j] {
            if x == 0 || x > n {
                return Err(Error::OutOfRange { pos: x, n });
            }
        }
        if i == j {
            return Ok(n - i + 1);
        }
        let b = self.text.bits as usize;
        Ok(self.bit_query((i - 1) * b + 1, (j - 1) * b + 1) / b)
    }

    pub fn heap_bytes(&self) -> usize {
        self.text.heap_bytes() + self.bc.heap_bytes()
    }
}
