//! Input strings with a unique terminal sentinel and 1-based addressing.

use crate::error::{Error, Result};

/// How the terminal sentinel is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SentinelPolicy {
    /// Remap the bytes present onto `1..sigma` and use `0` as sentinel, so
    /// the sentinel is the lexicographically smallest symbol.
    #[default]
    Auto,
    /// Append the given byte as-is. It must not occur in the input.
    Explicit(u8),
}

/// A byte string terminated by a sentinel that occurs nowhere else.
///
/// Symbols are stored as internal codes. Under [`SentinelPolicy::Auto`] the
/// codes are order-preserving ranks of the original bytes; under
/// [`SentinelPolicy::Explicit`] they are the original bytes themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    codes: Vec<u8>,
    sigma: usize,
    sentinel: u8,
    /// `decode[c]` is the original byte for code `c` (identity when explicit).
    decode: Vec<u8>,
}

impl Text {
    /// Appends a sentinel to `raw` according to `policy`.
    pub fn load(raw: &[u8], policy: SentinelPolicy) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut present = [false; 256];
        for &b in raw {
            present[b as usize] = true;
        }
        match policy {
            SentinelPolicy::Auto => {
                let distinct = present.iter().filter(|&&p| p).count();
                if distinct == 256 {
                    return Err(Error::AlphabetOverflow);
                }
                let mut encode = [0u8; 256];
                let mut decode = vec![0u8];
                for b in 0..256usize {
                    if present[b] {
                        encode[b] = decode.len() as u8;
                        decode.push(b as u8);
                    }
                }
                let mut codes: Vec<u8> = raw.iter().map(|&b| encode[b as usize]).collect();
                codes.push(0);
                Ok(Self {
                    codes,
                    sigma: distinct + 1,
                    sentinel: 0,
                    decode,
                })
            }
            SentinelPolicy::Explicit(s) => {
                if present[s as usize] {
                    return Err(Error::SentinelCollision(s));
                }
                let mut codes = raw.to_vec();
                codes.push(s);
                let distinct = present.iter().filter(|&&p| p).count();
                Ok(Self {
                    codes,
                    sigma: distinct + 1,
                    sentinel: s,
                    decode: (0..=255u8).collect(),
                })
            }
        }
    }

    /// Length including the sentinel.
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Number of distinct symbols, sentinel included.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// The sentinel as an internal code.
    pub fn sentinel(&self) -> u8 {
        self.sentinel
    }

    /// Internal symbol codes, 0-based, sentinel last.
    pub fn symbols(&self) -> &[u8] {
        &self.codes
    }

    /// Original byte for an internal code. The sentinel decodes to its own
    /// code value.
    pub fn decode_symbol(&self, code: u8) -> u8 {
        if code == self.sentinel {
            code
        } else {
            self.decode[code as usize]
        }
    }

    /// Symbol at 1-based position `i`, as an internal code.
    pub fn at(&self, i: usize) -> Result<u8> {
        self.check(i)?;
        Ok(self.codes[i - 1])
    }

    /// `w[i..=j]` (1-based, inclusive) in original bytes.
    pub fn substring(&self, i: usize, j: usize) -> Result<Vec<u8>> {
        self.check(i)?;
        self.check(j)?;
        if i > j {
            return Err(Error::OutOfRange { pos: i, n: j });
        }
        Ok(self.codes[i - 1..j]
            .iter()
            .map(|&c| self.decode_symbol(c))
            .collect())
    }

    pub(crate) fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.codes.len() {
            Err(Error::OutOfRange {
                pos: i,
                n: self.codes.len(),
            })
        } else {
            Ok(())
        }
    }
}
