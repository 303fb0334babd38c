//! Encoding longest-common-extension index.
//!
//! [`build_index`] turns a text into an [`LceIndex`] that answers
//! `LCE(i, j)`, the length of the longest common prefix of the suffixes at
//! `i` and `j`, without keeping the text. Space is governed by the block
//! length `t`: a truncated suffix tree of depth `2t`, a navigation tree over
//! its leaves, and a rank string over `O(n/√t)` t-blocks.
//!
//! ```
//! use lcex::{build_index, BuildOptions, SentinelPolicy, Text};
//!
//! let text = Text::load(b"abababcabababcabababcd", SentinelPolicy::Auto)?;
//! let index = build_index(&text, 4, BuildOptions::default())?;
//! assert_eq!(index.lce(1, 8)?, 14);
//! # Ok::<(), lcex::Error>(())
//! ```

pub mod blockcode;
pub mod corpus;
pub mod diffcover;
mod error;
pub mod format;
pub mod lce;
pub mod lz77;
pub mod navtree;
pub mod oracle;
pub mod packed;
mod par;
pub mod rmq;
pub mod suffix;
pub mod text;
pub mod tst;

pub use blockcode::{BlockCode, BlockRanks};
pub use diffcover::{CoverIndex, DifferenceCover};
pub use error::{Error, Result};
pub use lce::{build_index, tune_tau, BuildOptions, LceIndex, QueryPath, QueryTrace, SpaceStats, TuneReport};
pub use lz77::{lz77_factorize, Factor, LzFactorization};
pub use navtree::{AncestorKind, NavTree};
pub use oracle::{naive_lce, IsaOracle};
pub use packed::{PackedLce, PackedText};
pub use text::{SentinelPolicy, Text};
pub use tst::{build_tst, TruncatedSuffixTree};
