//! Text model, suffix-type classification and LMS factorization.
//!
//! Internally a byte `b` becomes symbol `b + 1` and a sentinel symbol `0` is
//! appended, so every text handed to the suffix sorter ends with a unique
//! smallest symbol.

use std::ops::Range;

use crate::codecs::BitVec;
use crate::error::{Error, Result};
use crate::index::Index;

/// Internal value of the sentinel.
pub const SENTINEL: u64 = 0;

/// Byte input viewed with a virtual trailing sentinel.
#[derive(Clone, Copy, Debug)]
pub struct Text<'a> {
    bytes: &'a [u8],
}

impl<'a> Text<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Self { bytes }
    }

    pub fn bytes(&self) -> &'a [u8] {
        self.bytes
    }

    /// Length including the sentinel.
    pub fn len(&self) -> usize {
        self.bytes.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Internal symbols: shifted bytes followed by the sentinel.
    pub fn symbols<I: Index>(&self) -> Vec<I> {
        let mut out = Vec::with_capacity(self.len());
        out.extend(self.bytes.iter().map(|&b| I::from_usize(b as usize + 1)));
        out.push(I::from_usize(SENTINEL as usize));
        out
    }

    /// Largest internal symbol value present (0 for the empty text).
    pub fn max_symbol(&self) -> u64 {
        self.bytes.iter().max().map_or(0, |&b| b as u64 + 1)
    }
}

/// One bit per position: set for S-type, clear for L-type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuffixTypes {
    bits: BitVec,
}

impl SuffixTypes {
    #[inline]
    pub fn is_s(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    #[inline]
    pub fn is_l(&self, i: usize) -> bool {
        !self.bits.get(i)
    }

    /// Leftmost-S position: S-type with an L-type predecessor.
    #[inline]
    pub fn is_lms(&self, i: usize) -> bool {
        i > 0 && self.bits.get(i) && !self.bits.get(i - 1)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Renders the map as a string of `L`/`S`.
    pub fn to_type_string(&self) -> String {
        self.bits
            .iter()
            .map(|s| if s { 'S' } else { 'L' })
            .collect()
    }
}

/// Classifies every suffix in a single right-to-left scan.
pub fn classify_types<I: Index>(text: &[I]) -> Result<SuffixTypes> {
    let n = text.len();
    if n == 0 {
        return Err(Error::EmptyText);
    }
    let mut bits = BitVec::zeros(n);
    bits.set(n - 1, true);
    let mut next_s = true;
    for i in (0..n - 1).rev() {
        let s = text[i] < text[i + 1] || (text[i] == text[i + 1] && next_s);
        if s {
            bits.set(i, true);
        }
        next_s = s;
    }
    Ok(SuffixTypes { bits })
}

/// Ascending LMS positions.
pub fn lms_positions(types: &SuffixTypes) -> Vec<usize> {
    (1..types.len()).filter(|&i| types.is_lms(i)).collect()
}

/// Split of a text into a leading prefix and factors starting at LMS positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// `[0, first LMS)`; empty only for a text made of the sentinel alone.
    pub prefix: Range<usize>,
    /// Factor `k` spans from its LMS position up to the next one; the last
    /// factor ends at the end of the text.
    pub factors: Vec<Range<usize>>,
}

impl Factorization {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Cuts the text at its LMS positions so that prefix and factors tile it.
pub fn lms_factorize(text_len: usize, types: &SuffixTypes) -> Factorization {
    debug_assert_eq!(text_len, types.len());
    let lms = lms_positions(types);
    if lms.is_empty() {
        // only the lone sentinel has no LMS position
        return Factorization {
            prefix: 0..0,
            factors: std::iter::once(0..text_len).collect(),
        };
    }
    let mut factors = Vec::with_capacity(lms.len());
    for (k, &start) in lms.iter().enumerate() {
        let end = lms.get(k + 1).copied().unwrap_or(text_len);
        factors.push(start..end);
    }
    Factorization {
        prefix: 0..lms[0],
        factors,
    }
}
