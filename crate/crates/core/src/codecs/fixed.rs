use super::bits::{bit_width, BitVec};
use crate::error::CodecError;

/// Packed array of integers with a fixed cell width of `⌊lg σ⌋ + 1` bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedWidthArray {
    width: usize,
    len: usize,
    bits: BitVec,
}

/// Cell width able to hold every value in `[0, sigma]`.
pub fn width_for(sigma: u64) -> usize {
    bit_width(sigma).max(1)
}

impl FixedWidthArray {
    /// An empty array whose cells hold values up to `sigma`.
    pub fn new(sigma: u64) -> Self {
        Self::with_width(width_for(sigma))
    }

    pub fn with_width(width: usize) -> Self {
        assert!((1..=64).contains(&width), "cell width must be in 1..=64");
        Self {
            width,
            len: 0,
            bits: BitVec::new(),
        }
    }

    pub fn with_capacity(sigma: u64, cap: usize) -> Self {
        let width = width_for(sigma);
        Self {
            width,
            len: 0,
            bits: BitVec::with_capacity(cap * width),
        }
    }

    /// Packs `values`, each of which must be at most `sigma`.
    pub fn pack<I>(values: I, sigma: u64) -> Result<Self, CodecError>
    where
        I: IntoIterator<Item = u64>,
    {
        let mut arr = Self::new(sigma);
        for v in values {
            arr.push(v)?;
        }
        Ok(arr)
    }

    pub(crate) fn from_raw(width: usize, len: usize, words: Vec<u64>) -> Option<Self> {
        if !(1..=64).contains(&width) {
            return None;
        }
        let bits = BitVec::from_words(words, len.checked_mul(width)?)?;
        Some(Self { width, len, bits })
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, v: u64) -> Result<(), CodecError> {
        if self.width < 64 && v >> self.width != 0 {
            return Err(CodecError::ValueTooWide {
                value: v,
                width: self.width,
            });
        }
        self.bits.push_bits(v, self.width);
        self.len += 1;
        Ok(())
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        self.bits.get_bits(i * self.width, self.width)
    }

    pub fn set(&mut self, i: usize, v: u64) -> Result<(), CodecError> {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        if self.width < 64 && v >> self.width != 0 {
            return Err(CodecError::ValueTooWide {
                value: v,
                width: self.width,
            });
        }
        self.bits.set_bits(i * self.width, self.width, v);
        Ok(())
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Copies cells `[start, start + len)` into `out`.
    pub fn extend_into(&self, start: usize, len: usize, out: &mut Vec<u64>) {
        assert!(
            start + len <= self.len,
            "range {start}+{len} out of bounds for length {}",
            self.len
        );
        let w = self.width;
        out.extend((start..start + len).map(|i| self.bits.get_bits(i * w, w)));
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub(crate) fn words(&self) -> &[u64] {
        self.bits.words()
    }

    pub fn size_in_bytes(&self) -> usize {
        self.bits.padded_bytes()
    }
}
