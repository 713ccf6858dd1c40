//! Elias-Fano encoding of monotone sequences.
//!
//! With `n` values below `m`, every value keeps its `⌈lg(m/n)⌉` low bits in a
//! packed array and stores its high part in unary in a bitmap of at most `2n`
//! bits: value `i` sets bit `(v_i >> low_width) + i`. Access selects the
//! `i`-th one bit of that bitmap.

use super::bits::{BitVec, RankSelect};
use super::wire::{words_for, Reader, Short, Writer};
use crate::error::CodecError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliasFano {
    len: usize,
    universe: u64,
    low_width: usize,
    low: BitVec,
    high: RankSelect,
}

/// Smallest `l` with `n · 2^l >= m`, i.e. `⌈lg(m/n)⌉` clamped at zero.
fn low_width(n: usize, m: u64) -> usize {
    if n == 0 {
        return 0;
    }
    let n = n as u128;
    let m = m as u128;
    let mut l = 0;
    while (n << l) < m {
        l += 1;
    }
    l
}

fn high_len(n: usize, m: u64, l: usize) -> usize {
    if n == 0 {
        0
    } else {
        n + ((m - 1) >> l) as usize + 1
    }
}

/// Sequential reader over an [`EliasFano`] sequence.
pub struct Iter<'a> {
    ef: &'a EliasFano,
    i: usize,
    word_idx: usize,
    /// Unconsumed one bits of the current high word.
    word: u64,
}

impl Iterator for Iter<'_> {
    type Item = u64;

    #[inline(always)]
    fn next(&mut self) -> Option<u64> {
        if self.i >= self.ef.len {
            return None;
        }
        let words = self.ef.high.bits().words();
        while self.word == 0 {
            self.word_idx += 1;
            self.word = words[self.word_idx];
        }
        let pos = (self.word_idx << 6) + self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        let l = self.ef.low_width;
        let v = ((pos - self.i) as u64) << l | self.ef.low.get_bits(self.i * l, l);
        self.i += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.ef.len.saturating_sub(self.i);
        (left, Some(left))
    }
}

impl EliasFano {
    /// Encodes non-decreasing `values`, each strictly below `universe`.
    pub fn build(values: &[u64], universe: u64) -> Result<Self, CodecError> {
        let n = values.len();
        for (i, w) in values.windows(2).enumerate() {
            if w[1] < w[0] {
                return Err(CodecError::NotMonotone(i + 1));
            }
        }
        if let Some(&last) = values.last() {
            if last >= universe {
                return Err(CodecError::OutsideUniverse {
                    value: last,
                    universe,
                });
            }
        }
        let l = low_width(n, universe);
        let mut low = BitVec::with_capacity(n * l);
        let mut high = BitVec::zeros(high_len(n, universe, l));
        for (i, &v) in values.iter().enumerate() {
            low.push_bits(v, l);
            high.set((v >> l) as usize + i, true);
        }
        Ok(Self {
            len: n,
            universe,
            low_width: l,
            low,
            high: RankSelect::new(high),
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    /// Value at `i`.
    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        let pos = self.high.select1(i).expect("one bit per value");
        let hi = (pos - i) as u64;
        (hi << self.low_width) | self.low.get_bits(i * self.low_width, self.low_width)
    }

    pub fn try_get(&self, i: usize) -> Result<u64, CodecError> {
        if i >= self.len {
            return Err(CodecError::IndexOutOfRange {
                index: i,
                len: self.len,
            });
        }
        Ok(self.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.iter_from(0)
    }

    /// Values from index `i` on. One select locates the start; the rest is
    /// a scan of the high bitmap.
    pub fn iter_from(&self, i: usize) -> Iter<'_> {
        let pos = if i < self.len {
            self.high.select1(i).expect("one bit per value")
        } else {
            0
        };
        let words = self.high.bits().words();
        let word = if i < self.len {
            words[pos >> 6] & (u64::MAX << (pos & 63))
        } else {
            0
        };
        Iter {
            ef: self,
            i,
            word_idx: pos >> 6,
            word,
        }
    }

    /// Bits of the low array plus the high bitmap, excluding select support.
    pub fn core_bits(&self) -> usize {
        self.low.len() + self.high.len()
    }

    /// `2n + n⌈lg(m/n)⌉`.
    pub fn core_bound(&self) -> usize {
        2 * self.len + self.len * self.low_width
    }

    pub fn write(&self, w: &mut Writer) {
        w.u64(self.len as u64);
        w.u64(self.universe);
        w.words(self.low.words());
        w.words(self.high.bits().words());
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        self.write(&mut w);
        w.into_inner()
    }

    pub fn read(r: &mut Reader<'_>) -> Result<Result<Self, CodecError>, Short> {
        let n = usize::try_from(r.u64()?).map_err(|_| Short)?;
        let universe = r.u64()?;
        if n > 0 && universe == 0 {
            return Ok(Err(CodecError::CorruptStream));
        }
        let l = low_width(n, universe);
        let low_bits = n.checked_mul(l).ok_or(Short)?;
        if low_bits / 64 > r.remaining() {
            return Err(Short);
        }
        let low = r.words(words_for(low_bits))?;
        let hl = high_len(n, universe, l);
        if hl / 64 > r.remaining() {
            return Err(Short);
        }
        let high = r.words(words_for(hl))?;
        let low = BitVec::from_words(low, low_bits).ok_or(Short)?;
        let high = BitVec::from_words(high, hl).ok_or(Short)?;
        if high.count_ones() != n {
            return Ok(Err(CodecError::CorruptStream));
        }
        Ok(Ok(Self {
            len: n,
            universe,
            low_width: l,
            low,
            high: RankSelect::new(high),
        }))
    }
}
