//! Plain bit vectors and rank/select support.

/// Growable bit vector stored LSB-first in 64-bit words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    /// A vector of `len` zero bits.
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_words(words: Vec<u64>, len: usize) -> Option<Self> {
        if words.len() != len.div_ceil(64) {
            return None;
        }
        let mut bv = Self { words, len };
        bv.clear_tail();
        Some(bv)
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut bv = Self::new();
        for b in bits {
            bv.push(b);
        }
        bv
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if bit {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        if self.len & 63 == 0 {
            self.words.push(0);
        }
        if bit {
            self.words[self.len >> 6] |= 1 << (self.len & 63);
        }
        self.len += 1;
    }

    /// Reads `width` (≤ 64) bits starting at bit `pos`.
    #[inline]
    pub fn get_bits(&self, pos: usize, width: usize) -> u64 {
        debug_assert!(width <= 64 && pos + width <= self.len);
        if width == 0 {
            return 0;
        }
        let word = pos >> 6;
        let off = pos & 63;
        let mut v = self.words[word] >> off;
        if off + width > 64 {
            v |= self.words[word + 1] << (64 - off);
        }
        v & mask(width)
    }

    /// Overwrites `width` bits starting at bit `pos` with the low bits of `value`.
    #[inline]
    pub fn set_bits(&mut self, pos: usize, width: usize, value: u64) {
        debug_assert!(width <= 64 && pos + width <= self.len);
        if width == 0 {
            return;
        }
        let value = value & mask(width);
        let word = pos >> 6;
        let off = pos & 63;
        self.words[word] = (self.words[word] & !(mask(width) << off)) | (value << off);
        if off + width > 64 {
            let spill = off + width - 64;
            let hi = value >> (64 - off);
            self.words[word + 1] = (self.words[word + 1] & !mask(spill)) | hi;
        }
    }

    /// Appends the low `width` bits of `value`.
    pub fn push_bits(&mut self, value: u64, width: usize) {
        let pos = self.len;
        self.len += width;
        self.words.resize(self.len.div_ceil(64), 0);
        self.set_bits(pos, width, value);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Number of bytes of the 8-byte padded word representation.
    pub fn padded_bytes(&self) -> usize {
        self.words.len() * 8
    }

    fn clear_tail(&mut self) {
        if self.len & 63 != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= mask(self.len & 63);
            }
        }
    }
}

#[inline]
pub(crate) fn mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Bit length of `v`, with `bit_width(0) == 0`.
#[inline]
pub fn bit_width(v: u64) -> usize {
    (64 - v.leading_zeros()) as usize
}

const BLOCK_WORDS: usize = 8;
const SELECT_SAMPLE: usize = 512;

/// Rank/select index over an immutable [`BitVec`].
///
/// Rank uses cumulative counts per 512-bit block. Select samples the block
/// holding every 512th one bit and finishes with a short search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSelect {
    bits: BitVec,
    block_ranks: Vec<u64>,
    select_samples: Vec<u32>,
    ones: usize,
}

impl RankSelect {
    pub fn new(bits: BitVec) -> Self {
        let nblocks = bits.words.len().div_ceil(BLOCK_WORDS);
        let mut block_ranks = Vec::with_capacity(nblocks + 1);
        let mut select_samples = Vec::new();
        let mut acc = 0usize;
        for b in 0..nblocks {
            block_ranks.push(acc as u64);
            let lo = b * BLOCK_WORDS;
            let hi = (lo + BLOCK_WORDS).min(bits.words.len());
            let cnt: usize = bits.words[lo..hi]
                .iter()
                .map(|w| w.count_ones() as usize)
                .sum();
            // blocks containing the one with rank k * SELECT_SAMPLE
            while select_samples.len() * SELECT_SAMPLE < acc + cnt {
                select_samples.push(b as u32);
            }
            acc += cnt;
        }
        block_ranks.push(acc as u64);
        Self {
            bits,
            block_ranks,
            select_samples,
            ones: acc,
        }
    }

    #[inline]
    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    /// Number of one bits in `[0, pos)`.
    #[inline]
    pub fn rank1(&self, pos: usize) -> usize {
        debug_assert!(pos <= self.bits.len());
        let word = pos >> 6;
        let block = word / BLOCK_WORDS;
        let mut r = self.block_ranks[block] as usize;
        for w in &self.bits.words[block * BLOCK_WORDS..word] {
            r += w.count_ones() as usize;
        }
        if pos & 63 != 0 {
            r += (self.bits.words[word] & mask(pos & 63)).count_ones() as usize;
        }
        r
    }

    /// Position of the one bit with zero-based rank `k`.
    pub fn select1(&self, k: usize) -> Option<usize> {
        if k >= self.ones {
            return None;
        }
        let sample = k / SELECT_SAMPLE;
        let lo = self.select_samples[sample] as usize;
        let hi = self
            .select_samples
            .get(sample + 1)
            .map_or(self.block_ranks.len() - 1, |&b| b as usize + 1);
        // last block in [lo, hi) whose starting rank is <= k
        let off = self.block_ranks[lo..hi].partition_point(|&r| r as usize <= k);
        let block = lo + off - 1;
        let mut remaining = k - self.block_ranks[block] as usize;
        let start = block * BLOCK_WORDS;
        for (i, &w) in self.bits.words[start..].iter().enumerate() {
            let c = w.count_ones() as usize;
            if remaining < c {
                return Some(((start + i) << 6) + select_in_word(w, remaining));
            }
            remaining -= c;
        }
        unreachable!("rank directory out of sync with bits")
    }
}

#[inline]
fn select_in_word(w: u64, mut k: usize) -> usize {
    let mut shift = 0;
    loop {
        let c = ((w >> shift) & 0xff).count_ones() as usize;
        if k < c {
            break;
        }
        k -= c;
        shift += 8;
    }
    let mut b = w >> shift;
    for _ in 0..k {
        b &= b - 1;
    }
    shift + b.trailing_zeros() as usize
}
