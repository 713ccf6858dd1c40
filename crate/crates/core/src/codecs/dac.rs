//! Directly Addressable Codes.
//!
//! A value is cut into `b`-bit chunks, low chunk first. Layer `k` holds the
//! `k`-th chunk of every value that has one, plus a continuation bit that is
//! set when a further chunk follows. Rank on the continuation bits maps a
//! slot to its slot in the next layer.

use super::bits::{bit_width, BitVec, RankSelect};
use super::wire::{words_for, Reader, Short, Writer};
use crate::error::CodecError;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Layer {
    chunks: BitVec,
    more: RankSelect,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DacArray {
    block: usize,
    len: usize,
    layers: Vec<Layer>,
}

impl DacArray {
    pub fn build(values: &[u64], block: usize) -> Result<Self, CodecError> {
        if !(1..=64).contains(&block) {
            return Err(CodecError::BadBlockWidth(block));
        }
        let chunks_of = |v: u64| bit_width(v).div_ceil(block).max(1);
        let depth = values.iter().map(|&v| chunks_of(v)).max().unwrap_or(0);
        let mut layers = Vec::with_capacity(depth);
        let mut current: Vec<u64> = values.to_vec();
        for _ in 0..depth {
            let mut chunks = BitVec::with_capacity(current.len() * block);
            let mut more = BitVec::with_capacity(current.len());
            let mut next = Vec::new();
            for &v in &current {
                chunks.push_bits(v, block);
                let rest = if block == 64 { 0 } else { v >> block };
                more.push(rest != 0);
                if rest != 0 {
                    next.push(rest);
                }
            }
            layers.push(Layer {
                chunks,
                more: RankSelect::new(more),
            });
            current = next;
        }
        Ok(Self {
            block,
            len: values.len(),
            layers,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn block_width(&self) -> usize {
        self.block
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    /// Continuation bits of layer `k`.
    pub fn continuation_bits(&self, k: usize) -> &BitVec {
        self.layers[k].more.bits()
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        let mut slot = i;
        let mut value = 0u64;
        let mut shift = 0;
        for layer in &self.layers {
            value |= layer.chunks.get_bits(slot * self.block, self.block) << shift;
            if !layer.more.get(slot) {
                break;
            }
            slot = layer.more.rank1(slot);
            shift += self.block;
        }
        value
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
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn write(&self, w: &mut Writer) {
        w.u8(self.layers.len() as u8);
        w.pad8();
        for layer in &self.layers {
            w.u64(layer.chunks.len() as u64);
            w.words(layer.chunks.words());
            w.u64(layer.more.len() as u64);
            w.words(layer.more.bits().words());
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        self.write(&mut w);
        w.into_inner()
    }

    /// Reads an array written by [`DacArray::write`]; the reader must sit on
    /// an 8-byte boundary. The block width is recovered from layer 0.
    pub fn read(r: &mut Reader<'_>) -> Result<Result<Self, CodecError>, Short> {
        let depth = r.u8()? as usize;
        r.skip_pad8()?;
        let mut layers = Vec::with_capacity(depth);
        let mut block = 0;
        let mut len = 0;
        let mut expected = 0;
        for k in 0..depth {
            let chunk_bits = usize::try_from(r.u64()?).map_err(|_| Short)?;
            if chunk_bits / 64 > r.remaining() {
                return Err(Short);
            }
            let chunks = r.words(words_for(chunk_bits))?;
            let more_bits = usize::try_from(r.u64()?).map_err(|_| Short)?;
            if more_bits / 64 > r.remaining() {
                return Err(Short);
            }
            let more = r.words(words_for(more_bits))?;
            if k == 0 {
                if more_bits == 0 || chunk_bits % more_bits != 0 {
                    return Ok(Err(CodecError::CorruptStream));
                }
                block = chunk_bits / more_bits;
                if !(1..=64).contains(&block) {
                    return Ok(Err(CodecError::CorruptStream));
                }
                len = more_bits;
                expected = more_bits;
            }
            if more_bits != expected || chunk_bits != more_bits * block {
                return Ok(Err(CodecError::CorruptStream));
            }
            let chunks = BitVec::from_words(chunks, chunk_bits).ok_or(Short)?;
            let more = BitVec::from_words(more, more_bits).ok_or(Short)?;
            expected = more.count_ones();
            layers.push(Layer {
                chunks,
                more: RankSelect::new(more),
            });
        }
        // the last layer cannot announce further chunks
        if depth > 0 && expected != 0 {
            return Ok(Err(CodecError::CorruptStream));
        }
        Ok(Ok(Self {
            block: if depth == 0 { 4 } else { block },
            len,
            layers,
        }))
    }
}
