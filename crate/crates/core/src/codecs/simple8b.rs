//! Simple8b word-aligned packing.
//!
//! Each 64-bit word carries a 4-bit selector in its least significant bits
//! followed by a 60-bit payload. Selectors 0 and 1 encode runs of 240 and 120
//! zeros; the remaining fourteen pack `count` values of `bits` bits each.

use crate::error::CodecError;

/// `(count, bits)` for each selector.
pub const SELECTORS: [(usize, u32); 16] = [
    (240, 0),
    (120, 0),
    (60, 1),
    (30, 2),
    (20, 3),
    (15, 4),
    (12, 5),
    (10, 6),
    (8, 7),
    (7, 8),
    (6, 10),
    (5, 12),
    (4, 15),
    (3, 20),
    (2, 30),
    (1, 60),
];

pub const MAX_VALUE: u64 = (1 << 60) - 1;

/// A Simple8b-encoded sequence. The value count is kept alongside the words
/// because the last word may be padded with zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Simple8bStream {
    words: Vec<u64>,
    len: usize,
}

impl Simple8bStream {
    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        Self { words, len }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn decode(&self) -> Result<Vec<u64>, CodecError> {
        decode(&self.words, self.len)
    }
}

#[inline]
fn selector_fits(values: &[u64], sel: usize) -> bool {
    let (count, bits) = SELECTORS[sel];
    if bits == 0 {
        // zero runs are only used when the whole run is present
        values.len() >= count && values[..count].iter().all(|&v| v == 0)
    } else {
        let take = count.min(values.len());
        let limit = 1u64 << bits;
        values[..take].iter().all(|&v| v < limit)
    }
}

/// Greedy longest-fit encoding: each word uses the first selector in table
/// order whose run fits the upcoming values.
pub fn encode(values: &[u64]) -> Result<Simple8bStream, CodecError> {
    if let Some(&v) = values.iter().find(|&&v| v > MAX_VALUE) {
        return Err(CodecError::ValueTooLarge(v));
    }
    let mut words = Vec::with_capacity(values.len() / 4 + 1);
    let mut rest = values;
    while !rest.is_empty() {
        let sel = (0..SELECTORS.len())
            .find(|&s| selector_fits(rest, s))
            .expect("selector 15 always fits a value below 2^60");
        let (count, bits) = SELECTORS[sel];
        let take = count.min(rest.len());
        let mut word = sel as u64;
        if bits > 0 {
            for (k, &v) in rest[..take].iter().enumerate() {
                word |= v << (4 + k as u32 * bits);
            }
        }
        words.push(word);
        rest = &rest[take..];
    }
    Ok(Simple8bStream {
        words,
        len: values.len(),
    })
}

/// Decodes exactly `len` values from `words`.
pub fn decode(words: &[u64], len: usize) -> Result<Vec<u64>, CodecError> {
    if len > words.len().saturating_mul(240) {
        return Err(CodecError::CorruptStream);
    }
    let mut out = Vec::with_capacity(len);
    for &word in words {
        if out.len() >= len {
            // words left over after the last value
            return Err(CodecError::CorruptStream);
        }
        let sel = (word & 0xf) as usize;
        let (count, bits) = SELECTORS[sel];
        let take = count.min(len - out.len());
        if bits == 0 {
            if word >> 4 != 0 {
                return Err(CodecError::CorruptStream);
            }
            out.resize(out.len() + take, 0);
        } else {
            let payload = word >> 4;
            let m = (1u64 << bits) - 1;
            for k in 0..take {
                out.push((payload >> (k as u32 * bits)) & m);
            }
        }
    }
    if out.len() != len {
        return Err(CodecError::CorruptStream);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_runs_take_one_word() {
        let s = encode(&[0; 240]).unwrap();
        assert_eq!(s.words().len(), 1);
        assert_eq!(s.words()[0] & 0xf, 0);
        let s = encode(&[0; 120]).unwrap();
        assert_eq!(s.words().len(), 1);
        assert_eq!(s.words()[0] & 0xf, 1);
    }

    #[test]
    fn zero_run_selector_decodes_to_120_zeros() {
        assert_eq!(decode(&[1], 120).unwrap(), vec![0; 120]);
    }

    #[test]
    fn empty() {
        let s = encode(&[]).unwrap();
        assert!(s.words().is_empty());
        assert_eq!(decode(&[], 0).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn small_values_use_two_bit_selector() {
        let s = encode(&[1, 2, 3]).unwrap();
        assert_eq!(s.words().len(), 1);
        assert_eq!(SELECTORS[(s.words()[0] & 0xf) as usize], (30, 2));
        assert_eq!(s.decode().unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn rejects_values_over_60_bits() {
        assert_eq!(
            encode(&[1, 1 << 60]),
            Err(CodecError::ValueTooLarge(1 << 60))
        );
        assert!(encode(&[MAX_VALUE]).is_ok());
    }

    #[test]
    fn corrupt_streams() {
        // too few words
        assert_eq!(decode(&[15 | (5 << 4)], 2), Err(CodecError::CorruptStream));
        // trailing word
        assert_eq!(decode(&[15, 15], 1), Err(CodecError::CorruptStream));
        // zero-run word with payload bits set
        assert_eq!(
            decode(&[1 | (1 << 10)], 120),
            Err(CodecError::CorruptStream)
        );
    }

    fn mixed() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(
            prop_oneof![
                4 => Just(0u64),
                3 => 0u64..16,
                2 => 0u64..100_000,
                1 => 0u64..=MAX_VALUE,
            ],
            0..1200,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn roundtrip(values in mixed()) {
            let s = encode(&values).unwrap();
            prop_assert_eq!(s.decode().unwrap(), values);
        }
    }
}
