//! Synthetic repetitive corpora: a seed repeated many times with random
//! point mutations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Concatenates `copies` copies of `seed`, replacing each byte independently
/// with probability `rate` by a uniformly random byte. The result depends
/// only on the arguments.
pub fn gen_repetitive(seed: &[u8], copies: usize, rate: f64, rng_seed: u64) -> Vec<u8> {
    assert!(
        (0.0..=1.0).contains(&rate),
        "mutation rate must lie in [0, 1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut out = Vec::with_capacity(seed.len() * copies);
    for _ in 0..copies {
        out.extend_from_slice(seed);
    }
    if rate > 0.0 {
        for b in out.iter_mut() {
            if rng.gen_bool(rate) {
                *b = rng.gen();
            }
        }
    }
    out
}

/// `len` uniformly random bytes drawn from the first `sigma` byte values.
pub fn random_bytes(len: usize, sigma: u16, rng_seed: u64) -> Vec<u8> {
    assert!(
        (1..=256).contains(&sigma),
        "alphabet size must be in 1..=256"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    (0..len).map(|_| rng.gen_range(0..sigma) as u8).collect()
}

/// Fibonacci word over `a`/`b` truncated to `len` bytes.
pub fn fibonacci_word(len: usize) -> Vec<u8> {
    let (mut prev, mut cur) = (b"a".to_vec(), b"ab".to_vec());
    while cur.len() < len {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = cur;
        cur = next;
    }
    cur.truncate(len);
    cur
}

/// The bytes of `data` in a random order.
pub fn shuffled(data: &[u8], rng_seed: u64) -> Vec<u8> {
    use rand::seq::SliceRandom;
    let mut out = data.to_vec();
    out.shuffle(&mut ChaCha8Rng::seed_from_u64(rng_seed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_without_mutation() {
        let seed = random_bytes(1000, 256, 1);
        assert_eq!(gen_repetitive(&seed, 1, 0.0, 9), seed);
        assert_eq!(gen_repetitive(&seed, 3, 0.0, 9).len(), 3000);
    }

    #[test]
    fn mutation_rate_is_respected() {
        let seed = random_bytes(10_000, 256, 2);
        let out = gen_repetitive(&seed, 100, 0.001, 3);
        let changed = out
            .chunks(seed.len())
            .flat_map(|c| c.iter().zip(&seed).filter(|(a, b)| a != b))
            .count();
        // 1000 expected draws, a replacement keeps the byte with p = 1/256
        assert!((850..=1150).contains(&changed), "{changed}");
        assert_eq!(out, gen_repetitive(&seed, 100, 0.001, 3));
    }

    #[test]
    fn full_rate_randomizes() {
        let seed = vec![0u8; 10_000];
        let out = gen_repetitive(&seed, 1, 1.0, 4);
        let zeros = out.iter().filter(|&&b| b == 0).count();
        assert!(zeros < 100);
    }

    #[test]
    fn fibonacci_prefix() {
        assert_eq!(fibonacci_word(8), b"abaababa");
    }
}
