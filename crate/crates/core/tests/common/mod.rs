//! Brute-force oracles and corpus helpers shared by the integration tests.
#![allow(dead_code)]

use gcis::codecs::EliasFano;
use gcis::corpus::{fibonacci_word, gen_repetitive, random_bytes};
use gcis::{compress_with_stats, Extractor, Grammar};

/// Suffix array by comparison sort of the text with its sentinel.
pub fn naive_sa(bytes: &[u8]) -> Vec<u64> {
    let t = with_sentinel(bytes);
    let mut sa: Vec<usize> = (0..t.len()).collect();
    sa.sort_by(|&a, &b| t[a..].cmp(&t[b..]));
    sa.into_iter().map(|p| p as u64).collect()
}

/// LCP array by direct comparison of neighbouring suffixes.
pub fn naive_lcp(bytes: &[u8], sa: &[u64]) -> Vec<u64> {
    let t = with_sentinel(bytes);
    let mut lcp = vec![0u64; sa.len()];
    for i in 1..sa.len() {
        lcp[i] = common_prefix(&t, sa[i - 1] as usize, sa[i] as usize) as u64;
    }
    lcp
}

pub fn with_sentinel(bytes: &[u8]) -> Vec<u16> {
    let mut t: Vec<u16> = bytes.iter().map(|&b| b as u16 + 1).collect();
    t.push(0);
    t
}

pub fn common_prefix(t: &[u16], a: usize, b: usize) -> usize {
    t[a..]
        .iter()
        .zip(&t[b..])
        .take_while(|(x, y)| x == y)
        .count()
}

/// `2n + n⌈lg(m/n)⌉`, computed without the codec's helpers.
pub fn ef_bound(n: usize, m: u64) -> usize {
    if n == 0 {
        return 0;
    }
    let ratio = (m as f64 / n as f64).log2().ceil().max(0.0) as usize;
    2 * n + n * ratio
}

/// Checks the per-level size invariants and the reset backtracking bound,
/// returning the grammar.
pub fn compress_checked(bytes: &[u8]) -> Grammar {
    let (g, stats) = compress_with_stats(bytes);
    for s in &stats {
        assert!(s.reduced_len <= s.text_len / 2, "level shrinks by half");
        assert!(
            s.lcp_sum <= s.text_len as u64,
            "lcp sum bounded by level length"
        );
        assert!(
            s.suffix_sum <= s.text_len as u64,
            "suffix sum bounded by level length"
        );
    }
    g
}

pub fn check_random_access_form(g: &Grammar) -> Extractor {
    let ex = Extractor::new(g).unwrap();
    let k = ex.period();
    for (j, lv) in ex.levels().iter().enumerate() {
        for ef in [lv.lcp_sums(), lv.suffix_sums()] {
            check_ef(ef);
        }
        for i in 0..lv.rule_count() {
            let (_, back) = ex.expand_rule_traced(j, i as u64).unwrap();
            assert!(back < k, "backtrack {back} at level {j} rule {i}");
        }
    }
    ex
}

pub fn check_ef(ef: &EliasFano) {
    assert!(ef.core_bits() <= ef_bound(ef.len(), ef.universe()));
}

/// The structured texts of the suite.
pub fn structured_texts() -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    for (name, period) in [
        ("period-1", 1usize),
        ("period-2", 2),
        ("period-3", 3),
        ("period-7", 7),
        ("period-64", 64),
    ] {
        let unit = random_bytes(period, 256, period as u64);
        for len in [1000usize, 100_000] {
            out.push((
                format!("{name}-{len}"),
                unit.iter().cycle().take(len).copied().collect(),
            ));
        }
    }
    for len in [10usize, 1000, 50_000, 500_000] {
        out.push((format!("all-equal-{len}"), vec![b'a'; len]));
    }
    for len in [100usize, 5000, 100_000, 1_000_000] {
        out.push((format!("fibonacci-{len}"), fibonacci_word(len)));
    }
    out.push((
        "zeros-with-ff".into(),
        [vec![0u8; 3000], vec![255u8; 3000], vec![0u8; 3000]].concat(),
    ));
    out.push((
        "repetitive-small".into(),
        gen_repetitive(&random_bytes(500, 4, 77), 40, 0.01, 78),
    ));
    out
}
