mod common;

use common::{naive_lcp, naive_sa, structured_texts, with_sentinel};
use gcis::corpus::random_bytes;
use gcis::sais::suffix_array_of_bytes;
use gcis::{compress, decompress_with_sa, decompress_with_sa_lcp};
use proptest::prelude::*;

fn check(text: &[u8]) {
    let art = decompress_with_sa_lcp::<u64>(&compress(text)).unwrap();
    let sa = naive_sa(text);
    assert_eq!(art.text, text);
    assert_eq!(art.sa, sa);
    assert_eq!(art.lcp.unwrap(), naive_lcp(text, &sa));
}

#[test]
fn exhaustive_binary_strings() {
    for len in 0..=12 {
        for bits in 0u32..1 << len {
            let s: Vec<u8> = (0..len).map(|i| b'a' + ((bits >> i) & 1) as u8).collect();
            check(&s);
        }
    }
}

#[test]
fn random_and_structured_up_to_ten_thousand() {
    let mut seed = 100;
    for sigma in [2u16, 4, 16, 256] {
        for len in [10usize, 500, 10_000] {
            seed += 1;
            check(&random_bytes(len, sigma, seed));
        }
    }
    for (_, text) in structured_texts() {
        if text.len() <= 10_000 {
            check(&text);
        }
    }
}

#[test]
fn large_text_matches_direct_sorter_and_sampled_lcp() {
    let text = random_bytes(1_000_000, 4, 9);
    let art = decompress_with_sa_lcp::<u32>(&compress(&text)).unwrap();
    assert_eq!(art.sa, suffix_array_of_bytes::<u32>(&text).unwrap());
    let t = with_sentinel(&text);
    let lcp = art.lcp.unwrap();
    for i in (1..art.sa.len()).step_by(997) {
        let (a, b) = (art.sa[i - 1] as usize, art.sa[i] as usize);
        let h = lcp[i] as usize;
        assert_eq!(t[a..a + h], t[b..b + h]);
        assert!(t[a + h] < t[b + h]);
    }
}

#[test]
fn plain_sa_skips_lcp() {
    let art = decompress_with_sa::<u32>(&compress(b"mississippi")).unwrap();
    assert!(art.lcp.is_none());
    assert_eq!(art.sa, vec![11, 10, 7, 4, 1, 0, 9, 8, 6, 3, 5, 2]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matches_oracle(text in prop::collection::vec(prop_oneof![0u8..2, 0u8..5, any::<u8>()], 0..600)) {
        check(&text);
    }
}
