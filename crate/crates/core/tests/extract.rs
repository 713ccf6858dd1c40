mod common;

use common::{check_random_access_form, compress_checked, structured_texts};
use gcis::corpus::{gen_repetitive, random_bytes};
use gcis::{Error, Extractor};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

/// Extracts random slices and checks them and the window invariants.
fn check_queries(text: &[u8], queries: usize, seed: u64) {
    let g = compress_checked(text);
    let ex = check_random_access_form(&g);
    let n = text.len() as u64;
    let ps = ex.prefix_sums();
    assert_eq!(ps[0], 0);
    assert_eq!(*ps.last().unwrap(), n + 1);
    let min_child = ps.windows(2).map(|w| w[1] - w[0]).min().unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    for _ in 0..queries {
        let l = rng.gen_range(0..n);
        let span = 1u64 << rng.gen_range(0..12);
        let r = (l + rng.gen_range(1..=span)).min(n);
        let (got, trace) = ex.extract_traced(l..r).unwrap();
        assert_eq!(got, &text[l as usize..r as usize]);
        for s in &trace.spans {
            assert!(s.start <= l && r <= s.end, "window {s:?} lost [{l}, {r})");
        }
        assert!(trace.max_backtrack < ex.period());
        let width = trace.children.len() as u64;
        assert!(width <= (r - l).div_ceil(min_child) + 2);
    }
}

#[test]
fn structured_texts_extract() {
    for (i, (_, text)) in structured_texts().into_iter().enumerate() {
        if !text.is_empty() {
            check_queries(&text, 300, i as u64);
        }
    }
}

#[test]
fn random_and_repetitive_texts_extract() {
    check_queries(&random_bytes(200_000, 256, 1), 2000, 2);
    check_queries(&random_bytes(200_000, 2, 3), 2000, 4);
    let rep = gen_repetitive(&random_bytes(2000, 256, 5), 200, 0.001, 6);
    check_queries(&rep, 2000, 7);
}

#[test]
fn full_range_and_errors() {
    let text = random_bytes(5000, 16, 8);
    let ex = Extractor::new(&compress_checked(&text)).unwrap();
    assert_eq!(ex.extract(0..5000).unwrap(), text);
    assert_eq!(ex.extract(10..10).unwrap(), b"");
    assert_eq!(ex.extract(0..5001), Err(Error::RangeOutOfBounds));
    #[allow(clippy::reversed_empty_ranges)]
    let backwards = ex.extract(9..3);
    assert_eq!(backwards, Err(Error::RangeOutOfBounds));
}

#[test]
fn every_period_works() {
    let text = gen_repetitive(&random_bytes(300, 4, 9), 50, 0.01, 10);
    let g = compress_checked(&text);
    for k in [1usize, 2, 4, 16] {
        let ex = Extractor::with_period(&g, k).unwrap();
        assert_eq!(ex.extract(17..4000).unwrap(), &text[17..4000]);
        assert_eq!(ex.to_grammar().unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn any_slice(text in prop::collection::vec(0u8..4, 1..2000), a in any::<u16>(), b in any::<u16>()) {
        let n = text.len();
        let (mut l, mut r) = (a as usize % (n + 1), b as usize % (n + 1));
        if l > r { std::mem::swap(&mut l, &mut r); }
        let ex = Extractor::new(&gcis::compress(&text)).unwrap();
        prop_assert_eq!(ex.extract(l as u64..r as u64).unwrap(), &text[l..r]);
    }
}
