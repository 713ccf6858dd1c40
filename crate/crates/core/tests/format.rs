mod common;

use gcis::corpus::{gen_repetitive, random_bytes};
use gcis::{
    compress, decompress, decompress_with_sa_lcp, deserialize, inspect, serialize, Error, Profile,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

#[test]
fn profiles_agree_and_reserialize_identically() {
    let texts = [
        random_bytes(20_000, 4, 1),
        gen_repetitive(&random_bytes(1000, 256, 2), 30, 0.002, 3),
        b"banana".to_vec(),
        Vec::new(),
    ];
    for text in &texts {
        let g = compress(text);
        let s8b = serialize(&g, Profile::S8b);
        let ef = serialize(&g, Profile::Ef);
        let a = deserialize(&s8b).unwrap();
        let b = deserialize(&ef).unwrap();
        assert_eq!(a.grammar, b.grammar);
        assert_eq!(serialize(&a.grammar, Profile::S8b), s8b);
        assert_eq!(serialize(&b.grammar, Profile::Ef), ef);
        assert_eq!(gcis::format::serialize_extractor(&b.extractor.unwrap()), ef);
        assert_eq!(inspect(&s8b).unwrap().total_bytes, s8b.len());
    }
}

#[test]
fn info_parts_sum_to_file_size() {
    let g = compress(&gen_repetitive(&random_bytes(3000, 256, 4), 20, 0.001, 5));
    for profile in [Profile::S8b, Profile::Ef] {
        let bytes = serialize(&g, profile);
        let info = inspect(&bytes).unwrap();
        let sum = info.header_bytes
            + info.levels.iter().map(|l| l.total_bytes).sum::<usize>()
            + info.final_bytes
            + info.prefix_sum_bytes;
        assert_eq!(sum, bytes.len());
        assert_eq!(info.levels.len(), g.depth());
        for (li, lv) in info.levels.iter().zip(g.levels()) {
            assert_eq!(li.rules, lv.rule_count());
            assert_eq!(li.sigma, lv.sigma());
        }
    }
}

#[test]
fn damaged_containers_fail_cleanly() {
    let text = gen_repetitive(&random_bytes(500, 16, 6), 10, 0.01, 7);
    let mut rng = rand::rngs::StdRng::seed_from_u64(8);
    for profile in [Profile::S8b, Profile::Ef] {
        let bytes = serialize(&compress(&text), profile);
        for cut in 0..bytes.len() {
            let err = deserialize(&bytes[..cut]).unwrap_err();
            assert!(err.is_corruption(), "{err:?} at cut {cut}");
        }
        for _ in 0..6000 {
            let mut bad = bytes.clone();
            let at = rng.gen_range(0..bad.len());
            bad[at] ^= 1 << rng.gen_range(0..8);
            // must not panic; when it loads, decoding either works or reports corruption
            if let Ok(c) = deserialize(&bad) {
                if let Err(e) = decompress(&c.grammar) {
                    assert!(e.is_corruption(), "{e:?}");
                }
                // a damaged length field can also push the text past u32 indices
                if let Err(e) = decompress_with_sa_lcp::<u32>(&c.grammar) {
                    assert!(
                        e.is_corruption() || matches!(e, Error::TextTooLong(_)),
                        "{e:?}"
                    );
                }
                if let Some(ex) = &c.extractor {
                    let n = ex.original_len();
                    if let Err(e) = ex.extract(n / 3..n / 2) {
                        assert!(e.is_corruption(), "{e:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn bad_magic() {
    assert_eq!(
        deserialize(b"PK\x03\x04 not ours").unwrap_err(),
        Error::NotContainer
    );
    assert_eq!(deserialize(b"").unwrap_err(), Error::TruncatedHeader);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reserialization_is_byte_identical(text in prop::collection::vec(0u8..6, 0..3000), ef in any::<bool>()) {
        let profile = if ef { Profile::Ef } else { Profile::S8b };
        let bytes = serialize(&compress(&text), profile);
        let c = deserialize(&bytes).unwrap();
        prop_assert_eq!(serialize(&c.grammar, profile), bytes);
        prop_assert_eq!(decompress(&c.grammar).unwrap(), text);
    }
}
