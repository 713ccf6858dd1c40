use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gcis::corpus::{gen_repetitive, random_bytes};
use gcis::sais::suffix_array_of_bytes;
use tempfile::TempDir;

fn gcis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture {
            dir: TempDir::new().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn file(&self, name: &str, bytes: &[u8]) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, bytes).unwrap();
        p
    }
}

fn read_u64s(p: &Path) -> Vec<u64> {
    fs::read(p)
        .unwrap()
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect()
}

#[test]
fn compress_decompress_roundtrip() {
    let fx = Fixture::new();
    let text = gen_repetitive(&random_bytes(2000, 256, 1), 20, 0.01, 2);
    let input = fx.file("in.bin", &text);
    for profile in ["s8b", "ef"] {
        let packed = fx.path(&format!("in.{profile}.gcis"));
        let out = gcis(&["c", s(&input), s(&packed), "--profile", profile]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let stdout = String::from_utf8(out.stdout).unwrap();
        let lines: Vec<&str> = stdout.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("name,input_bytes"));
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields[0], "in.bin");
        assert_eq!(fields[1], text.len().to_string());
        assert_eq!(fields[2], fs::metadata(&packed).unwrap().len().to_string());

        let restored = fx.path("restored.bin");
        assert!(gcis(&["d", s(&packed), s(&restored)]).status.success());
        assert_eq!(fs::read(&restored).unwrap(), text);
    }
}

#[test]
fn no_header_prints_one_line() {
    let fx = Fixture::new();
    let input = fx.file("a.txt", b"abracadabra");
    let out = gcis(&["c", s(&input), s(&fx.path("a.gcis")), "--no-header"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn extract_prints_slices() {
    let fx = Fixture::new();
    let text = b"the quick brown fox jumps over the lazy dog, the quick brown cat naps".to_vec();
    let input = fx.file("t.txt", &text);
    let packed = fx.path("t.gcis");
    assert!(gcis(&["c", s(&input), s(&packed), "--profile", "ef"])
        .status
        .success());
    let out = gcis(&["x", s(&packed), "-q", "10,34", "-q", "0,3", "-q", "5,5"]);
    assert!(out.status.success());
    let expected = [&text[10..34], b"\n", &text[0..3], b"\n", b"\n"].concat();
    assert_eq!(out.stdout, expected);
}

#[test]
fn extract_needs_random_access_profile() {
    let fx = Fixture::new();
    let input = fx.file("t.txt", b"mississippi");
    let packed = fx.path("t.gcis");
    assert!(gcis(&["c", s(&input), s(&packed)]).status.success());
    let out = gcis(&["x", s(&packed), "-q", "1,4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("profile lacks random access"));
}

#[test]
fn suffix_and_lcp_arrays_match_oracles() {
    let fx = Fixture::new();
    let text = gen_repetitive(&random_bytes(300, 4, 3), 10, 0.02, 4);
    let input = fx.file("t.bin", &text);
    let packed = fx.path("t.gcis");
    assert!(gcis(&["c", s(&input), s(&packed)]).status.success());

    let sa_path = fx.path("t.sa");
    assert!(gcis(&["sa", s(&packed), s(&sa_path)]).status.success());
    let sa = read_u64s(&sa_path);
    let reference: Vec<u64> = suffix_array_of_bytes::<u64>(&text).unwrap()[1..].to_vec();
    assert_eq!(sa, reference);

    let (sa2, lcp) = (fx.path("u.sa"), fx.path("u.lcp"));
    assert!(gcis(&["salcp", s(&packed), s(&sa2), s(&lcp)])
        .status
        .success());
    assert_eq!(read_u64s(&sa2), reference);
    let lcp = read_u64s(&lcp);
    assert_eq!(lcp.len(), text.len());
    assert_eq!(lcp[0], 0);
    for i in 1..sa.len() {
        let (a, b) = (&text[sa[i - 1] as usize..], &text[sa[i] as usize..]);
        let direct = a.iter().zip(b).take_while(|(x, y)| x == y).count() as u64;
        assert_eq!(lcp[i], direct, "at {i}");
    }
}

#[test]
fn info_totals_equal_file_size() {
    let fx = Fixture::new();
    let input = fx.file(
        "t.bin",
        &gen_repetitive(&random_bytes(1000, 16, 5), 8, 0.01, 6),
    );
    for profile in ["s8b", "ef"] {
        let packed = fx.path("t.gcis");
        assert!(gcis(&["c", s(&input), s(&packed), "--profile", profile])
            .status
            .success());
        let out = gcis(&["info", s(&packed)]);
        assert!(out.status.success());
        let stdout = String::from_utf8(out.stdout).unwrap();
        let size = fs::metadata(&packed).unwrap().len();
        assert!(
            stdout.contains(&format!("total bytes    {size} (file {size})")),
            "{stdout}"
        );
        assert!(stdout.contains(&format!("profile        {profile}")));
    }
}

#[test]
fn gen_is_deterministic() {
    let fx = Fixture::new();
    let seed = fx.file("seed", &random_bytes(500, 256, 7));
    let (a, b) = (fx.path("a"), fx.path("b"));
    for out in [&a, &b] {
        let st = gcis(&[
            "gen",
            s(&seed),
            s(out),
            "--copies",
            "30",
            "--rate",
            "0.01",
            "--seed",
            "9",
        ]);
        assert!(st.status.success());
    }
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes.len(), 15_000);
    assert_eq!(bytes, fs::read(&b).unwrap());

    let same = fx.path("same");
    assert!(
        gcis(&["gen", s(&seed), s(&same), "--copies", "1", "--rate", "0"])
            .status
            .success()
    );
    assert_eq!(fs::read(&same).unwrap(), fs::read(&seed).unwrap());

    assert_eq!(
        gcis(&["gen", s(&seed), s(&same), "--rate", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        gcis(&["gen", s(&seed), s(&same), "--copies", "0"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn bench_emits_csv() {
    let fx = Fixture::new();
    let a = fx.file("a", &random_bytes(5000, 4, 8));
    let b = fx.file("b", b"banana");
    for op in ["c", "d", "sa", "salcp"] {
        let out = gcis(&["bench", s(&a), s(&b), "--op", op, "--profile", "ef"]);
        assert!(out.status.success(), "{op}");
        let stdout = String::from_utf8(out.stdout).unwrap();
        let lines: Vec<&str> = stdout.lines().collect();
        assert_eq!(lines.len(), 3);
        for line in &lines[1..] {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f.len(), 7);
            let (inp, outp, ratio): (f64, f64, f64) = (
                f[1].parse().unwrap(),
                f[2].parse().unwrap(),
                f[3].parse().unwrap(),
            );
            assert!((ratio - 100.0 * outp / inp).abs() < 1e-3);
        }
    }
    let out = gcis(&["bench", s(&b), "--no-header"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn exit_codes() {
    let fx = Fixture::new();
    let missing = fx.path("missing");
    assert_eq!(
        gcis(&["c", s(&missing), s(&fx.path("o"))]).status.code(),
        Some(1)
    );
    assert_eq!(gcis(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gcis(&["x", s(&missing)]).status.code(), Some(1));

    let junk = fx.file("junk.gcis", b"definitely not a container");
    assert_eq!(
        gcis(&["d", s(&junk), s(&fx.path("o"))]).status.code(),
        Some(2)
    );
    assert_eq!(gcis(&["info", s(&junk)]).status.code(), Some(2));

    let input = fx.file("t.txt", &random_bytes(3000, 8, 9));
    let packed = fx.path("t.gcis");
    assert!(gcis(&["c", s(&input), s(&packed)]).status.success());
    let bytes = fs::read(&packed).unwrap();
    let cut = fx.file("cut.gcis", &bytes[..bytes.len() / 2]);
    assert_eq!(
        gcis(&["d", s(&cut), s(&fx.path("o"))]).status.code(),
        Some(2)
    );
    assert_eq!(
        gcis(&["sa", s(&cut), s(&fx.path("o"))]).status.code(),
        Some(2)
    );
}

#[test]
fn empty_input() {
    let fx = Fixture::new();
    let input = fx.file("empty", b"");
    let packed = fx.path("empty.gcis");
    assert!(gcis(&["c", s(&input), s(&packed), "--profile", "ef"])
        .status
        .success());
    let restored = fx.path("r");
    assert!(gcis(&["d", s(&packed), s(&restored)]).status.success());
    assert!(fs::read(&restored).unwrap().is_empty());
    let sa = fx.path("sa");
    assert!(gcis(&["sa", s(&packed), s(&sa)]).status.success());
    assert!(fs::read(&sa).unwrap().is_empty());
    assert!(gcis(&["x", s(&packed), "-q", "0,0"]).status.success());
}
