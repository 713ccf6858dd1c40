//! The `.gcis` container.
//!
//! All integers are little-endian and every block is preceded by its 64-bit
//! byte length and zero-padded to a multiple of 8 bytes.
//!
//! ```text
//! header   "GCIS" | version u8 | profile u8 | flags u8 | reserved u8
//!          | n u64 | levels u32 | 4 zero bytes
//! level    (deepest first) sigma u64 | rules u64 | lcp block | length block
//!          | symbol block
//! final    block: sigma u64 | len u64 | packed words
//! extras   (random-access profile only) one DAC block of expansion lengths
//!          per level, deepest first, then the partial-sum block
//! ```
//!
//! The sequential profile stores lcp values and suffix lengths as Simple8b
//! streams. The random-access profile stores their prefix sums with
//! Elias-Fano and forces every `k`-th lcp to zero; rules at those positions
//! carry their whole right-hand side. `k` is `2^(flags & 0xf)`. The empty
//! text is stored as a bare header.

use crate::codecs::fixed::width_for;
use crate::codecs::simple8b;
use crate::codecs::wire::{words_for, Reader, Short, Writer};
use crate::codecs::{DacArray, EliasFano, FixedWidthArray};
use crate::error::{Error, Result};
use crate::extract::{EfLevel, Extractor, RESET_PERIOD};
use crate::grammar::{Grammar, GrammarLevel};

pub const MAGIC: [u8; 4] = *b"GCIS";
pub const VERSION: u8 = 1;
const HEADER_BYTES: usize = 24;

/// Codec profile of a container.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    /// Simple8b-coded lcp values and lengths; decompression only.
    S8b,
    /// Elias-Fano prefix sums plus an extraction index; random access.
    Ef,
}

impl Profile {
    pub fn code(self) -> u8 {
        match self {
            Profile::S8b => 0,
            Profile::Ef => 1,
        }
    }

    pub fn from_code(code: u8) -> Result<Self> {
        match code {
            0 => Ok(Profile::S8b),
            1 => Ok(Profile::Ef),
            other => Err(Error::UnknownProfile(other)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Profile::S8b => "s8b",
            Profile::Ef => "ef",
        }
    }
}

/// A loaded container.
#[derive(Clone, Debug)]
pub struct Container {
    pub profile: Profile,
    pub grammar: Grammar,
    /// Present for the random-access profile.
    pub extractor: Option<Extractor>,
}

/// Byte sizes of one stored level; block sizes include their length prefix
/// and padding.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelInfo {
    pub sigma: u64,
    pub rules: usize,
    pub lcp_bytes: usize,
    pub length_bytes: usize,
    pub symbol_bytes: usize,
    /// DAC block of expansion lengths; zero for the sequential profile.
    pub expansion_bytes: usize,
    /// Everything attributed to this level, the two leading words included.
    pub total_bytes: usize,
}

/// Layout summary of a container. The parts add up to `total_bytes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainerInfo {
    pub profile: Profile,
    pub version: u8,
    pub period: usize,
    pub original_len: u64,
    pub header_bytes: usize,
    /// Shallowest level first.
    pub levels: Vec<LevelInfo>,
    pub final_len: usize,
    pub final_sigma: u64,
    pub final_bytes: usize,
    pub prefix_sum_bytes: usize,
    pub total_bytes: usize,
}

/// Serializes `grammar`. The random-access profile uses the default reset
/// period.
pub fn serialize(grammar: &Grammar, profile: Profile) -> Vec<u8> {
    match profile {
        Profile::S8b => serialize_s8b(grammar),
        Profile::Ef => {
            let ex = Extractor::new(grammar).expect("grammars built by this crate are valid");
            serialize_extractor(&ex)
        }
    }
}

fn header(w: &mut Writer, profile: Profile, period: usize, n: u64, depth: usize) {
    assert!(
        period.is_power_of_two() && period < 1 << 16,
        "reset period must be 2^0..2^15"
    );
    w.bytes(&MAGIC);
    w.u8(VERSION);
    w.u8(profile.code());
    w.u8(period.trailing_zeros() as u8);
    w.u8(0);
    w.u64(n);
    w.u32(depth as u32);
    w.pad8();
}

fn is_empty_grammar(original_len: u64, final_string: &FixedWidthArray) -> bool {
    original_len == 0 && final_string.is_empty()
}

fn fixed_payload(arr: &FixedWidthArray) -> Vec<u8> {
    let mut w = Writer::new();
    w.u64(arr.len() as u64);
    w.words(arr.words());
    w.into_inner()
}

fn final_block(w: &mut Writer, sigma: u64, arr: &FixedWidthArray) {
    let mut p = Writer::new();
    p.u64(sigma);
    p.u64(arr.len() as u64);
    p.words(arr.words());
    w.block(&p.into_inner());
}

fn serialize_s8b(grammar: &Grammar) -> Vec<u8> {
    let mut w = Writer::new();
    header(
        &mut w,
        Profile::S8b,
        RESET_PERIOD,
        grammar.original_len(),
        grammar.depth(),
    );
    if is_empty_grammar(grammar.original_len(), grammar.final_string()) {
        return w.into_inner();
    }
    for level in grammar.levels().iter().rev() {
        w.u64(level.sigma());
        w.u64(level.rule_count() as u64);
        for values in [level.lcps(), level.suffix_lens()] {
            let stream = simple8b::encode(values).expect("lengths stay below 2^60");
            let mut p = Writer::new();
            p.u64(stream.len() as u64);
            p.words(stream.words());
            w.block(&p.into_inner());
        }
        w.block(&fixed_payload(level.suffixes()));
    }
    final_block(&mut w, grammar.final_sigma(), grammar.final_string());
    w.into_inner()
}

/// Serializes a grammar already in random-access form.
pub fn serialize_extractor(ex: &Extractor) -> Vec<u8> {
    let mut w = Writer::new();
    header(
        &mut w,
        Profile::Ef,
        ex.period(),
        ex.original_len(),
        ex.depth(),
    );
    if is_empty_grammar(ex.original_len(), ex.final_string()) {
        return w.into_inner();
    }
    for level in ex.levels().iter().rev() {
        w.u64(level.sigma());
        w.u64(level.rule_count() as u64);
        w.block(&level.lcp_sums().to_bytes());
        w.block(&level.suffix_sums().to_bytes());
        w.block(&fixed_payload(level.suffixes()));
    }
    final_block(&mut w, ex.final_sigma(), ex.final_string());
    for level in ex.levels().iter().rev() {
        w.block(&level.lengths().to_bytes());
    }
    let mut p = Writer::new();
    p.u64(ex.prefix_sums().len() as u64);
    p.words(ex.prefix_sums());
    w.block(&p.into_inner());
    w.into_inner()
}

/// Loads a container of either profile.
pub fn deserialize(bytes: &[u8]) -> Result<Container> {
    Ok(parse(bytes)?.0)
}

/// Reads a container and reports its layout.
pub fn inspect(bytes: &[u8]) -> Result<ContainerInfo> {
    Ok(parse(bytes)?.1)
}

fn nondecreasing(ef: &EliasFano) -> bool {
    let mut prev = 0;
    ef.iter().all(|v| {
        let ok = v >= prev;
        prev = v;
        ok
    })
}

fn corrupt(what: &str) -> Error {
    Error::CorruptContainer(what.to_string())
}

fn short_as(e: Error) -> impl Fn(Short) -> Error {
    move |_| e.clone()
}

/// Splits a block payload into its parts; running out of payload means the
/// block lengths disagree with the content.
fn payload<'a, T>(
    bytes: &'a [u8],
    what: &str,
    f: impl FnOnce(&mut Reader<'a>) -> Result<Result<T, Error>, Short>,
) -> Result<T> {
    let mut r = Reader::new(bytes);
    let v = f(&mut r).map_err(|_| corrupt(what))??;
    if r.remaining() != 0 {
        return Err(corrupt(what));
    }
    Ok(v)
}

fn read_fixed(bytes: &[u8], sigma: u64, what: &str) -> Result<FixedWidthArray> {
    payload(bytes, what, |r| {
        let len = usize::try_from(r.u64()?).map_err(|_| Short)?;
        let width = width_for(sigma);
        let bits = len.checked_mul(width).ok_or(Short)?;
        if bits / 64 > r.remaining() {
            return Err(Short);
        }
        let words = r.words(words_for(bits))?;
        let arr = FixedWidthArray::from_raw(width, len, words).ok_or(Short)?;
        if arr.iter().any(|v| v > sigma) {
            return Ok(Err(corrupt(what)));
        }
        Ok(Ok(arr))
    })
}

fn read_s8b(bytes: &[u8], what: &str) -> Result<Vec<u64>> {
    payload(bytes, what, |r| {
        let len = usize::try_from(r.u64()?).map_err(|_| Short)?;
        let words = r.words(r.remaining() / 8)?;
        Ok(simple8b::decode(&words, len).map_err(Error::from))
    })
}

fn read_ef(bytes: &[u8], what: &str) -> Result<EliasFano> {
    payload(
        bytes,
        what,
        |r| Ok(EliasFano::read(r)?.map_err(Error::from)),
    )
}

fn block_size(payload_len: usize) -> usize {
    8 + payload_len.div_ceil(8) * 8
}

fn parse(bytes: &[u8]) -> Result<(Container, ContainerInfo)> {
    if bytes.len() >= 4 && bytes[..4] != MAGIC || bytes.len() < 4 && !MAGIC.starts_with(bytes) {
        return Err(Error::NotContainer);
    }
    let mut r = Reader::new(bytes);
    let head = r.take(HEADER_BYTES).map_err(|_| Error::TruncatedHeader)?;
    let version = head[4];
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let profile = Profile::from_code(head[5])?;
    let lg_k = head[6] & 0xf;
    let period = 1usize << lg_k;
    let original_len = u64::from_le_bytes(head[8..16].try_into().unwrap());
    let depth = u32::from_le_bytes(head[16..20].try_into().unwrap()) as usize;

    let mut info = ContainerInfo {
        profile,
        version,
        period,
        original_len,
        header_bytes: HEADER_BYTES,
        levels: Vec::new(),
        final_len: 0,
        final_sigma: 0,
        final_bytes: 0,
        prefix_sum_bytes: 0,
        total_bytes: bytes.len(),
    };
    if r.remaining() == 0 {
        if original_len != 0 || depth != 0 {
            return Err(Error::TruncatedLevel);
        }
        let grammar = Grammar::from_parts(Vec::new(), 0, FixedWidthArray::new(0), 0);
        let extractor = match profile {
            Profile::S8b => None,
            Profile::Ef => Some(Extractor::with_period(&grammar, period)?),
        };
        let c = Container {
            profile,
            grammar,
            extractor,
        };
        return Ok((c, info));
    }
    if depth > 64 {
        return Err(corrupt("level count"));
    }

    // levels, deepest first on disk
    let mut raw = Vec::with_capacity(depth);
    for _ in 0..depth {
        let t = Error::TruncatedLevel;
        let sigma = r.u64().map_err(short_as(t.clone()))?;
        let rules = usize::try_from(r.u64().map_err(short_as(t.clone()))?)
            .map_err(|_| corrupt("rule count"))?;
        let w = r.block().map_err(short_as(t.clone()))?;
        let z = r.block().map_err(short_as(t.clone()))?;
        let y = r.block().map_err(short_as(t))?;
        let li = LevelInfo {
            sigma,
            rules,
            lcp_bytes: block_size(w.len()),
            length_bytes: block_size(z.len()),
            symbol_bytes: block_size(y.len()),
            expansion_bytes: 0,
            total_bytes: 16 + block_size(w.len()) + block_size(z.len()) + block_size(y.len()),
        };
        raw.push((sigma, rules, w, z, y, li));
    }
    let fin = r.block().map_err(|_| Error::TruncatedFinalString)?;
    info.final_bytes = block_size(fin.len());
    let (final_sigma, final_string) = payload(fin, "final string", |p| {
        let sigma = p.u64()?;
        let rest = p.take(p.remaining())?;
        Ok(Ok((sigma, rest)))
    })?;
    let final_string = read_fixed(final_string, final_sigma, "final string")?;
    info.final_sigma = final_sigma;
    info.final_len = final_string.len();

    let (grammar, extractor) = match profile {
        Profile::S8b => {
            let mut levels = Vec::with_capacity(depth);
            for (sigma, rules, w, z, y, _) in raw.iter().rev() {
                let lcps = read_s8b(w, "lcp block")?;
                let lens = read_s8b(z, "length block")?;
                let suffixes = read_fixed(y, *sigma, "symbol block")?;
                if lcps.len() != *rules {
                    return Err(corrupt("rule count"));
                }
                levels.push(GrammarLevel::from_parts(*sigma, lcps, lens, suffixes)?);
            }
            let g = Grammar::from_parts(levels, final_sigma, final_string, original_len);
            (g, None)
        }
        Profile::Ef => {
            let mut dacs = Vec::with_capacity(depth);
            for li in raw.iter_mut().map(|x| &mut x.5) {
                let b = r.block().map_err(|_| Error::TruncatedIndex)?;
                li.expansion_bytes = block_size(b.len());
                li.total_bytes += li.expansion_bytes;
                dacs.push(payload(b, "expansion lengths", |p| {
                    Ok(DacArray::read(p)?.map_err(Error::from))
                })?);
            }
            let ps = r.block().map_err(|_| Error::TruncatedIndex)?;
            info.prefix_sum_bytes = block_size(ps.len());
            let prefix_sums = payload(ps, "partial sums", |p| {
                let len = usize::try_from(p.u64()?).map_err(|_| Short)?;
                if len > p.remaining() / 8 {
                    return Err(Short);
                }
                Ok(Ok(p.words(len)?))
            })?;
            let mut levels = Vec::with_capacity(depth);
            for ((sigma, rules, w, z, y, _), lengths) in raw.iter().zip(dacs).rev() {
                let lcp_sums = read_ef(w, "lcp block")?;
                let suffix_sums = read_ef(z, "length block")?;
                let suffixes = read_fixed(y, *sigma, "symbol block")?;
                if lcp_sums.len() != rules + 1
                    || suffix_sums.len() != rules + 1
                    || lengths.len() != *rules
                    || *rules == 0
                    || lcp_sums.get(0) != 0
                    || suffix_sums.get(0) != 0
                    || suffix_sums.get(*rules) != suffixes.len() as u64
                    || !nondecreasing(&lcp_sums)
                    || !nondecreasing(&suffix_sums)
                {
                    return Err(corrupt("level arrays disagree"));
                }
                let level = EfLevel {
                    sigma: *sigma,
                    lcp_sums,
                    suffix_sums,
                    suffixes,
                    lengths,
                };
                if (0..*rules).step_by(period).any(|i| level.lcp(i) != 0) {
                    return Err(corrupt("missing lcp reset"));
                }
                levels.push(level);
            }
            let mut ex = Extractor {
                period,
                levels,
                final_sigma,
                final_string,
                prefix_sums: Vec::new(),
                original_len,
            };
            let expected = ex.compute_prefix_sums()?;
            if expected != prefix_sums {
                return Err(corrupt("partial sums"));
            }
            ex.prefix_sums = prefix_sums;
            let g = ex.to_grammar()?;
            // the stored arrays must be exactly what the grammar implies
            if Extractor::with_period(&g, period)? != ex {
                return Err(corrupt("random-access arrays"));
            }
            (g, Some(ex))
        }
    };
    if r.remaining() != 0 {
        return Err(corrupt("trailing bytes"));
    }
    check_alphabets(&grammar)?;
    raw.reverse();
    info.levels = raw.into_iter().map(|x| x.5).collect();
    let c = Container {
        profile,
        grammar,
        extractor,
    };
    Ok((c, info))
}

/// Each level's symbols are the names of the level below it.
fn check_alphabets(g: &Grammar) -> Result<()> {
    let levels = g.levels();
    for w in levels.windows(2) {
        if w[1].sigma() != w[0].names() as u64 {
            return Err(corrupt("alphabet chain"));
        }
    }
    if let Some(last) = levels.last() {
        if g.final_sigma() != last.names() as u64 {
            return Err(corrupt("alphabet chain"));
        }
    }
    Ok(())
}
