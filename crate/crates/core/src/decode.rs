//! Level-wise decompression.
//!
//! Rules of a level are first expanded from their front-coded form into one
//! flat packed array plus a start-offset array. The level's text is then
//! rebuilt from the level above by copying the prefix rule and appending the
//! right-hand side of every name in order.

use crate::codecs::FixedWidthArray;
use crate::error::{Error, Result};
use crate::grammar::{Grammar, GrammarLevel};
use crate::index::{use_narrow, Index};

/// All full right-hand sides of one level, concatenated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedLevel {
    flat: FixedWidthArray,
    /// Rule `i` occupies `flat[starts[i]..starts[i + 1]]`.
    starts: Vec<usize>,
}

impl DecodedLevel {
    pub fn rule_count(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn rule_len(&self, i: usize) -> usize {
        self.starts[i + 1] - self.starts[i]
    }

    pub fn rule(&self, i: usize) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.rule_len(i));
        self.flat
            .extend_into(self.starts[i], self.rule_len(i), &mut v);
        v
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    #[inline]
    fn append_rule<O>(&self, i: usize, out: &mut Vec<O>, conv: impl Fn(u64) -> O) {
        let (lo, hi) = (self.starts[i], self.starts[i + 1]);
        out.extend((lo..hi).map(|p| conv(self.flat.get(p))));
    }
}

/// Rebuilds the full right-hand side of every rule of `level`.
pub fn expand_level_rules(level: &GrammarLevel) -> Result<DecodedLevel> {
    let lcps = level.lcps();
    let lens = level.suffix_lens();
    let suffixes = level.suffixes();
    let total: u64 = lcps.iter().sum::<u64>() + lens.iter().sum::<u64>();
    let mut flat = FixedWidthArray::with_capacity(level.sigma(), total.min(1 << 24) as usize);
    let mut starts = Vec::with_capacity(lcps.len() + 1);
    let mut offset = 0usize;
    for (i, (&lcp, &len)) in lcps.iter().zip(lens).enumerate() {
        let start = flat.len();
        starts.push(start);
        let lcp = lcp as usize;
        if lcp > 0 {
            // rule 1 never shares a prefix with the prefix rule
            if i < 2 {
                return Err(Error::CorruptFrontCoding);
            }
            let prev = starts[i - 1];
            if lcp > start - prev {
                return Err(Error::CorruptFrontCoding);
            }
            for p in prev..prev + lcp {
                let v = flat.get(p);
                flat.push(v).map_err(|_| Error::CorruptGrammar)?;
            }
        }
        for p in offset..offset + len as usize {
            flat.push(suffixes.get(p))
                .map_err(|_| Error::CorruptGrammar)?;
        }
        offset += len as usize;
    }
    starts.push(flat.len());
    Ok(DecodedLevel { flat, starts })
}

/// Writes `prefix · rhs(upper[0]) · rhs(upper[1]) · …` into `out`, failing
/// once the output would exceed `limit` symbols.
pub(crate) fn rewrite_level<I: Index, O>(
    rules: &DecodedLevel,
    upper: impl IntoIterator<Item = I>,
    out: &mut Vec<O>,
    limit: usize,
    conv: impl Fn(u64) -> O + Copy,
) -> Result<()> {
    let count = rules.rule_count();
    let append = |x: usize, out: &mut Vec<O>| {
        if out.len() + rules.rule_len(x) > limit {
            return Err(Error::CorruptGrammar);
        }
        rules.append_rule(x, out, conv);
        Ok(())
    };
    append(0, out)?;
    for x in upper {
        let x = x.as_usize();
        if x == 0 || x >= count {
            return Err(Error::CorruptGrammar);
        }
        append(x, out)?;
    }
    Ok(())
}

/// Longest possible text of grammar level `j`: every level at least halves.
pub(crate) fn level_limit(grammar: &Grammar, j: usize) -> usize {
    let n = grammar.original_len().saturating_add(1);
    usize::try_from(n >> j.min(63)).unwrap_or(usize::MAX)
}

/// Recovers the text of the shallowest level (internal symbols, sentinel
/// included) by rewriting from the final string downwards. `visit` sees
/// each intermediate level text from the deepest to level 1.
pub fn decode_levels<I: Index>(
    grammar: &Grammar,
    mut visit: impl FnMut(usize, &[I]) -> Result<()>,
) -> Result<Vec<I>> {
    let mut current: Vec<I> = grammar
        .final_string()
        .iter()
        .map(|v| I::from_usize(v as usize))
        .collect();
    for (j, level) in grammar.levels().iter().enumerate().rev() {
        visit(j + 1, &current)?;
        let rules = expand_level_rules(level)?;
        let limit = level_limit(grammar, j);
        let mut next = Vec::with_capacity(estimate_len(&rules, current.len()).min(limit));
        rewrite_level(&rules, current.iter().copied(), &mut next, limit, |v| {
            I::from_usize(v as usize)
        })?;
        current = next;
    }
    Ok(current)
}

fn estimate_len(rules: &DecodedLevel, upper: usize) -> usize {
    let avg = rules.starts.last().copied().unwrap_or(0) / rules.rule_count().max(1);
    upper.saturating_mul(avg.max(1)).min(1 << 26)
}

/// Maps internal symbols back to bytes and checks the trailing sentinel.
pub(crate) fn symbols_to_bytes<T: Copy>(
    symbols: &[T],
    expected_len: u64,
    value: impl Fn(T) -> u64,
) -> Result<Vec<u8>> {
    let (&last, body) = symbols.split_last().ok_or(Error::CorruptGrammar)?;
    if value(last) != 0 || body.len() as u64 != expected_len {
        return Err(Error::CorruptGrammar);
    }
    body.iter()
        .map(|&s| match value(s) {
            v @ 1..=256 => Ok((v - 1) as u8),
            _ => Err(Error::CorruptGrammar),
        })
        .collect()
}

/// Restores the original bytes.
pub fn decompress(grammar: &Grammar) -> Result<Vec<u8>> {
    if grammar.original_len() == 0 && grammar.final_string().is_empty() {
        return Ok(Vec::new());
    }
    if use_narrow(grammar.original_len() as usize + 1) {
        decompress_impl::<u32>(grammar)
    } else {
        decompress_impl::<u64>(grammar)
    }
}

fn decompress_impl<I: Index>(grammar: &Grammar) -> Result<Vec<u8>> {
    let levels = grammar.levels();
    let Some((first, deeper)) = levels.split_first() else {
        let symbols: Vec<u64> = grammar.final_string().to_vec();
        return symbols_to_bytes(&symbols, grammar.original_len(), |v| v);
    };
    // decode down to level 1, then write bytes straight from the byte-level rules
    let mut upper: Vec<I> = grammar
        .final_string()
        .iter()
        .map(|v| I::from_usize(v as usize))
        .collect();
    for (j, level) in deeper.iter().enumerate().rev() {
        let rules = expand_level_rules(level)?;
        let limit = level_limit(grammar, j + 1);
        let mut next = Vec::with_capacity(estimate_len(&rules, upper.len()).min(limit));
        rewrite_level(&rules, upper.iter().copied(), &mut next, limit, |v| {
            I::from_usize(v as usize)
        })?;
        upper = next;
    }
    let rules = expand_level_rules(first)?;
    let limit = level_limit(grammar, 0);
    let mut out: Vec<u16> = Vec::with_capacity(limit.min(1 << 30));
    rewrite_level(&rules, upper.iter().copied(), &mut out, limit, |v| {
        v.min(u16::MAX as u64) as u16
    })?;
    drop(upper);
    symbols_to_bytes(&out, grammar.original_len(), u64::from)
}
