//! Multi-level grammar construction.
//!
//! Each level factorizes its text at LMS positions, sorts and names the
//! factors with the induced-sorting passes and emits one front-coded rule per
//! distinct factor. The names form the next level's text. Recursion stops
//! once every factor of a level is distinct.
//!
//! Rule `0` of each level is the prefix rule: the symbols before the first
//! LMS position. The text of level `j` is therefore
//! `prefix_j · rhs(T_{j+1}[0]) · rhs(T_{j+1}[1]) · …`.

use crate::codecs::FixedWidthArray;
use crate::error::{Error, Result};
use crate::index::{use_narrow, Index};
use crate::sais::{name_lms, sort_lms_substrings_with};
use crate::textcore::{classify_types, lms_positions, Text};

/// Rules of one recursion level in front-coded form.
///
/// Rule `i` expands to the first `lcps[i]` symbols of rule `i - 1` followed
/// by its stored suffix. Rule 0 is the prefix rule and always has lcp 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrammarLevel {
    /// Largest symbol value that may appear in a right-hand side.
    sigma: u64,
    lcps: Vec<u64>,
    suffix_lens: Vec<u64>,
    suffixes: FixedWidthArray,
}

impl GrammarLevel {
    pub(crate) fn from_parts(
        sigma: u64,
        lcps: Vec<u64>,
        suffix_lens: Vec<u64>,
        suffixes: FixedWidthArray,
    ) -> Result<Self> {
        if lcps.len() != suffix_lens.len() || lcps.is_empty() {
            return Err(Error::CorruptGrammar);
        }
        let total: u64 = suffix_lens.iter().sum();
        if total != suffixes.len() as u64 || suffixes.iter().any(|s| s > sigma) {
            return Err(Error::CorruptGrammar);
        }
        if lcps[0] != 0 {
            return Err(Error::CorruptFrontCoding);
        }
        Ok(Self {
            sigma,
            lcps,
            suffix_lens,
            suffixes,
        })
    }

    /// Largest symbol value of this level's right-hand sides.
    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    /// Number of rules including the prefix rule; equals the number of
    /// distinct names plus one.
    pub fn rule_count(&self) -> usize {
        self.lcps.len()
    }

    /// Number of names this level defines (excluding the prefix rule).
    pub fn names(&self) -> usize {
        self.lcps.len() - 1
    }

    pub fn lcps(&self) -> &[u64] {
        &self.lcps
    }

    pub fn suffix_lens(&self) -> &[u64] {
        &self.suffix_lens
    }

    pub fn suffixes(&self) -> &FixedWidthArray {
        &self.suffixes
    }

    /// Full right-hand sides of all rules, in rule order.
    pub fn expand_all(&self) -> Result<Vec<Vec<u64>>> {
        let mut out: Vec<Vec<u64>> = Vec::with_capacity(self.rule_count());
        let mut offset = 0usize;
        for (i, (&lcp, &len)) in self.lcps.iter().zip(&self.suffix_lens).enumerate() {
            let mut rhs = Vec::with_capacity(lcp as usize + len as usize);
            if lcp > 0 {
                let prev = if i > 1 {
                    &out[i - 1]
                } else {
                    return Err(Error::CorruptFrontCoding);
                };
                if lcp as usize > prev.len() {
                    return Err(Error::CorruptFrontCoding);
                }
                rhs.extend_from_slice(&prev[..lcp as usize]);
            }
            self.suffixes.extend_into(offset, len as usize, &mut rhs);
            offset += len as usize;
            out.push(rhs);
        }
        Ok(out)
    }
}

/// Grammar generating exactly one text.
///
/// The start rule is implicit: it derives the chain of prefix rules followed
/// by `final_string`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    levels: Vec<GrammarLevel>,
    final_sigma: u64,
    final_string: FixedWidthArray,
    original_len: u64,
}

impl Grammar {
    pub(crate) fn from_parts(
        levels: Vec<GrammarLevel>,
        final_sigma: u64,
        final_string: FixedWidthArray,
        original_len: u64,
    ) -> Self {
        Self {
            levels,
            final_sigma,
            final_string,
            original_len,
        }
    }

    /// Recursion levels, shallowest (byte level) first.
    pub fn levels(&self) -> &[GrammarLevel] {
        &self.levels
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// The last reduced string; for a grammar without levels this is the
    /// internal text itself, sentinel included.
    pub fn final_string(&self) -> &FixedWidthArray {
        &self.final_string
    }

    pub fn final_sigma(&self) -> u64 {
        self.final_sigma
    }

    /// Length of the original byte input.
    pub fn original_len(&self) -> u64 {
        self.original_len
    }
}

/// Per-level measurements taken while compressing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelStats {
    pub text_len: usize,
    pub reduced_len: usize,
    pub names: usize,
    pub lcp_sum: u64,
    pub suffix_sum: u64,
}

/// Reduces one level: returns its rules, the reduced text of names and the
/// number of distinct names.
pub fn reduce_level<I: Index>(text: &[I], sigma: u64) -> Result<(GrammarLevel, Vec<I>, usize)> {
    let types = classify_types(text)?;
    let lms = lms_positions(&types);
    let sorted = sort_lms_substrings_with(text, &types, sigma as usize + 1);
    let naming = name_lms(text, &types, &sorted, &lms);

    let names = naming.sigma_next;
    let mut lcps = Vec::with_capacity(names + 1);
    let mut suffix_lens = Vec::with_capacity(names + 1);
    let prefix_end = lms.first().copied().unwrap_or(0);
    let suffix_total: usize = prefix_end
        + naming
            .rule_lens
            .iter()
            .zip(&naming.sorted_lcp)
            .map(|(l, c)| l - c)
            .sum::<usize>();
    let mut suffixes = FixedWidthArray::with_capacity(sigma, suffix_total);

    lcps.push(0);
    suffix_lens.push(prefix_end as u64);
    for &c in &text[..prefix_end] {
        suffixes.push(c.as_usize() as u64)?;
    }
    for r in 0..names {
        let start = naming.rule_starts[r];
        let lcp = naming.sorted_lcp[r];
        let len = naming.rule_lens[r];
        lcps.push(lcp as u64);
        suffix_lens.push((len - lcp) as u64);
        for &c in &text[start + lcp..start + len] {
            suffixes.push(c.as_usize() as u64)?;
        }
    }
    let reduced = naming.names.iter().map(|&v| I::from_usize(v)).collect();
    let level = GrammarLevel {
        sigma,
        lcps,
        suffix_lens,
        suffixes,
    };
    Ok((level, reduced, names))
}

/// Builds the grammar of `bytes`.
pub fn compress(bytes: &[u8]) -> Grammar {
    compress_with_stats(bytes).0
}

/// Builds the grammar of `bytes` and reports per-level sizes.
pub fn compress_with_stats(bytes: &[u8]) -> (Grammar, Vec<LevelStats>) {
    let len = Text::new(bytes).len();
    if use_narrow(len) {
        compress_impl::<u32>(bytes)
    } else {
        compress_impl::<u64>(bytes)
    }
}

fn compress_impl<I: Index>(bytes: &[u8]) -> (Grammar, Vec<LevelStats>) {
    if bytes.is_empty() {
        return (
            Grammar::from_parts(Vec::new(), 0, FixedWidthArray::new(0), 0),
            Vec::new(),
        );
    }
    let text = Text::new(bytes);
    let mut sigma = text.max_symbol();
    let mut current: Vec<I> = text.symbols();
    let mut levels = Vec::new();
    let mut stats = Vec::new();
    // a text of fewer than three symbols has no LMS position besides the sentinel
    while current.len() >= 3 {
        let (level, reduced, names) =
            reduce_level(&current, sigma).expect("level text is non-empty");
        stats.push(LevelStats {
            text_len: current.len(),
            reduced_len: reduced.len(),
            names,
            lcp_sum: level.lcps.iter().sum(),
            suffix_sum: level.suffix_lens.iter().sum(),
        });
        levels.push(level);
        let distinct = names == reduced.len();
        current = reduced;
        sigma = names as u64;
        if distinct {
            break;
        }
    }
    let final_string = FixedWidthArray::pack(current.iter().map(|c| c.as_usize() as u64), sigma)
        .expect("symbols bounded by sigma");
    let grammar = Grammar::from_parts(levels, sigma, final_string, bytes.len() as u64);
    (grammar, stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &[u8]) -> Vec<u32> {
        Text::new(s).symbols()
    }

    fn shifted(s: &[u8]) -> Vec<u64> {
        s.iter().map(|&b| b as u64 + 1).collect()
    }

    #[test]
    fn banana_level() {
        let (level, reduced, names) = reduce_level(&sym(b"banana"), 256).unwrap();
        assert_eq!(reduced, vec![3, 2, 1]);
        assert_eq!(names, 3);
        assert_eq!(level.lcps(), &[0, 0, 0, 2]);
        let rules = level.expand_all().unwrap();
        assert_eq!(rules[0], shifted(b"b"));
        assert_eq!(rules[1], vec![0]);
        assert_eq!(rules[2], shifted(b"ana"));
        assert_eq!(rules[3], shifted(b"an"));
        assert_eq!(level.suffix_lens(), &[1, 1, 3, 0]);
    }

    #[test]
    fn second_level_of_nananana() {
        let (level, reduced, names) = reduce_level::<u32>(&[3, 3, 2, 1], 3).unwrap();
        assert_eq!(reduced, vec![1]);
        assert_eq!(names, 1);
        let rules = level.expand_all().unwrap();
        assert_eq!(rules[0], vec![3, 3, 2]);
        assert_eq!(rules[1], vec![1]);
    }

    #[test]
    fn banana_grammar() {
        let g = compress(b"banana");
        assert_eq!(g.depth(), 1);
        assert_eq!(g.final_string().to_vec(), vec![3, 2, 1]);
        assert_eq!(g.original_len(), 6);
    }

    #[test]
    fn nananana_has_two_levels() {
        let g = compress(b"nananana");
        assert_eq!(g.depth(), 2);
        assert_eq!(g.final_string().to_vec(), vec![1]);
    }

    #[test]
    fn empty_and_tiny_inputs() {
        let g = compress(b"");
        assert_eq!(g.depth(), 0);
        assert!(g.final_string().is_empty());
        let g = compress(b"x");
        assert_eq!(g.depth(), 0);
        assert_eq!(g.final_string().to_vec(), vec![b'x' as u64 + 1, 0]);
    }

    #[test]
    fn stats_respect_halving_and_sums() {
        let text: Vec<u8> = b"abracadabra".iter().cycle().take(5000).copied().collect();
        let (g, stats) = compress_with_stats(&text);
        assert_eq!(stats.len(), g.depth());
        for s in &stats {
            assert!(s.reduced_len <= s.text_len / 2);
            assert!(s.lcp_sum <= s.text_len as u64);
            assert!(s.suffix_sum <= s.text_len as u64);
        }
        let log2 = (text.len() as f64).log2().ceil() as usize;
        assert!(g.depth() <= log2 + 1);
    }
}
