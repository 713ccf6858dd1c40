//! Random access to substrings of a compressed text.
//!
//! The random-access form of a grammar keeps, per level, the lcp values and
//! suffix lengths as Elias-Fano prefix sums, forces every `k`-th lcp to zero
//! so that a single rule can be rebuilt by walking back at most `k - 1`
//! predecessors, and adds the expansion length of every rule (DAC encoded).
//! A partial-sum array over the children of the start rule locates the first
//! window of an extraction; the window is then expanded one level at a time
//! and trimmed on both ends.
//!
//! The children of the start rule are the prefix rules of levels `0..ℓ`
//! followed by the symbols of the final string. A window item is written as
//! `(t, x)`: rule `x` of grammar level `t - 1`, or a terminal when `t == 0`.
//! Rule `0` of a level is its prefix rule.

use std::ops::Range;

use crate::codecs::{DacArray, EliasFano, FixedWidthArray, DAC_BLOCK};
use crate::decode::expand_level_rules;
use crate::error::{Error, Result};
use crate::grammar::{Grammar, GrammarLevel};

/// Default period of forced zero lcp values.
pub const RESET_PERIOD: usize = 8;

/// One grammar level in random-access form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EfLevel {
    pub(crate) sigma: u64,
    /// `rule_count + 1` prefix sums of the lcp values.
    pub(crate) lcp_sums: EliasFano,
    /// `rule_count + 1` prefix sums of the stored suffix lengths.
    pub(crate) suffix_sums: EliasFano,
    pub(crate) suffixes: FixedWidthArray,
    /// Expansion length of every rule in bytes of the original text.
    pub(crate) lengths: DacArray,
}

impl EfLevel {
    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn rule_count(&self) -> usize {
        self.lcp_sums.len().saturating_sub(1)
    }

    #[inline]
    pub fn lcp(&self, i: usize) -> u64 {
        self.lcp_sums.get(i + 1) - self.lcp_sums.get(i)
    }

    #[inline]
    fn suffix_span(&self, i: usize) -> (usize, usize) {
        let lo = self.suffix_sums.get(i);
        let hi = self.suffix_sums.get(i + 1);
        (lo as usize, (hi - lo) as usize)
    }

    /// Expansion length of rule `i`.
    pub fn expansion_len(&self, i: usize) -> u64 {
        self.lengths.get(i)
    }

    pub fn lcp_sums(&self) -> &EliasFano {
        &self.lcp_sums
    }

    pub fn suffix_sums(&self) -> &EliasFano {
        &self.suffix_sums
    }

    pub fn suffixes(&self) -> &FixedWidthArray {
        &self.suffixes
    }

    pub fn lengths(&self) -> &DacArray {
        &self.lengths
    }
}

/// Grammar in random-access form plus the extraction index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extractor {
    pub(crate) period: usize,
    pub(crate) levels: Vec<EfLevel>,
    pub(crate) final_sigma: u64,
    pub(crate) final_string: FixedWidthArray,
    /// Partial sums of the expansion lengths of the start rule's children.
    pub(crate) prefix_sums: Vec<u64>,
    pub(crate) original_len: u64,
}

/// What an extraction touched; used by tests and benchmarks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtractTrace {
    /// Children of the start rule that formed the first window.
    pub children: Range<usize>,
    /// Span of the original text generated by the window after each trim,
    /// from the top window down to the terminals.
    pub spans: Vec<Range<u64>>,
    /// Longest walk back over predecessors in any rule expansion.
    pub max_backtrack: usize,
}

impl Extractor {
    /// Builds the random-access form with the default reset period.
    pub fn new(grammar: &Grammar) -> Result<Self> {
        Self::with_period(grammar, RESET_PERIOD)
    }

    pub fn with_period(grammar: &Grammar, period: usize) -> Result<Self> {
        assert!(period >= 1, "reset period must be positive");
        let mut levels = Vec::with_capacity(grammar.depth());
        let mut below: Vec<u64> = Vec::new();
        for (j, level) in grammar.levels().iter().enumerate() {
            let decoded = expand_level_rules(level)?;
            let count = decoded.rule_count();
            let mut lcps = Vec::with_capacity(count);
            let mut suffix_lens = Vec::with_capacity(count);
            let mut suffixes = FixedWidthArray::new(level.sigma());
            let mut lengths = Vec::with_capacity(count);
            for i in 0..count {
                let rhs = decoded.rule(i);
                let lcp = if i % period == 0 {
                    0
                } else {
                    level.lcps()[i] as usize
                };
                lcps.push(lcp as u64);
                suffix_lens.push((rhs.len() - lcp) as u64);
                for &s in &rhs[lcp..] {
                    suffixes.push(s).map_err(|_| Error::CorruptGrammar)?;
                }
                let len = if j == 0 {
                    rhs.len() as u64
                } else {
                    let mut total = 0u64;
                    for &s in &rhs {
                        let len = *below.get(s as usize).ok_or(Error::CorruptGrammar)?;
                        total = total.checked_add(len).ok_or(Error::CorruptGrammar)?;
                    }
                    total
                };
                lengths.push(len);
            }
            levels.push(EfLevel {
                sigma: level.sigma(),
                lcp_sums: prefix_sum_ef(&lcps)?,
                suffix_sums: prefix_sum_ef(&suffix_lens)?,
                suffixes,
                lengths: DacArray::build(&lengths, DAC_BLOCK)?,
            });
            below = lengths;
        }
        let mut ex = Self {
            period,
            levels,
            final_sigma: grammar.final_sigma(),
            final_string: grammar.final_string().clone(),
            prefix_sums: Vec::new(),
            original_len: grammar.original_len(),
        };
        ex.prefix_sums = ex.compute_prefix_sums()?;
        Ok(ex)
    }

    pub(crate) fn compute_prefix_sums(&self) -> Result<Vec<u64>> {
        if self.original_len == 0 && self.final_string.is_empty() {
            return Ok(vec![0]);
        }
        let children = self.child_count();
        let mut sums = Vec::with_capacity(children + 1);
        let mut acc = 0u64;
        sums.push(0);
        for c in 0..children {
            let (t, x) = self.child(c);
            acc = acc
                .checked_add(self.item_len(t, x)?)
                .ok_or(Error::CorruptGrammar)?;
            sums.push(acc);
        }
        if acc != self.original_len + 1 {
            return Err(Error::CorruptGrammar);
        }
        Ok(sums)
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[EfLevel] {
        &self.levels
    }

    pub fn final_string(&self) -> &FixedWidthArray {
        &self.final_string
    }

    pub fn final_sigma(&self) -> u64 {
        self.final_sigma
    }

    pub fn original_len(&self) -> u64 {
        self.original_len
    }

    /// `P_S`: entry `c` is the text offset where child `c` starts; the last
    /// entry is the length of the text including the sentinel.
    pub fn prefix_sums(&self) -> &[u64] {
        &self.prefix_sums
    }

    fn child_count(&self) -> usize {
        self.levels.len() + self.final_string.len()
    }

    fn child(&self, c: usize) -> (usize, u64) {
        let depth = self.levels.len();
        if c < depth {
            (c + 1, 0)
        } else {
            (depth, self.final_string.get(c - depth))
        }
    }

    fn item_len(&self, t: usize, x: u64) -> Result<u64> {
        if t == 0 {
            return Ok(1);
        }
        let level = &self.levels[t - 1];
        level
            .lengths
            .try_get(x as usize)
            .map_err(|_| Error::RuleOutOfRange {
                level: t - 1,
                name: x,
            })
    }

    /// Expansion length of `name` at grammar level `level`.
    pub fn expansion_len(&self, level: usize, name: u64) -> Result<u64> {
        if level >= self.levels.len() {
            return Err(Error::RuleOutOfRange { level, name });
        }
        self.item_len(level + 1, name)
    }

    /// Full right-hand side of rule `name` of grammar level `level`.
    pub fn expand_rule(&self, level: usize, name: u64) -> Result<Vec<u64>> {
        Ok(self.expand_rule_traced(level, name)?.0)
    }

    /// Like [`Extractor::expand_rule`], also returning how many predecessors
    /// had to be visited.
    pub fn expand_rule_traced(&self, level: usize, name: u64) -> Result<(Vec<u64>, usize)> {
        let mut out = Vec::new();
        let depth = self.expand_rule_into(level, name, &mut out)?;
        Ok((out, depth))
    }

    fn expand_rule_into(&self, level: usize, name: u64, out: &mut Vec<u64>) -> Result<usize> {
        let lv = self
            .levels
            .get(level)
            .ok_or(Error::RuleOutOfRange { level, name })?;
        let i = name as usize;
        if i >= lv.rule_count() {
            return Err(Error::RuleOutOfRange { level, name });
        }
        // every period-th lcp is zero, so the walk back ends inside the block
        let block = i - i % self.period;
        let mut sums = [0u64; 65];
        let mut spill = Vec::new();
        let lcp_sums: &mut [u64] = if i - block < 64 {
            &mut sums[..i - block + 2]
        } else {
            spill.resize(i - block + 2, 0);
            &mut spill
        };
        let mut read = 0;
        for (slot, v) in lcp_sums.iter_mut().zip(lv.lcp_sums.iter_from(block)) {
            *slot = v;
            read += 1;
        }
        if read != lcp_sums.len() {
            return Err(Error::CorruptFrontCoding);
        }
        let start = block
            + (0..=i - block)
                .rev()
                .find(|&r| lcp_sums[r] == lcp_sums[r + 1])
                .ok_or(Error::CorruptFrontCoding)?;
        let base = out.len();
        let mut spans = lv.suffix_sums.iter_from(start);
        let mut lo = spans.next().ok_or(Error::CorruptFrontCoding)?;
        for r in start..=i {
            let hi = spans.next().ok_or(Error::CorruptFrontCoding)?;
            let lcp = (lcp_sums[r + 1 - block] - lcp_sums[r - block]) as usize;
            if base + lcp > out.len() || hi < lo {
                return Err(Error::CorruptFrontCoding);
            }
            out.truncate(base + lcp);
            lv.suffixes
                .extend_into(lo as usize, (hi - lo) as usize, out);
            lo = hi;
        }
        Ok(i - start)
    }

    /// Bytes `range` of the original text.
    pub fn extract(&self, range: Range<u64>) -> Result<Vec<u8>> {
        self.run(range, None)
    }

    /// Like [`Extractor::extract`], also reporting the windows it used.
    pub fn extract_traced(&self, range: Range<u64>) -> Result<(Vec<u8>, ExtractTrace)> {
        let mut trace = ExtractTrace::default();
        let out = self.run(range, Some(&mut trace))?;
        Ok((out, trace))
    }

    fn run(&self, range: Range<u64>, mut trace: Option<&mut ExtractTrace>) -> Result<Vec<u8>> {
        let (l, r) = (range.start, range.end);
        if l > r || r > self.original_len {
            return Err(Error::RangeOutOfBounds);
        }
        if l == r {
            return Ok(Vec::new());
        }
        let ps = &self.prefix_sums;
        // child a is the last one starting at or before l, child b the first
        // one ending at or after r
        let a = ps.partition_point(|&p| p <= l) - 1;
        let b = ps[1..].partition_point(|&p| p < r);
        let mut window: Vec<(usize, u64)> = (a..=b).map(|c| self.child(c)).collect();
        let mut gen_start = ps[a];
        let mut gen_end = ps[b + 1];
        if let Some(t) = trace.as_deref_mut() {
            t.children = a..b + 1;
            t.spans.push(gen_start..gen_end);
        }

        let mut next = Vec::new();
        let mut rhs = Vec::new();
        for t in (1..=self.levels.len()).rev() {
            next.clear();
            for &(lt, x) in &window {
                if lt != t {
                    next.push((lt, x));
                    continue;
                }
                rhs.clear();
                let back = self.expand_rule_into(t - 1, x, &mut rhs)?;
                if let Some(tr) = trace.as_deref_mut() {
                    tr.max_backtrack = tr.max_backtrack.max(back);
                }
                next.extend(rhs.iter().map(|&s| (t - 1, s)));
            }
            // trim both ends while the window still covers [l, r)
            let mut lo = 0;
            while lo < next.len() {
                let len = self.item_len(next[lo].0, next[lo].1)?;
                if gen_start + len > l {
                    break;
                }
                gen_start += len;
                lo += 1;
            }
            let mut hi = next.len();
            while hi > lo {
                let len = self.item_len(next[hi - 1].0, next[hi - 1].1)?;
                if gen_end - len < r {
                    break;
                }
                gen_end -= len;
                hi -= 1;
            }
            window.clear();
            window.extend_from_slice(&next[lo..hi]);
            if let Some(tr) = trace.as_deref_mut() {
                tr.spans.push(gen_start..gen_end);
            }
        }

        let skip = (l - gen_start) as usize;
        let take = (r - l) as usize;
        if window.len() < skip + take {
            return Err(Error::CorruptGrammar);
        }
        window[skip..skip + take]
            .iter()
            .map(|&(t, x)| match (t, x) {
                (0, 1..=256) => Ok((x - 1) as u8),
                _ => Err(Error::CorruptGrammar),
            })
            .collect()
    }

    /// Rebuilds the canonical grammar, with every lcp value restored to the
    /// true longest common prefix of neighbouring rules.
    pub fn to_grammar(&self) -> Result<Grammar> {
        let mut levels = Vec::with_capacity(self.levels.len());
        for lv in &self.levels {
            let count = lv.rule_count();
            let mut lcps = Vec::with_capacity(count);
            let mut suffix_lens = Vec::with_capacity(count);
            let mut suffixes = FixedWidthArray::new(lv.sigma);
            let mut prev: Vec<u64> = Vec::new();
            let mut cur: Vec<u64> = Vec::new();
            for i in 0..count {
                let lcp = lv.lcp(i) as usize;
                if lcp > prev.len() || (lcp > 0 && i < 2) {
                    return Err(Error::CorruptFrontCoding);
                }
                cur.clear();
                cur.extend_from_slice(&prev[..lcp]);
                let (lo, len) = lv.suffix_span(i);
                lv.suffixes.extend_into(lo, len, &mut cur);
                let true_lcp = if i < 2 {
                    0
                } else {
                    prev.iter().zip(&cur).take_while(|(x, y)| x == y).count()
                };
                lcps.push(true_lcp as u64);
                suffix_lens.push((cur.len() - true_lcp) as u64);
                for &s in &cur[true_lcp..] {
                    suffixes.push(s).map_err(|_| Error::CorruptGrammar)?;
                }
                std::mem::swap(&mut prev, &mut cur);
            }
            levels.push(GrammarLevel::from_parts(
                lv.sigma,
                lcps,
                suffix_lens,
                suffixes,
            )?);
        }
        Ok(Grammar::from_parts(
            levels,
            self.final_sigma,
            self.final_string.clone(),
            self.original_len,
        ))
    }
}

fn prefix_sum_ef(values: &[u64]) -> Result<EliasFano> {
    let mut sums = Vec::with_capacity(values.len() + 1);
    let mut acc = 0u64;
    sums.push(0);
    for &v in values {
        acc = acc.checked_add(v).ok_or(Error::CorruptGrammar)?;
        sums.push(acc);
    }
    Ok(EliasFano::build(&sums, acc.saturating_add(1))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::compress;

    fn shifted(s: &[u8]) -> Vec<u64> {
        s.iter().map(|&b| b as u64 + 1).collect()
    }

    #[test]
    fn banana_index() {
        let ex = Extractor::new(&compress(b"banana")).unwrap();
        assert_eq!(ex.prefix_sums(), &[0, 1, 3, 6, 7]);
        assert_eq!(ex.expand_rule(0, 2).unwrap(), shifted(b"ana"));
        assert_eq!(ex.expand_rule(0, 3).unwrap(), shifted(b"an"));
        assert_eq!(ex.expand_rule(0, 0).unwrap(), shifted(b"b"));
        assert_eq!(ex.expansion_len(0, 1).unwrap(), 1);
        assert!(matches!(
            ex.expand_rule(0, 4),
            Err(Error::RuleOutOfRange { level: 0, name: 4 })
        ));
    }

    #[test]
    fn banana_slices() {
        let ex = Extractor::new(&compress(b"banana")).unwrap();
        let (s, trace) = ex.extract_traced(2..5).unwrap();
        assert_eq!(s, b"nan");
        assert_eq!(trace.children, 1..3);
        assert_eq!(trace.spans[0], 1..6);
        assert_eq!(ex.extract(0..6).unwrap(), b"banana");
        assert_eq!(ex.extract(3..3).unwrap(), b"");
        assert_eq!(ex.extract(4..7), Err(Error::RangeOutOfBounds));
    }

    #[test]
    fn reset_rules_need_no_backtracking() {
        let text: Vec<u8> = (0..20_000u32)
            .map(|i| b"abcab"[(i * i % 5) as usize])
            .collect();
        let g = compress(&text);
        let ex = Extractor::with_period(&g, 4).unwrap();
        for (j, lv) in ex.levels().iter().enumerate() {
            for i in 0..lv.rule_count() {
                let (_, back) = ex.expand_rule_traced(j, i as u64).unwrap();
                assert!(back < 4);
                if i % 4 == 0 {
                    assert_eq!(back, 0);
                }
            }
        }
        assert_eq!(ex.to_grammar().unwrap(), g);
    }

    #[test]
    fn tiny_grammars() {
        let ex = Extractor::new(&compress(b"x")).unwrap();
        assert_eq!(ex.prefix_sums(), &[0, 1, 2]);
        assert_eq!(ex.extract(0..1).unwrap(), b"x");
        let ex = Extractor::new(&compress(b"")).unwrap();
        assert_eq!(ex.extract(0..0).unwrap(), b"");
        assert_eq!(ex.extract(0..1), Err(Error::RangeOutOfBounds));
    }
}
