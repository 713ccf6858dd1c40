//! Suffix array and LCP array as a byproduct of decompression.
//!
//! The final string of a grammar has pairwise distinct symbols, so its suffix
//! array is its inverse permutation. Going down one level, the suffix order
//! of the reduced string is the order of the LMS suffixes of the level below,
//! and the induced-sorting passes complete the suffix array of that level.
//!
//! At the byte level the LCP array can be produced along the way: the lcp
//! values of neighbouring LMS suffixes come from a sparse variant of the Φ
//! algorithm, and the induction passes derive every other value from range
//! minima over the values already placed.
//!
//! Positions are zero-based and cover the sentinel, so `sa[0]` is always the
//! position of the sentinel, `text.len()`.

use crate::decode::{expand_level_rules, level_limit, rewrite_level, symbols_to_bytes};
use crate::error::{Error, Result};
use crate::grammar::Grammar;
use crate::index::{fits, Index};
use crate::sais::{induce_from_sorted_lms, BucketTable};
use crate::textcore::{classify_types, lms_positions, SuffixTypes};

/// Decompressed text with its suffix array and, optionally, its LCP array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuffixArtifacts<I: Index = u64> {
    pub text: Vec<u8>,
    /// Suffix array of `text` plus sentinel; `text.len() + 1` entries.
    pub sa: Vec<I>,
    /// `lcp[i]` is the lcp of suffixes `sa[i - 1]` and `sa[i]`; `lcp[0] = 0`.
    pub lcp: Option<Vec<I>>,
}

/// Decompresses `grammar` and induces the suffix array on the way down.
pub fn decompress_with_sa<I: Index>(grammar: &Grammar) -> Result<SuffixArtifacts<I>> {
    run(grammar, false)
}

/// Decompresses `grammar` and induces both suffix array and LCP array.
pub fn decompress_with_sa_lcp<I: Index>(grammar: &Grammar) -> Result<SuffixArtifacts<I>> {
    run(grammar, true)
}

fn run<I: Index>(grammar: &Grammar, want_lcp: bool) -> Result<SuffixArtifacts<I>> {
    let n = grammar.original_len() as usize + 1;
    if !fits::<I>(n) {
        return Err(Error::TextTooLong(n));
    }
    let mut upper: Vec<I> = grammar
        .final_string()
        .iter()
        .map(|v| I::from_usize(v as usize))
        .collect();
    if grammar.depth() == 0 {
        if upper.is_empty() {
            upper.push(I::from_usize(0));
        }
        return small_text(upper, grammar.original_len(), want_lcp);
    }

    // the final symbols are distinct, so the suffix array inverts the string
    let m = upper.len();
    let mut sa_upper = vec![I::EMPTY; m];
    for (i, &c) in upper.iter().enumerate() {
        let c = c.as_usize();
        if c == 0 || c > m || sa_upper[c - 1] != I::EMPTY {
            return Err(Error::CorruptGrammar);
        }
        sa_upper[c - 1] = I::from_usize(i);
    }

    let mut lcp = None;
    for (j, level) in grammar.levels().iter().enumerate().rev() {
        let rules = expand_level_rules(level)?;
        let mut text: Vec<I> = Vec::new();
        let limit = level_limit(grammar, j);
        rewrite_level(&rules, upper.iter().copied(), &mut text, limit, |v| {
            I::from_usize(v as usize)
        })?;
        drop(rules);
        let types = classify_types(&text)?;
        let lms = lms_positions(&types);
        if lms.len() != upper.len() {
            return Err(Error::CorruptGrammar);
        }
        let sorted: Vec<I> = sa_upper
            .iter()
            .map(|r| I::from_usize(lms[r.as_usize()]))
            .collect();
        drop(sa_upper);
        let sigma = level.sigma() as usize + 1;
        // the scans below rely on a unique smallest symbol at the end
        let (&last, body) = text.split_last().ok_or(Error::CorruptGrammar)?;
        let end = last.as_usize();
        if end >= sigma
            || body
                .iter()
                .any(|c| c.as_usize() <= end || c.as_usize() >= sigma)
        {
            return Err(Error::CorruptGrammar);
        }
        let sa = if j == 0 && want_lcp {
            let (sa, l) = induce_with_lcp(&text, &types, &lms, &sorted, sigma);
            lcp = Some(l);
            sa
        } else {
            induce_from_sorted_lms(&text, &types, &sorted, sigma)
        };
        if sa.contains(&I::EMPTY) {
            return Err(Error::CorruptGrammar);
        }
        sa_upper = sa;
        upper = text;
    }
    let text = symbols_to_bytes(&upper, grammar.original_len(), |v| v.as_usize() as u64)?;
    Ok(SuffixArtifacts {
        text,
        sa: sa_upper,
        lcp: if want_lcp { lcp } else { None },
    })
}

/// Texts of at most two symbols (sentinel included) are sorted directly.
fn small_text<I: Index>(
    symbols: Vec<I>,
    original_len: u64,
    want_lcp: bool,
) -> Result<SuffixArtifacts<I>> {
    let text = symbols_to_bytes(&symbols, original_len, |v| v.as_usize() as u64)?;
    let n = symbols.len();
    let sa = (0..n).rev().map(I::from_usize).collect();
    Ok(SuffixArtifacts {
        text,
        sa,
        lcp: want_lcp.then(|| vec![I::from_usize(0); n]),
    })
}

/// Length of the common prefix of two suffixes of a sentinel-terminated text.
#[inline]
fn direct_lcp<I: Index>(text: &[I], a: usize, b: usize) -> usize {
    if a == b {
        return text.len() - a;
    }
    text[a..]
        .iter()
        .zip(&text[b..])
        .take_while(|(x, y)| x == y)
        .count()
}

/// lcp of every LMS suffix with its predecessor in sorted LMS order, indexed
/// by sorted rank.
///
/// Φ maps each LMS suffix to its sorted predecessor. Walking the LMS
/// positions left to right, a value `h` at `p` carries over as `h - d` to the
/// next LMS position `p + d` when the shifted predecessor is an LMS suffix
/// too, which holds as soon as the equal-symbol run at `p + d` ends inside
/// the shared prefix. Otherwise the comparison restarts from zero; the extra
/// work is bounded by that run, and runs at distinct LMS positions are
/// disjoint.
fn sparse_phi_lcp<I: Index>(text: &[I], lms: &[usize], sorted: &[I]) -> Vec<usize> {
    let m = lms.len();
    let mut ordinal = vec![usize::MAX; text.len() / 2 + 1];
    for (k, &p) in lms.iter().enumerate() {
        ordinal[p >> 1] = k;
    }
    let mut phi = vec![usize::MAX; m];
    for w in sorted.windows(2) {
        phi[ordinal[w[1].as_usize() >> 1]] = w[0].as_usize();
    }
    let mut plcp = vec![0usize; m];
    let mut h = 0usize;
    for k in 0..m {
        let p = lms[k];
        match phi[k] {
            usize::MAX => h = 0,
            q => {
                // bounds are checked since a damaged grammar can give a bogus order
                while q + h < text.len() && p + h < text.len() && text[p + h] == text[q + h] {
                    h += 1;
                }
            }
        }
        plcp[k] = h;
        if let Some(&x) = lms.get(k + 1) {
            let d = x - p;
            let keep = h > d && {
                let c = text[x];
                let limit = p + h;
                (x + 1..limit).any(|y| text[y] != c)
            };
            h = if keep { h - d } else { 0 };
        }
    }
    sorted
        .iter()
        .map(|&p| plcp[ordinal[p.as_usize() >> 1]])
        .collect()
}

/// Range minima for the induction passes.
///
/// Values are fed one per scan step. The stack keeps `(step, value)` pairs
/// with strictly increasing values, so the minimum of everything fed after a
/// given step is the value of the first entry past that step. `mark` records
/// the step at which a bucket was last served.
struct MinStack {
    entries: Vec<(usize, usize)>,
    last: Vec<usize>,
    step: usize,
}

impl MinStack {
    fn new(sigma: usize) -> Self {
        Self {
            entries: Vec::new(),
            last: vec![0; sigma],
            step: 0,
        }
    }

    #[inline]
    fn feed(&mut self, v: usize) {
        self.step += 1;
        while self.entries.last().is_some_and(|e| e.1 >= v) {
            self.entries.pop();
        }
        self.entries.push((self.step, v));
    }

    /// Minimum of the values fed since bucket `c` was last marked.
    #[inline]
    fn query(&self, c: usize) -> usize {
        let since = self.last[c];
        let i = self.entries.partition_point(|e| e.0 <= since);
        self.entries.get(i).map_or(usize::MAX, |e| e.1)
    }

    #[inline]
    fn mark(&mut self, c: usize) {
        self.last[c] = self.step;
    }
}

/// Induces suffix array and LCP array from the sorted LMS suffixes.
fn induce_with_lcp<I: Index>(
    text: &[I],
    types: &SuffixTypes,
    lms: &[usize],
    sorted: &[I],
    sigma: usize,
) -> (Vec<I>, Vec<I>) {
    let n = text.len();
    let zero = I::from_usize(0);
    if n == 1 {
        return (vec![zero], vec![zero]);
    }
    let buckets = BucketTable::new(text, sigma);
    let mut sa = vec![I::EMPTY; n];
    let mut lcp = vec![zero; n];

    // seed the LMS suffixes at the bucket tails with their lcp values
    let lms_lcp = sparse_phi_lcp(text, lms, sorted);
    let mut tails = buckets.tails();
    let mut first_lms = vec![usize::MAX; sigma];
    for (r, &p) in sorted.iter().enumerate().rev() {
        let c = text[p.as_usize()].as_usize();
        tails[c] -= 1;
        let s = tails[c];
        sa[s] = p;
        first_lms[c] = s;
        let same_bucket = r > 0 && text[sorted[r - 1].as_usize()].as_usize() == c;
        lcp[s] = I::from_usize(if same_bucket { lms_lcp[r] } else { 0 });
    }

    // L-suffixes, left to right
    let mut heads = buckets.heads();
    let mut stack = MinStack::new(sigma);
    for k in 0..n {
        let p = sa[k];
        if p == I::EMPTY {
            continue;
        }
        let p = p.as_usize();
        let ck = text[p].as_usize();
        if k == first_lms[ck] && types.is_lms(p) {
            // the last L-suffix of this bucket is final by now
            let v = if heads[ck] > buckets.start(ck) {
                direct_lcp(text, sa[heads[ck] - 1].as_usize(), p)
            } else {
                0
            };
            lcp[k] = I::from_usize(v);
        }
        stack.feed(lcp[k].as_usize());
        if p == 0 || !types.is_l(p - 1) {
            continue;
        }
        let c = text[p - 1].as_usize();
        let s = heads[c];
        let v = if s == buckets.start(c) {
            0
        } else {
            stack.query(c) + 1
        };
        sa[s] = I::from_usize(p - 1);
        lcp[s] = I::from_usize(v);
        stack.mark(c);
        heads[c] += 1;
    }

    // S-suffixes, right to left; heads now mark the first S slot of each bucket
    let first_s = heads;
    let mut tails = buckets.tails();
    let mut stack = MinStack::new(sigma);
    for k in (0..n).rev() {
        if sa[k] == I::EMPTY {
            continue;
        }
        let p = sa[k].as_usize();
        let ck = text[p].as_usize();
        if k == first_s[ck] {
            let v = if k > buckets.start(ck) {
                direct_lcp(text, sa[k - 1].as_usize(), p)
            } else {
                0
            };
            lcp[k] = I::from_usize(v);
        }
        if p > 0 && types.is_s(p - 1) {
            let c = text[p - 1].as_usize();
            tails[c] -= 1;
            let s = tails[c];
            sa[s] = I::from_usize(p - 1);
            if s + 1 < buckets.end(c) {
                lcp[s + 1] = I::from_usize(stack.query(c) + 1);
            }
            stack.mark(c);
        }
        stack.feed(lcp[k].as_usize());
    }
    (sa, lcp)
}
