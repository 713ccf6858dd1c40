//! Induced suffix sorting.
//!
//! The passes follow the usual four steps: sort the LMS-substrings, seed the
//! bucket tails with the sorted LMS suffixes, induce L-suffixes left to
//! right, then induce S-suffixes right to left. Naming compares whole
//! LMS-substrings (symbol, then type) and records, in the same scan, the
//! longest common prefix of the cut factors that become grammar rules.
//!
//! Texts are slices of an [`Index`] type whose last symbol is the unique
//! smallest one. All positions are zero-based.

use crate::error::{Error, Result};
use crate::index::{fits, Index};
use crate::textcore::{classify_types, lms_positions, SuffixTypes, Text};

/// Bucket boundaries: bucket `c` occupies `[start(c), end(c))` of the suffix array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BucketTable {
    bounds: Vec<usize>,
}

impl BucketTable {
    pub fn new<I: Index>(text: &[I], sigma: usize) -> Self {
        let mut bounds = vec![0usize; sigma + 1];
        for &c in text {
            bounds[c.as_usize() + 1] += 1;
        }
        for c in 1..=sigma {
            bounds[c] += bounds[c - 1];
        }
        Self { bounds }
    }

    #[inline]
    pub fn start(&self, c: usize) -> usize {
        self.bounds[c]
    }

    #[inline]
    pub fn end(&self, c: usize) -> usize {
        self.bounds[c + 1]
    }

    /// Fresh head pointers, one per symbol.
    pub fn heads(&self) -> Vec<usize> {
        self.bounds[..self.bounds.len() - 1].to_vec()
    }

    /// Fresh tail pointers (exclusive), one per symbol.
    pub fn tails(&self) -> Vec<usize> {
        self.bounds[1..].to_vec()
    }

    pub fn sigma(&self) -> usize {
        self.bounds.len() - 1
    }
}

fn alphabet_size<I: Index>(text: &[I]) -> usize {
    text.iter().map(|c| c.as_usize()).max().map_or(1, |m| m + 1)
}

/// Step 3: left-to-right scan placing L-suffixes at bucket heads.
pub(crate) fn induce_l<I: Index>(
    text: &[I],
    types: &SuffixTypes,
    buckets: &BucketTable,
    sa: &mut [I],
) {
    let mut heads = buckets.heads();
    for i in 0..sa.len() {
        let p = sa[i];
        if p == I::EMPTY || p.as_usize() == 0 {
            continue;
        }
        let q = p.as_usize() - 1;
        if types.is_l(q) {
            let c = text[q].as_usize();
            sa[heads[c]] = I::from_usize(q);
            heads[c] += 1;
        }
    }
}

/// Step 4: right-to-left scan placing S-suffixes at bucket tails.
pub(crate) fn induce_s<I: Index>(
    text: &[I],
    types: &SuffixTypes,
    buckets: &BucketTable,
    sa: &mut [I],
) {
    let mut tails = buckets.tails();
    for i in (0..sa.len()).rev() {
        let p = sa[i];
        if p == I::EMPTY || p.as_usize() == 0 {
            continue;
        }
        let q = p.as_usize() - 1;
        if types.is_s(q) {
            let c = text[q].as_usize();
            tails[c] -= 1;
            sa[tails[c]] = I::from_usize(q);
        }
    }
}

/// Step 1: orders the LMS-substrings of `text` and returns their start
/// positions in that order (the sentinel substring comes first).
///
/// Equal LMS-substrings end up adjacent in unspecified relative order.
pub fn sort_lms_substrings<I: Index>(text: &[I], sigma: usize) -> Result<Vec<I>> {
    let types = classify_types(text)?;
    Ok(sort_lms_substrings_with(text, &types, sigma))
}

pub(crate) fn sort_lms_substrings_with<I: Index>(
    text: &[I],
    types: &SuffixTypes,
    sigma: usize,
) -> Vec<I> {
    let n = text.len();
    if n < 2 {
        return Vec::new();
    }
    let buckets = BucketTable::new(text, sigma);
    let mut sa = vec![I::EMPTY; n];
    let mut tails = buckets.tails();
    for i in (1..n).rev() {
        if types.is_lms(i) {
            let c = text[i].as_usize();
            tails[c] -= 1;
            sa[tails[c]] = I::from_usize(i);
        }
    }
    induce_l(text, types, &buckets, &mut sa);
    induce_s(text, types, &buckets, &mut sa);
    sa.into_iter()
        .filter(|&p| p != I::EMPTY && types.is_lms(p.as_usize()))
        .collect()
}

/// Steps 2–4: induces the full suffix array from correctly ordered LMS suffixes.
pub fn induce_from_sorted_lms<I: Index>(
    text: &[I],
    types: &SuffixTypes,
    sorted_lms: &[I],
    sigma: usize,
) -> Vec<I> {
    let n = text.len();
    if n == 1 {
        return vec![I::from_usize(0)];
    }
    let buckets = BucketTable::new(text, sigma);
    let mut sa = vec![I::EMPTY; n];
    seed_lms(text, &buckets, sorted_lms, &mut sa);
    induce_l(text, types, &buckets, &mut sa);
    induce_s(text, types, &buckets, &mut sa);
    sa
}

/// Step 2: writes the sorted LMS suffixes to the tails of their buckets,
/// keeping their relative order.
pub(crate) fn seed_lms<I: Index>(
    text: &[I],
    buckets: &BucketTable,
    sorted_lms: &[I],
    sa: &mut [I],
) {
    let mut tails = buckets.tails();
    for &p in sorted_lms.iter().rev() {
        let c = text[p.as_usize()].as_usize();
        tails[c] -= 1;
        sa[tails[c]] = p;
    }
}

/// Names of the LMS-substrings plus the front-coding data of the distinct
/// ones, in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamingResult {
    /// Name of each LMS-substring in text order, in `[1, sigma_next]`.
    pub names: Vec<usize>,
    /// Start position of one occurrence of each distinct substring, sorted.
    pub rule_starts: Vec<usize>,
    /// Length of each distinct cut factor (up to the next LMS position).
    pub rule_lens: Vec<usize>,
    /// lcp of consecutive distinct cut factors; 0 for the first.
    pub sorted_lcp: Vec<usize>,
    /// Number of distinct LMS-substrings.
    pub sigma_next: usize,
}

/// Assigns names to sorted LMS-substrings.
///
/// Two neighbours receive the same name iff their full LMS-substrings (the
/// span up to and including the next LMS position) agree in every symbol and
/// type. The types need no separate check: they follow from the symbols once
/// both spans end on an S-type position. The lcp recorded for the front coder is taken over the cut factors.
pub fn name_lms<I: Index>(
    text: &[I],
    _types: &SuffixTypes,
    sorted_lms: &[I],
    lms: &[usize],
) -> NamingResult {
    let n = text.len();
    // LMS positions are at least two apart, so p / 2 is a collision-free slot.
    let mut ordinal = vec![usize::MAX; n / 2 + 1];
    for (k, &p) in lms.iter().enumerate() {
        ordinal[p >> 1] = k;
    }
    let cut_end = |k: usize| lms.get(k + 1).copied().unwrap_or(n);
    // inclusive end of the full LMS-substring
    let full_end = |k: usize| lms.get(k + 1).copied().unwrap_or(n - 1);

    let mut names = vec![0usize; lms.len()];
    let mut rule_starts = Vec::new();
    let mut rule_lens = Vec::new();
    let mut sorted_lcp = Vec::new();
    let mut name = 0usize;
    let mut prev: Option<(usize, usize)> = None;
    for &p in sorted_lms {
        let p = p.as_usize();
        let k = ordinal[p >> 1];
        let (cut, full) = (cut_end(k) - p, full_end(k) - p);
        let (same, lcp) = match prev {
            None => (false, 0),
            Some((q, kq)) => {
                let (qcut, qfull) = (cut_end(kq) - q, full_end(kq) - q);
                let max = full.min(qfull) + 1;
                let eq = (0..max).take_while(|&t| text[p + t] == text[q + t]).count();
                // both substrings end on an S-type position, so equal symbols
                // over equal lengths force equal types
                (full == qfull && eq == max, eq.min(cut.min(qcut)))
            }
        };
        if !same {
            name += 1;
            rule_starts.push(p);
            rule_lens.push(cut);
            sorted_lcp.push(lcp);
        }
        names[k] = name;
        prev = Some((p, k));
    }
    NamingResult {
        names,
        rule_starts,
        rule_lens,
        sorted_lcp,
        sigma_next: name,
    }
}

/// Linear-time suffix array of an internal text whose last symbol is the
/// unique smallest one. `sigma` bounds the symbol values.
pub fn build_suffix_array<I: Index>(text: &[I], sigma: usize) -> Result<Vec<I>> {
    if text.is_empty() {
        return Err(Error::EmptyText);
    }
    Ok(sais_rec(text, sigma))
}

fn sais_rec<I: Index>(text: &[I], sigma: usize) -> Vec<I> {
    let n = text.len();
    if n == 1 {
        return vec![I::from_usize(0)];
    }
    let types = classify_types(text).expect("non-empty");
    let lms = lms_positions(&types);
    let sorted = sort_lms_substrings_with(text, &types, sigma);
    let naming = name_lms(text, &types, &sorted, &lms);
    let lms_order: Vec<I> = if naming.sigma_next == lms.len() {
        sorted
    } else {
        let reduced: Vec<I> = naming.names.iter().map(|&v| I::from_usize(v)).collect();
        let sub = sais_rec(&reduced, naming.sigma_next + 1);
        sub.into_iter()
            .map(|r| I::from_usize(lms[r.as_usize()]))
            .collect()
    };
    induce_from_sorted_lms(text, &types, &lms_order, sigma)
}

/// Suffix array of `bytes` with the virtual sentinel; the first entry is
/// always the sentinel position `bytes.len()`.
pub fn suffix_array_of_bytes<I: Index>(bytes: &[u8]) -> Result<Vec<I>> {
    let text = Text::new(bytes);
    if !fits::<I>(text.len()) {
        return Err(Error::TextTooLong(text.len()));
    }
    let symbols = text.symbols::<I>();
    build_suffix_array(&symbols, alphabet_size(&symbols))
}
