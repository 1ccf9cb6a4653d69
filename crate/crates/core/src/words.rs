//! Strings over finite alphabets: histograms, the imbalance measure `tau`,
//! anagramish detection, `ell`-periodicity, near-anagramish substring search,
//! backtracking search for long anagram-free words, and the probe-bounded
//! minimal core alphabet procedure.
//!
//! A word of even length `2r` is *anagramish* when its first half is an
//! anagram (permutation) of its second half. `tau` sums, over symbols, the
//! absolute difference between the two half counts; `tau == 0` iff the word
//! is anagramish. A word is *anagram-free* when no substring is anagramish.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    EmptyAlphabet,
    DuplicateSymbol(String),
    LetterOutOfRange {
        position: usize,
        letter: u32,
        alphabet_size: usize,
    },
    WindowOutOfRange {
        lo: usize,
        hi: usize,
        len: usize,
    },
    OddLength(usize),
    /// No sub-alphabet supports the predicate up to the probe horizon.
    NoCoreAlphabet {
        n_probe: usize,
    },
    BadParameter(&'static str),
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::EmptyAlphabet => write!(f, "alphabet must be non-empty"),
            WordError::DuplicateSymbol(s) => write!(f, "duplicate alphabet symbol {s:?}"),
            WordError::LetterOutOfRange {
                position,
                letter,
                alphabet_size,
            } => write!(
                f,
                "letter {letter} at position {position} exceeds alphabet size {alphabet_size}"
            ),
            WordError::WindowOutOfRange { lo, hi, len } => {
                write!(f, "window [{lo}, {hi}) out of range for word of length {len}")
            }
            WordError::OddLength(n) => write!(f, "operation requires even length, got {n}"),
            WordError::NoCoreAlphabet { n_probe } => {
                write!(f, "no sub-alphabet admits witnesses up to probe length {n_probe}")
            }
            WordError::BadParameter(msg) => write!(f, "bad parameter: {msg}"),
        }
    }
}

/// An ordered set of distinct symbol tokens. Symbol indices are positions in
/// this list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new(symbols: Vec<String>) -> Result<Self, WordError> {
        if symbols.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if !seen.insert(s.clone()) {
                return Err(WordError::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Lowercase letters `a..`, for up to 26 symbols.
    pub fn lowercase(k: usize) -> Result<Self, WordError> {
        if k == 0 || k > 26 {
            return Err(WordError::BadParameter("lowercase alphabet size must be 1..=26"));
        }
        Alphabet::new(
            (0..k)
                .map(|i| char::from(b'a' + i as u8).to_string())
                .collect(),
        )
    }

    /// Numeric tokens `"1".."k"`, used for colour alphabets.
    pub fn numeric(k: usize) -> Result<Self, WordError> {
        if k == 0 {
            return Err(WordError::EmptyAlphabet);
        }
        Alphabet::new((1..=k).map(|i| i.to_string()).collect())
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == token)
    }
}

/// A finite sequence of symbol indices over an [`Alphabet`]. The empty word
/// is permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<u32>,
}

impl Word {
    pub fn new(alphabet: Alphabet, letters: Vec<u32>) -> Result<Self, WordError> {
        for (position, &letter) in letters.iter().enumerate() {
            if letter as usize >= alphabet.size() {
                return Err(WordError::LetterOutOfRange {
                    position,
                    letter,
                    alphabet_size: alphabet.size(),
                });
            }
        }
        Ok(Word { alphabet, letters })
    }

    /// Build a word from single characters; the alphabet is the sorted set of
    /// distinct characters appearing in `text`.
    pub fn from_chars(text: &str) -> Result<Self, WordError> {
        let mut distinct: Vec<char> = text.chars().collect();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.is_empty() {
            // Empty word over a dummy single-symbol alphabet.
            return Word::new(Alphabet::lowercase(1)?, Vec::new());
        }
        let alphabet = Alphabet::new(distinct.iter().map(|c| c.to_string()).collect())?;
        let letters = text
            .chars()
            .map(|c| distinct.iter().position(|&d| d == c).unwrap() as u32)
            .collect();
        Ok(Word { alphabet, letters })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            alphabet: self.alphabet.clone(),
            letters,
        }
    }

    /// Symbols that actually occur, as a sorted list of indices.
    pub fn occurring_symbols(&self) -> Vec<u32> {
        let mut present = vec![false; self.alphabet.size()];
        for &l in &self.letters {
            present[l as usize] = true;
        }
        (0..self.alphabet.size() as u32)
            .filter(|&a| present[a as usize])
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let contiguous = self.alphabet.symbols.iter().all(|s| s.chars().count() == 1);
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 && !contiguous {
                write!(f, ",")?;
            }
            write!(f, "{}", self.alphabet.symbol(l as usize))?;
        }
        Ok(())
    }
}

/// Per-symbol occurrence counts of a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Prefix-sum table over a word. Any window histogram query costs time
/// proportional to the alphabet size only.
#[derive(Debug, Clone)]
pub struct PrefixHistograms {
    k: usize,
    n: usize,
    // Row-major: pre[i * k + a] = occurrences of symbol a in positions [0, i).
    pre: Vec<u64>,
}

impl PrefixHistograms {
    pub fn new(w: &Word) -> Self {
        let k = w.alphabet.size();
        let n = w.len();
        let mut pre = vec![0u64; (n + 1) * k];
        for (i, &l) in w.letters.iter().enumerate() {
            let (src, dst) = pre.split_at_mut((i + 1) * k);
            dst[..k].copy_from_slice(&src[i * k..]);
            dst[l as usize] += 1;
        }
        PrefixHistograms { k, n, pre }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn count(&self, a: usize, i: usize, j: usize) -> u64 {
        self.pre[j * self.k + a] - self.pre[i * self.k + a]
    }

    pub fn window(&self, i: usize, j: usize) -> Result<Histogram, WordError> {
        if i > j || j > self.n {
            return Err(WordError::WindowOutOfRange {
                lo: i,
                hi: j,
                len: self.n,
            });
        }
        Ok(Histogram {
            counts: (0..self.k).map(|a| self.count(a, i, j)).collect(),
        })
    }

    /// tau of the even-length window [i, j).
    pub fn tau(&self, i: usize, j: usize) -> u64 {
        debug_assert!((j - i) % 2 == 0);
        let mid = i + (j - i) / 2;
        (0..self.k)
            .map(|a| self.count(a, i, mid).abs_diff(self.count(a, mid, j)))
            .sum()
    }
}

/// Histogram of the window `[i, j)` of `w`.
pub fn histogram(w: &Word, i: usize, j: usize) -> Result<Histogram, WordError> {
    PrefixHistograms::new(w).window(i, j)
}

/// Signed half-count differences and the imbalance measure tau.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImbalanceReport {
    /// delta_a = first-half count minus second-half count, per symbol.
    pub per_symbol_delta: Vec<i64>,
    /// tau_a = |delta_a|.
    pub per_symbol_tau: Vec<u64>,
    /// tau = sum of tau_a. Zero iff the word is anagramish.
    pub tau: u64,
}

pub fn imbalance(w: &Word) -> Result<ImbalanceReport, WordError> {
    if w.len() % 2 != 0 {
        return Err(WordError::OddLength(w.len()));
    }
    let pre = PrefixHistograms::new(w);
    let mid = w.len() / 2;
    let k = w.alphabet.size();
    let per_symbol_delta: Vec<i64> = (0..k)
        .map(|a| pre.count(a, 0, mid) as i64 - pre.count(a, mid, w.len()) as i64)
        .collect();
    let per_symbol_tau: Vec<u64> = per_symbol_delta.iter().map(|d| d.unsigned_abs()).collect();
    let tau = per_symbol_tau.iter().sum();
    Ok(ImbalanceReport {
        per_symbol_delta,
        per_symbol_tau,
        tau,
    })
}

/// True iff `w` has even length at least 2 and its halves are anagrams.
/// Odd-length and empty words are simply not anagramish.
pub fn is_anagramish(w: &Word) -> bool {
    if w.len() < 2 || w.len() % 2 != 0 {
        return false;
    }
    imbalance(w).map(|r| r.tau == 0).unwrap_or(false)
}

/// An even-length substring located inside a longer word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubstringWitness {
    /// 0-based start offset.
    pub offset: usize,
    /// Total length 2r.
    pub length: usize,
    /// Half length r.
    pub half_length: usize,
    pub tau_value: u64,
}

/// First (by offset, then length) anagramish substring of `w`, or `None` if
/// `w` is anagram-free. O(n^2 * |alphabet|).
pub fn find_anagramish_substring(w: &Word) -> Option<SubstringWitness> {
    let pre = PrefixHistograms::new(w);
    let n = w.len();
    for offset in 0..n {
        let mut length = 2;
        while offset + length <= n {
            let tau = pre.tau(offset, offset + length);
            if tau == 0 {
                return Some(SubstringWitness {
                    offset,
                    length,
                    half_length: length / 2,
                    tau_value: 0,
                });
            }
            length += 2;
        }
    }
    None
}

/// True iff every length-`ell` substring of `w` contains every symbol of the
/// alphabet of symbols actually occurring in `w`. Vacuously true when
/// `|w| < ell`. Set `declared` to check against the declared alphabet instead.
pub fn is_ell_periodic(w: &Word, ell: usize, declared: bool) -> Result<bool, WordError> {
    if ell == 0 {
        return Err(WordError::BadParameter("ell must be positive"));
    }
    let required: Vec<u32> = if declared {
        (0..w.alphabet.size() as u32).collect()
    } else {
        w.occurring_symbols()
    };
    if w.len() < ell {
        return Ok(true);
    }
    let pre = PrefixHistograms::new(w);
    for i in 0..=w.len() - ell {
        for &a in &required {
            if pre.count(a as usize, i, i + ell) == 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Best near-anagramish substring of `w`: length `2r >= 2*r0` with
/// `tau <= eps * r`, minimizing `tau / r` (ties: smallest offset, then
/// smallest length). Exhaustive scan with prefix histograms.
pub fn find_near_anagramish(
    w: &Word,
    r0: usize,
    eps: Rational,
) -> Result<Option<SubstringWitness>, WordError> {
    if r0 == 0 {
        return Err(WordError::BadParameter("r0 must be positive"));
    }
    if *eps.numer() <= 0 || *eps.denom() <= 0 {
        return Err(WordError::BadParameter("eps must be positive"));
    }
    let (num, den) = (*eps.numer() as u128, *eps.denom() as u128);
    let pre = PrefixHistograms::new(w);
    let n = w.len();
    let mut best: Option<SubstringWitness> = None;
    for offset in 0..n {
        let mut r = r0;
        while offset + 2 * r <= n {
            let tau = pre.tau(offset, offset + 2 * r);
            // tau <= eps * r, exactly.
            if (tau as u128) * den <= num * (r as u128) {
                let better = match &best {
                    None => true,
                    // tau/r < best.tau/best.r, exactly.
                    Some(b) => {
                        (tau as u128) * (b.half_length as u128)
                            < (b.tau_value as u128) * (r as u128)
                    }
                };
                if better {
                    best = Some(SubstringWitness {
                        offset,
                        length: 2 * r,
                        half_length: r,
                        tau_value: tau,
                    });
                }
            }
            r += 1;
        }
    }
    Ok(best)
}

/// Options for the backtracking anagram-free word search.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub max_len: usize,
    /// Total node-expansion budget; divided evenly across first-letter
    /// subtrees so results are independent of how subtrees are scheduled.
    pub node_budget: u64,
    /// Restrict to words whose distinct symbols first occur in index order.
    /// Sound by permutation invariance; off by default.
    pub canonical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    /// The entire search space within `max_len` was explored.
    pub exhausted: bool,
    /// Search stopped early because a word of `max_len` was found.
    pub reached_max: bool,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub word: Word,
    pub stats: SearchStats,
}

struct DfsState {
    k: usize,
    letters: Vec<u32>,
    pre: Vec<u64>, // (max_len + 1) * k prefix table
    best: Vec<u32>,
    nodes: u64,
    budget: u64,
    budget_spent: bool,
    max_len: usize,
    canonical: bool,
    reached_max: bool,
}

impl DfsState {
    fn suffix_anagramish(&self, depth: usize) -> bool {
        // Does any even-length suffix ending at `depth` have tau == 0?
        let k = self.k;
        for r in 1..=depth / 2 {
            let (lo, mid, hi) = (depth - 2 * r, depth - r, depth);
            let mut tau = 0u64;
            for a in 0..k {
                let c1 = self.pre[mid * k + a] - self.pre[lo * k + a];
                let c2 = self.pre[hi * k + a] - self.pre[mid * k + a];
                tau += c1.abs_diff(c2);
                if tau > 0 {
                    break;
                }
            }
            if tau == 0 {
                return true;
            }
        }
        false
    }

    fn extend(&mut self, depth: usize) {
        if depth == self.max_len {
            self.reached_max = true;
            return;
        }
        let max_used = self.letters[..depth].iter().max().copied();
        for a in 0..self.k as u32 {
            if self.canonical {
                let limit = max_used.map(|m| m + 1).unwrap_or(0);
                if a > limit {
                    break;
                }
            }
            if self.nodes >= self.budget {
                self.budget_spent = true;
                return;
            }
            self.nodes += 1;
            self.letters[depth] = a;
            let k = self.k;
            for s in 0..k {
                self.pre[(depth + 1) * k + s] = self.pre[depth * k + s];
            }
            self.pre[(depth + 1) * k + a as usize] += 1;
            if !self.suffix_anagramish(depth + 1) {
                if depth + 1 > self.best.len() {
                    self.best = self.letters[..depth + 1].to_vec();
                }
                self.extend(depth + 1);
                if self.reached_max || self.budget_spent {
                    return;
                }
            }
        }
    }
}

/// Search one first-letter subtree. Used directly by callers that spread
/// subtrees across worker threads.
pub fn longest_anagram_free_from(
    k: usize,
    first_letter: u32,
    opts: &SearchOptions,
    budget: u64,
) -> Result<SearchOutcome, WordError> {
    if k == 0 {
        return Err(WordError::EmptyAlphabet);
    }
    if opts.max_len == 0 {
        return Err(WordError::BadParameter("max_len must be positive"));
    }
    let alphabet = Alphabet::lowercase(k.min(26)).or_else(|_| Alphabet::numeric(k))?;
    let mut st = DfsState {
        k,
        letters: vec![0; opts.max_len],
        pre: vec![0; (opts.max_len + 1) * k],
        best: Vec::new(),
        nodes: 0,
        budget,
        budget_spent: false,
        max_len: opts.max_len,
        canonical: opts.canonical,
        reached_max: false,
    };
    // Seed the first letter, then extend from depth 1.
    st.nodes = 1;
    st.letters[0] = first_letter;
    st.pre[k + first_letter as usize] = 1;
    st.best = vec![first_letter];
    if opts.max_len > 1 {
        st.extend(1);
    } else {
        st.reached_max = true;
    }
    let word = Word::new(alphabet, st.best)?;
    Ok(SearchOutcome {
        word,
        stats: SearchStats {
            nodes_expanded: st.nodes,
            exhausted: !st.budget_spent && !st.reached_max,
            reached_max: st.reached_max,
        },
    })
}

/// First letters that root the subtrees `longest_anagram_free` explores.
/// With canonical pruning only letter 0 roots a subtree.
pub fn subtree_roots(k: usize, opts: &SearchOptions) -> Vec<u32> {
    if opts.canonical {
        vec![0]
    } else {
        (0..k as u32).collect()
    }
}

/// Deterministic merge of per-subtree outcomes: longest word wins, ties break
/// to the lexicographically smaller word. Statistics are summed.
pub fn merge_outcomes(parts: Vec<SearchOutcome>) -> Option<SearchOutcome> {
    let mut iter = parts.into_iter();
    let mut acc = iter.next()?;
    for p in iter {
        acc.stats.nodes_expanded += p.stats.nodes_expanded;
        acc.stats.exhausted &= p.stats.exhausted;
        acc.stats.reached_max |= p.stats.reached_max;
        let better = p.word.len() > acc.word.len()
            || (p.word.len() == acc.word.len() && p.word.letters() < acc.word.letters());
        if better {
            acc.word = p.word;
        }
    }
    Some(acc)
}

/// Depth-first backtracking search for the longest anagram-free word over a
/// `k`-letter alphabet, pruning any prefix whose suffix ending at the new
/// letter is anagramish. Budget exhaustion is reported, not an error.
pub fn longest_anagram_free(k: usize, opts: &SearchOptions) -> Result<SearchOutcome, WordError> {
    let roots = subtree_roots(k, opts);
    let per_subtree = (opts.node_budget / roots.len() as u64).max(1);
    let mut parts = Vec::with_capacity(roots.len());
    let mut reached = false;
    for &root in &roots {
        if reached {
            break;
        }
        let out = longest_anagram_free_from(k, root, opts, per_subtree)?;
        reached = out.stats.reached_max;
        parts.push(out);
    }
    merge_outcomes(parts).ok_or(WordError::EmptyAlphabet)
}

/// Result of the probe-bounded minimal core alphabet search.
///
/// This is a desk-scale approximation of a nonconstructive existence
/// statement: `subset` is inclusion-minimal such that for every `n <=
/// n_probe` some word over it satisfies the predicate, `ell` is the smallest
/// window length making all length-`n_probe` witnesses `ell`-periodic, and
/// `witnesses` certifies the claim at the probe horizon.
#[derive(Debug, Clone)]
pub struct CoreAlphabetResult {
    /// Symbol indices of the chosen sub-alphabet.
    pub subset: Vec<usize>,
    pub ell: usize,
    pub witnesses: Vec<Word>,
}

fn combinations(k: usize, card: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(card);
    fn rec(start: usize, k: usize, card: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == card {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, card, cur, out);
            cur.pop();
        }
    }
    rec(0, k, card, &mut cur, &mut out);
    out
}

/// All words of length `n_probe` over `subset` satisfying the hereditary
/// predicate, found by DFS that only extends satisfying prefixes.
fn probe_witnesses<P: Fn(&Word) -> bool>(
    pred: &P,
    sigma: &Alphabet,
    subset: &[usize],
    n_probe: usize,
) -> Vec<Word> {
    let mut witnesses = Vec::new();
    let mut letters: Vec<u32> = Vec::with_capacity(n_probe);
    fn rec<P: Fn(&Word) -> bool>(
        pred: &P,
        sigma: &Alphabet,
        subset: &[usize],
        n_probe: usize,
        letters: &mut Vec<u32>,
        witnesses: &mut Vec<Word>,
    ) {
        if letters.len() == n_probe {
            witnesses.push(Word::new(sigma.clone(), letters.clone()).unwrap());
            return;
        }
        for &s in subset {
            letters.push(s as u32);
            let w = Word::new(sigma.clone(), letters.clone()).unwrap();
            if pred(&w) {
                rec(pred, sigma, subset, n_probe, letters, witnesses);
            }
            letters.pop();
        }
    }
    rec(pred, sigma, subset, n_probe, &mut letters, &mut witnesses);
    witnesses
}

/// Find a minimal (by inclusion, searched in increasing cardinality)
/// sub-alphabet over which the hereditary predicate `pred` has witnesses at
/// every length up to `n_probe`, together with the smallest `ell` making all
/// length-`n_probe` witnesses `ell`-periodic.
///
/// By heredity, a witness at `n_probe` has satisfying prefixes of every
/// shorter length, so only the probe length needs checking.
pub fn minimal_core_alphabet<P: Fn(&Word) -> bool>(
    pred: P,
    sigma: &Alphabet,
    n_probe: usize,
) -> Result<CoreAlphabetResult, WordError> {
    if n_probe == 0 {
        return Err(WordError::BadParameter("n_probe must be positive"));
    }
    let k = sigma.size();
    for card in 1..=k {
        for subset in combinations(k, card) {
            let witnesses = probe_witnesses(&pred, sigma, &subset, n_probe);
            if witnesses.is_empty() {
                continue;
            }
            let mut ell = n_probe;
            for cand in 1..=n_probe {
                let all = witnesses
                    .iter()
                    .map(|w| is_ell_periodic(w, cand, false))
                    .collect::<Result<Vec<bool>, _>>()?;
                if all.iter().all(|&b| b) {
                    ell = cand;
                    break;
                }
            }
            return Ok(CoreAlphabetResult {
                subset,
                ell,
                witnesses,
            });
        }
    }
    Err(WordError::NoCoreAlphabet { n_probe })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::from_chars(text).unwrap()
    }

    #[test]
    fn histogram_direct_counts() {
        let word = w("aab");
        assert_eq!(histogram(&word, 0, 3).unwrap().counts, vec![2, 1]);
        assert_eq!(histogram(&word, 1, 1).unwrap().counts, vec![0, 0]);
        let word = w("abab");
        assert_eq!(histogram(&word, 1, 3).unwrap().counts, vec![1, 1]);
    }

    #[test]
    fn histogram_bad_window() {
        let word = w("aab");
        assert!(histogram(&word, 2, 1).is_err());
        assert!(histogram(&word, 0, 4).is_err());
    }

    #[test]
    fn imbalance_examples() {
        assert_eq!(imbalance(&w("abba")).unwrap().tau, 0);
        let rep = imbalance(&w("aabb")).unwrap();
        assert_eq!(rep.per_symbol_delta, vec![2, -2]);
        assert_eq!(rep.tau, 4);
        assert_eq!(imbalance(&w("abab")).unwrap().tau, 0);
        assert!(imbalance(&w("aba")).is_err());
    }

    #[test]
    fn anagramish_basics() {
        assert!(is_anagramish(&w("aa")));
        assert!(!is_anagramish(&w("ab")));
        assert!(!is_anagramish(&w("abc")));
        assert!(!is_anagramish(&w("")));
    }

    #[test]
    fn anagramish_substring_search() {
        // Brute force over the three even substrings of "abc" finds none.
        assert_eq!(find_anagramish_substring(&w("abc")), None);
        let witness = find_anagramish_substring(&w("abab")).unwrap();
        assert_eq!((witness.offset, witness.length), (0, 4));
        let witness = find_anagramish_substring(&w("aacb")).unwrap();
        assert_eq!((witness.offset, witness.length), (0, 2));
    }

    #[test]
    fn ell_periodicity() {
        assert!(is_ell_periodic(&w("abab"), 2, false).unwrap());
        assert!(!is_ell_periodic(&w("aab"), 2, false).unwrap());
        assert!(is_ell_periodic(&w("aabaab"), 3, false).unwrap());
        // Vacuous when shorter than the window.
        assert!(is_ell_periodic(&w("ab"), 3, false).unwrap());
        // Declared-alphabet variant: 'c' never occurs.
        let word = Word::new(Alphabet::lowercase(3).unwrap(), vec![0, 1, 0, 1]).unwrap();
        assert!(is_ell_periodic(&word, 2, false).unwrap());
        assert!(!is_ell_periodic(&word, 2, true).unwrap());
    }

    #[test]
    fn near_anagramish_examples() {
        let eps = Rational::new(1, 2);
        let witness = find_near_anagramish(&w("abab"), 2, eps).unwrap().unwrap();
        assert_eq!((witness.offset, witness.length, witness.tau_value), (0, 4, 0));
        // tau("aabbab") = 2 > 0.1 * 3 and no other substring of length >= 6 exists.
        let eps = Rational::new(1, 10);
        assert_eq!(find_near_anagramish(&w("aabbab"), 3, eps).unwrap(), None);
        assert_eq!(
            find_near_anagramish(&w(""), 1, Rational::new(1, 1)).unwrap(),
            None
        );
    }

    #[test]
    fn longest_single_letter() {
        let opts = SearchOptions {
            max_len: 10,
            node_budget: 1_000_000,
            canonical: false,
        };
        let out = longest_anagram_free(1, &opts).unwrap();
        assert_eq!(out.word.len(), 1);
        assert!(out.stats.exhausted);
    }

    #[test]
    fn longest_three_letters_is_seven() {
        let opts = SearchOptions {
            max_len: 8,
            node_budget: u64::MAX / 4,
            canonical: false,
        };
        let out = longest_anagram_free(3, &opts).unwrap();
        assert_eq!(out.word.len(), 7);
        assert!(out.stats.exhausted);
        assert_eq!(find_anagramish_substring(&out.word), None);
    }

    #[test]
    fn minimal_core_alphabet_examples() {
        let anagram_free = |word: &Word| find_anagramish_substring(word).is_none();
        // Binary alphabets cannot reach length 4.
        let sigma = Alphabet::lowercase(2).unwrap();
        assert!(matches!(
            minimal_core_alphabet(anagram_free, &sigma, 4),
            Err(WordError::NoCoreAlphabet { n_probe: 4 })
        ));
        // The always-true predicate forces a singleton with ell = 1.
        let sigma = Alphabet::lowercase(3).unwrap();
        let result = minimal_core_alphabet(|_| true, &sigma, 5).unwrap();
        assert_eq!(result.subset, vec![0]);
        assert_eq!(result.ell, 1);
    }
}
