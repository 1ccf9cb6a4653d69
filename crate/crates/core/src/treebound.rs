//! Executable verifier for the weighted-tree decay argument: balanced and
//! unbalanced classification of tree nodes, the layer partition of the
//! unbalanced set, the per-node and decay inequalities, and the t/h/n
//! thresholds — all checked in exact rational arithmetic.
//!
//! The threshold `n` is astronomical by design; this module never
//! materializes strings of that length. It validates the inequality chain on
//! feasible instances instead.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::words::{
    find_near_anagramish, is_ell_periodic, PrefixHistograms, SubstringWitness, Word, WordError,
};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    /// |w| is not r0 * 2^h.
    BadLength { len: usize, r0: usize },
    R0NotEven { r0: usize },
    R0NotMultipleOfEll { r0: usize, ell: usize },
    NotPeriodic { ell: usize },
    Domain(&'static str),
    BadParameter(&'static str),
    Word(WordError),
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::BadLength { len, r0 } => {
                write!(f, "word length {len} is not r0 * 2^h for r0 = {r0}")
            }
            TreeError::R0NotEven { r0 } => write!(f, "r0 = {r0} must be even"),
            TreeError::R0NotMultipleOfEll { r0, ell } => {
                write!(f, "r0 = {r0} must be a multiple of ell = {ell}")
            }
            TreeError::NotPeriodic { ell } => write!(f, "word is not {ell}-periodic"),
            TreeError::Domain(msg) => write!(f, "domain error: {msg}"),
            TreeError::BadParameter(msg) => write!(f, "bad parameter: {msg}"),
            TreeError::Word(e) => write!(f, "{e}"),
        }
    }
}

impl From<WordError> for TreeError {
    fn from(e: WordError) -> Self {
        TreeError::Word(e)
    }
}

/// Complete binary tree over a word whose leaves, in order, are the
/// length-`r0` pieces of the word. Nodes are stored in level order (root 0,
/// children of `i` at `2i+1` and `2i+2`) with per-node per-symbol
/// histograms computed bottom-up.
#[derive(Debug, Clone)]
pub struct WeightedTree {
    word: Word,
    prefix: PrefixHistograms,
    r0: usize,
    h: u32,
    hist: Vec<Vec<u64>>,
}

impl WeightedTree {
    pub fn build(word: &Word, r0: usize) -> Result<Self, TreeError> {
        if r0 == 0 {
            return Err(TreeError::BadParameter("r0 must be positive"));
        }
        if r0 % 2 != 0 {
            return Err(TreeError::R0NotEven { r0 });
        }
        let n = word.len();
        if n == 0 || n % r0 != 0 || !(n / r0).is_power_of_two() {
            return Err(TreeError::BadLength { len: n, r0 });
        }
        let h = (n / r0).trailing_zeros();
        let node_count = (1usize << (h + 1)) - 1;
        let prefix = PrefixHistograms::new(word);
        let k = word.alphabet().size();
        let mut hist = vec![Vec::new(); node_count];
        // Leaves from the prefix table, internal nodes as child sums.
        for idx in (0..node_count).rev() {
            let (lo, hi) = node_range_for(idx, n, h);
            if idx >= node_count / 2 {
                hist[idx] = (0..k).map(|a| prefix.count(a, lo, hi)).collect();
            } else {
                let (l, r) = (2 * idx + 1, 2 * idx + 2);
                hist[idx] = (0..k).map(|a| hist[l][a] + hist[r][a]).collect();
            }
        }
        Ok(WeightedTree {
            word: word.clone(),
            prefix,
            r0,
            h,
            hist,
        })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn r0(&self) -> usize {
        self.r0
    }

    pub fn height(&self) -> u32 {
        self.h
    }

    pub fn node_count(&self) -> usize {
        (1usize << (self.h + 1)) - 1
    }

    pub fn depth(&self, idx: usize) -> u32 {
        (usize::BITS - 1) - (idx + 1).leading_zeros()
    }

    /// The index range [lo, hi) of the source word covered by a node.
    pub fn node_range(&self, idx: usize) -> (usize, usize) {
        node_range_for(idx, self.word.len(), self.h)
    }

    pub fn node_len(&self, idx: usize) -> usize {
        let (lo, hi) = self.node_range(idx);
        hi - lo
    }

    pub fn is_leaf(&self, idx: usize) -> bool {
        idx >= self.node_count() / 2
    }

    pub fn children(&self, idx: usize) -> Option<(usize, usize)> {
        if self.is_leaf(idx) {
            None
        } else {
            Some((2 * idx + 1, 2 * idx + 2))
        }
    }

    pub fn parent(&self, idx: usize) -> Option<usize> {
        if idx == 0 {
            None
        } else {
            Some((idx - 1) / 2)
        }
    }

    pub fn hist(&self, idx: usize) -> &[u64] {
        &self.hist[idx]
    }

    /// tau_a of a node: the absolute half-count difference. Halves of an
    /// internal node are its children; a leaf splits into two r0/2 pieces.
    pub fn node_tau(&self, idx: usize, a: usize) -> u64 {
        match self.children(idx) {
            Some((l, r)) => self.hist[l][a].abs_diff(self.hist[r][a]),
            None => {
                let (lo, hi) = self.node_range(idx);
                let mid = lo + (hi - lo) / 2;
                self.prefix
                    .count(a, lo, mid)
                    .abs_diff(self.prefix.count(a, mid, hi))
            }
        }
    }
}

fn node_range_for(idx: usize, n: usize, _h: u32) -> (usize, usize) {
    let depth = (usize::BITS - 1) - (idx + 1).leading_zeros();
    let pos = (idx + 1) - (1 << depth);
    let len = n >> depth;
    (pos * len, pos * len + len)
}

/// Balance classification of one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeStats {
    pub len: usize,
    /// tau_a per symbol.
    pub tau: Vec<u64>,
    /// a-balanced iff tau_a <= eps * |v| / ell.
    pub balanced: Vec<bool>,
    /// Balanced for every symbol.
    pub balanced_all: bool,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub per_node: Vec<NodeStats>,
    /// S_a: node indices that are a-unbalanced, per symbol.
    pub unbalanced_sets: Vec<Vec<usize>>,
}

/// Classify every node as a-balanced or a-unbalanced, in exact arithmetic:
/// a-unbalanced iff `tau_a * ell * den > num * |v|` for eps = num/den.
pub fn classify(tree: &WeightedTree, eps: Rational, ell: usize) -> Result<Classification, TreeError> {
    if ell == 0 {
        return Err(TreeError::BadParameter("ell must be positive"));
    }
    let (num, den) = (*eps.numer() as i128, *eps.denom() as i128);
    if num <= 0 || den <= 0 {
        return Err(TreeError::Domain("eps must be positive"));
    }
    let k = tree.word.alphabet().size();
    let mut per_node = Vec::with_capacity(tree.node_count());
    let mut unbalanced_sets = vec![Vec::new(); k];
    for idx in 0..tree.node_count() {
        let len = tree.node_len(idx);
        let tau: Vec<u64> = (0..k).map(|a| tree.node_tau(idx, a)).collect();
        let balanced: Vec<bool> = tau
            .iter()
            .map(|&t| (t as i128) * (ell as i128) * den <= num * (len as i128))
            .collect();
        for (a, &bal) in balanced.iter().enumerate() {
            if !bal {
                unbalanced_sets[a].push(idx);
            }
        }
        let balanced_all = balanced.iter().all(|&b| b);
        per_node.push(NodeStats {
            len,
            tau,
            balanced,
            balanced_all,
        });
    }
    Ok(Classification {
        per_node,
        unbalanced_sets,
    })
}

/// A balanced tree node: a balanced substring of length >= r0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedWitness {
    pub node: usize,
    pub offset: usize,
    pub length: usize,
    pub tau: u64,
}

/// Per-node inequality check for an a*-unbalanced internal node v with
/// lighter child R(v).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeCheck {
    pub node: usize,
    pub weight: u64,
    pub lighter_child_weight: u64,
    /// W(R(v)) <= W(v)/2 - (eps / 2 ell) |v|.
    pub affine_ok: bool,
    /// W(R(v)) <= (1/2 - eps / 2 ell) W(v).
    pub factor_ok: bool,
}

/// Decay inequality L(X_{i+t}) <= (1 - 2^-(t+1)) L(X_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecayCheck {
    pub start_layer: usize,
    pub l_start: u64,
    pub l_end: u64,
    pub ok: bool,
}

/// The chain A_0 = X_i, A_j = members of X_{i+j} descending from the lighter
/// children of A_{j-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCheck {
    pub start_layer: usize,
    pub a_sets: Vec<Vec<usize>>,
    /// W(A_j) <= W(R(A_{j-1})) <= (1/2 - eps/2 ell) W(A_{j-1}) at each step.
    pub w_chain_ok: bool,
    /// L(A_t) <= ell * W(A_t) and L(A_t) * 2^(t+1) <= L(X_i).
    pub l_tail_ok: bool,
}

#[derive(Debug, Clone)]
pub struct UnbalancedCertificate {
    pub h: u32,
    pub n: usize,
    pub sigma_size: usize,
    /// Symbol maximizing the total length of its unbalanced set.
    pub a_star: usize,
    /// Sum over symbols of unbalanced-set lengths covers (h+1) n.
    pub coverage_ok: bool,
    /// L(X) * |Sigma| >= (h+1) n.
    pub weight_lower_ok: bool,
    pub l_x: u64,
    pub t: u32,
    /// X_0 .. X_h.
    pub layers: Vec<Vec<usize>>,
    pub layer_l: Vec<u64>,
    /// n >= L(X_0) >= ... >= L(X_h).
    pub monotone_ok: bool,
    pub node_checks: Vec<NodeCheck>,
    pub decay_checks: Vec<DecayCheck>,
    pub chain_checks: Vec<ChainCheck>,
    /// hist_a(v) >= |v| / ell at every node for every occurring symbol.
    pub hist_floor_ok: bool,
    /// W(v) = W(left) + W(right) at every internal node, re-derived from
    /// direct recounts.
    pub additivity_ok: bool,
    pub all_ok: bool,
    /// Present when the stronger all-substring balance check was requested
    /// and found a balanced substring the tree nodes missed.
    pub substring_balanced_witness: Option<SubstringWitness>,
}

#[derive(Debug, Clone)]
pub enum CertifyOutcome {
    Balanced(BalancedWitness),
    Certificate(UnbalancedCertificate),
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn smallest_t(eps: Rational, ell: usize) -> Result<u32, TreeError> {
    // Smallest positive integer t with (1 - eps/ell)^t <= 1/(2 ell);
    // equivalently ceil(log(2 ell) / log(1/(1 - eps/ell))), base-free.
    let q = BigRational::one()
        - BigRational::new(big(*eps.numer()), big(*eps.denom()) * big(ell as i64));
    if q <= BigRational::zero() {
        return Err(TreeError::Domain("eps must be < ell"));
    }
    let target = BigRational::new(BigInt::one(), big(2 * ell as i64));
    let mut pow = q.clone();
    let mut t = 1u32;
    while pow > target {
        pow *= &q;
        t += 1;
        if t > 100_000 {
            return Err(TreeError::Domain("t too large to evaluate exactly"));
        }
    }
    Ok(t)
}

/// t, h, and n thresholds derived from eps and ell, evaluated in exact
/// arithmetic so the ceiling is robust. Also reports whether the chosen t
/// satisfies the sufficiency condition `ell * (1/2 - eps/2 ell)^t <=
/// 2^-(t+1)`.
#[derive(Debug, Clone)]
pub struct Thresholds {
    pub t: u32,
    /// ell * t * 2^(t+1).
    pub h_min: BigUint,
    /// r0 * 2^h_min, materialized only when h_min is small enough.
    pub n: Option<BigUint>,
    pub r0: usize,
    pub sufficiency_ok: bool,
}

pub fn thresholds(eps: Rational, ell: usize, r0: usize) -> Result<Thresholds, TreeError> {
    if ell == 0 {
        return Err(TreeError::BadParameter("ell must be positive"));
    }
    if r0 == 0 {
        return Err(TreeError::BadParameter("r0 must be positive"));
    }
    let (num, den) = (*eps.numer() as i128, *eps.denom() as i128);
    if num <= 0 || den <= 0 {
        return Err(TreeError::Domain("eps must be positive"));
    }
    if num >= den * ell as i128 {
        return Err(TreeError::Domain("eps must be < ell"));
    }
    let t = smallest_t(eps, ell)?;
    let h_min = BigUint::from(ell) * BigUint::from(t) * (BigUint::one() << (t as usize + 1));
    let n = if h_min <= BigUint::from(65_536u32) {
        let shift: u64 = (&h_min).try_into().expect("small");
        Some(BigUint::from(r0) << shift)
    } else {
        None
    };
    // ell * (q/2)^t <= (1/2)^(t+1), with q = 1 - eps/ell.
    let q = BigRational::one()
        - BigRational::new(big(*eps.numer()), big(*eps.denom()) * big(ell as i64));
    let half = BigRational::new(BigInt::one(), big(2));
    let mut lhs = BigRational::from(big(ell as i64));
    let factor = &q * &half;
    let mut rhs = half.clone();
    for _ in 0..t {
        lhs *= &factor;
        rhs *= &half;
    }
    let sufficiency_ok = lhs <= rhs;
    Ok(Thresholds {
        t,
        h_min,
        n,
        r0,
        sufficiency_ok,
    })
}

/// Verify the decay argument on one word: either exhibit a balanced tree
/// node, or certify that every node is unbalanced and that the whole
/// inequality chain holds in exact arithmetic.
pub fn certify_or_refute(
    word: &Word,
    r0: usize,
    eps: Rational,
    ell: usize,
    check_all_substrings: bool,
) -> Result<CertifyOutcome, TreeError> {
    if ell == 0 || r0 % ell != 0 {
        return Err(TreeError::R0NotMultipleOfEll { r0, ell });
    }
    if !is_ell_periodic(word, ell, false)? {
        return Err(TreeError::NotPeriodic { ell });
    }
    let tree = WeightedTree::build(word, r0)?;
    let classification = classify(&tree, eps, ell)?;
    if let Some(idx) = (0..tree.node_count()).find(|&i| classification.per_node[i].balanced_all) {
        let (lo, hi) = tree.node_range(idx);
        return Ok(CertifyOutcome::Balanced(BalancedWitness {
            node: idx,
            offset: lo,
            length: hi - lo,
            tau: classification.per_node[idx].tau.iter().sum(),
        }));
    }

    let n = word.len();
    let h = tree.height();
    let occurring: Vec<usize> = word.occurring_symbols().iter().map(|&a| a as usize).collect();
    let sigma_size = occurring.len();
    let set_length = |set: &[usize]| -> u64 { set.iter().map(|&v| tree.node_len(v) as u64).sum() };

    // Coverage: every node is unbalanced for some symbol, so summed
    // unbalanced-set lengths reach (h+1) n.
    let total: u64 = classification
        .unbalanced_sets
        .iter()
        .map(|s| set_length(s))
        .sum();
    let coverage_ok = total >= (h as u64 + 1) * n as u64;

    let a_star = occurring
        .iter()
        .copied()
        .max_by_key(|&a| (set_length(&classification.unbalanced_sets[a]), core::cmp::Reverse(a)))
        .ok_or(TreeError::BadParameter("empty word"))?;
    let x: Vec<usize> = classification.unbalanced_sets[a_star].clone();
    let in_x = {
        let mut flags = vec![false; tree.node_count()];
        for &v in &x {
            flags[v] = true;
        }
        flags
    };
    let l_x = set_length(&x);
    let weight_lower_ok = l_x as u128 * sigma_size as u128 >= (h as u128 + 1) * n as u128;

    // Layer partition: X_i holds nodes with exactly i proper X-ancestors.
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); h as usize + 1];
    for &v in &x {
        let mut count = 0usize;
        let mut cur = v;
        while let Some(p) = tree.parent(cur) {
            if in_x[p] {
                count += 1;
            }
            cur = p;
        }
        layers[count].push(v);
    }
    let layer_l: Vec<u64> = layers.iter().map(|s| set_length(s)).collect();
    let monotone_ok = layer_l.first().map(|&l0| l0 <= n as u64).unwrap_or(true)
        && layer_l.windows(2).all(|w| w[0] >= w[1]);

    let weight = |v: usize| tree.hist(v)[a_star];
    let lighter_child = |v: usize| -> Option<usize> {
        tree.children(v).map(|(l, r)| {
            // Ties break to the left child.
            if weight(l) <= weight(r) {
                l
            } else {
                r
            }
        })
    };

    let (num, den) = (*eps.numer() as i128, *eps.denom() as i128);
    let ell_i = ell as i128;
    let mut node_checks = Vec::new();
    for &v in &x {
        if let Some(rv) = lighter_child(v) {
            let w = weight(v) as i128;
            let wr = weight(rv) as i128;
            let len = tree.node_len(v) as i128;
            // W(R(v)) <= W(v)/2 - (eps/2 ell) |v|, times 2 ell den.
            let affine_ok = 2 * ell_i * den * wr <= ell_i * den * w - num * len;
            // W(R(v)) <= (1/2 - eps/2 ell) W(v), times 2 ell den.
            let factor_ok = 2 * ell_i * den * wr <= (ell_i * den - num) * w;
            node_checks.push(NodeCheck {
                node: v,
                weight: weight(v),
                lighter_child_weight: weight(rv),
                affine_ok,
                factor_ok,
            });
        }
    }

    // hist floor and additivity at every node.
    let mut hist_floor_ok = true;
    let mut additivity_ok = true;
    for idx in 0..tree.node_count() {
        let len = tree.node_len(idx) as u128;
        for &a in &occurring {
            if (tree.hist(idx)[a] as u128) * (ell as u128) < len {
                hist_floor_ok = false;
            }
        }
        if let Some((l, r)) = tree.children(idx) {
            for a in 0..word.alphabet().size() {
                if tree.hist(idx)[a] != tree.hist(l)[a] + tree.hist(r)[a] {
                    additivity_ok = false;
                }
            }
        }
    }

    let t = smallest_t(eps, ell)?;
    let mut decay_checks = Vec::new();
    let mut chain_checks = Vec::new();
    if t <= h && t < 64 {
        let two_t1 = 1u128 << (t + 1);
        for i in 0..=(h - t) as usize {
            let l_start = layer_l[i];
            let l_end = layer_l[i + t as usize];
            let ok = (l_end as u128) * two_t1 <= (two_t1 - 1) * (l_start as u128);
            decay_checks.push(DecayCheck {
                start_layer: i,
                l_start,
                l_end,
                ok,
            });

            // Chain A_0 = X_i, A_j descendants of lighter children.
            let mut a_sets: Vec<Vec<usize>> = vec![layers[i].clone()];
            let mut w_chain_ok = true;
            for j in 1..=t as usize {
                let r_prev: Vec<usize> = a_sets[j - 1]
                    .iter()
                    .filter_map(|&v| lighter_child(v))
                    .collect();
                let mut in_r = vec![false; tree.node_count()];
                for &v in &r_prev {
                    in_r[v] = true;
                }
                let descends = |v: usize| -> bool {
                    let mut cur = v;
                    loop {
                        if in_r[cur] {
                            return true;
                        }
                        match tree.parent(cur) {
                            Some(p) => cur = p,
                            None => return false,
                        }
                    }
                };
                let a_j: Vec<usize> = layers[i + j].iter().copied().filter(|&v| descends(v)).collect();
                let w_prev: u128 = a_sets[j - 1].iter().map(|&v| weight(v) as u128).sum();
                let w_r: u128 = r_prev.iter().map(|&v| weight(v) as u128).sum();
                let w_j: u128 = a_j.iter().map(|&v| weight(v) as u128).sum();
                if w_j > w_r {
                    w_chain_ok = false;
                }
                // W(R(A_{j-1})) <= (1/2 - eps/2 ell) W(A_{j-1}).
                if 2 * ell_i as i128 * den * w_r as i128 > (ell_i * den - num) * w_prev as i128 {
                    w_chain_ok = false;
                }
                a_sets.push(a_j);
            }
            let a_t = &a_sets[t as usize];
            let l_at: u128 = a_t.iter().map(|&v| tree.node_len(v) as u128).sum();
            let w_at: u128 = a_t.iter().map(|&v| weight(v) as u128).sum();
            let l_tail_ok =
                l_at <= ell as u128 * w_at && l_at * two_t1 <= layer_l[i] as u128;
            chain_checks.push(ChainCheck {
                start_layer: i,
                a_sets,
                w_chain_ok,
                l_tail_ok,
            });
        }
    }

    let substring_balanced_witness = if check_all_substrings {
        // The stronger notion quantifies over all substrings: a balanced
        // substring has tau <= eps |s|, which near-anagramish search covers
        // with threshold 2 eps per half.
        find_balanced_substring(word, r0, eps, ell)?
    } else {
        None
    };

    let all_ok = coverage_ok
        && weight_lower_ok
        && monotone_ok
        && hist_floor_ok
        && additivity_ok
        && node_checks.iter().all(|c| c.affine_ok && c.factor_ok)
        && decay_checks.iter().all(|c| c.ok)
        && chain_checks.iter().all(|c| c.w_chain_ok && c.l_tail_ok);

    Ok(CertifyOutcome::Certificate(UnbalancedCertificate {
        h,
        n,
        sigma_size,
        a_star,
        coverage_ok,
        weight_lower_ok,
        l_x,
        t,
        layers,
        layer_l,
        monotone_ok,
        node_checks,
        decay_checks,
        chain_checks,
        hist_floor_ok,
        additivity_ok,
        all_ok,
        substring_balanced_witness,
    }))
}

/// Scan every even substring of length >= r0 for one that is a-balanced for
/// every symbol: tau_a <= eps * |s| / ell.
fn find_balanced_substring(
    word: &Word,
    r0: usize,
    eps: Rational,
    ell: usize,
) -> Result<Option<SubstringWitness>, TreeError> {
    let pre = PrefixHistograms::new(word);
    let n = word.len();
    let k = word.alphabet().size();
    let (num, den) = (*eps.numer() as i128, *eps.denom() as i128);
    let min_len = r0.max(2).next_multiple_of(2);
    for offset in 0..n {
        let mut length = min_len;
        while offset + length <= n {
            let mid = offset + length / 2;
            let mut balanced = true;
            let mut tau_total = 0u64;
            for a in 0..k {
                let tau_a = pre.count(a, offset, mid).abs_diff(pre.count(a, mid, offset + length));
                tau_total += tau_a;
                if (tau_a as i128) * ell as i128 * den > num * length as i128 {
                    balanced = false;
                    break;
                }
            }
            if balanced {
                return Ok(Some(SubstringWitness {
                    offset,
                    length,
                    half_length: length / 2,
                    tau_value: tau_total,
                }));
            }
            length += 2;
        }
    }
    Ok(None)
}

/// Parameters of the exhaustive small-instance lemma check.
#[derive(Debug, Clone)]
pub struct EmpiricalParams {
    /// Ambient alphabet size.
    pub sigma: usize,
    pub ell: usize,
    pub eps: Rational,
    pub r0: usize,
    pub n_cap: usize,
}

#[derive(Debug, Clone)]
pub enum EmpiricalOutcome {
    /// The minimal n such that every ell-periodic word of length n contains
    /// a substring of length 2r >= 2 r0 with tau <= eps r.
    MinimalN { n: usize, longest_bad: Word },
    /// Some word of length n_cap still lacks a qualifying substring.
    NoneWithinCap { bad_word: Word },
}

struct BadSearch {
    m: usize,
    ell: usize,
    r0: usize,
    num: u128,
    den: u128,
    n_cap: usize,
    letters: Vec<u32>,
    counts: Vec<Vec<u64>>, // prefix counts, (n_cap + 1) x m
    best: Vec<u32>,
    cap_hit: Option<Vec<u32>>,
}

impl BadSearch {
    fn qualifying_suffix(&self, len: usize) -> bool {
        // Any substring of length 2r >= 2 r0 ending at `len` with
        // tau <= eps r?
        let mut r = self.r0;
        while 2 * r <= len {
            let (lo, mid, hi) = (len - 2 * r, len - r, len);
            let mut tau = 0u64;
            for a in 0..self.m {
                let c1 = self.counts[mid][a] - self.counts[lo][a];
                let c2 = self.counts[hi][a] - self.counts[mid][a];
                tau += c1.abs_diff(c2);
            }
            if (tau as u128) * self.den <= self.num * r as u128 {
                return true;
            }
            r += 1;
        }
        false
    }

    fn window_ok(&self, len: usize) -> bool {
        // Once a full window exists, it must contain all m target symbols.
        if len < self.ell {
            return true;
        }
        let lo = len - self.ell;
        (0..self.m).all(|a| self.counts[len][a] > self.counts[lo][a])
    }

    fn extend(&mut self, depth: usize) {
        if self.cap_hit.is_some() {
            return;
        }
        if depth == self.n_cap {
            self.cap_hit = Some(self.letters[..depth].to_vec());
            return;
        }
        let max_used = self.letters[..depth].iter().max().map(|&m| m + 1).unwrap_or(0);
        let limit = (max_used as usize).min(self.m - 1);
        for a in 0..=limit as u32 {
            self.letters[depth] = a;
            for s in 0..self.m {
                self.counts[depth + 1][s] = self.counts[depth][s];
            }
            self.counts[depth + 1][a as usize] += 1;
            if self.window_ok(depth + 1) && !self.qualifying_suffix(depth + 1) {
                if depth + 1 > self.best.len() {
                    self.best = self.letters[..depth + 1].to_vec();
                }
                self.extend(depth + 1);
                if self.cap_hit.is_some() {
                    return;
                }
            }
        }
    }
}

/// Longest "bad" word (no qualifying near-anagramish substring) over words
/// whose occurring alphabet has exactly `m` symbols in canonical
/// first-occurrence order, with every complete ell-window containing all m
/// symbols. Returns the bad word of length `n_cap` if the cap is reached.
pub fn longest_bad_word(m: usize, params: &EmpiricalParams) -> Result<(Option<Word>, bool), TreeError> {
    if m == 0 || m > params.sigma {
        return Err(TreeError::BadParameter("m must be within the alphabet"));
    }
    if m > params.ell {
        // An ell-window cannot contain more than ell distinct symbols.
        return Ok((None, false));
    }
    let (num, den) = (*params.eps.numer(), *params.eps.denom());
    if num <= 0 || den <= 0 {
        return Err(TreeError::Domain("eps must be positive"));
    }
    let mut search = BadSearch {
        m,
        ell: params.ell,
        r0: params.r0,
        num: num as u128,
        den: den as u128,
        n_cap: params.n_cap,
        letters: vec![0; params.n_cap],
        counts: vec![vec![0; m]; params.n_cap + 1],
        best: Vec::new(),
        cap_hit: None,
    };
    search.extend(0);
    let alphabet = crate::words::Alphabet::lowercase(params.sigma.min(26))?;
    if let Some(letters) = search.cap_hit {
        return Ok((Some(Word::new(alphabet, letters)?), true));
    }
    if search.best.is_empty() {
        return Ok((None, false));
    }
    Ok((Some(Word::new(alphabet, search.best)?), false))
}

/// Exhaustively find the minimal n such that all ell-periodic words of
/// length n over the sigma-letter alphabet contain a qualifying
/// near-anagramish substring, by depth-first search over bad words (badness
/// is hereditary, so only bad prefixes are ever extended).
pub fn empirical_lemma_bound(params: &EmpiricalParams) -> Result<EmpiricalOutcome, TreeError> {
    if params.sigma == 0 {
        return Err(TreeError::BadParameter("sigma must be positive"));
    }
    if params.ell == 0 || params.r0 == 0 || params.n_cap == 0 {
        return Err(TreeError::BadParameter("ell, r0, n_cap must be positive"));
    }
    let mut longest: Option<Word> = None;
    for m in 1..=params.sigma.min(params.ell) {
        let (word, capped) = longest_bad_word(m, params)?;
        if let Some(word) = word {
            if capped {
                return Ok(EmpiricalOutcome::NoneWithinCap { bad_word: word });
            }
            let better = longest
                .as_ref()
                .map(|best| word.len() > best.len())
                .unwrap_or(true);
            if better {
                longest = Some(word);
            }
        }
    }
    let longest_bad = longest.ok_or(TreeError::BadParameter("no bad words at all"))?;
    Ok(EmpiricalOutcome::MinimalN {
        n: longest_bad.len() + 1,
        longest_bad,
    })
}

/// Independent oracle check used by tests and the CLI `--oracle` path:
/// does `word` contain a qualifying substring?
pub fn has_qualifying_substring(word: &Word, r0: usize, eps: Rational) -> Result<bool, TreeError> {
    Ok(find_near_anagramish(word, r0, eps)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;
    use alloc::string::ToString;

    fn w(text: &str) -> Word {
        Word::from_chars(text).unwrap()
    }

    #[test]
    fn tree_shapes() {
        let word = w("abababab");
        let tree = WeightedTree::build(&word, 8).unwrap();
        assert_eq!(tree.node_count(), 1);
        assert_eq!(tree.height(), 0);

        let tree = WeightedTree::build(&word, 2).unwrap();
        assert_eq!(tree.node_count(), 7);
        assert_eq!(tree.height(), 2);
        assert_eq!(tree.hist(0), &[4, 4]);
        assert_eq!(tree.node_range(0), (0, 8));
        assert_eq!(tree.node_range(3), (0, 2));

        assert!(WeightedTree::build(&w("ababab"), 2).is_err());
        assert!(WeightedTree::build(&w("abab"), 3).is_err());
    }

    #[test]
    fn classification_examples() {
        // Uniform word: every node balanced for every symbol.
        let word = w("aaaaaaaa");
        let tree = WeightedTree::build(&word, 4).unwrap();
        let cls = classify(&tree, Rational::new(1, 2), 1).unwrap();
        assert!(cls.per_node.iter().all(|n| n.balanced_all));

        // "aabb", r0 = 4, ell = 2, eps = 1/2: root tau_a = 2 > 1.
        let word = w("aabb");
        let tree = WeightedTree::build(&word, 4).unwrap();
        let cls = classify(&tree, Rational::new(1, 2), 2).unwrap();
        assert_eq!(cls.per_node[0].tau, vec![2, 2]);
        assert!(!cls.per_node[0].balanced[0]);
    }

    #[test]
    fn balanced_witness_on_alternation() {
        let word = w("abababab");
        let outcome = certify_or_refute(&word, 2, Rational::new(1, 2), 2, false).unwrap();
        assert!(matches!(outcome, CertifyOutcome::Balanced(_)));
    }

    #[test]
    fn threshold_example() {
        let th = thresholds(Rational::new(1, 1), 2, 2).unwrap();
        assert_eq!(th.t, 2);
        assert_eq!(th.h_min, BigUint::from(32u32));
        let n = th.n.unwrap();
        assert_eq!(n, BigUint::from(2u64) << 32);
        assert!(th.sufficiency_ok);
        // eps = ell is a domain error (log of infinity).
        assert!(thresholds(Rational::new(2, 1), 2, 2).is_err());
    }

    #[test]
    fn empirical_trivial_eps() {
        // eps = 2: tau never exceeds the substring length, so n = 2 r0.
        let params = EmpiricalParams {
            sigma: 2,
            ell: 2,
            eps: Rational::new(2, 1),
            r0: 2,
            n_cap: 10,
        };
        match empirical_lemma_bound(&params).unwrap() {
            EmpiricalOutcome::MinimalN { n, .. } => assert_eq!(n, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empirical_small_binary() {
        // 2-periodic binary words are strict alternations; "abab" has tau 0.
        let params = EmpiricalParams {
            sigma: 2,
            ell: 2,
            eps: Rational::new(1, 2),
            r0: 2,
            n_cap: 16,
        };
        match empirical_lemma_bound(&params).unwrap() {
            EmpiricalOutcome::MinimalN { n, longest_bad } => {
                assert_eq!(n, 4, "longest bad {}", longest_bad.to_string());
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
