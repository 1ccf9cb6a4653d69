//! Deterministic parallel drivers. Work is partitioned into fixed units
//! (first-letter subtrees, occurring-alphabet sizes) with per-unit budgets,
//! and results are merged in unit order, so worker count never changes the
//! outcome — only the wall time.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anagram_core::treebound::{
    longest_bad_word, EmpiricalOutcome, EmpiricalParams, TreeError,
};
use anagram_core::words::{
    longest_anagram_free_from, merge_outcomes, subtree_roots, SearchOptions, SearchOutcome,
    Word, WordError,
};

/// Run `units` closures over `workers` threads, collecting results by unit
/// index. The closure must be pure per unit.
fn run_units<T: Send, F: Fn(usize) -> T + Sync>(count: usize, workers: usize, f: F) -> Vec<T> {
    let workers = workers.max(1).min(count.max(1));
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<T>>> = (0..count).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let out = f(i);
                *slots[i].lock().unwrap() = Some(out);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("unit completed"))
        .collect()
}

/// Parallel longest anagram-free word search. Unlike the sequential core
/// driver it always explores every subtree (no early stop), so the merged
/// outcome and statistics are identical for any worker count.
pub fn longest_parallel(
    k: usize,
    opts: &SearchOptions,
    workers: usize,
) -> Result<SearchOutcome, WordError> {
    let roots = subtree_roots(k, opts);
    let per_subtree = (opts.node_budget / roots.len() as u64).max(1);
    let parts = run_units(roots.len(), workers, |i| {
        longest_anagram_free_from(k, roots[i], opts, per_subtree)
    });
    let parts = parts.into_iter().collect::<Result<Vec<_>, _>>()?;
    merge_outcomes(parts).ok_or(WordError::EmptyAlphabet)
}

/// Parallel empirical lemma bound: one unit per occurring-alphabet size m,
/// merged exactly as the sequential core driver does (smallest capped m
/// wins; otherwise the longest bad word, ties to smaller m).
pub fn empirical_parallel(
    params: &EmpiricalParams,
    workers: usize,
) -> Result<EmpiricalOutcome, TreeError> {
    if params.sigma == 0 || params.ell == 0 || params.r0 == 0 || params.n_cap == 0 {
        return Err(TreeError::BadParameter("sigma, ell, r0, n_cap must be positive"));
    }
    let ms: Vec<usize> = (1..=params.sigma.min(params.ell)).collect();
    let parts: Vec<Result<(Option<Word>, bool), TreeError>> =
        run_units(ms.len(), workers, |i| longest_bad_word(ms[i], params));
    let mut longest: Option<Word> = None;
    for part in parts {
        let (word, capped) = part?;
        if let Some(word) = word {
            if capped {
                return Ok(EmpiricalOutcome::NoneWithinCap { bad_word: word });
            }
            let better = longest.as_ref().map(|b| word.len() > b.len()).unwrap_or(true);
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

#[cfg(test)]
mod tests {
    use super::*;
    use anagram_core::Rational;

    #[test]
    fn longest_independent_of_workers() {
        let opts = SearchOptions {
            max_len: 9,
            node_budget: 1_000_000,
            canonical: false,
        };
        let one = longest_parallel(3, &opts, 1).unwrap();
        let four = longest_parallel(3, &opts, 4).unwrap();
        assert_eq!(one.word.letters(), four.word.letters());
        assert_eq!(one.stats.nodes_expanded, four.stats.nodes_expanded);
        assert_eq!(one.word.len(), 7);
    }

    #[test]
    fn empirical_independent_of_workers() {
        let params = EmpiricalParams {
            sigma: 2,
            ell: 3,
            eps: Rational::new(1, 2),
            r0: 2,
            n_cap: 24,
        };
        let one = empirical_parallel(&params, 1).unwrap();
        let four = empirical_parallel(&params, 4).unwrap();
        match (one, four) {
            (
                EmpiricalOutcome::MinimalN { n: n1, longest_bad: w1 },
                EmpiricalOutcome::MinimalN { n: n4, longest_bad: w4 },
            ) => {
                assert_eq!(n1, n4);
                assert_eq!(w1.letters(), w4.letters());
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
