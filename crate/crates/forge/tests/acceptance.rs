//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Oracles here are deliberately naive re-implementations.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use anagram_core::anaconstruct::{
    assemble_path, assign_roles, block_subpath, compute_delta, select_sets, verify_construction,
    SubpathKind,
};
use anagram_core::gridmodel::{
    concat_blocks, split_blocks, BlockColouring, BlockString, BlockSymbol, GridColouring,
};
use anagram_core::pathcheck::{afcn_grid, afcn_path, verify_colouring};
use anagram_core::treebound::{certify_or_refute, CertifyOutcome};
use anagram_core::words::{
    find_anagramish_substring, longest_anagram_free, Alphabet, PrefixHistograms, SearchOptions,
    Word,
};
use anagram_core::Rational;
use anagram_forge::plant::{plant, PlantParams};
use anagram_forge::search::empirical_parallel;
use anagram_core::treebound::{EmpiricalOutcome, EmpiricalParams};

fn pass(n: u32, name: &str) {
    println!("criterion {n} ({name}): PASS");
}

/// 1. No anagram-free word of length 8 over 3 letters; length 7 exists.
#[test]
fn criterion_1_footnote() {
    let start = Instant::now();
    let opts = SearchOptions {
        max_len: 8,
        node_budget: 10_000_000,
        canonical: false,
    };
    let outcome = longest_anagram_free(3, &opts).unwrap();
    assert!(outcome.stats.exhausted, "search must be exhaustive");
    assert!(!outcome.stats.reached_max, "no length-8 word may exist");
    assert_eq!(outcome.word.len(), 7);
    assert!(find_anagramish_substring(&outcome.word).is_none());
    assert!(start.elapsed().as_secs_f64() < 1.0, "must finish within 1 s");
    pass(1, "footnote: 3 letters max out at length 7");
}

/// 2. 4-letter search reaches length >= 30 within 10^7 nodes; output
/// re-verified independently.
#[test]
fn criterion_2_four_letter_length_30() {
    let start = Instant::now();
    let opts = SearchOptions {
        max_len: 30,
        node_budget: 10_000_000,
        canonical: true,
    };
    let outcome = longest_anagram_free(4, &opts).unwrap();
    assert!(outcome.word.len() >= 30, "got {}", outcome.word.len());
    assert!(outcome.stats.nodes_expanded <= 10_000_000);
    assert!(
        find_anagramish_substring(&outcome.word).is_none(),
        "independent checker rejected the reported word"
    );
    assert!(start.elapsed().as_secs() < 60);
    pass(2, "4-letter anagram-free word of length >= 30");
}

fn random_colouring(rng: &mut ChaCha8Rng, width: usize, c: u32) -> GridColouring {
    let top = (0..width).map(|_| rng.gen_range(1..=c)).collect();
    let bottom = (0..width).map(|_| rng.gen_range(1..=c)).collect();
    GridColouring::new(c, top, bottom).unwrap()
}

/// 3. split/concat bijection round trip on 1000 random instances.
#[test]
fn criterion_3_bijection_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        // concat . split on a colouring of divisible width.
        let b = rng.gen_range(1..=5usize);
        let c = rng.gen_range(1..=4u32);
        let phi = random_colouring(&mut rng, 4 * b, c);
        let blocks = split_blocks(&phi, 4).unwrap();
        assert_eq!(blocks.len(), b);
        let back = concat_blocks(&blocks).unwrap();
        assert_eq!(back, phi);
    }
    for _ in 0..500 {
        // split . concat on uniform-width block sequences.
        let b = rng.gen_range(1..=5usize);
        let t = 4 * rng.gen_range(1..=3usize);
        let c = rng.gen_range(1..=4u32);
        let blocks: Vec<BlockColouring> = (0..b)
            .map(|_| BlockColouring::new(random_colouring(&mut rng, t, c)))
            .collect();
        let phi = concat_blocks(&blocks).unwrap();
        let back = split_blocks(&phi, t).unwrap();
        assert_eq!(back, blocks);
    }
    pass(3, "block bijection: 1000 round trips");
}

/// 4. 50 seeded planted instances run the construction end to end.
#[test]
fn criterion_4_construction_end_to_end() {
    let start = Instant::now();
    let mut cases: Vec<(usize, usize, u64)> = Vec::new();
    // ell = 2 forces strict alternation: tau = 0 needs even r, tau = 2 odd r.
    cases.extend((0..13).map(|i| (2usize, 4 + 2 * i, 0u64)));
    cases.extend((0..12).map(|i| (2usize, 17 + 2 * i, 2u64)));
    cases.extend((0..15).map(|i| (3usize, 6 + i, 0u64)));
    cases.extend((0..10).map(|i| (3usize, 25 + i, 2u64)));
    assert_eq!(cases.len(), 50);
    for (i, &(ell, r, tau)) in cases.iter().enumerate() {
        let planted = plant(&PlantParams {
            ell,
            r,
            tau,
            seed: 1000 + i as u64,
            colours: 3,
            k: 1 + (i % 2),
            eps: None,
        })
        .unwrap_or_else(|e| panic!("plant failed for ell={ell} r={r} tau={tau}: {e}"));
        let s = planted.block_string;
        let profile = compute_delta(&s).unwrap();
        assert_eq!(profile.tau, tau);
        let selection = select_sets(&s, &profile, planted.eps).unwrap();
        let roles = assign_roles(&s, &selection).unwrap();
        let path = assemble_path(&s, &roles).unwrap();
        let report = verify_construction(&s, path.vertices()).unwrap();
        assert!(report.path_valid, "case {i}");
        assert!(report.anagramish, "case {i}: trace not anagramish");
        assert!(report.midpoint_ok, "case {i}: midpoint off the H_r/Q_r boundary");
    }
    assert!(start.elapsed().as_secs() < 60);
    pass(4, "anagramish path construction: 50/50 planted instances");
}

fn colour_multiset(phi: &GridColouring, vs: &[anagram_core::gridmodel::GridVertex]) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for &v in vs {
        *m.entry(phi.colour(v).unwrap()).or_insert(0) += 1;
    }
    m
}

/// 5. Top(H) + Bottom(H') = ZigZag(H'') as colour multisets for same-symbol
/// block triples.
#[test]
fn criterion_5_multiset_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let k = rng.gen_range(1..=3usize);
        let c = rng.gen_range(2..=4u32);
        let sym = BlockSymbol::new(
            k,
            BlockColouring::new(random_colouring(&mut rng, 4 * k, c)),
        )
        .unwrap();
        let phi_star = BlockColouring::new(random_colouring(&mut rng, 4, c));
        // Four occurrences of one symbol; H_1, H_2, H_3 are the triple.
        let s = BlockString::new(vec![sym; 4], phi_star, 1, c).unwrap();
        let phi = s.realize();
        let offsets = s.layout_offsets();
        let frag = |kind, i: usize| {
            let lo = offsets[i] + 4;
            block_subpath(kind, lo, lo + 4 * k).unwrap()
        };
        let top = colour_multiset(&phi, &frag(SubpathKind::Top, 0));
        let bottom = colour_multiset(&phi, &frag(SubpathKind::Bottom, 1));
        let zigzag = colour_multiset(&phi, &frag(SubpathKind::ZigZag, 2));
        let mut sum = top;
        for (colour, count) in bottom {
            *sum.entry(colour).or_insert(0) += count;
        }
        assert_eq!(sum, zigzag);
    }
    pass(5, "top + bottom = zig-zag colour multisets, 200 triples");
}

/// Unpruned oracle: try every colouring function over colours 1..=c.
fn afcn_grid_oracle(n: usize, c_max: u32) -> Option<u32> {
    for c in 1..=c_max {
        let total = (c as u64).pow(2 * n as u32);
        for code in 0..total {
            let mut digits = code;
            let mut cells = Vec::with_capacity(2 * n);
            for _ in 0..2 * n {
                cells.push((digits % c as u64) as u32 + 1);
                digits /= c as u64;
            }
            let (top, bottom) = cells.split_at(n);
            let phi = GridColouring::new(c, top.to_vec(), bottom.to_vec()).unwrap();
            if verify_colouring(&phi).anagram_free {
                return Some(c);
            }
        }
    }
    None
}

/// Exhaustive colour-string oracle for paths.
fn afcn_path_oracle(m: usize, c_max: u32) -> Option<u32> {
    for c in 1..=c_max {
        let alphabet = Alphabet::numeric(c as usize).unwrap();
        let total = (c as u64).pow(m as u32);
        for code in 0..total {
            let mut digits = code;
            let letters: Vec<u32> = (0..m)
                .map(|_| {
                    let l = (digits % c as u64) as u32;
                    digits /= c as u64;
                    l
                })
                .collect();
            let w = Word::new(alphabet.clone(), letters).unwrap();
            if find_anagramish_substring(&w).is_none() {
                return Some(c);
            }
        }
    }
    None
}

/// 6. Pruned afcn agrees with unpruned oracles; known values; monotone.
#[test]
fn criterion_6_afcn_cross_validation() {
    for n in 1..=3usize {
        let (pruned, _) = afcn_grid(n, 4);
        assert_eq!(pruned, afcn_grid_oracle(n, 4), "n = {n}");
    }
    assert_eq!(afcn_grid(1, 4).0, Some(2));
    for m in 1..=8usize {
        let (pruned, _) = afcn_path(m, 4);
        assert_eq!(pruned, afcn_path_oracle(m, 4), "m = {m}");
    }
    let computed: Vec<Option<u32>> = (1..=6).map(|n| afcn_grid(n, 6).0).collect();
    assert!(computed.iter().all(|v| v.is_some()));
    assert!(computed.windows(2).all(|w| w[0] <= w[1]), "{computed:?}");
    pass(6, "afcn matches unpruned oracles and is non-decreasing");
}

/// Random ell-periodic word of the given length via randomized backtracking.
fn random_periodic_word(rng: &mut ChaCha8Rng, m: usize, ell: usize, len: usize) -> Word {
    fn dfs(letters: &mut Vec<u32>, m: usize, ell: usize, len: usize, rng: &mut ChaCha8Rng) -> bool {
        if letters.len() == len {
            return true;
        }
        let mut order: Vec<u32> = (0..m as u32).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        for a in order {
            letters.push(a);
            let p = letters.len();
            let ok = p < ell
                || (0..m as u32).all(|s| letters[p - ell..].contains(&s));
            if ok && dfs(letters, m, ell, len, rng) {
                return true;
            }
            letters.pop();
        }
        false
    }
    let mut letters = Vec::with_capacity(len);
    assert!(dfs(&mut letters, m, ell, len, rng), "no {ell}-periodic word of length {len}");
    Word::new(Alphabet::lowercase(m).unwrap(), letters).unwrap()
}

/// 7. Tree verifier: witness or fully checked certificate on 100 random
/// periodic words, plus a crafted single-node certificate.
#[test]
fn criterion_7_tree_verifier() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let configs: [(usize, usize, usize); 5] =
        [(1, 1, 2), (2, 2, 2), (2, 2, 4), (3, 2, 6), (3, 3, 6)];
    let eps_choices = [Rational::new(1, 2), Rational::new(1, 3), Rational::new(2, 3)];
    let mut count = 0;
    let mut certificates = 0;
    'outer: for round in 0.. {
        for &(ell, m, r0) in &configs {
            if count == 100 {
                break 'outer;
            }
            let h = 1 + (round + count) % 6;
            let len = r0 << h;
            if len > 512 {
                continue;
            }
            let word = random_periodic_word(&mut rng, m, ell, len);
            let eps = eps_choices[count % eps_choices.len()];
            let outcome = certify_or_refute(&word, r0, eps, ell, false).unwrap();
            match outcome {
                CertifyOutcome::Balanced(w) => {
                    // Independent recount: that node is balanced for every
                    // symbol.
                    let pre = PrefixHistograms::new(&word);
                    let mid = w.offset + w.length / 2;
                    for a in 0..word.alphabet().size() {
                        let tau = pre
                            .count(a, w.offset, mid)
                            .abs_diff(pre.count(a, mid, w.offset + w.length));
                        assert!(
                            (tau as i128) * (ell as i128) * (*eps.denom() as i128)
                                <= (*eps.numer() as i128) * (w.length as i128),
                            "reported balanced node fails recount"
                        );
                    }
                }
                CertifyOutcome::Certificate(c) => {
                    certificates += 1;
                    assert!(c.all_ok, "certificate inequality failed");
                }
            }
            count += 1;
        }
    }
    // Crafted everywhere-unbalanced instance: single node, exact checks.
    let word = Word::from_chars("ab").unwrap();
    match certify_or_refute(&word, 2, Rational::new(1, 2), 2, false).unwrap() {
        CertifyOutcome::Certificate(c) => {
            assert!(c.all_ok);
            certificates += 1;
        }
        other => panic!("expected a certificate, got {other:?}"),
    }
    assert!(certificates >= 1);
    pass(7, "tree verifier: 100 random instances + crafted certificate");
}

/// 8. Empirical lemma bound is found, stable, and worker-independent.
#[test]
fn criterion_8_empirical_bound() {
    let start = Instant::now();
    let params = EmpiricalParams {
        sigma: 2,
        ell: 3,
        eps: Rational::new(1, 2),
        r0: 2,
        n_cap: 24,
    };
    let mut results = Vec::new();
    for workers in [1usize, 4, 1, 4] {
        match empirical_parallel(&params, workers).unwrap() {
            EmpiricalOutcome::MinimalN { n, longest_bad } => {
                results.push((n, longest_bad.letters().to_vec()))
            }
            other => panic!("expected a bound within the cap, got {other:?}"),
        }
    }
    assert!(results.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(results[0].0, 6);
    assert!(start.elapsed().as_secs() < 120);
    pass(8, "empirical lemma bound: n = 6, stable across workers");
}

/// 9. Seeded CLI invocations are byte-identical across runs and worker
/// counts.
#[test]
fn criterion_9_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_anagram-forge");
    let worker_sensitive: [&[&str]; 3] = [
        &["word", "longest", "--k", "4", "--max", "28", "--budget", "200000", "--format", "json"],
        &["tree", "empirical", "--sigma", "2", "--ell", "3", "--eps", "1/2", "--r0", "2", "--cap", "24", "--format", "json"],
        &["construct", "plant", "--ell", "2", "--r", "21", "--tau", "2", "--seed", "7", "--format", "json"],
    ];
    let fixed: [&[&str]; 2] = [
        &["grid", "afcn", "--n", "2", "--cmax", "4", "--no-cache", "--format", "json"],
        &["tree", "thresholds", "--eps", "1", "--ell", "2", "--r0", "2", "--format", "json"],
    ];
    let run = |args: &[&str], workers: usize| -> Vec<u8> {
        let out = Command::new(bin)
            .args(args)
            .args(["--workers", &workers.to_string()])
            .env_remove("ANAGRAM_FORGE_CACHE")
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "{args:?} failed: {:?}", out);
        out.stdout
    };
    for args in worker_sensitive.iter().chain(fixed.iter()) {
        let mut outputs = Vec::new();
        for _ in 0..3 {
            for workers in [1, 4] {
                outputs.push(run(args, workers));
            }
        }
        assert!(
            outputs.windows(2).all(|w| w[0] == w[1]),
            "output of {args:?} varies across runs/workers"
        );
    }
    pass(9, "CLI determinism: byte-identical across 3 runs x workers 1/4");
}
