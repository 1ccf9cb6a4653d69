//! Seeded fixture generation: ell-periodic block strings with an exact
//! target tau, satisfying all construction preconditions. The generator
//! re-verifies the preconditions through the core checker before returning.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use anagram_core::anaconstruct::{check_preconditions, compute_delta, index_word};
use anagram_core::gridmodel::{BlockColouring, BlockString, BlockSymbol, GridColouring};
use anagram_core::words::is_ell_periodic;
use anagram_core::Rational;

#[derive(Debug, Clone)]
pub struct PlantParams {
    pub ell: usize,
    pub r: usize,
    pub tau: u64,
    pub seed: u64,
    /// Colour count of the generated colourings.
    pub colours: u32,
    /// Uniform block width multiplier: every colourful block is 4k wide.
    pub k: usize,
    /// Optional eps override; defaults to tau/r (or 1/(4 ell + 1) when
    /// tau = 0).
    pub eps: Option<Rational>,
}

#[derive(Debug, Clone)]
pub struct Planted {
    pub block_string: BlockString,
    pub eps: Rational,
    /// Number of distinct block symbols.
    pub m: usize,
}

/// Randomized backtracking over index words of length 2r: every complete
/// ell-window must contain all m symbols, and the final half-imbalance must
/// equal tau exactly.
struct IndexDfs {
    m: usize,
    ell: usize,
    r: usize,
    tau: u64,
    letters: Vec<u32>,
    /// first-half count minus second-half count, per symbol.
    diff: Vec<i64>,
    sum_abs: u64,
    rng: ChaCha8Rng,
}

impl IndexDfs {
    fn window_ok(&self, pos: usize) -> bool {
        if pos + 1 < self.ell {
            return true;
        }
        let lo = pos + 1 - self.ell;
        (0..self.m as u32).all(|a| self.letters[lo..=pos].contains(&a))
    }

    fn feasible(&self, pos: usize) -> bool {
        let remaining = (2 * self.r - (pos + 1)) as u64;
        if self.sum_abs > self.tau + remaining {
            return false;
        }
        if self.tau > self.sum_abs + remaining {
            return false;
        }
        (self.sum_abs + remaining) % 2 == self.tau % 2
    }

    fn dfs(&mut self, pos: usize) -> bool {
        if pos == 2 * self.r {
            return self.sum_abs == self.tau;
        }
        let mut order: Vec<u32> = (0..self.m as u32).collect();
        order.shuffle(&mut self.rng);
        let sign = if pos < self.r { 1 } else { -1 };
        for a in order {
            self.letters[pos] = a;
            let old = self.diff[a as usize];
            self.diff[a as usize] += sign;
            self.sum_abs = self.sum_abs - old.unsigned_abs() + self.diff[a as usize].unsigned_abs();
            if self.window_ok(pos) && self.feasible(pos) && self.dfs(pos + 1) {
                return true;
            }
            self.sum_abs = self.sum_abs - self.diff[a as usize].unsigned_abs() + old.unsigned_abs();
            self.diff[a as usize] = old;
        }
        false
    }
}

fn random_colouring(rng: &mut ChaCha8Rng, width: usize, c: u32) -> GridColouring {
    let top: Vec<u32> = (0..width).map(|_| rng.gen_range(1..=c)).collect();
    let bottom: Vec<u32> = (0..width).map(|_| rng.gen_range(1..=c)).collect();
    GridColouring::new(c, top, bottom).expect("colours in range")
}

pub fn plant(params: &PlantParams) -> Result<Planted, String> {
    let PlantParams {
        ell,
        r,
        tau,
        seed,
        colours,
        k,
        eps,
    } = params.clone();
    if ell < 2 {
        return Err("ell must be at least 2".to_string());
    }
    if colours < 2 {
        return Err("colours must be at least 2".to_string());
    }
    if k == 0 {
        return Err("k must be positive".to_string());
    }
    if tau % 2 != 0 {
        return Err("tau must be even (half counts sum to the same total)".to_string());
    }
    let eps = match eps {
        Some(e) => e,
        None if tau > 0 => Rational::new(tau as i64, r as i64),
        None => Rational::new(1, 4 * ell as i64 + 1),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Preferred symbol count first, then the remaining choices: some (m,
    // ell, r, tau) combinations are infeasible (m = ell forces a cyclic
    // word whose tau is dictated by r mod ell).
    let preferred = rng.gen_range(2..=ell);
    let mut m_order = vec![preferred];
    m_order.extend((2..=ell).filter(|&m| m != preferred));
    let mut found: Option<(usize, Vec<u32>)> = None;
    for m in m_order {
        let mut dfs = IndexDfs {
            m,
            ell,
            r,
            tau,
            letters: vec![0; 2 * r],
            diff: vec![0; m],
            sum_abs: 0,
            rng: ChaCha8Rng::seed_from_u64(seed.wrapping_add(1)),
        };
        if dfs.dfs(0) {
            found = Some((m, dfs.letters));
            break;
        }
    }
    let Some((m, letters)) = found else {
        return Err(format!(
            "no {ell}-periodic index word of length {} with tau = {tau} for any symbol count",
            2 * r
        ));
    };

    // Distinct symbols: same uniform width, pairwise different colourings.
    let mut palette: Vec<BlockSymbol> = Vec::with_capacity(m);
    while palette.len() < m {
        let phi = BlockColouring::new(random_colouring(&mut rng, 4 * k, colours));
        let sym = BlockSymbol::new(k, phi).map_err(|e| e.to_string())?;
        if !palette.contains(&sym) {
            palette.push(sym);
        }
    }
    let phi_star = BlockColouring::new(random_colouring(&mut rng, 4, colours));
    let symbols: Vec<BlockSymbol> = letters
        .iter()
        .map(|&a| palette[a as usize].clone())
        .collect();
    let block_string =
        BlockString::new(symbols, phi_star, ell, colours).map_err(|e| e.to_string())?;

    // Re-verify through the independent core checks before handing out.
    let word = index_word(&block_string);
    if !is_ell_periodic(&word, ell, false).map_err(|e| e.to_string())? {
        return Err("internal error: generated index word is not ell-periodic".to_string());
    }
    let profile = compute_delta(&block_string).map_err(|e| e.to_string())?;
    if profile.tau != tau {
        return Err(format!(
            "internal error: generated tau {} != target {tau}",
            profile.tau
        ));
    }
    check_preconditions(&block_string, &profile, eps).map_err(|e| e.to_string())?;
    Ok(Planted {
        block_string,
        eps,
        m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_instances_satisfy_preconditions() {
        // ell = 2 forces strict alternation: tau = 2 iff r is odd.
        for (ell, r, tau, seed) in [(2usize, 21usize, 2u64, 7u64), (2, 18, 0, 1), (3, 30, 2, 5)] {
            let planted = plant(&PlantParams {
                ell,
                r,
                tau,
                seed,
                colours: 3,
                k: 1,
                eps: None,
            })
            .unwrap();
            assert_eq!(planted.block_string.len(), 2 * r);
            let profile = compute_delta(&planted.block_string).unwrap();
            assert_eq!(profile.tau, tau);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let p = PlantParams {
            ell: 2,
            r: 21,
            tau: 2,
            seed: 7,
            colours: 3,
            k: 1,
            eps: None,
        };
        let a = plant(&p).unwrap();
        let b = plant(&p).unwrap();
        assert_eq!(
            index_word(&a.block_string).letters(),
            index_word(&b.block_string).letters()
        );
        assert_eq!(a.block_string.realize().top(), b.block_string.realize().top());
    }

    #[test]
    fn infeasible_tau_rejected() {
        // tau = 2 with r = 11, ell = 2 violates eps < 1/(4 ell).
        let err = plant(&PlantParams {
            ell: 2,
            r: 11,
            tau: 2,
            seed: 3,
            colours: 3,
            k: 1,
            eps: None,
        })
        .unwrap_err();
        assert!(err.contains("precondition") || err.contains("eps"), "{err}");
    }
}
