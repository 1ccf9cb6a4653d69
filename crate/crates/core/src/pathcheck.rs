//! Simple-path enumeration in the 2xn grid, anagram-free colouring
//! verification, and brute-force anagram-free chromatic number (afcn)
//! computation for small grids and path graphs.
//!
//! Paths are enumerated once up to reversal: the canonical orientation puts
//! the lexicographically smaller endpoint first. This is sound for
//! anagramish checks because anagramishness is reversal-invariant.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gridmodel::{adjacent, neighbours, GridColouring, GridError, GridVertex};
use crate::words::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathError {
    Empty,
    NotAdjacent { index: usize },
    RepeatedVertex { index: usize },
    OutOfRange { index: usize, n: usize },
}

impl fmt::Display for PathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathError::Empty => write!(f, "path must be non-empty"),
            PathError::NotAdjacent { index } => {
                write!(f, "vertices {index} and {} are not adjacent", index + 1)
            }
            PathError::RepeatedVertex { index } => {
                write!(f, "vertex at position {index} repeats an earlier vertex")
            }
            PathError::OutOfRange { index, n } => {
                write!(f, "vertex at position {index} outside grid of {n} columns")
            }
        }
    }
}

/// A simple path in `G_n`, stored as its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPath {
    vertices: Vec<GridVertex>,
}

impl GridPath {
    /// Validate adjacency, distinctness, non-emptiness, and range.
    pub fn new(vertices: Vec<GridVertex>, n: usize) -> Result<Self, PathError> {
        if vertices.is_empty() {
            return Err(PathError::Empty);
        }
        let mut seen = vec![false; 2 * n];
        for (index, v) in vertices.iter().enumerate() {
            if v.col >= n {
                return Err(PathError::OutOfRange { index, n });
            }
            let id = vertex_id(*v, n);
            if seen[id] {
                return Err(PathError::RepeatedVertex { index });
            }
            seen[id] = true;
            if index > 0 && !adjacent(vertices[index - 1], *v) {
                return Err(PathError::NotAdjacent { index: index - 1 });
            }
        }
        Ok(GridPath { vertices })
    }

    pub fn vertices(&self) -> &[GridVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn vertex_id(v: GridVertex, n: usize) -> usize {
    match v.row {
        crate::gridmodel::Row::Top => v.col,
        crate::gridmodel::Row::Bottom => n + v.col,
    }
}

fn all_vertices(n: usize) -> Vec<GridVertex> {
    let mut vs: Vec<GridVertex> = (0..n)
        .flat_map(|c| [GridVertex::top(c), GridVertex::bottom(c)])
        .collect();
    vs.sort_unstable();
    vs
}

fn dfs_paths<F: FnMut(&[GridVertex]) -> bool>(
    n: usize,
    min_len: usize,
    max_len: usize,
    path: &mut Vec<GridVertex>,
    visited: &mut [bool],
    f: &mut F,
) -> bool {
    let len = path.len();
    let canonical = len == 1 || path[0] < *path.last().unwrap();
    if len >= min_len && canonical && !f(path) {
        return false;
    }
    if len == max_len {
        return true;
    }
    let last = *path.last().unwrap();
    for nb in neighbours(last, n).unwrap() {
        let id = vertex_id(nb, n);
        if !visited[id] {
            visited[id] = true;
            path.push(nb);
            let keep_going = dfs_paths(n, min_len, max_len, path, visited, f);
            path.pop();
            visited[id] = false;
            if !keep_going {
                return false;
            }
        }
    }
    true
}

/// Visit every simple path of `G_n` with vertex count in
/// `[min_len, max_len]`, exactly once up to reversal. The visitor returns
/// `false` to stop early; the function returns `false` iff stopped.
///
/// Starts are visited in vertex order and extensions in sorted neighbour
/// order, so the visit order is deterministic.
pub fn for_each_simple_path<F: FnMut(&[GridVertex]) -> bool>(
    n: usize,
    min_len: usize,
    max_len: usize,
    mut f: F,
) -> bool {
    if n == 0 || max_len == 0 || min_len > max_len {
        return true;
    }
    let mut visited = vec![false; 2 * n];
    for start in all_vertices(n) {
        let id = vertex_id(start, n);
        visited[id] = true;
        let mut path = vec![start];
        let keep_going = dfs_paths(n, min_len, max_len, &mut path, &mut visited, &mut f);
        visited[id] = false;
        if !keep_going {
            return false;
        }
    }
    true
}

/// Collect every simple path with vertex count in `[min_len, max_len]`.
pub fn enumerate_simple_paths(n: usize, min_len: usize, max_len: usize) -> Vec<GridPath> {
    let mut out = Vec::new();
    for_each_simple_path(n, min_len, max_len, |p| {
        out.push(GridPath {
            vertices: p.to_vec(),
        });
        true
    });
    out
}

/// The colour sequence along a path, as a word over the alphabet `1..=c`.
pub fn colour_trace(path: &GridPath, phi: &GridColouring) -> Result<Word, GridError> {
    let alphabet = Alphabet::numeric(phi.c() as usize).expect("c >= 1");
    let letters = path
        .vertices
        .iter()
        .map(|&v| phi.colour(v).map(|col| col - 1))
        .collect::<Result<Vec<u32>, GridError>>()?;
    Ok(Word::new(alphabet, letters).expect("colours within alphabet"))
}

fn trace_tau_is_zero(p: &[GridVertex], phi: &GridColouring, counts: &mut [i64]) -> bool {
    // Even-length trace: first-half counts minus second-half counts.
    debug_assert!(p.len() % 2 == 0);
    counts.fill(0);
    let half = p.len() / 2;
    for &v in &p[..half] {
        counts[phi.colour(v).unwrap() as usize - 1] += 1;
    }
    for &v in &p[half..] {
        counts[phi.colour(v).unwrap() as usize - 1] -= 1;
    }
    counts.iter().all(|&d| d == 0)
}

#[derive(Debug, Clone)]
pub struct ColouringVerdict {
    pub anagram_free: bool,
    /// Present iff not anagram-free: the first anagramish path found, in
    /// increasing length order, then enumeration order.
    pub witness: Option<GridPath>,
}

/// Decide whether `phi` is an anagram-free colouring of `G_n` by exhaustive
/// enumeration of even-length simple paths in increasing length.
pub fn verify_colouring(phi: &GridColouring) -> ColouringVerdict {
    let n = phi.n();
    let mut counts = vec![0i64; phi.c() as usize];
    for len in (2..=2 * n).step_by(2) {
        let mut witness: Option<Vec<GridVertex>> = None;
        for_each_simple_path(n, len, len, |p| {
            if trace_tau_is_zero(p, phi, &mut counts) {
                witness = Some(p.to_vec());
                false
            } else {
                true
            }
        });
        if let Some(vertices) = witness {
            return ColouringVerdict {
                anagram_free: false,
                witness: Some(GridPath { vertices }),
            };
        }
    }
    ColouringVerdict {
        anagram_free: true,
        witness: None,
    }
}

/// Does the prefix colouring of `G_{j+1}` contain an anagramish even path
/// whose rightmost column is `j`? Paths entirely inside earlier columns were
/// checked when those columns were placed.
fn has_anagramish_touching(phi: &GridColouring, j: usize, counts: &mut [i64]) -> bool {
    let n = phi.n();
    let mut found = false;
    for_each_simple_path(n, 2, 2 * n, |p| {
        if p.len() % 2 == 0
            && p.iter().map(|v| v.col).max() == Some(j)
            && trace_tau_is_zero(p, phi, counts)
        {
            found = true;
            false
        } else {
            true
        }
    });
    found
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AfcnStats {
    /// Partial colouring nodes explored across all colour counts tried.
    pub nodes: u64,
}

fn extend_column(
    n: usize,
    c: u32,
    top: &mut Vec<u32>,
    bottom: &mut Vec<u32>,
    max_used: u32,
    counts: &mut Vec<i64>,
    stats: &mut AfcnStats,
) -> bool {
    let j = top.len();
    if j == n {
        return true;
    }
    for ca in 1..=c.min(max_used + 1) {
        top.push(ca);
        let mu1 = max_used.max(ca);
        for cb in 1..=c.min(mu1 + 1) {
            bottom.push(cb);
            stats.nodes += 1;
            let phi = GridColouring::new(c, top.clone(), bottom.clone()).unwrap();
            if !has_anagramish_touching(&phi, j, counts)
                && extend_column(n, c, top, bottom, mu1.max(cb), counts, stats)
            {
                return true;
            }
            bottom.pop();
        }
        top.pop();
    }
    false
}

/// Is there an anagram-free `c`-colouring of `G_n`? Column-by-column search
/// with fixed-first-colour symmetry breaking (each new colour's first use is
/// in order) and incremental pruning.
pub fn grid_colourable(n: usize, c: u32, stats: &mut AfcnStats) -> bool {
    if n == 0 {
        return true;
    }
    let mut counts = vec![0i64; c as usize];
    let mut top = Vec::with_capacity(n);
    let mut bottom = Vec::with_capacity(n);
    extend_column(n, c, &mut top, &mut bottom, 0, &mut counts, stats)
}

/// Smallest `c <= c_max` admitting an anagram-free colouring of `G_n`, or
/// `None`.
pub fn afcn_grid(n: usize, c_max: u32) -> (Option<u32>, AfcnStats) {
    let mut stats = AfcnStats::default();
    for c in 1..=c_max {
        if grid_colourable(n, c, &mut stats) {
            return (Some(c), stats);
        }
    }
    (None, stats)
}

fn path_suffix_anagramish(colours: &[u32], counts: &mut [i64]) -> bool {
    let m = colours.len();
    for r in 1..=m / 2 {
        counts.fill(0);
        for &col in &colours[m - 2 * r..m - r] {
            counts[col as usize - 1] += 1;
        }
        for &col in &colours[m - r..] {
            counts[col as usize - 1] -= 1;
        }
        if counts.iter().all(|&d| d == 0) {
            return true;
        }
    }
    false
}

fn extend_path_colour(
    m: usize,
    c: u32,
    colours: &mut Vec<u32>,
    max_used: u32,
    counts: &mut [i64],
    stats: &mut AfcnStats,
) -> bool {
    if colours.len() == m {
        return true;
    }
    for col in 1..=c.min(max_used + 1) {
        colours.push(col);
        stats.nodes += 1;
        if !path_suffix_anagramish(colours, counts)
            && extend_path_colour(m, c, colours, max_used.max(col), counts, stats)
        {
            return true;
        }
        colours.pop();
    }
    false
}

/// afcn of the `m`-vertex path graph (a degenerate one-row grid): smallest
/// `c <= c_max` admitting an anagram-free colour string of length `m`.
pub fn afcn_path(m: usize, c_max: u32) -> (Option<u32>, AfcnStats) {
    let mut stats = AfcnStats::default();
    if m == 0 {
        return (Some(0), stats);
    }
    for c in 1..=c_max {
        let mut counts = vec![0i64; c as usize];
        let mut colours = Vec::with_capacity(m);
        if extend_path_colour(m, c, &mut colours, 0, &mut counts, &mut stats) {
            return (Some(c), stats);
        }
    }
    (None, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::is_anagramish;

    #[test]
    fn path_counts() {
        // G_1 is a single edge.
        assert_eq!(enumerate_simple_paths(1, 2, 2).len(), 1);
        // G_2 is a 4-cycle: 4 edges.
        assert_eq!(enumerate_simple_paths(2, 2, 2).len(), 4);
        // 4 paths of 2 vertices, 4 of 3, 4 of 4.
        assert_eq!(enumerate_simple_paths(2, 2, 4).len(), 12);
        assert_eq!(enumerate_simple_paths(2, 3, 3).len(), 4);
        assert_eq!(enumerate_simple_paths(2, 4, 4).len(), 4);
    }

    #[test]
    fn paths_unique_up_to_reversal() {
        // Re-canonicalize and deduplicate; the count must not change.
        let paths = enumerate_simple_paths(3, 1, 6);
        let mut seen = alloc::collections::BTreeSet::new();
        for p in &paths {
            let mut vs = p.vertices().to_vec();
            if vs.last() < vs.first() {
                vs.reverse();
            }
            assert!(seen.insert(vs), "duplicate path {:?}", p);
        }
    }

    #[test]
    fn trace_examples() {
        let phi = GridColouring::new(2, vec![1], vec![2]).unwrap();
        let path = GridPath::new(vec![GridVertex::top(0), GridVertex::bottom(0)], 1).unwrap();
        let trace = colour_trace(&path, &phi).unwrap();
        assert_eq!(trace.letters(), &[0, 1]);
        let rev = GridPath::new(vec![GridVertex::bottom(0), GridVertex::top(0)], 1).unwrap();
        assert_eq!(colour_trace(&rev, &phi).unwrap().letters(), &[1, 0]);
        let single = GridPath::new(vec![GridVertex::top(0)], 1).unwrap();
        assert_eq!(colour_trace(&single, &phi).unwrap().len(), 1);
    }

    #[test]
    fn path_validation() {
        assert!(GridPath::new(vec![], 1).is_err());
        // Not adjacent.
        assert!(GridPath::new(vec![GridVertex::top(0), GridVertex::top(2)], 3).is_err());
        // Repeated.
        assert!(GridPath::new(
            vec![GridVertex::top(0), GridVertex::bottom(0), GridVertex::top(0)],
            1
        )
        .is_err());
    }

    #[test]
    fn verify_examples() {
        let bad = GridColouring::new(1, vec![1], vec![1]).unwrap();
        let verdict = verify_colouring(&bad);
        assert!(!verdict.anagram_free);
        let witness = verdict.witness.unwrap();
        assert_eq!(witness.len(), 2);
        assert!(is_anagramish(&colour_trace(&witness, &bad).unwrap()));

        let good = GridColouring::new(2, vec![1], vec![2]).unwrap();
        assert!(verify_colouring(&good).anagram_free);

        // a0 a1 b1 b0 traces 1,2,1,2.
        let phi = GridColouring::new(2, vec![1, 2], vec![2, 1]).unwrap();
        assert!(!verify_colouring(&phi).anagram_free);
    }

    #[test]
    fn afcn_examples() {
        assert_eq!(afcn_grid(1, 3).0, Some(2));
        assert_eq!(afcn_grid(1, 1).0, None);
        assert_eq!(afcn_path(1, 1).0, Some(1));
        assert_eq!(afcn_path(2, 2).0, Some(2));
        // Every binary length-4 word contains an anagramish factor.
        assert_eq!(afcn_path(4, 3).0, Some(3));
    }
}
