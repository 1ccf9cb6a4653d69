//! The explicit anagramish-path construction for block-structured colourings
//! of the 2xn grid.
//!
//! Given an even-length, `ell`-periodic block string with small imbalance,
//! the construction picks index sets A and B under a global independence
//! constraint (no two chosen block indices are consecutive), assigns each
//! colourful block a top, bottom, or zig-zag traversal and each boring block
//! a top, downup, or updown traversal, and assembles a single simple path
//! whose colour trace is anagramish. Block indices are 1-based (`H_1 ..
//! H_{2r}`); boring blocks are `Q_0 .. Q_{2r-1}` with the trailing boring
//! block present in the graph but never entered.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gridmodel::{adjacent, BlockString, GridVertex};
use crate::pathcheck::GridPath;
use crate::words::{Alphabet, Word};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    OddLength(usize),
    /// A lemma precondition does not hold; the message names the violated
    /// inequality.
    PreconditionViolated(String),
    /// Greedy selection ran out of candidates. Cannot occur when the
    /// preconditions hold; indicates a precondition violation upstream.
    Infeasible {
        symbol: usize,
        second_half: bool,
        needed: usize,
        found: usize,
    },
    /// Both a downup and an updown path demanded at one boring block.
    RoleConflict { boring: usize },
    /// Adjacent fragments do not join into a path.
    JunctionMismatch { junction: usize },
    BadSubpathWidth { lo: usize, hi: usize },
    SelectionMismatch(String),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::OddLength(n) => write!(f, "block string length {n} must be even"),
            ConstructError::PreconditionViolated(msg) => {
                write!(f, "precondition violated: {msg}")
            }
            ConstructError::Infeasible {
                symbol,
                second_half,
                needed,
                found,
            } => write!(
                f,
                "greedy selection infeasible for symbol {symbol} ({} half): needed {needed}, found {found}",
                if *second_half { "second" } else { "first" }
            ),
            ConstructError::RoleConflict { boring } => {
                write!(f, "boring block {boring} demanded both downup and updown")
            }
            ConstructError::JunctionMismatch { junction } => {
                write!(f, "fragments {junction} and {} do not join", junction + 1)
            }
            ConstructError::BadSubpathWidth { lo, hi } => {
                write!(f, "bad subpath width for columns [{lo}, {hi})")
            }
            ConstructError::SelectionMismatch(msg) => write!(f, "selection mismatch: {msg}"),
        }
    }
}

/// Distinct block symbols in first-occurrence order, and the block string as
/// a word over them. Symbol equality is equal `k` and identical colouring.
pub fn index_word(s: &BlockString) -> Word {
    let mut distinct: Vec<&crate::gridmodel::BlockSymbol> = Vec::new();
    let mut letters = Vec::with_capacity(s.len());
    for sym in s.symbols() {
        let idx = match distinct.iter().position(|d| *d == sym) {
            Some(i) => i,
            None => {
                distinct.push(sym);
                distinct.len() - 1
            }
        };
        letters.push(idx as u32);
    }
    let alphabet = Alphabet::numeric(distinct.len().max(1)).expect("non-empty");
    Word::new(alphabet, letters).expect("indices in range")
}

/// Per-symbol half-count differences over the block symbol alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaProfile {
    /// Half length: the block string has length 2r.
    pub r: usize,
    /// delta_a = first-half count minus second-half count, per distinct
    /// symbol in first-occurrence order.
    pub per_symbol_delta: Vec<i64>,
    /// tau = sum of |delta_a|.
    pub tau: u64,
    /// beta = tau / 2: the number of bottom blocks per half.
    pub beta: u64,
}

pub fn compute_delta(s: &BlockString) -> Result<DeltaProfile, ConstructError> {
    if s.len() % 2 != 0 {
        return Err(ConstructError::OddLength(s.len()));
    }
    let word = index_word(s);
    let r = s.len() / 2;
    let k = word.alphabet().size();
    let mut per_symbol_delta = vec![0i64; k];
    for (pos, &a) in word.letters().iter().enumerate() {
        if pos < r {
            per_symbol_delta[a as usize] += 1;
        } else {
            per_symbol_delta[a as usize] -= 1;
        }
    }
    let tau: u64 = per_symbol_delta.iter().map(|d| d.unsigned_abs()).sum();
    Ok(DeltaProfile {
        r,
        per_symbol_delta,
        tau,
        beta: tau / 2,
    })
}

/// The chosen index sets for one symbol. Indices are 1-based block indices.
/// The doubled side is grouped into pairs in chosen order; the single side
/// becomes zig-zag blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSelection {
    pub symbol: usize,
    pub delta: i64,
    /// A_a, within {1 .. r-1}.
    pub a: Vec<usize>,
    /// B_a, within {r+1 .. 2r-1}.
    pub b: Vec<usize>,
    /// Top/bottom pairs, from the doubled side, in chosen order.
    pub pairs: Vec<(usize, usize)>,
    /// Zig-zag indices, from the single side.
    pub zigzags: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub r: usize,
    pub per_symbol: Vec<SymbolSelection>,
}

impl Selection {
    /// All chosen indices, A union B.
    pub fn chosen(&self) -> BTreeSet<usize> {
        self.per_symbol
            .iter()
            .flat_map(|s| s.a.iter().chain(s.b.iter()).copied())
            .collect()
    }

    /// The global independence constraint: no two chosen indices are
    /// consecutive, and r is never chosen.
    pub fn independent(&self) -> bool {
        let chosen = self.chosen();
        !chosen.contains(&self.r)
            && chosen
                .iter()
                .zip(chosen.iter().skip(1))
                .all(|(&i, &j)| j - i >= 2)
    }
}

fn rational_parts(eps: Rational) -> Result<(i128, i128), ConstructError> {
    let (num, den) = (*eps.numer() as i128, *eps.denom() as i128);
    if num <= 0 || den <= 0 {
        return Err(ConstructError::PreconditionViolated(String::from(
            "eps must be positive",
        )));
    }
    Ok((num, den))
}

/// All four lemma preconditions, each failure naming the violated
/// inequality.
pub fn check_preconditions(
    s: &BlockString,
    profile: &DeltaProfile,
    eps: Rational,
) -> Result<(), ConstructError> {
    let ell = s.ell();
    let r = profile.r;
    if ell == 0 {
        return Err(ConstructError::PreconditionViolated(String::from(
            "ell must be positive",
        )));
    }
    let word = index_word(s);
    if !crate::words::is_ell_periodic(&word, ell, false).unwrap_or(false) {
        return Err(ConstructError::PreconditionViolated(format!(
            "block string is not {ell}-periodic"
        )));
    }
    if r < 2 * ell {
        return Err(ConstructError::PreconditionViolated(format!(
            "r >= 2*ell fails: r = {r}, ell = {ell}"
        )));
    }
    let (num, den) = rational_parts(eps)?;
    // eps < 1 / (4 ell)
    if num * 4 * ell as i128 >= den {
        return Err(ConstructError::PreconditionViolated(format!(
            "eps < 1/(4*ell) fails: eps = {eps}, ell = {ell}"
        )));
    }
    // tau <= eps * r
    if profile.tau as i128 * den > num * r as i128 {
        return Err(ConstructError::PreconditionViolated(format!(
            "tau <= eps*r fails: tau = {}, eps = {eps}, r = {r}",
            profile.tau
        )));
    }
    // 2 eps r < floor((r - 1) / ell)
    let floor = ((r - 1) / ell) as i128;
    if 2 * num * r as i128 >= den * floor {
        return Err(ConstructError::PreconditionViolated(format!(
            "2*eps*r < floor((r-1)/ell) fails: eps = {eps}, r = {r}, ell = {ell}"
        )));
    }
    Ok(())
}

/// Greedily choose the A and B index sets under the global independence
/// constraint. Symbols are processed in first-occurrence order, candidate
/// indices scanned left to right, skipping any index adjacent to a
/// previously chosen one.
pub fn select_sets(
    s: &BlockString,
    profile: &DeltaProfile,
    eps: Rational,
) -> Result<Selection, ConstructError> {
    check_preconditions(s, profile, eps)?;
    let word = index_word(s);
    let letters = word.letters();
    let r = profile.r;
    let mut chosen: BTreeSet<usize> = BTreeSet::new();
    let mut per_symbol: Vec<SymbolSelection> = profile
        .per_symbol_delta
        .iter()
        .enumerate()
        .map(|(symbol, &delta)| SymbolSelection {
            symbol,
            delta,
            a: Vec::new(),
            b: Vec::new(),
            pairs: Vec::new(),
            zigzags: Vec::new(),
        })
        .collect();

    let pick = |chosen: &mut BTreeSet<usize>,
                    symbol: usize,
                    range: core::ops::RangeInclusive<usize>,
                    needed: usize,
                    second_half: bool|
     -> Result<Vec<usize>, ConstructError> {
        let mut out = Vec::with_capacity(needed);
        for i in range {
            if out.len() == needed {
                break;
            }
            if letters[i - 1] as usize != symbol {
                continue;
            }
            if chosen.contains(&(i - 1)) || chosen.contains(&(i + 1)) || chosen.contains(&i) {
                continue;
            }
            chosen.insert(i);
            out.push(i);
        }
        if out.len() < needed {
            return Err(ConstructError::Infeasible {
                symbol,
                second_half,
                needed,
                found: out.len(),
            });
        }
        Ok(out)
    };

    for sel in per_symbol.iter_mut() {
        if sel.delta == 0 {
            continue;
        }
        let need_a = if sel.delta > 0 {
            2 * sel.delta as usize
        } else {
            sel.delta.unsigned_abs() as usize
        };
        sel.a = pick(&mut chosen, sel.symbol, 1..=r - 1, need_a, false)?;
    }
    for sel in per_symbol.iter_mut() {
        if sel.delta == 0 {
            continue;
        }
        let need_b = if sel.delta > 0 {
            sel.delta as usize
        } else {
            2 * sel.delta.unsigned_abs() as usize
        };
        sel.b = pick(&mut chosen, sel.symbol, r + 1..=2 * r - 1, need_b, true)?;
        let (doubled, single) = if sel.delta > 0 {
            (&sel.a, &sel.b)
        } else {
            (&sel.b, &sel.a)
        };
        sel.pairs = doubled.chunks(2).map(|c| (c[0], c[1])).collect();
        sel.zigzags = single.clone();
    }
    Ok(Selection { r, per_symbol })
}

/// Traversal role of a colourful block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockRole {
    Top,
    Bottom,
    ZigZag,
}

/// Traversal role of a boring block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoringRole {
    Top,
    DownUp,
    UpDown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleAssignment {
    /// Index `i` holds the role of `H_{i+1}`, for `i` in `0 .. 2r`.
    pub colourful: Vec<BlockRole>,
    /// Index `j` holds the role of `Q_j`, for `j` in `0 .. 2r`. The trailing
    /// boring block `Q_{2r}` exists in the graph but is never traversed.
    pub boring: Vec<BoringRole>,
}

/// Assign traversal roles from a selection: within each pair the smaller
/// index becomes a top block and the larger a bottom block; single-side
/// indices become zig-zag blocks; everything else takes the top row. Boring
/// blocks react to neighbouring bottom blocks with downup/updown paths.
pub fn assign_roles(
    s: &BlockString,
    selection: &Selection,
) -> Result<RoleAssignment, ConstructError> {
    let two_r = s.len();
    if selection.r * 2 != two_r {
        return Err(ConstructError::SelectionMismatch(format!(
            "selection r = {} does not match block string length {two_r}",
            selection.r
        )));
    }
    let mut colourful = vec![BlockRole::Top; two_r];
    for sel in &selection.per_symbol {
        for &(i, j) in &sel.pairs {
            let bottom = i.max(j);
            colourful[bottom - 1] = BlockRole::Bottom;
        }
        for &z in &sel.zigzags {
            colourful[z - 1] = BlockRole::ZigZag;
        }
    }
    let mut boring = vec![BoringRole::Top; two_r];
    for (j, role) in boring.iter_mut().enumerate() {
        let downup = j >= 1 && colourful[j - 1] == BlockRole::Bottom;
        let updown = j < two_r && colourful[j] == BlockRole::Bottom;
        *role = match (downup, updown) {
            (true, true) => return Err(ConstructError::RoleConflict { boring: j }),
            (true, false) => BoringRole::DownUp,
            (false, true) => BoringRole::UpDown,
            (false, false) => BoringRole::Top,
        };
    }
    Ok(RoleAssignment { colourful, boring })
}

/// The five canonical block-traversal fragments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubpathKind {
    Top,
    Bottom,
    ZigZag,
    DownUp,
    UpDown,
}

/// Vertex sequence of one fragment over columns `[lo, hi)`.
///
/// The zig-zag serpentine repeats every 4 columns and, for widths divisible
/// by 4, closes with both endpoints in the top row. Downup and updown
/// fragments are 4 wide.
pub fn block_subpath(
    kind: SubpathKind,
    lo: usize,
    hi: usize,
) -> Result<Vec<GridVertex>, ConstructError> {
    let width = hi.checked_sub(lo).ok_or(ConstructError::BadSubpathWidth { lo, hi })?;
    match kind {
        SubpathKind::Top | SubpathKind::Bottom => {
            if width == 0 {
                return Err(ConstructError::BadSubpathWidth { lo, hi });
            }
        }
        SubpathKind::ZigZag => {
            if width == 0 || width % 4 != 0 {
                return Err(ConstructError::BadSubpathWidth { lo, hi });
            }
        }
        SubpathKind::DownUp | SubpathKind::UpDown => {
            if width != 4 {
                return Err(ConstructError::BadSubpathWidth { lo, hi });
            }
        }
    }
    let out = match kind {
        SubpathKind::Top => (lo..hi).map(GridVertex::top).collect(),
        SubpathKind::Bottom => (lo..hi).map(GridVertex::bottom).collect(),
        SubpathKind::ZigZag => {
            let mut vs = Vec::with_capacity(2 * width);
            for base in (lo..hi).step_by(4) {
                vs.push(GridVertex::top(base));
                vs.push(GridVertex::bottom(base));
                vs.push(GridVertex::bottom(base + 1));
                vs.push(GridVertex::top(base + 1));
                vs.push(GridVertex::top(base + 2));
                vs.push(GridVertex::bottom(base + 2));
                vs.push(GridVertex::bottom(base + 3));
                vs.push(GridVertex::top(base + 3));
            }
            vs
        }
        SubpathKind::DownUp => {
            let mut vs = vec![GridVertex::bottom(lo)];
            vs.extend((lo..hi).map(GridVertex::top));
            vs
        }
        SubpathKind::UpDown => {
            let mut vs = vec![GridVertex::top(lo)];
            vs.extend((lo..hi).map(GridVertex::bottom));
            vs
        }
    };
    Ok(out)
}

/// Concatenate `Q_0, H_1, Q_1, ..., Q_{2r-1}, H_{2r}` fragments into one
/// simple path. The path starts at the top-left vertex of `Q_0` and never
/// enters the trailing boring block.
pub fn assemble_path(
    s: &BlockString,
    roles: &RoleAssignment,
) -> Result<GridPath, ConstructError> {
    let two_r = s.len();
    if roles.colourful.len() != two_r || roles.boring.len() != two_r {
        return Err(ConstructError::SelectionMismatch(format!(
            "role vectors sized {}/{} for block string of length {two_r}",
            roles.colourful.len(),
            roles.boring.len()
        )));
    }
    let offsets = s.layout_offsets();
    let mut vertices: Vec<GridVertex> = Vec::new();
    let mut junction = 0usize;
    let mut push_fragment =
        |vertices: &mut Vec<GridVertex>, frag: Vec<GridVertex>| -> Result<(), ConstructError> {
            if let (Some(&last), Some(&first)) = (vertices.last(), frag.first()) {
                if !adjacent(last, first) {
                    return Err(ConstructError::JunctionMismatch { junction });
                }
            }
            junction += 1;
            vertices.extend(frag);
            Ok(())
        };
    for i in 0..two_r {
        let boring_kind = match roles.boring[i] {
            BoringRole::Top => SubpathKind::Top,
            BoringRole::DownUp => SubpathKind::DownUp,
            BoringRole::UpDown => SubpathKind::UpDown,
        };
        push_fragment(
            &mut vertices,
            block_subpath(boring_kind, offsets[i], offsets[i] + 4)?,
        )?;
        let colour_kind = match roles.colourful[i] {
            BlockRole::Top => SubpathKind::Top,
            BlockRole::Bottom => SubpathKind::Bottom,
            BlockRole::ZigZag => SubpathKind::ZigZag,
        };
        push_fragment(
            &mut vertices,
            block_subpath(colour_kind, offsets[i] + 4, offsets[i + 1])?,
        )?;
    }
    GridPath::new(vertices, s.n_s() + 4)
        .map_err(|_| ConstructError::JunctionMismatch { junction })
}

/// Independent end-to-end verification of a constructed path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub path_valid: bool,
    pub anagramish: bool,
    pub trace_len: usize,
    /// Per-colour residual: first-half count minus second-half count of the
    /// trace (empty for odd-length traces).
    pub residuals: Vec<i64>,
    /// First colour (1-based) with nonzero residual.
    pub first_mismatch: Option<u32>,
    /// Half the trace length.
    pub midpoint_index: usize,
    /// The path's first half lies exactly in `Q_0 .. H_r` (all columns left
    /// of the `H_r`/`Q_r` boundary).
    pub midpoint_ok: bool,
}

/// Re-check a path against the realized colouring: validity, anagramish
/// colour trace, per-half residuals, and the midpoint boundary.
pub fn verify_construction(
    s: &BlockString,
    vertices: &[GridVertex],
) -> Result<ConstructionReport, ConstructError> {
    if s.len() % 2 != 0 {
        return Err(ConstructError::OddLength(s.len()));
    }
    let r = s.len() / 2;
    let phi = s.realize();
    let n = phi.n();
    let path_valid = GridPath::new(vertices.to_vec(), n).is_ok();
    // The trace is read off the raw vertices so an invalid path (bad
    // adjacency, repeats) still gets a report instead of an error; only
    // vertices outside the grid are fatal.
    let colours: Vec<u32> = vertices
        .iter()
        .map(|&v| {
            phi.colour(v)
                .map_err(|_| ConstructError::SelectionMismatch(String::from("path outside grid")))
        })
        .collect::<Result<_, _>>()?;
    let trace = Word::new(
        Alphabet::numeric(phi.c() as usize)
            .map_err(|_| ConstructError::SelectionMismatch(String::from("empty colour set")))?,
        colours.iter().map(|&c| c - 1).collect(),
    )
    .map_err(|_| ConstructError::SelectionMismatch(String::from("colour out of range")))?;
    let trace_len = trace.len();
    let (anagramish, residuals) = if trace_len % 2 == 0 && trace_len >= 2 {
        let report = crate::words::imbalance(&trace).expect("even length");
        (report.tau == 0, report.per_symbol_delta)
    } else {
        (false, Vec::new())
    };
    let first_mismatch = residuals
        .iter()
        .position(|&d| d != 0)
        .map(|i| i as u32 + 1);
    let midpoint_index = trace_len / 2;
    let boundary = s.layout_offsets()[r];
    let leading = vertices.iter().take_while(|v| v.col < boundary).count();
    let in_first = vertices.iter().filter(|v| v.col < boundary).count();
    let midpoint_ok = trace_len % 2 == 0 && leading == midpoint_index && in_first == midpoint_index;
    Ok(ConstructionReport {
        path_valid,
        anagramish,
        trace_len,
        residuals,
        first_mismatch,
        midpoint_index,
        midpoint_ok,
    })
}
