//! The 2xn grid graph, block colourings, the block-string bijection, and
//! realization of block strings as coloured grids.
//!
//! A grid `G_n` has top row `a_0..a_{n-1}` and bottom row `b_0..b_{n-1}`.
//! A block string interleaves variable-width *colourful* blocks with 4-wide
//! *boring* blocks that all carry the same colouring `phi_star`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridError {
    VertexOutOfRange { col: usize, n: usize },
    RowLengthMismatch { top: usize, bottom: usize },
    ColourOutOfRange { colour: u32, c: u32 },
    BadRange { lo: usize, hi: usize, n: usize },
    ColourCountMismatch { expected: u32, found: u32 },
    NonDivisibleWidth { n: usize, width: usize },
    BadBlockWidth { k: usize, t: usize },
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::VertexOutOfRange { col, n } => {
                write!(f, "column {col} out of range for grid of {n} columns")
            }
            GridError::RowLengthMismatch { top, bottom } => {
                write!(f, "row length mismatch: top {top}, bottom {bottom}")
            }
            GridError::ColourOutOfRange { colour, c } => {
                write!(f, "colour {colour} outside [1, {c}]")
            }
            GridError::BadRange { lo, hi, n } => {
                write!(f, "column range [{lo}, {hi}) invalid for {n} columns")
            }
            GridError::ColourCountMismatch { expected, found } => {
                write!(f, "colour count mismatch: expected {expected}, found {found}")
            }
            GridError::NonDivisibleWidth { n, width } => {
                write!(f, "width {width} does not divide {n} columns")
            }
            GridError::BadBlockWidth { k, t } => {
                write!(f, "block symbol with k = {k} requires width {}, got {t}", 4 * k)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Row {
    Top,
    Bottom,
}

/// A vertex of `G_n`. Ordering is row-major: `a_0 < a_1 < ... < b_0 < ...`,
/// which fixes the canonical orientation used by path enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridVertex {
    pub row: Row,
    pub col: usize,
}

impl GridVertex {
    pub fn top(col: usize) -> Self {
        GridVertex { row: Row::Top, col }
    }

    pub fn bottom(col: usize) -> Self {
        GridVertex {
            row: Row::Bottom,
            col,
        }
    }

    /// Text label: `a3` for top column 3, `b0` for bottom column 0.
    pub fn label(&self) -> String {
        match self.row {
            Row::Top => format!("a{}", self.col),
            Row::Bottom => format!("b{}", self.col),
        }
    }

    pub fn parse_label(s: &str) -> Option<GridVertex> {
        let (head, tail) = s.split_at(1);
        let col: usize = tail.parse().ok()?;
        match head {
            "a" => Some(GridVertex::top(col)),
            "b" => Some(GridVertex::bottom(col)),
            _ => None,
        }
    }

    pub fn partner(&self) -> GridVertex {
        match self.row {
            Row::Top => GridVertex::bottom(self.col),
            Row::Bottom => GridVertex::top(self.col),
        }
    }
}

/// Neighbours of `v` in `G_n`, in sorted order: the horizontal neighbours in
/// the same row plus the vertical partner in the same column.
pub fn neighbours(v: GridVertex, n: usize) -> Result<Vec<GridVertex>, GridError> {
    if v.col >= n {
        return Err(GridError::VertexOutOfRange { col: v.col, n });
    }
    let mut out = Vec::with_capacity(3);
    if v.col > 0 {
        out.push(GridVertex { row: v.row, col: v.col - 1 });
    }
    if v.col + 1 < n {
        out.push(GridVertex { row: v.row, col: v.col + 1 });
    }
    out.push(v.partner());
    out.sort_unstable();
    Ok(out)
}

pub fn adjacent(u: GridVertex, v: GridVertex) -> bool {
    (u.row == v.row && u.col.abs_diff(v.col) == 1) || (u.col == v.col && u.row != v.row)
}

/// A vertex `c`-colouring of `G_n`, colours in `[1, c]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridColouring {
    c: u32,
    top: Vec<u32>,
    bottom: Vec<u32>,
}

impl GridColouring {
    pub fn new(c: u32, top: Vec<u32>, bottom: Vec<u32>) -> Result<Self, GridError> {
        if top.len() != bottom.len() {
            return Err(GridError::RowLengthMismatch {
                top: top.len(),
                bottom: bottom.len(),
            });
        }
        for &colour in top.iter().chain(bottom.iter()) {
            if colour == 0 || colour > c {
                return Err(GridError::ColourOutOfRange { colour, c });
            }
        }
        Ok(GridColouring { c, top, bottom })
    }

    pub fn n(&self) -> usize {
        self.top.len()
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    pub fn colour(&self, v: GridVertex) -> Result<u32, GridError> {
        if v.col >= self.n() {
            return Err(GridError::VertexOutOfRange { col: v.col, n: self.n() });
        }
        Ok(match v.row {
            Row::Top => self.top[v.col],
            Row::Bottom => self.bottom[v.col],
        })
    }
}

/// The colouring of a `t`-block, re-indexed from column 0. Width 0 arises
/// only from empty extraction ranges; most callers require `t >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockColouring {
    colouring: GridColouring,
}

impl BlockColouring {
    pub fn new(colouring: GridColouring) -> Self {
        BlockColouring { colouring }
    }

    pub fn t(&self) -> usize {
        self.colouring.n()
    }

    pub fn colouring(&self) -> &GridColouring {
        &self.colouring
    }
}

/// The induced colouring of columns `[i, j)`, re-indexed from 0.
pub fn extract_block(
    phi: &GridColouring,
    i: usize,
    j: usize,
) -> Result<BlockColouring, GridError> {
    if i > j || j > phi.n() {
        return Err(GridError::BadRange { lo: i, hi: j, n: phi.n() });
    }
    Ok(BlockColouring::new(GridColouring {
        c: phi.c,
        top: phi.top[i..j].to_vec(),
        bottom: phi.bottom[i..j].to_vec(),
    }))
}

/// Concatenate block colourings column-wise. All blocks must share a colour
/// count; the empty sequence yields the empty 1-colouring.
pub fn concat_blocks(blocks: &[BlockColouring]) -> Result<GridColouring, GridError> {
    let c = blocks.first().map(|b| b.colouring.c).unwrap_or(1);
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for b in blocks {
        if b.colouring.c != c {
            return Err(GridError::ColourCountMismatch {
                expected: c,
                found: b.colouring.c,
            });
        }
        top.extend_from_slice(&b.colouring.top);
        bottom.extend_from_slice(&b.colouring.bottom);
    }
    Ok(GridColouring { c, top, bottom })
}

/// Split a colouring into uniform-width blocks in column order. Inverse of
/// [`concat_blocks`] for uniform widths.
pub fn split_blocks(
    phi: &GridColouring,
    width: usize,
) -> Result<Vec<BlockColouring>, GridError> {
    if width == 0 || phi.n() % width != 0 {
        return Err(GridError::NonDivisibleWidth { n: phi.n(), width });
    }
    (0..phi.n() / width)
        .map(|b| extract_block(phi, b * width, (b + 1) * width))
        .collect()
}

/// A symbol `(k, phi)`: a colouring of a `4k`-block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSymbol {
    k: usize,
    phi: BlockColouring,
}

impl BlockSymbol {
    pub fn new(k: usize, phi: BlockColouring) -> Result<Self, GridError> {
        if k == 0 || phi.t() != 4 * k {
            return Err(GridError::BadBlockWidth { k, t: phi.t() });
        }
        Ok(BlockSymbol { k, phi })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn phi(&self) -> &BlockColouring {
        &self.phi
    }
}

/// A sequence of block symbols together with the boring colouring
/// `phi_star`, the declared periodicity bound `ell`, and the colour count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockString {
    symbols: Vec<BlockSymbol>,
    phi_star: BlockColouring,
    ell: usize,
    c: u32,
}

impl BlockString {
    pub fn new(
        symbols: Vec<BlockSymbol>,
        phi_star: BlockColouring,
        ell: usize,
        c: u32,
    ) -> Result<Self, GridError> {
        if phi_star.t() != 4 {
            return Err(GridError::BadBlockWidth { k: 1, t: phi_star.t() });
        }
        if phi_star.colouring().c() != c {
            return Err(GridError::ColourCountMismatch {
                expected: c,
                found: phi_star.colouring().c(),
            });
        }
        for s in &symbols {
            if s.phi.colouring().c() != c {
                return Err(GridError::ColourCountMismatch {
                    expected: c,
                    found: s.phi.colouring().c(),
                });
            }
        }
        Ok(BlockString {
            symbols,
            phi_star,
            ell,
            c,
        })
    }

    pub fn symbols(&self) -> &[BlockSymbol] {
        &self.symbols
    }

    pub fn phi_star(&self) -> &BlockColouring {
        &self.phi_star
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Offsets `n_{s,i} = 4 * (i + sum of k_j for j <= i)` for `i = 0..m`.
    /// Colourful block `i` occupies columns `[n_{s,i-1} + 4, n_{s,i})` and
    /// boring block `i` occupies `[n_{s,i}, n_{s,i} + 4)`.
    pub fn layout_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.symbols.len() + 1);
        let mut acc = 0usize;
        out.push(0);
        for (i, s) in self.symbols.iter().enumerate() {
            acc += s.k;
            out.push(4 * (i + 1 + acc));
        }
        out
    }

    /// `n_s`: the last layout offset.
    pub fn n_s(&self) -> usize {
        *self.layout_offsets().last().unwrap()
    }

    /// Realize the block string as a colouring of `G_{n_s + 4}`: boring
    /// blocks coloured by `phi_star` at every offset (including the trailing
    /// one), colourful blocks coloured by their symbols in between.
    pub fn realize(&self) -> GridColouring {
        let offsets = self.layout_offsets();
        let width = self.n_s() + 4;
        let mut top = alloc::vec![0u32; width];
        let mut bottom = alloc::vec![0u32; width];
        let paint = |top: &mut [u32], bottom: &mut [u32], lo: usize, block: &BlockColouring| {
            let col = block.colouring();
            top[lo..lo + block.t()].copy_from_slice(col.top());
            bottom[lo..lo + block.t()].copy_from_slice(col.bottom());
        };
        for &off in &offsets {
            paint(&mut top, &mut bottom, off, &self.phi_star);
        }
        for (i, s) in self.symbols.iter().enumerate() {
            paint(&mut top, &mut bottom, offsets[i] + 4, &s.phi);
        }
        GridColouring {
            c: self.c,
            top,
            bottom,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn colouring(c: u32, top: Vec<u32>, bottom: Vec<u32>) -> GridColouring {
        GridColouring::new(c, top, bottom).unwrap()
    }

    #[test]
    fn neighbour_examples() {
        assert_eq!(
            neighbours(GridVertex::top(0), 3).unwrap(),
            vec![GridVertex::top(1), GridVertex::bottom(0)]
        );
        assert_eq!(
            neighbours(GridVertex::bottom(1), 3).unwrap(),
            vec![
                GridVertex::top(1),
                GridVertex::bottom(0),
                GridVertex::bottom(2)
            ]
        );
        assert_eq!(
            neighbours(GridVertex::top(0), 1).unwrap(),
            vec![GridVertex::bottom(0)]
        );
        assert!(neighbours(GridVertex::top(3), 3).is_err());
    }

    #[test]
    fn degree_and_counts() {
        // Degree 2 or 3 everywhere, 2n vertices, 3n - 2 edges.
        for n in 2..8 {
            let mut edges = 0usize;
            for col in 0..n {
                for v in [GridVertex::top(col), GridVertex::bottom(col)] {
                    let deg = neighbours(v, n).unwrap().len();
                    assert!(deg == 2 || deg == 3);
                    edges += deg;
                }
            }
            assert_eq!(edges / 2, 3 * n - 2);
        }
    }

    #[test]
    fn extract_examples() {
        let phi = colouring(6, vec![1, 2, 3], vec![4, 5, 6]);
        let empty = extract_block(&phi, 1, 1).unwrap();
        assert_eq!(empty.t(), 0);
        let block = extract_block(&phi, 1, 3).unwrap();
        assert_eq!(block.colouring().top(), &[2, 3]);
        assert_eq!(block.colouring().bottom(), &[5, 6]);
        assert!(extract_block(&phi, 2, 4).is_err());
    }

    #[test]
    fn split_concat_round_trip() {
        let phi = colouring(2, vec![1, 2, 1, 2, 2, 1, 1, 2], vec![2, 1, 2, 1, 1, 2, 2, 1]);
        let blocks = split_blocks(&phi, 4).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(concat_blocks(&blocks).unwrap(), phi);
        let single = split_blocks(&phi, 8).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].colouring(), &phi);
        let six = colouring(1, vec![1; 6], vec![1; 6]);
        assert!(split_blocks(&six, 4).is_err());
        assert_eq!(concat_blocks(&[]).unwrap().n(), 0);
    }

    fn uniform_symbol(k: usize, c: u32, colour: u32) -> BlockSymbol {
        let phi = colouring(c, vec![colour; 4 * k], vec![colour; 4 * k]);
        BlockSymbol::new(k, BlockColouring::new(phi)).unwrap()
    }

    fn boring(c: u32) -> BlockColouring {
        BlockColouring::new(colouring(c, vec![1; 4], vec![1; 4]))
    }

    #[test]
    fn layout_offset_examples() {
        let s = BlockString::new(vec![uniform_symbol(1, 2, 2)], boring(2), 1, 2).unwrap();
        assert_eq!(s.layout_offsets(), vec![0, 8]);
        let s = BlockString::new(
            vec![uniform_symbol(1, 2, 2), uniform_symbol(2, 2, 2)],
            boring(2),
            2,
            2,
        )
        .unwrap();
        assert_eq!(s.layout_offsets(), vec![0, 8, 20]);
        let empty = BlockString::new(vec![], boring(2), 1, 2).unwrap();
        assert_eq!(empty.layout_offsets(), vec![0]);
        assert_eq!(empty.n_s(), 0);
    }

    #[test]
    fn realize_examples() {
        let empty = BlockString::new(vec![], boring(2), 1, 2).unwrap();
        let phi = empty.realize();
        assert_eq!(phi.n(), 4);
        assert_eq!(phi.top(), &[1, 1, 1, 1]);

        let s = BlockString::new(vec![uniform_symbol(1, 2, 2)], boring(2), 1, 2).unwrap();
        let phi = s.realize();
        assert_eq!(phi.n(), 12);
        assert_eq!(phi.top(), &[1, 1, 1, 1, 2, 2, 2, 2, 1, 1, 1, 1]);
        // Every boring offset carries phi_star.
        for &off in &s.layout_offsets() {
            let block = extract_block(&phi, off, off + 4).unwrap();
            assert_eq!(&block, s.phi_star());
        }
    }
}
