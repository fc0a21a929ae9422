//! Random Latin squares by the Jacobson-Matthews walk, and the
//! isotopy-to-a-group test.
//!
//! The walk operates on the 0/1 incidence cube of the square, taking
//! `10 n^3` moves through (possibly improper) squares; a square is
//! isotopic to a group exactly when its principal loop isotope is
//! associative, which is what [`is_group_table`] checks.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::rng::{Rng, RngSeed};
use crate::Result;

/// Where a Latin square came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Isotopic to a group table.
    Group,
    /// Certified not isotopic to any group table.
    NonGroup,
}

/// An `n x n` Latin square over symbols `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<u16>,
    pub provenance: Provenance,
}

impl LatinSquare {
    /// Wraps existing cells after checking the Latin property.
    pub fn from_cells(n: usize, cells: Vec<u16>) -> Result<LatinSquare> {
        if cells.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: cells.len(),
            });
        }
        let mut sq = LatinSquare {
            n,
            cells,
            provenance: Provenance::NonGroup,
        };
        if !sq.is_latin() {
            return Err(Error::InvalidData("not a Latin square".into()));
        }
        sq.provenance = if is_group_table(&sq)? {
            Provenance::Group
        } else {
            Provenance::NonGroup
        };
        Ok(sq)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> usize {
        usize::from(self.cells[r * self.n + c])
    }

    /// The square with 1-based symbols, the form fed to learners.
    pub fn symbol_cells(&self) -> Vec<u16> {
        self.cells.iter().map(|&v| v + 1).collect()
    }

    pub fn is_latin(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.fill(false);
            for c in 0..n {
                let v = self.get(r, c);
                if v >= n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        for c in 0..n {
            seen.fill(false);
            for r in 0..n {
                let v = self.get(r, c);
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        true
    }
}

/// Incidence-cube state of the Jacobson-Matthews walk; at most one cell
/// is improper, holding two positive symbols and one negative.
struct JmState {
    n: usize,
    cells: Vec<u16>,
    improper: Option<Improper>,
}

struct Improper {
    r: usize,
    c: usize,
    /// The two positive symbols at the improper cell.
    pos: [usize; 2],
    /// The symbol with incidence -1.
    neg: usize,
}

impl JmState {
    #[inline]
    fn get(&self, r: usize, c: usize) -> usize {
        usize::from(self.cells[r * self.n + c])
    }

    #[inline]
    fn set(&mut self, r: usize, c: usize, s: usize) {
        self.cells[r * self.n + c] = s as u16;
    }

    /// Columns of row `r` carrying symbol `s` (the improper state is
    /// resolved before this is called, so a plain scan suffices).
    fn columns_with(&self, r: usize, s: usize) -> Vec<usize> {
        (0..self.n).filter(|&c| self.get(r, c) == s).collect()
    }

    fn rows_with(&self, c: usize, s: usize) -> Vec<usize> {
        (0..self.n).filter(|&r| self.get(r, c) == s).collect()
    }

    /// One +-1 move on the incidence cube.
    fn step(&mut self, rng: &mut Rng) {
        let n = self.n;
        // select (r, c, s, t): incidence (r, c, s) goes up, (r, c, t)
        // goes down; from an improper state the negative incidence is
        // the one raised and the cell keeps its other positive symbol
        let (r, c, s, t, from_improper) = match self.improper.take() {
            None => {
                let r = rng.below(n);
                let c = rng.below(n);
                let t = self.get(r, c);
                let s = loop {
                    let s = rng.below(n);
                    if s != t {
                        break s;
                    }
                };
                (r, c, s, t, false)
            }
            Some(imp) => {
                let t = imp.pos[rng.below(2)];
                let keep = if imp.pos[0] == t { imp.pos[1] } else { imp.pos[0] };
                self.set(imp.r, imp.c, keep);
                (imp.r, imp.c, imp.neg, t, true)
            }
        };

        // the occurrences of s in row r and column c (two of each when
        // the move starts from an improper cell)
        let cols = self.columns_with(r, s);
        let rows = self.rows_with(c, s);
        debug_assert!(!cols.is_empty() && !rows.is_empty());
        debug_assert!(cols.len() <= 2 && rows.len() <= 2);
        let c2 = cols[rng.below(cols.len())];
        let r2 = rows[rng.below(rows.len())];

        if !from_improper {
            self.set(r, c, s);
        }
        self.set(r, c2, t);
        self.set(r2, c, t);
        let u = self.get(r2, c2);
        if u == t {
            self.set(r2, c2, s);
        } else {
            self.improper = Some(Improper {
                r: r2,
                c: c2,
                pos: [u, s],
                neg: t,
            });
        }
    }
}

/// Draws a random Latin square of order `n`: `10 n^3` moves of the
/// Jacobson-Matthews walk from the cyclic square, continued until the
/// state is proper, with provenance set by [`is_group_table`].
pub fn gen_latin_square(n: usize, seed: RngSeed) -> Result<LatinSquare> {
    if n < 2 {
        return Err(Error::InvalidArgument("order must be at least 2".into()));
    }
    let mut cells = vec![0u16; n * n];
    for r in 0..n {
        for c in 0..n {
            cells[r * n + c] = ((r + c) % n) as u16;
        }
    }
    let mut state = JmState {
        n,
        cells,
        improper: None,
    };
    let mut rng = Rng::from_seed(seed.derive("jacobson-matthews"));
    let moves = 10 * n * n * n;
    let mut done = 0;
    while done < moves || state.improper.is_some() {
        state.step(&mut rng);
        done += 1;
    }
    LatinSquare::from_cells(n, state.cells)
}

/// Decides whether a Latin square is isotopic to a group table.
///
/// The square is normalized to its principal loop isotope (reorder
/// columns so the first row reads `0..n`, then rows so the first column
/// does) and the loop is tested for associativity over all triples; by
/// Albert's theorem a loop isotopic to a group is itself that group.
pub fn is_group_table(sq: &LatinSquare) -> Result<bool> {
    if !sq.is_latin() {
        return Err(Error::InvalidData("not a Latin square".into()));
    }
    let n = sq.n();
    // column order: position of each symbol in row 0
    let mut col_order = vec![0usize; n];
    for c in 0..n {
        col_order[sq.get(0, c)] = c;
    }
    // row order: by leading symbol after the column reorder
    let mut row_order = vec![0usize; n];
    for r in 0..n {
        row_order[sq.get(r, col_order[0])] = r;
    }
    let mut loop_table = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            loop_table[i * n + j] = sq.cells[row_order[i] * n + col_order[j]];
        }
    }
    debug_assert!((0..n).all(|j| usize::from(loop_table[j]) == j));
    debug_assert!((0..n).all(|i| usize::from(loop_table[i * n]) == i));

    let op = |i: usize, j: usize| usize::from(loop_table[i * n + j]);
    for a in 0..n {
        for b in 0..n {
            let ab = op(a, b);
            for c in 0..n {
                if op(ab, c) != op(a, op(b, c)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Applies a row and a column permutation (symbols untouched).
pub fn permute_square(sq: &LatinSquare, rows: &[usize], cols: &[usize]) -> LatinSquare {
    let n = sq.n();
    let mut cells = vec![0u16; n * n];
    for r in 0..n {
        for c in 0..n {
            cells[r * n + c] = sq.cells[rows[r] * n + cols[c]];
        }
    }
    LatinSquare {
        n,
        cells,
        provenance: sq.provenance,
    }
}
