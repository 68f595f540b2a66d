//! Bit-packed GF(2) matrices, rank, and the modified adjacency matrix whose
//! full rank decides flatness for quadratic functions.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::transform::{Kernel, TransformAssignment};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("assignment length {got} does not match vertex count {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Row-major GF(2) matrix with one u64 word per row (so cols <= 64).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(cols <= 64, "column count {cols} exceeds one word");
        Gf2Matrix {
            rows,
            cols,
            bits: vec![0; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zero(n, n);
        for i in 0..n {
            m.bits[i] = 1 << i;
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<u64>) -> Self {
        assert!(cols <= 64, "column count {cols} exceeds one word");
        let mask = ones(cols);
        assert!(
            rows.iter().all(|r| r & !mask == 0),
            "row bits outside the column range"
        );
        Gf2Matrix {
            rows: rows.len(),
            cols,
            bits: rows,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.bits[r] >> c & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols);
        if v {
            self.bits[r] |= 1 << c;
        } else {
            self.bits[r] &= !(1 << c);
        }
    }

    pub fn row_bits(&self, r: usize) -> u64 {
        self.bits[r]
    }

    /// GF(2) row rank by elimination on a private copy.
    pub fn rank(&self) -> usize {
        let mut work = self.bits.clone();
        rank_of_rows(&mut work, ones(self.cols))
    }

    /// Full rank means rank == min(rows, cols); vacuously true for 0x0.
    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.rows.min(self.cols)
    }

    /// GF(2) determinant of a square matrix: true iff full rank.
    pub fn det(&self) -> bool {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        self.is_full_rank()
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            if r + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

fn ones(k: usize) -> u64 {
    if k == 64 {
        !0
    } else {
        (1u64 << k) - 1
    }
}

/// In-place elimination over the columns selected by `colmask`, low columns
/// first, first nonzero row winning pivot ties. Returns the rank. Bits
/// outside `colmask` are ignored.
pub fn rank_of_rows(rows: &mut [u64], colmask: u64) -> usize {
    let mut rank = 0;
    let mut cols = colmask;
    while cols != 0 && rank < rows.len() {
        let c = cols & cols.wrapping_neg();
        cols ^= c;
        let Some(p) = (rank..rows.len()).find(|&k| rows[k] & c != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for row in rows.iter_mut().skip(rank + 1) {
            if *row & c != 0 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Like `rank_of_rows` == number of selected columns, but aborts on the first
/// pivotless column. `rows` must hold exactly popcount(colmask) rows.
pub(crate) fn full_rank_masked(rows: &mut [u64], colmask: u64) -> bool {
    debug_assert_eq!(rows.len(), colmask.count_ones() as usize);
    let mut r = 0;
    let mut cols = colmask;
    while cols != 0 {
        let c = cols & cols.wrapping_neg();
        cols ^= c;
        let Some(p) = (r..rows.len()).find(|&k| rows[k] & c != 0) else {
            return false;
        };
        rows.swap(r, p);
        let pivot = rows[r];
        for row in rows.iter_mut().skip(r + 1) {
            if *row & c != 0 {
                *row ^= pivot;
            }
        }
        r += 1;
    }
    true
}

/// The modified adjacency matrix of `g` under assignment `a`: rows and
/// columns of I-vertices are deleted, diagonal entries of N-vertices are set
/// to 1, H rows are untouched. The result is (n-|R_I|) square.
pub fn modified_matrix(g: &Graph, a: &TransformAssignment) -> Result<Gf2Matrix, Gf2Error> {
    if a.len() != g.n() {
        return Err(Gf2Error::LengthMismatch {
            expected: g.n(),
            got: a.len(),
        });
    }
    let keep: Vec<usize> = (0..g.n()).filter(|&i| a[i] != Kernel::I).collect();
    let mut m = Gf2Matrix::zero(keep.len(), keep.len());
    for (r, &i) in keep.iter().enumerate() {
        for (c, &j) in keep.iter().enumerate() {
            if g.has_edge(i, j) {
                m.set(r, c, true);
            }
        }
        if a[i] == Kernel::N {
            m.set(r, r, true);
        }
    }
    Ok(m)
}

/// Rank criterion: the spectrum is flat iff the modified matrix has full
/// GF(2) rank. The all-I assignment yields the 0x0 matrix, which counts as
/// full rank (every function is trivially flat under the identity).
pub fn is_flat_rank(g: &Graph, a: &TransformAssignment) -> Result<bool, Gf2Error> {
    let m = modified_matrix(g, a)?;
    Ok(m.rank() == m.rows())
}

/// Hot-path equivalent of `is_flat_rank` taking precomputed I/N vertex masks;
/// works in a stack buffer without compressing away deleted columns (zero
/// columns never change rank). Caller guarantees n <= 32.
pub(crate) fn flat_rank_masked(g: &Graph, imask: u64, nmask: u64) -> bool {
    debug_assert!(g.n() <= 32);
    let keepmask = ones(g.n()) & !imask;
    let mut rows = [0u64; 32];
    let mut cnt = 0;
    let mut left = keepmask;
    while left != 0 {
        let i = left.trailing_zeros() as usize;
        left &= left - 1;
        rows[cnt] = (g.row(i) & keepmask) | (nmask & (1 << i));
        cnt += 1;
    }
    full_rank_masked(&mut rows[..cnt], keepmask)
}
