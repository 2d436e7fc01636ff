//! Exact linear algebra over the two-element field.
//!
//! This is the computational substrate for every degreewise ring computation.
//! Matrices store bit-packed rows (64 entries per word) and elimination works
//! by whole-word XOR. Row reduction always produces the unique reduced row
//! echelon form with leftmost-column, topmost-row pivots, so every rank,
//! kernel basis and solution downstream is deterministic across runs.
//!
//! Empty matrices (zero rows or zero columns) are legal everywhere.

use crate::error::{Error, Result};
use std::fmt;

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A bit-packed vector over F2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vec {
    len: usize,
    words: Vec<u64>,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        F2Vec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Build from 0/1 entries (values are reduced mod 2).
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b % 2 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// # Panics
    /// Panics if `i >= len`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    /// # Panics
    /// Panics if `i >= len`.
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &F2Vec) {
        assert_eq!(self.len, other.len, "xor_assign length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Indices of set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let base = wi * WORD_BITS;
            let len = self.len;
            let mut rem = w;
            std::iter::from_fn(move || {
                while rem != 0 {
                    let bit = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    let idx = base + bit;
                    if idx < len {
                        return Some(idx);
                    }
                }
                None
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// A dense matrix over F2 with bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    nrows: usize,
    ncols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        F2Matrix {
            nrows: rows,
            ncols: cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Stack row vectors; every row must have length `cols`.
    pub fn from_rows(rows: &[F2Vec], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "row {r} has wrong length");
            let dst = &mut m.words[r * m.stride..(r + 1) * m.stride];
            dst.copy_from_slice(&v.words);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.nrows
    }

    pub fn cols(&self) -> usize {
        self.ncols
    }

    /// # Panics
    /// Panics on out-of-range indices.
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.nrows && c < self.ncols, "index ({r},{c}) out of range");
        (self.words[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    /// # Panics
    /// Panics on out-of-range indices.
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.nrows && c < self.ncols, "index ({r},{c}) out of range");
        let mask = 1u64 << (c % WORD_BITS);
        let w = &mut self.words[r * self.stride + c / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> F2Vec {
        F2Vec {
            len: self.ncols,
            words: self.words[r * self.stride..(r + 1) * self.stride].to_vec(),
        }
    }

    fn xor_rows(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = src * self.stride;
        let d = dst * self.stride;
        for k in 0..self.stride {
            let v = self.words[s + k];
            self.words[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.words.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.ncols, self.nrows);
        for r in 0..self.nrows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        let words = &self.words[r * self.stride..(r + 1) * self.stride];
        let ncols = self.ncols;
        words.iter().enumerate().flat_map(move |(wi, &w)| {
            let base = wi * WORD_BITS;
            let mut rem = w;
            std::iter::from_fn(move || {
                while rem != 0 {
                    let bit = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    let idx = base + bit;
                    if idx < ncols {
                        return Some(idx);
                    }
                }
                None
            })
        })
    }

    /// Matrix-vector product; `v.len()` must equal `cols`.
    pub fn mul_vec(&self, v: &F2Vec) -> Result<F2Vec> {
        if v.len() != self.ncols {
            return Err(Error::contract(format!(
                "mul_vec: vector length {} != column count {}",
                v.len(),
                self.ncols
            )));
        }
        let mut out = F2Vec::zeros(self.nrows);
        for r in 0..self.nrows {
            let words = &self.words[r * self.stride..(r + 1) * self.stride];
            let mut acc = 0u64;
            for (a, b) in words.iter().zip(&v.words) {
                acc ^= a & b;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &F2Matrix) -> Result<F2Matrix> {
        if self.ncols != rhs.nrows {
            return Err(Error::contract(format!(
                "mul: inner dimensions disagree ({} vs {})",
                self.ncols, rhs.nrows
            )));
        }
        let mut out = F2Matrix::zeros(self.nrows, rhs.ncols);
        for r in 0..self.nrows {
            for c in self.row_ones(r) {
                // out_row += rhs_row(c)
                let dst_range = r * out.stride..(r + 1) * out.stride;
                let src_range = c * rhs.stride..(c + 1) * rhs.stride;
                let src: Vec<u64> = rhs.words[src_range].to_vec();
                for (x, y) in out.words[dst_range].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form with leftmost-column, topmost-row pivots.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.ncols {
            if next_row == m.nrows {
                break;
            }
            let Some(src) = (next_row..m.nrows).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.swap_rows(src, next_row);
            for r in 0..m.nrows {
                if r != next_row && m.get(r, col) {
                    m.xor_rows(next_row, r);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{v : self * v = 0}`, echelon-form pivot convention.
    ///
    /// The vectors are independent and their count is `cols - rank`. One
    /// vector is produced per free (non-pivot) column, ascending, with the
    /// free coordinate set to 1; this makes the output canonical.
    pub fn kernel_basis(&self) -> Vec<F2Vec> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &c in &rref.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.ncols - rref.pivots.len());
        for free in 0..self.ncols {
            if is_pivot[free] {
                continue;
            }
            let mut v = F2Vec::zeros(self.ncols);
            v.set(free, true);
            for (row, &pc) in rref.pivots.iter().enumerate() {
                if rref.matrix.get(row, free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = b`; free variables are set to 0, so the returned
    /// solution is deterministic. `None` when no solution exists.
    pub fn solve(&self, b: &F2Vec) -> Result<Option<F2Vec>> {
        if b.len() != self.nrows {
            return Err(Error::contract(format!(
                "solve: right-hand side length {} != row count {}",
                b.len(),
                self.nrows
            )));
        }
        let mut aug = F2Matrix::zeros(self.nrows, self.ncols + 1);
        for r in 0..self.nrows {
            let dst = &mut aug.words[r * aug.stride..r * aug.stride + self.stride];
            dst.copy_from_slice(&self.words[r * self.stride..(r + 1) * self.stride]);
            if b.get(r) {
                aug.set(r, self.ncols, true);
            }
        }
        let rref = aug.rref();
        if rref.pivots.last() == Some(&self.ncols) {
            return Ok(None);
        }
        let mut x = F2Vec::zeros(self.ncols);
        for (row, &col) in rref.pivots.iter().enumerate() {
            if rref.matrix.get(row, self.ncols) {
                x.set(col, true);
            }
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.nrows, self.ncols)?;
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A reduced row echelon form together with its pivot columns.
pub struct Rref {
    pub matrix: F2Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v` modulo the row space; the result has no support on pivot
    /// columns, so it is the canonical coset representative.
    pub fn reduce(&self, v: &mut F2Vec) {
        assert_eq!(v.len(), self.matrix.ncols, "reduce length mismatch");
        for (row, &col) in self.pivots.iter().enumerate() {
            if v.get(col) {
                let r = self.matrix.row(row);
                v.xor_assign(&r);
            }
        }
    }

    pub fn contains(&self, v: &F2Vec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }
}
