use std::fmt;

use super::bitvec::{words_for, BitVec, WORD};
use crate::error::{Error, Result};

/// Dense row-major GF(2) matrix with word-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[BitVec]) -> Self {
        Self::from_rows(rows, cols).transpose()
    }

    pub fn from_dense<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged dense matrix");
            for (j, &b) in r.iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Parses rows written as strings of '0'/'1'.
    pub fn from_strs(rows: &[&str]) -> Self {
        let dense: Vec<Vec<u8>> =
            rows.iter().map(|r| r.bytes().filter(|b| *b == b'0' || *b == b'1').map(|b| b - b'0').collect()).collect();
        Self::from_dense(&dense)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let m = 1u64 << (c % WORD);
        let w = &mut self.data[r * self.stride + c / WORD];
        if b {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn col(&self, c: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        assert_eq!(v.len(), self.cols);
        self.row_words_mut(r).copy_from_slice(v.words());
    }

    /// rows[dst] ^= rows[src]
    #[inline]
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..src * s + s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s] as &[u64], &mut lo[dst * s..dst * s + s])
        };
        for (d, x) in b.iter_mut().zip(a) {
            *d ^= *x;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        let words = self.row_words(r);
        words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD + t)
                }
            })
        })
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                w[c] += 1;
            }
        }
        w
    }

    pub fn max_row_weight(&self) -> usize {
        (0..self.rows).map(|r| self.row_weight(r)).max().unwrap_or(0)
    }

    pub fn max_col_weight(&self) -> usize {
        self.col_weights().into_iter().max().unwrap_or(0)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Nonzero coordinates in row-major order.
    pub fn nonzeros(&self) -> Vec<(usize, usize)> {
        (0..self.rows).flat_map(|r| self.row_ones(r).map(move |c| (r, c))).collect()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let (lo, hi) = (r * out.stride, (r + 1) * out.stride);
            for k in self.row_ones(r) {
                let src = other.row_words(k);
                for (d, s) in out.data[lo..hi].iter_mut().zip(src) {
                    *d ^= *s;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("matrix has {} cols, vector has {} bits", self.cols, v.len())));
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let p = self.row_words(r).iter().zip(v.words()).fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if p & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// vᵀ·M, i.e. the XOR of the rows selected by `v`.
    pub fn vec_mul(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.rows {
            return Err(Error::Dimension(format!("matrix has {} rows, vector has {} bits", self.rows, v.len())));
        }
        let mut out = BitVec::zeros(self.cols);
        for r in v.ones() {
            for (d, s) in out.words_mut().iter_mut().zip(self.row_words(r)) {
                *d ^= *s;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!("cannot add {:?} and {:?}", self.shape(), other.shape())));
        }
        let mut out = self.clone();
        for (d, s) in out.data.iter_mut().zip(&other.data) {
            *d ^= *s;
        }
        Ok(out)
    }

    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let (p, q) = other.shape();
        let mut out = BitMatrix::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                for k in 0..p {
                    for l in other.row_ones(k) {
                        out.set(i * p + k, j * q + l, true);
                    }
                }
            }
        }
        out
    }

    pub fn hstack(blocks: &[&BitMatrix]) -> Result<BitMatrix> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::Dimension("hstack with differing row counts".into()));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = BitMatrix::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            out.paste(b, 0, off);
            off += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(blocks: &[&BitMatrix]) -> Result<BitMatrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::Dimension("vstack with differing column counts".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = BitMatrix::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            for r in 0..b.rows {
                out.row_words_mut(off + r).copy_from_slice(b.row_words(r));
            }
            off += b.rows;
        }
        Ok(out)
    }

    /// XOR-pastes `block` with its top-left corner at (r0, c0).
    pub fn paste(&mut self, block: &BitMatrix, r0: usize, c0: usize) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in block.row_ones(r) {
                self.flip(r0 + r, c0 + c);
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in self.row_ones(r0 + r).filter(|&c| c >= c0 && c < c0 + cols) {
                out.set(r, c - c0, true);
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            out.row_words_mut(i).copy_from_slice(self.row_words(r));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        write!(f, "{self}")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "." })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_kron_identity() {
        assert_eq!(BitMatrix::identity(2).kron(&BitMatrix::identity(2)), BitMatrix::identity(4));
    }

    #[test]
    fn transpose_roundtrip() {
        let m = BitMatrix::from_strs(&["1100110", "0111000", "1000001"]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().shape(), (7, 3));
    }

    #[test]
    fn mul_matches_naive() {
        let a = BitMatrix::from_strs(&["101", "011"]);
        let b = BitMatrix::from_strs(&["11", "01", "10"]);
        let c = a.mul(&b).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let e = (0..3).fold(false, |acc, k| acc ^ (a.get(i, k) & b.get(k, j)));
                assert_eq!(c.get(i, j), e);
            }
        }
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn row_ones_spans_words() {
        let mut m = BitMatrix::zeros(1, 130);
        m.set(0, 0, true);
        m.set(0, 64, true);
        m.set(0, 129, true);
        assert_eq!(m.row_ones(0).collect::<Vec<_>>(), vec![0, 64, 129]);
    }
}
