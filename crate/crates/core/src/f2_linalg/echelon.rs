use super::{BitMatrix, BitVec};
use crate::error::{Error, Result};

/// Reduced row-echelon form with leftmost-nonzero pivoting.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    pub reduced: BitMatrix,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &BitMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| a.get(i, c)) else { continue };
        a.swap_rows(r, p);
        for i in 0..a.rows() {
            if i != r && a.get(i, c) {
                a.xor_row_into(r, i);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { rank: r, reduced: a, pivots }
}

pub fn rank(m: &BitMatrix) -> usize {
    // forward elimination only; cheaper than full rref
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| a.get(i, c)) else { continue };
        a.swap_rows(r, p);
        for i in r + 1..a.rows() {
            if a.get(i, c) {
                a.xor_row_into(r, i);
            }
        }
        r += 1;
    }
    r
}

/// Basis of {v : M v = 0}, one vector per free column in increasing order.
pub fn kernel_basis(m: &BitMatrix) -> Vec<BitVec> {
    let Rref { reduced, pivots, .. } = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = BitVec::zeros(m.cols());
            v.set(f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if reduced.get(i, f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Incremental echelon basis supporting membership tests and, optionally,
/// expressing vectors as combinations of the inserted generators.
#[derive(Clone, Debug)]
pub struct RowReducer {
    len: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    combos: Option<Vec<BitVec>>,
    inserted: usize,
    capacity: usize,
}

impl RowReducer {
    pub fn new(len: usize) -> Self {
        Self { len, rows: Vec::new(), pivots: Vec::new(), combos: None, inserted: 0, capacity: 0 }
    }

    /// Tracks which generators make up each basis row. `generators` bounds
    /// how many vectors may be inserted.
    pub fn tracking(len: usize, generators: usize) -> Self {
        Self { combos: Some(Vec::new()), capacity: generators, ..Self::new(len) }
    }

    pub fn from_rows<'a, I: IntoIterator<Item = &'a BitVec>>(len: usize, rows: I) -> Self {
        let mut r = Self::new(len);
        for v in rows {
            r.insert(v);
        }
        r
    }

    pub fn from_matrix_rows(m: &BitMatrix) -> Self {
        let mut r = Self::new(m.cols());
        for i in 0..m.rows() {
            r.insert(&m.row(i));
        }
        r
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    fn reduce_with(&self, v: &mut BitVec, mut combo: Option<&mut BitVec>) {
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if v.get(p) {
                v.xor_assign(row);
                if let (Some(c), Some(cs)) = (combo.as_deref_mut(), &self.combos) {
                    c.xor_assign(&cs[k]);
                }
            }
        }
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut w = v.clone();
        self.reduce_with(&mut w, None);
        w
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut w = v.clone();
        let mut combo = self.combos.as_ref().map(|_| {
            let mut c = BitVec::zeros(self.capacity);
            c.set(self.inserted, true);
            c
        });
        self.inserted += 1;
        self.reduce_with(&mut w, combo.as_mut());
        let Some(p) = w.first_one() else { return false };
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        if let (Some(cs), Some(c)) = (self.combos.as_mut(), combo) {
            cs.insert(at, c);
        }
        true
    }

    /// Coefficients over the inserted generators reproducing `v`, if any.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        assert!(self.combos.is_some(), "express() requires a tracking reducer");
        let mut w = v.clone();
        let mut c = BitVec::zeros(self.capacity);
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if w.get(p) {
                w.xor_assign(row);
                c.xor_assign(&self.combos.as_ref().unwrap()[k]);
            }
        }
        w.is_zero().then_some(c)
    }
}

/// Returns x with A·x = b when b lies in the column space of A.
pub fn solve_in_span(a: &BitMatrix, b: &BitVec) -> Result<Option<BitVec>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!("rhs has {} bits, matrix has {} rows", b.len(), a.rows())));
    }
    let cols = a.transpose();
    let mut red = RowReducer::tracking(a.rows(), a.cols());
    for j in 0..cols.rows() {
        red.insert(&cols.row(j));
    }
    let Some(x) = red.express(b) else { return Ok(None) };
    if a.mul_vec(&x)? != *b {
        return Err(Error::Dimension("solve_in_span witness failed re-substitution".into()));
    }
    Ok(Some(x))
}

/// Extends a basis of `b` to one of `z` and returns the added vectors.
pub fn quotient_reps(z: &[BitVec], b: &[BitVec]) -> Result<Vec<BitVec>> {
    let len = z.first().or(b.first()).map_or(0, |v| v.len());
    let zspan = RowReducer::from_rows(len, z);
    if let Some(i) = b.iter().position(|v| !zspan.contains(v)) {
        return Err(Error::Containment(format!("boundary vector {i} is not in the cycle space")));
    }
    let mut acc = RowReducer::from_rows(len, b);
    let reps: Vec<BitVec> = z.iter().filter(|v| acc.insert(v)).cloned().collect();
    debug_assert_eq!(reps.len() + RowReducer::from_rows(len, b).rank(), zspan.rank());
    Ok(reps)
}

/// Inverse of a square matrix over GF(2).
pub fn inverse(m: &BitMatrix) -> Option<BitMatrix> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let aug = BitMatrix::hstack(&[m, &BitMatrix::identity(n)]).ok()?;
    let r = rref(&aug);
    if r.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) || r.pivots.len() < n {
        return None;
    }
    Some(r.reduced.submatrix(0, n, n, n))
}

/// Right inverse on the column space: picks independent rows P of `a` and
/// vectors r_i with (a·r_i)|_P = e_i. For any b in colspace(a),
/// a·(Σ_{i∈P} b_i r_i) = b.
pub fn column_space_lift(a: &BitMatrix) -> Result<Vec<(usize, BitVec)>> {
    let mut rows = RowReducer::new(a.cols());
    let pivot_rows: Vec<usize> = (0..a.rows()).filter(|&i| rows.insert(&a.row(i))).collect();
    let sub = a.select_rows(&pivot_rows);
    pivot_rows
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let e = BitVec::from_indices(pivot_rows.len(), [k]);
            let x = solve_in_span(&sub, &e)?.ok_or_else(|| Error::Dimension("independent rows not solvable".into()))?;
            Ok((i, x))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank_and_kernel() {
        let i = BitMatrix::identity(7);
        assert_eq!(rank(&i), 7);
        assert!(kernel_basis(&i).is_empty());
    }

    #[test]
    fn rref_is_reduced() {
        let m = BitMatrix::from_strs(&["0110", "1100", "1010", "0001"]);
        let r = rref(&m);
        assert_eq!(r.rank, 3);
        for (i, &p) in r.pivots.iter().enumerate() {
            for k in 0..m.rows() {
                assert_eq!(r.reduced.get(k, p), k == i);
            }
        }
    }

    #[test]
    fn solve_identity() {
        let b = BitVec::from_indices(5, [0, 3]);
        assert_eq!(solve_in_span(&BitMatrix::identity(5), &b).unwrap(), Some(b));
    }

    #[test]
    fn solve_reports_absence() {
        let a = BitMatrix::from_strs(&["11", "11"]);
        assert_eq!(solve_in_span(&a, &BitVec::from_indices(2, [0])).unwrap(), None);
        assert!(solve_in_span(&a, &BitVec::zeros(3)).is_err());
    }

    #[test]
    fn quotient_of_plane_by_diagonal() {
        let z = vec![BitVec::from_indices(2, [0]), BitVec::from_indices(2, [1])];
        let b = vec![BitVec::from_indices(2, [0, 1])];
        let reps = quotient_reps(&z, &b).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(!reps[0].is_zero() && reps[0] != b[0]);
        assert!(quotient_reps(&z, &z).unwrap().is_empty());
        assert!(quotient_reps(&b, &z).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = BitMatrix::from_strs(&["110", "011", "001"]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), BitMatrix::identity(3));
        assert!(inverse(&BitMatrix::from_strs(&["11", "11"])).is_none());
    }

    #[test]
    fn lift_inverts_on_column_space() {
        let a = BitMatrix::from_strs(&["1100", "0110", "1010", "0001"]);
        let lift = column_space_lift(&a).unwrap();
        for x in 0..16u64 {
            let xv = BitVec::from_words(4, vec![x]);
            let b = a.mul_vec(&xv).unwrap();
            let mut y = BitVec::zeros(4);
            for (i, r) in &lift {
                if b.get(*i) {
                    y.xor_assign(r);
                }
            }
            assert_eq!(a.mul_vec(&y).unwrap(), b);
        }
    }
}
