use super::css::CssCode;
use crate::error::{Error, Result};
use crate::f2_linalg::{inverse, kernel_basis, quotient_reps, BitMatrix, BitVec};

/// Paired bases of logical Z (homology) and logical X (cohomology) operators.
#[derive(Clone, Debug)]
pub struct LogicalBasis {
    pub z_reps: Vec<BitVec>,
    pub x_reps: Vec<BitVec>,
    /// Overlap parities z_i·x_j before normalization.
    pub raw_pairing: BitMatrix,
    /// Overlap parities after normalization (the identity).
    pub pairing: BitMatrix,
}

pub(crate) fn pairing_matrix(z: &[BitVec], x: &[BitVec]) -> BitMatrix {
    let mut p = BitMatrix::zeros(z.len(), x.len());
    for (i, zi) in z.iter().enumerate() {
        for (j, xj) in x.iter().enumerate() {
            if zi.dot(xj) {
                p.set(i, j, true);
            }
        }
    }
    p
}

/// Rows of `m` combined: out_i = Σ_j m[i][j] v_j.
pub(crate) fn combine(m: &BitMatrix, v: &[BitVec], len: usize) -> Vec<BitVec> {
    (0..m.rows())
        .map(|i| {
            let mut acc = BitVec::zeros(len);
            for j in m.row_ones(i) {
                acc.xor_assign(&v[j]);
            }
            acc
        })
        .collect()
}

impl LogicalBasis {
    pub fn k(&self) -> usize {
        self.z_reps.len()
    }

    /// Same logical classes after a unipotent basis change and stabilizer
    /// shifts; used to check representative independence.
    pub fn reshuffled(&self, code: &CssCode) -> LogicalBasis {
        let k = self.k();
        let mut z = self.z_reps.clone();
        let mut x = self.x_reps.clone();
        for i in 0..k.saturating_sub(1) {
            let next = z[i + 1].clone();
            z[i].xor_assign(&next);
        }
        for (i, zi) in z.iter_mut().enumerate() {
            if code.hz.rows() > 0 {
                zi.xor_assign(&code.hz.row(i % code.hz.rows()));
            }
        }
        // dual change: if Z' = U Z then X' = U^{-T} X keeps the pairing
        let mut u = BitMatrix::identity(k);
        for i in 0..k.saturating_sub(1) {
            u.set(i, i + 1, true);
        }
        let uinv_t = inverse(&u).expect("unipotent").transpose();
        x = combine(&uinv_t, &x, code.n);
        for (i, xi) in x.iter_mut().enumerate() {
            if code.hx.rows() > 0 {
                xi.xor_assign(&code.hx.row((i * 7 + 3) % code.hx.rows()));
            }
        }
        let pairing = pairing_matrix(&z, &x);
        LogicalBasis { z_reps: z, x_reps: x, raw_pairing: self.raw_pairing.clone(), pairing }
    }
}

/// Logical bases normalized so that z_i·x_j = δ_ij. Allows k = 0.
pub fn logical_basis_any(code: &CssCode) -> Result<LogicalBasis> {
    let z_reps = code.as_complex().homology(1).representatives;
    let x_reps = quotient_reps(&kernel_basis(&code.hz), &code.hx.row_vecs())?;
    if z_reps.len() != x_reps.len() {
        return Err(Error::Dimension(format!("{} Z reps vs {} X reps", z_reps.len(), x_reps.len())));
    }
    let raw = pairing_matrix(&z_reps, &x_reps);
    let k = z_reps.len();
    let inv = inverse(&raw).ok_or_else(|| Error::Dimension("logical pairing is singular".into()))?;
    let x_reps = combine(&inv.transpose(), &x_reps, code.n);
    let pairing = pairing_matrix(&z_reps, &x_reps);
    debug_assert_eq!(pairing, BitMatrix::identity(k));
    Ok(LogicalBasis { z_reps, x_reps, raw_pairing: raw, pairing })
}

pub fn logical_basis(code: &CssCode) -> Result<LogicalBasis> {
    let b = logical_basis_any(code)?;
    if b.k() == 0 {
        return Err(Error::NoLogicalQubits);
    }
    Ok(b)
}
