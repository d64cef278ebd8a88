//! Min-sum belief propagation with order-0 ordered-statistics fallback.

use crate::error::{Error, Result};
use crate::f2_linalg::{rank, BitMatrix, BitVec, RowReducer};

pub const DEFAULT_ITERATIONS: usize = 60;
pub const DEFAULT_SCALING: f64 = 0.625;

#[derive(Clone, Debug)]
pub struct BpOsd {
    h: BitMatrix,
    cols: Vec<BitVec>,
    full_rank: usize,
    priors: Vec<f64>,
    /// check → edge ids, edge → (check, variable)
    check_edges: Vec<Vec<usize>>,
    var_edges: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    pub iterations: usize,
    pub scaling: f64,
}

/// Result of one decode. `bp_converged` tells whether OSD was needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub error: BitVec,
    pub bp_converged: bool,
}

fn llr(p: f64) -> f64 {
    let p = p.clamp(1e-15, 1.0 - 1e-15);
    ((1.0 - p) / p).ln()
}

impl BpOsd {
    /// `h` is checks × error mechanisms; `priors` the mechanism probabilities.
    pub fn new(h: BitMatrix, priors: &[f64]) -> Result<Self> {
        if priors.len() != h.cols() {
            return Err(Error::Dimension(format!("{} priors for {} columns", priors.len(), h.cols())));
        }
        let mut check_edges = vec![Vec::new(); h.rows()];
        let mut var_edges = vec![Vec::new(); h.cols()];
        let edges = h.nonzeros();
        for (e, &(c, v)) in edges.iter().enumerate() {
            check_edges[c].push(e);
            var_edges[v].push(e);
        }
        let cols = (0..h.cols()).map(|j| h.col(j)).collect();
        Ok(Self {
            full_rank: rank(&h),
            cols,
            priors: priors.iter().map(|&p| llr(p)).collect(),
            h,
            check_edges,
            var_edges,
            edges,
            iterations: DEFAULT_ITERATIONS,
            scaling: DEFAULT_SCALING,
        })
    }

    pub fn check_matrix(&self) -> &BitMatrix {
        &self.h
    }

    pub fn decode(&self, syndrome: &BitVec) -> Result<Decoded> {
        if syndrome.len() != self.h.rows() {
            return Err(Error::Dimension(format!("syndrome has {} bits, expected {}", syndrome.len(), self.h.rows())));
        }
        let n = self.h.cols();
        if syndrome.is_zero() {
            return Ok(Decoded { error: BitVec::zeros(n), bp_converged: true });
        }
        let mut v2c: Vec<f64> = self.edges.iter().map(|&(_, v)| self.priors[v]).collect();
        let mut c2v = vec![0.0; self.edges.len()];
        let mut post = self.priors.clone();
        for _ in 0..self.iterations {
            for (c, es) in self.check_edges.iter().enumerate() {
                let mut sign = syndrome.get(c);
                let (mut m1, mut m2, mut at) = (f64::INFINITY, f64::INFINITY, usize::MAX);
                for &e in es {
                    let x = v2c[e];
                    sign ^= x < 0.0;
                    let a = x.abs();
                    if a < m1 {
                        m2 = m1;
                        m1 = a;
                        at = e;
                    } else if a < m2 {
                        m2 = a;
                    }
                }
                for &e in es {
                    let mag = if e == at { m2 } else { m1 };
                    let s = sign ^ (v2c[e] < 0.0);
                    c2v[e] = if s { -self.scaling * mag } else { self.scaling * mag };
                }
            }
            for (v, es) in self.var_edges.iter().enumerate() {
                post[v] = self.priors[v] + es.iter().map(|&e| c2v[e]).sum::<f64>();
                for &e in es {
                    v2c[e] = post[v] - c2v[e];
                }
            }
            let hard = BitVec::from_indices(n, (0..n).filter(|&v| post[v] < 0.0));
            if self.h.mul_vec(&hard)? == *syndrome {
                return Ok(Decoded { error: hard, bp_converged: true });
            }
        }
        Ok(Decoded { error: self.osd0(&post, syndrome)?, bp_converged: false })
    }

    /// Solves on the most reliable-to-flip information set.
    fn osd0(&self, post: &[f64], syndrome: &BitVec) -> Result<BitVec> {
        let n = self.h.cols();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| post[a].total_cmp(&post[b]));
        let mut red = RowReducer::tracking(self.h.rows(), n);
        for &j in &order {
            red.insert(&self.cols[j]);
            if red.rank() == self.full_rank {
                break;
            }
        }
        let coeffs = red
            .express(syndrome)
            .ok_or_else(|| Error::Dimension("syndrome outside the column space of the check matrix".into()))?;
        Ok(BitVec::from_indices(n, coeffs.ones().map(|k| order[k])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodePair;

    #[test]
    fn zero_syndrome() {
        let pair = CodePair::load("bt-27").unwrap();
        let d = BpOsd::new(pair.code_3d.hx.clone(), &[0.01; 27]).unwrap();
        let out = d.decode(&BitVec::zeros(9)).unwrap();
        assert!(out.error.is_zero());
    }

    #[test]
    fn osd_reproduces_syndrome() {
        let h = BitMatrix::from_strs(&["1100", "0110", "0011"]);
        let mut d = BpOsd::new(h.clone(), &[0.1; 4]).unwrap();
        d.iterations = 0;
        for s in 0..8u32 {
            let syn = BitVec::from_indices(3, (0..3).filter(|&i| s >> i & 1 == 1));
            let e = d.decode(&syn).unwrap().error;
            assert_eq!(h.mul_vec(&e).unwrap(), syn);
        }
        assert!(d.decode(&BitVec::zeros(2)).is_err());
    }
}
