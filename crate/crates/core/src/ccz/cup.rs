//! Cup-product CCZ for products of three graphs (every classical bit in
//! exactly two checks). Each cube is split into six tetrahedra along its
//! main diagonal; each tetrahedron contributes the triple of its three
//! cube edges, one per code block.

use super::tensor::CczTensor;
use crate::codes::{ClassicalCode, CodePair};
use crate::error::{Error, Result};
use crate::group_algebra::FiniteAbelianGroup;

/// Graph view of a classical code over R: column q joins check-copy
/// (p_src, m_src·g) to (p_tgt, m_tgt·g) for every g.
#[derive(Clone, Debug)]
struct OrientedGraph {
    checks: usize,
    /// ends[q] = [(p_src, m_src), (p_tgt, m_tgt)]
    ends: Vec<[(usize, usize); 2]>,
}

impl OrientedGraph {
    fn new(code: &ClassicalCode) -> Result<Self> {
        let h = &code.h;
        let mut ends = Vec::with_capacity(h.cols());
        for q in 0..h.cols() {
            let pts: Vec<(usize, usize)> =
                (0..h.rows()).flat_map(|p| h.get(p, q).indices().map(move |m| (p, m)).collect::<Vec<_>>()).collect();
            let [a, b] = pts[..] else {
                return Err(Error::Construction(format!("bit {q} meets {} checks; cup construction needs 2", pts.len())));
            };
            ends.push([a, b]);
        }
        let mut g = Self { checks: h.rows(), ends };
        g.orient_eulerian();
        Ok(g)
    }

    fn out_in(&self) -> (Vec<usize>, Vec<usize>) {
        let mut out = vec![0; self.checks];
        let mut inn = vec![0; self.checks];
        for [s, t] in &self.ends {
            out[s.0] += 1;
            inn[t.0] += 1;
        }
        (out, inn)
    }

    /// Picks the first orientation (over R-columns) with in = out at every
    /// check, which minimizes the largest out-degree.
    fn orient_eulerian(&mut self) {
        let n = self.ends.len();
        if n > 20 {
            return;
        }
        let base = self.ends.clone();
        for mask in 0u32..1 << n {
            for (q, e) in self.ends.iter_mut().enumerate() {
                *e = if mask >> q & 1 == 1 { [base[q][1], base[q][0]] } else { base[q] };
            }
            let (o, i) = self.out_in();
            if o == i {
                return;
            }
        }
        self.ends = base;
    }

    fn max_out(&self) -> usize {
        self.out_in().0.into_iter().max().unwrap_or(0)
    }
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Cup-product CCZ on three copies of the 3D code of `pair`.
pub fn cup_product_ccz(pair: &CodePair) -> Result<CczTensor> {
    let graphs = pair.classical.iter().map(OrientedGraph::new).collect::<Result<Vec<_>>>()?;
    let d3 = pair.complex_3d.boundary(3).binary_rep();
    if let Some(r) = (0..d3.rows()).find(|&r| d3.row_weight(r) % 2 == 1) {
        return Err(Error::Construction(format!("face {r} lies in an odd number of cubes; no fundamental cycle")));
    }
    let group: &FiniteAbelianGroup = &pair.spec.group;
    let l = group.size();
    let bits: Vec<usize> = graphs.iter().map(|g| g.ends.len()).collect();
    let checks: Vec<usize> = graphs.iter().map(|g| g.checks).collect();
    let sector_size = |d: usize| (0..3).map(|e| if e == d { bits[e] } else { checks[e] }).product::<usize>() * l;
    let offsets = [0, sector_size(0), sector_size(0) + sector_size(1)];
    let n = pair.code_3d.n;
    let qubit = |d: usize, idx: [usize; 3], g: usize| {
        let dim = |e: usize| if e == d { bits[e] } else { checks[e] };
        offsets[d] + ((idx[0] * dim(1) + idx[1]) * dim(2) + idx[2]) * l + g
    };
    let mut triples = Vec::new();
    for qa in 0..bits[0] {
        for qb in 0..bits[1] {
            for qc in 0..bits[2] {
                let q = [qa, qb, qc];
                for g in 0..l {
                    for perm in PERMS {
                        let mut done = [false; 3];
                        let mut t = [0usize; 3];
                        for (step, &d) in perm.iter().enumerate() {
                            let mut idx = [0; 3];
                            let mut elt = g;
                            for e in 0..3 {
                                if e == d {
                                    idx[e] = q[e];
                                } else {
                                    let (p, m) = graphs[e].ends[q[e]][usize::from(done[e])];
                                    idx[e] = p;
                                    elt = group.mul_idx(elt, m);
                                }
                            }
                            t[step] = qubit(d, idx, elt);
                            done[d] = true;
                        }
                        triples.push(t);
                    }
                }
            }
        }
    }
    CczTensor::from_triples([n; 3], triples)
}

/// Depth the cup construction reaches: two orderings per leading
/// direction times the out-degrees of the other two graphs.
pub fn cup_depth_bound(pair: &CodePair) -> Result<usize> {
    let graphs = pair.classical.iter().map(OrientedGraph::new).collect::<Result<Vec<_>>>()?;
    let outs: Vec<usize> = graphs.iter().map(OrientedGraph::max_out).collect();
    Ok((0..3).map(|d| 2 * (0..3).filter(|&e| e != d).map(|e| outs[e]).product::<usize>()).max().unwrap_or(0))
}
