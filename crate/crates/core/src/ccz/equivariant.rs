//! Translation-invariant CCZ tensors on three copies of a tricycle code.
//!
//! A variable is a sector triple plus offsets (o₂, o₃); it expands to the
//! gates (s₁·l + g, s₂·l + o₂g, s₃·l + o₃g) for all g. Validity is linear
//! in the variables, and by translation invariance only the X check at
//! the identity needs testing in each slot.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::tensor::{logical_entries, CczTensor};
use crate::codes::{logical_basis_any, CssCode, Provenance};
use crate::error::Result;
use crate::f2_linalg::{kernel_basis, BitVec};
use crate::group_algebra::FiniteAbelianGroup;

/// Default limit on enumerated offset combinations.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantCcz {
    pub group_orders: Vec<usize>,
    /// (s₁, s₂, s₃) → set of (g₂g₁⁻¹, g₃g₁⁻¹) as group indices.
    pub offset_sets: BTreeMap<[usize; 3], BTreeSet<(usize, usize)>>,
}

impl EquivariantCcz {
    pub fn expand(&self) -> Result<CczTensor> {
        let group = FiniteAbelianGroup::new(self.group_orders.clone())?;
        let l = group.size();
        let mut triples = Vec::new();
        for (s, offs) in &self.offset_sets {
            for &(o2, o3) in offs {
                for g in 0..l {
                    triples.push([s[0] * l + g, s[1] * l + group.mul_idx(o2, g), s[2] * l + group.mul_idx(o3, g)]);
                }
            }
        }
        CczTensor::from_triples([3 * l; 3], triples)
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub solution: Option<(EquivariantCcz, CczTensor)>,
    pub nodes: u64,
    pub budget_exhausted: bool,
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn subset_depth(mask: u32) -> usize {
    let mut worst = 0;
    for b in 0..3 {
        for s in 0..3 {
            let c = (0..6).filter(|&p| mask >> p & 1 == 1 && PERMS[p][b] == s).count();
            worst = worst.max(c);
        }
    }
    worst
}

struct Problem {
    l: usize,
    /// constraint signature per (perm, offset pair index)
    cons: Vec<Vec<Vec<u64>>>,
    /// logical tensor bits per (perm, offset pair index)
    logi: Vec<Vec<Vec<u64>>>,
}

fn words(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl Problem {
    fn new(code: &CssCode, group: &FiniteAbelianGroup) -> Result<Option<Self>> {
        let l = group.size();
        let lb = logical_basis_any(code)?;
        if lb.k() == 0 {
            return Ok(None);
        }
        let ker = kernel_basis(&code.hz);
        let kd = ker.len();
        let s0 = code.hx.row(0);
        let k = lb.k();
        let ncons = 3 * kd * kd;
        let nlog = k * k * k;
        let mut cons = Vec::with_capacity(6);
        let mut logi = Vec::with_capacity(6);
        for perm in PERMS {
            let mut pc = Vec::with_capacity(l * l);
            let mut pl = Vec::with_capacity(l * l);
            for o2 in 0..l {
                for o3 in 0..l {
                    let v = CczTensor {
                        block_sizes: [3 * l; 3],
                        triples: (0..l)
                            .map(|g| [perm[0] * l + g, perm[1] * l + group.mul_idx(o2, g), perm[2] * l + group.mul_idx(o3, g)])
                            .collect(),
                    };
                    let mut c = vec![0u64; words(ncons)];
                    let mut bit = 0;
                    for slot in 0..3 {
                        for a in 0..kd {
                            for b in 0..kd {
                                let args: [&BitVec; 3] = match slot {
                                    0 => [&s0, &ker[a], &ker[b]],
                                    1 => [&ker[a], &s0, &ker[b]],
                                    _ => [&ker[a], &ker[b], &s0],
                                };
                                if v.evaluate(args[0], args[1], args[2]) {
                                    c[bit / 64] |= 1 << (bit % 64);
                                }
                                bit += 1;
                            }
                        }
                    }
                    let mut lg = vec![0u64; words(nlog)];
                    for [a, b, cc] in logical_entries(&v, [&lb.x_reps, &lb.x_reps, &lb.x_reps]) {
                        let e = (a * k + b) * k + cc;
                        lg[e / 64] |= 1 << (e % 64);
                    }
                    pc.push(c);
                    pl.push(lg);
                }
            }
            cons.push(pc);
            logi.push(pl);
        }
        Ok(Some(Self { l, cons, logi }))
    }

    fn sum(&self, table: &[Vec<Vec<u64>>], perms: &[usize], choice: &[usize]) -> Vec<u64> {
        let mut acc = table[perms[0]][choice[0]].clone();
        for (&p, &c) in perms.iter().zip(choice).skip(1) {
            for (x, y) in acc.iter_mut().zip(&table[p][c]) {
                *x ^= y;
            }
        }
        acc
    }
}

/// Mixed-radix enumeration of one offset index per permutation.
fn combos(radix: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = radix.checked_pow(len as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut x| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = x % radix;
            x /= radix;
        }
        v
    })
}

/// Searches sector-permutation subsets in order of depth, then size, for
/// a valid tensor with nonzero logical action (one offset pair per
/// permutation, matched by hashing the two halves).
pub fn equivariant_solve(code: &CssCode, depth_target: usize, budget: u64) -> Result<SolveOutcome> {
    let Provenance::Bt { a, .. } = &code.provenance else {
        log::warn!("equivariant search needs a tricycle code from three polynomials");
        return Ok(SolveOutcome { solution: None, nodes: 0, budget_exhausted: false });
    };
    let group = a.group().clone();
    let Some(prob) = Problem::new(code, &group)? else {
        return Ok(SolveOutcome { solution: None, nodes: 0, budget_exhausted: false });
    };
    let radix = prob.l * prob.l;
    let mut masks: Vec<u32> = (1..64).filter(|&m| subset_depth(m) <= depth_target).collect();
    masks.sort_by_key(|&m| (subset_depth(m), m.count_ones(), m));
    let mut nodes = 0u64;
    for mask in masks {
        let perms: Vec<usize> = (0..6).filter(|&p| mask >> p & 1 == 1).collect();
        let (left, right) = perms.split_at(perms.len() / 2);
        let mut table: HashMap<Vec<u64>, Vec<Vec<usize>>> = HashMap::new();
        if left.is_empty() {
            table.insert(vec![0u64; prob.cons[0][0].len()], vec![Vec::new()]);
        } else {
            for c in combos(radix, left.len()) {
                nodes += 1;
                if nodes > budget {
                    return Ok(SolveOutcome { solution: None, nodes, budget_exhausted: true });
                }
                table.entry(prob.sum(&prob.cons, left, &c)).or_default().push(c);
            }
        }
        for c in combos(radix, right.len()) {
            nodes += 1;
            if nodes > budget {
                return Ok(SolveOutcome { solution: None, nodes, budget_exhausted: true });
            }
            let key = prob.sum(&prob.cons, right, &c);
            let Some(lefts) = table.get(&key) else { continue };
            let rl = prob.sum(&prob.logi, right, &c);
            for lc in lefts {
                let nonzero = if left.is_empty() {
                    rl.iter().any(|&w| w != 0)
                } else {
                    let ll = prob.sum(&prob.logi, left, lc);
                    ll.iter().zip(&rl).any(|(x, y)| x != y)
                };
                if !nonzero {
                    continue;
                }
                let mut offset_sets: BTreeMap<[usize; 3], BTreeSet<(usize, usize)>> = BTreeMap::new();
                for (&p, &o) in left.iter().zip(lc).chain(right.iter().zip(&c)) {
                    offset_sets.entry(PERMS[p]).or_default().insert((o / prob.l, o % prob.l));
                }
                let eq = EquivariantCcz { group_orders: group.orders().to_vec(), offset_sets };
                let tensor = eq.expand()?;
                return Ok(SolveOutcome { solution: Some((eq, tensor)), nodes, budget_exhausted: false });
            }
        }
    }
    Ok(SolveOutcome { solution: None, nodes, budget_exhausted: false })
}
