//! Minimum-weight logical operator search: exhaustive enumeration with
//! packed syndrome accumulators, plus a randomized information-set search
//! that only produces upper bounds.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::css::{CssCode, Distance};
use super::logical::{logical_basis_any, LogicalBasis};
use crate::f2_linalg::{kernel_basis, BitMatrix, BitVec, RowReducer};

/// Default enumeration budget: Σ_{i ≤ cap} C(n, i) stays below this.
pub const CANDIDATE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    X,
    Z,
}

impl Basis {
    pub fn other(self) -> Basis {
        match self {
            Basis::X => Basis::Z,
            Basis::Z => Basis::X,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DistanceResult {
    pub distance: Distance,
    /// A logical operator of weight `distance.upper()`, when known.
    pub witness: Option<BitVec>,
    pub weight_cap: usize,
    pub candidates: u64,
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128).min(u64::MAX as u128) as u64
}

pub fn candidates_up_to(n: usize, w: usize) -> u64 {
    (1..=w).map(|i| binomial(n, i)).fold(0u64, u64::saturating_add)
}

/// Largest cap whose cumulative candidate count fits the budget.
pub fn auto_weight_cap(n: usize, budget: u64) -> usize {
    let mut w = 0;
    while w < n && candidates_up_to(n, w + 1) <= budget {
        w += 1;
    }
    w.max(1)
}

/// Checks of the opposite type (detect the operator) and logical
/// partners (detect nontriviality) for operators of `basis` type.
fn detectors<'a>(code: &'a CssCode, lb: &'a LogicalBasis, basis: Basis) -> (&'a BitMatrix, &'a [BitVec]) {
    match basis {
        Basis::Z => (&code.hx, &lb.x_reps),
        Basis::X => (&code.hz, &lb.z_reps),
    }
}

/// Independent check: in ker(opposite checks) and outside rowspace(same checks).
pub fn is_logical(code: &CssCode, basis: Basis, v: &BitVec) -> bool {
    let (opp, same) = match basis {
        Basis::Z => (&code.hx, &code.hz),
        Basis::X => (&code.hz, &code.hx),
    };
    if v.len() != code.n || !opp.mul_vec(v).map(|s| s.is_zero()).unwrap_or(false) {
        return false;
    }
    !RowReducer::from_matrix_rows(same).contains(v)
}

struct Packed<const W: usize> {
    cols: Vec<[u64; W]>,
    synd: [u64; W],
    logi: [u64; W],
}

impl<const W: usize> Packed<W> {
    fn new(check: &BitMatrix, partners: &[BitVec]) -> Self {
        let n = check.cols();
        let r = check.rows();
        let mut cols = vec![[0u64; W]; n];
        let ct = check.transpose();
        for (j, col) in cols.iter_mut().enumerate() {
            for i in ct.row_ones(j) {
                col[i / 64] |= 1 << (i % 64);
            }
            for (t, p) in partners.iter().enumerate() {
                if p.get(j) {
                    let b = r + t;
                    col[b / 64] |= 1 << (b % 64);
                }
            }
        }
        let mut synd = [0u64; W];
        let mut logi = [0u64; W];
        for i in 0..r {
            synd[i / 64] |= 1 << (i % 64);
        }
        for t in 0..partners.len() {
            let b = r + t;
            logi[b / 64] |= 1 << (b % 64);
        }
        Self { cols, synd, logi }
    }

    #[inline(always)]
    fn hit(&self, a: &[u64; W]) -> bool {
        let mut s = 0u64;
        let mut l = 0u64;
        for k in 0..W {
            s |= a[k] & self.synd[k];
            l |= a[k] & self.logi[k];
        }
        s == 0 && l != 0
    }

    #[inline(always)]
    fn xor(a: &[u64; W], b: &[u64; W]) -> [u64; W] {
        let mut o = *a;
        for k in 0..W {
            o[k] ^= b[k];
        }
        o
    }

    fn dfs(&self, start: usize, depth: usize, acc: &[u64; W], chosen: &mut Vec<usize>) -> bool {
        let n = self.cols.len();
        if depth == 1 {
            for j in start..n {
                if self.hit(&Self::xor(acc, &self.cols[j])) {
                    chosen.push(j);
                    return true;
                }
            }
            return false;
        }
        for j in start..n.saturating_sub(depth - 1) {
            chosen.push(j);
            if self.dfs(j + 1, depth - 1, &Self::xor(acc, &self.cols[j]), chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// First (lexicographic) logical of weight exactly w.
    fn search_weight(&self, w: usize) -> Option<Vec<usize>> {
        let n = self.cols.len();
        if w == 0 || w > n {
            return None;
        }
        (0..=n - w).into_par_iter().find_map_first(|i| {
            let mut chosen = vec![i];
            if w == 1 {
                return self.hit(&self.cols[i]).then_some(chosen);
            }
            self.dfs(i + 1, w - 1, &self.cols[i], &mut chosen).then_some(chosen)
        })
    }
}

fn search_packed<const W: usize>(check: &BitMatrix, partners: &[BitVec], cap: usize) -> (Option<Vec<usize>>, u64) {
    let p = Packed::<W>::new(check, partners);
    let n = check.cols();
    let mut count = 0u64;
    for w in 1..=cap.min(n) {
        let found = p.search_weight(w);
        if found.is_some() {
            // whole weight class counted
            count = count.saturating_add(binomial(n, w));
            return (found, count);
        }
        count = count.saturating_add(binomial(n, w));
    }
    (None, count)
}

fn search_dispatch(check: &BitMatrix, partners: &[BitVec], cap: usize) -> (Option<Vec<usize>>, u64) {
    let bits = check.rows() + partners.len();
    match bits.div_ceil(64) {
        0 | 1 => search_packed::<1>(check, partners, cap),
        2 => search_packed::<2>(check, partners, cap),
        3 => search_packed::<3>(check, partners, cap),
        4 => search_packed::<4>(check, partners, cap),
        5 | 6 => search_packed::<6>(check, partners, cap),
        7 | 8 => search_packed::<8>(check, partners, cap),
        9..=12 => search_packed::<12>(check, partners, cap),
        _ => search_packed::<16>(check, partners, cap),
    }
}

/// Exhaustive search over weights 1..=cap. Verified hints supply upper
/// bounds when enumeration does not reach the distance.
pub fn distance_search(code: &CssCode, basis: Basis, weight_cap: usize, hints: &[BitVec]) -> DistanceResult {
    let lb = logical_basis_any(code).expect("valid CSS code");
    distance_search_with(code, &lb, basis, weight_cap, hints)
}

pub fn distance_search_with(
    code: &CssCode,
    lb: &LogicalBasis,
    basis: Basis,
    weight_cap: usize,
    hints: &[BitVec],
) -> DistanceResult {
    let cap = weight_cap.max(1);
    if lb.k() == 0 {
        return DistanceResult { distance: Distance::Undefined, witness: None, weight_cap: cap, candidates: 0 };
    }
    let (check, partners) = detectors(code, lb, basis);
    assert!(check.rows() + partners.len() <= 16 * 64, "syndrome too wide for packed search");
    let (found, candidates) = search_dispatch(check, partners, cap);
    if let Some(idx) = found {
        let v = BitVec::from_indices(code.n, idx);
        assert!(is_logical(code, basis, &v), "enumerated witness failed re-verification");
        return DistanceResult { distance: Distance::Exact(v.weight()), witness: Some(v), weight_cap: cap, candidates };
    }
    let best = hints.iter().filter(|h| is_logical(code, basis, h)).min_by_key(|h| h.weight()).cloned();
    let upper = best.as_ref().map(BitVec::weight);
    let lower = cap.min(code.n) + 1;
    let distance = match upper {
        Some(u) if u <= lower => Distance::Exact(u),
        _ => Distance::Bounds { lower, upper },
    };
    DistanceResult { distance, witness: best, weight_cap: cap, candidates }
}

/// Randomized information-set search (Lee–Brickell, p ≤ 2) for low-weight
/// logical operators of the given type. Returns the lightest found.
pub fn isd_low_weight_logical(code: &CssCode, basis: Basis, iterations: usize, seed: u64) -> Option<BitVec> {
    let lb = logical_basis_any(code).ok()?;
    if lb.k() == 0 {
        return None;
    }
    let (check, partners) = detectors(code, &lb, basis);
    let gen = kernel_basis(check);
    let n = code.n;
    let m = gen.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<BitVec> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    let sig = |v: &BitVec| partners.iter().any(|p| p.dot(v));
    for _ in 0..iterations {
        perm.shuffle(&mut rng);
        let mut rows = gen.clone();
        let mut r = 0;
        for &c in &perm {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| rows[i].get(c)) else { continue };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            r += 1;
        }
        let limit = best.as_ref().map_or(usize::MAX, BitVec::weight);
        let mut local: Option<BitVec> = None;
        let consider = |v: BitVec, local: &mut Option<BitVec>| {
            let w = v.weight();
            let cur = local.as_ref().map_or(limit, |b: &BitVec| b.weight().min(limit));
            if w < cur && sig(&v) {
                *local = Some(v);
            }
        };
        for i in 0..m {
            consider(rows[i].clone(), &mut local);
            for j in i + 1..m {
                consider(rows[i].xor(&rows[j]), &mut local);
            }
        }
        if let Some(v) = local {
            best = Some(v);
        }
    }
    best.filter(|v| is_logical(code, basis, v))
}

/// Information-set iterations used to tighten bounds the enumeration
/// leaves open.
pub const DEFAULT_ISD_ITERATIONS: usize = 3000;

/// Lowers the upper bound of `r` with a verified logical operator.
pub fn tighten(r: &mut DistanceResult, code: &CssCode, basis: Basis, v: BitVec) {
    let Distance::Bounds { lower, upper } = r.distance else { return };
    if !is_logical(code, basis, &v) || upper.is_some_and(|u| u <= v.weight()) {
        return;
    }
    let w = v.weight();
    r.distance = if w <= lower { Distance::Exact(w) } else { Distance::Bounds { lower, upper: Some(w) } };
    r.witness = Some(v);
}

pub fn min_distance(a: Distance, b: Distance) -> Distance {
    let bounds = |d: Distance| match d {
        Distance::Exact(x) => (x, Some(x)),
        Distance::Bounds { lower, upper } => (lower, upper),
        Distance::Undefined => (usize::MAX, None),
    };
    if a == Distance::Undefined || b == Distance::Undefined {
        return if a == Distance::Undefined { b } else { a };
    }
    let ((la, ua), (lb, ub)) = (bounds(a), bounds(b));
    let lower = la.min(lb);
    let upper = match (ua, ub) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    match upper {
        Some(u) if u <= lower => Distance::Exact(u),
        _ => Distance::Bounds { lower, upper },
    }
}

#[derive(Clone, Debug)]
pub struct CodeDistance {
    pub d_z: DistanceResult,
    pub d_x: DistanceResult,
    pub d: Distance,
}

/// Exhaustive search up to `weight_cap` in both bases, with `hints_z`
/// and information-set search supplying upper bounds beyond the cap.
pub fn code_distance(code: &CssCode, weight_cap: usize, hints_z: &[BitVec], isd_iterations: usize, seed: u64) -> CodeDistance {
    let lb = logical_basis_any(code).expect("valid CSS code");
    let run = |basis: Basis, hints: &[BitVec]| {
        let mut r = distance_search_with(code, &lb, basis, weight_cap, hints);
        if r.distance.exact().is_none() && isd_iterations > 0 {
            if let Some(v) = isd_low_weight_logical(code, basis, isd_iterations, seed) {
                tighten(&mut r, code, basis, v);
            }
        }
        r
    };
    let d_z = run(Basis::Z, hints_z);
    let d_x = run(Basis::X, &[]);
    let d = min_distance(d_z.distance, d_x.distance);
    CodeDistance { d_z, d_x, d }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(27, 3), 2925);
        assert_eq!(candidates_up_to(27, 3), 2925 + 351 + 27);
        assert_eq!(auto_weight_cap(162, CANDIDATE_BUDGET), 4);
        assert_eq!(auto_weight_cap(210, CANDIDATE_BUDGET), 3);
        assert_eq!(auto_weight_cap(81, CANDIDATE_BUDGET), 5);
    }

    #[test]
    fn no_logicals_means_undefined() {
        let code = CssCode::new(BitMatrix::identity(4), BitMatrix::zeros(0, 4), None).unwrap();
        let r = distance_search(&code, Basis::Z, 3, &[]);
        assert_eq!(r.distance, Distance::Undefined);
    }

    #[test]
    fn repetition_like_code() {
        // 3-qubit bit-flip code: Z logical of weight 1, X logical of weight 3
        let hz = BitMatrix::from_strs(&["110", "011"]);
        let code = CssCode::new(BitMatrix::zeros(0, 3), hz, None).unwrap();
        assert_eq!(distance_search(&code, Basis::Z, 3, &[]).distance, Distance::Exact(1));
        assert_eq!(distance_search(&code, Basis::X, 3, &[]).distance, Distance::Exact(3));
        assert_eq!(distance_search(&code, Basis::X, 2, &[]).distance, Distance::Bounds { lower: 3, upper: None });
        let hint = BitVec::from_indices(3, [0, 1, 2]);
        assert_eq!(distance_search(&code, Basis::X, 2, &[hint]).distance, Distance::Exact(3));
        let cd = code_distance(&code, 3, &[], 0, 0);
        assert_eq!(cd.d, Distance::Exact(1));
    }

    #[test]
    fn minimum_of_distances() {
        let b = |lower, upper| Distance::Bounds { lower, upper };
        assert_eq!(min_distance(Distance::Exact(3), b(4, None)), Distance::Exact(3));
        assert_eq!(min_distance(Distance::Exact(5), b(4, Some(7))), b(4, Some(5)));
        assert_eq!(min_distance(b(4, None), b(5, Some(6))), b(4, Some(6)));
        assert_eq!(min_distance(Distance::Undefined, Distance::Exact(2)), Distance::Exact(2));
    }
}
