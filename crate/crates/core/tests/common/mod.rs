#![allow(dead_code)]

use std::collections::BTreeSet;

use dimjump::f2_linalg::BitMatrix;
use dimjump::group_algebra::GroupAlgebraElement;

/// Group-algebra elements as sets of exponent tuples.
pub type Poly = BTreeSet<Vec<usize>>;

/// Parses sums of monomials like "x^2*y + z" without the library parser.
pub fn poly(text: &str, orders: &[usize]) -> Poly {
    let mut out = Poly::new();
    for term in text.split('+').map(str::trim) {
        let mut e = vec![0; orders.len()];
        if term != "1" {
            for f in term.split('*') {
                let (v, p) = f.split_once('^').unwrap_or((f, "1"));
                let i = "xyz".find(v.trim()).expect("variable");
                e[i] = (e[i] + p.trim().parse::<usize>().unwrap()) % orders[i];
            }
        }
        if !out.insert(e.clone()) {
            out.remove(&e);
        }
    }
    out
}

pub fn from_element(e: &GroupAlgebraElement) -> Poly {
    e.support().into_iter().collect()
}

pub fn mul(a: &Poly, b: &Poly, orders: &[usize]) -> Poly {
    let mut out = Poly::new();
    for x in a {
        for y in b {
            let m: Vec<usize> = x.iter().zip(y).zip(orders).map(|((p, q), l)| (p + q) % l).collect();
            if !out.insert(m.clone()) {
                out.remove(&m);
            }
        }
    }
    out
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    a.symmetric_difference(b).cloned().collect()
}

/// A·Bᵀ = 0 by direct row inner products.
pub fn rows_orthogonal(a: &BitMatrix, b: &BitMatrix) -> bool {
    (0..a.rows()).all(|i| (0..b.rows()).all(|j| (0..a.cols()).filter(|&c| a.get(i, c) && b.get(j, c)).count() % 2 == 0))
}

/// Rank by plain Gaussian elimination on boolean rows.
pub fn dense_rank(m: &BitMatrix) -> usize {
    let mut rows: Vec<Vec<bool>> = (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect()).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let pivot = rows[rank].clone();
                rows[r].iter_mut().zip(pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    rank
}
