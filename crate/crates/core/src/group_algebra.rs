//! The group algebra F₂[G] of a finite abelian group G = C_{l₁} × … × C_{l_m},
//! matrices over it, and the regular (binary) representation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2_linalg::BitMatrix;

/// Product of cyclic groups. Elements are indexed lexicographically by
/// exponent vector with the first factor varying slowest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<usize>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidArgument(format!("cyclic factor orders must be >= 1, got {orders:?}")));
        }
        Ok(Self { orders })
    }

    pub fn cyclic(l: usize) -> Self {
        Self::new(vec![l]).expect("order >= 1")
    }

    pub fn trivial() -> Self {
        Self { orders: vec![] }
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn exponents(&self, mut idx: usize) -> Vec<usize> {
        let mut e = vec![0; self.orders.len()];
        for (slot, &l) in e.iter_mut().zip(&self.orders).rev() {
            *slot = idx % l;
            idx /= l;
        }
        e
    }

    pub fn index(&self, exps: &[i64]) -> usize {
        assert_eq!(exps.len(), self.orders.len());
        exps.iter().zip(&self.orders).fold(0, |acc, (&e, &l)| acc * l + e.rem_euclid(l as i64) as usize)
    }

    #[inline]
    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let (mut out, mut scale) = (0, 1);
        for &l in self.orders.iter().rev() {
            out += ((a % l + b % l) % l) * scale;
            scale *= l;
            a /= l;
            b /= l;
        }
        out
    }

    #[inline]
    pub fn inv_idx(&self, a: usize) -> usize {
        let mut a = a;
        let (mut out, mut scale) = (0, 1);
        for &l in self.orders.iter().rev() {
            out += ((l - a % l) % l) * scale;
            scale *= l;
            a /= l;
        }
        out
    }

    fn var_names(&self) -> Vec<String> {
        let m = self.orders.len();
        if m <= 3 {
            ["x", "y", "z"][..m].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=m).map(|i| format!("x{i}")).collect()
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self != other {
            return Err(Error::GroupMismatch(self.orders.clone(), other.orders.clone()));
        }
        Ok(())
    }
}

/// Sorted, duplicate-free set of group-element indices: an element of F₂[G].
type Poly = Vec<u32>;

fn cancel_pairs(mut v: Vec<u32>) -> Poly {
    v.sort_unstable();
    let mut out = Vec::with_capacity(v.len());
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(v[i]);
        }
        i = j;
    }
    out
}

fn poly_mul(g: &FiniteAbelianGroup, a: &[u32], b: &[u32]) -> Poly {
    let mut terms = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            terms.push(g.mul_idx(x as usize, y as usize) as u32);
        }
    }
    cancel_pairs(terms)
}

fn poly_add(a: &[u32], b: &[u32]) -> Poly {
    // symmetric difference of two sorted lists
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(&x), Some(&y)) if x < y => {
                out.push(x);
                i += 1;
            }
            (Some(_), Some(&y)) => {
                out.push(y);
                j += 1;
            }
            (Some(&x), None) => {
                out.push(x);
                i += 1;
            }
            (None, Some(&y)) => {
                out.push(y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn poly_antipode(g: &FiniteAbelianGroup, a: &[u32]) -> Poly {
    let mut v: Vec<u32> = a.iter().map(|&x| g.inv_idx(x as usize) as u32).collect();
    v.sort_unstable();
    v
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupAlgebraElement {
    group: FiniteAbelianGroup,
    support: Poly,
}

impl GroupAlgebraElement {
    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        Self { group: group.clone(), support: vec![] }
    }

    pub fn one(group: &FiniteAbelianGroup) -> Self {
        Self { group: group.clone(), support: vec![0] }
    }

    pub fn monomial(group: &FiniteAbelianGroup, exps: &[i64]) -> Self {
        Self { group: group.clone(), support: vec![group.index(exps) as u32] }
    }

    /// Element with the given group-element indices (repeats cancel).
    pub fn from_indices<I: IntoIterator<Item = usize>>(group: &FiniteAbelianGroup, idx: I) -> Self {
        let l = group.size();
        let v = idx
            .into_iter()
            .map(|i| {
                assert!(i < l, "group index {i} out of range");
                i as u32
            })
            .collect();
        Self { group: group.clone(), support: cancel_pairs(v) }
    }

    pub fn parse(text: &str, group: &FiniteAbelianGroup) -> Result<Self> {
        parse_element(text, group)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.support.iter().map(|&i| i as usize)
    }

    /// Exponent vectors of the monomials, in canonical order.
    pub fn support(&self) -> Vec<Vec<usize>> {
        self.indices().map(|i| self.group.exponents(i)).collect()
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.group.check_same(&other.group)?;
        Ok(Self { group: self.group.clone(), support: poly_add(&self.support, &other.support) })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.group.check_same(&other.group)?;
        Ok(Self { group: self.group.clone(), support: poly_mul(&self.group, &self.support, &other.support) })
    }

    pub fn antipode(&self) -> Self {
        Self { group: self.group.clone(), support: poly_antipode(&self.group, &self.support) }
    }

    /// Regular representation: column h holds the expansion of a·h.
    pub fn binary_rep(&self) -> BitMatrix {
        let l = self.group.size();
        let mut m = BitMatrix::zeros(l, l);
        for h in 0..l {
            for &a in &self.support {
                m.flip(self.group.mul_idx(a as usize, h), h);
            }
        }
        m
    }

    pub fn render(&self) -> String {
        render_poly(&self.group, &self.support)
    }
}

fn render_poly(g: &FiniteAbelianGroup, p: &[u32]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let names = g.var_names();
    p.iter()
        .map(|&i| {
            let e = g.exponents(i as usize);
            let factors: Vec<String> = e
                .iter()
                .zip(&names)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("*")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in F2[C{:?}]", self.render(), self.group.orders)
    }
}

/// Parses sums of monomials such as `x^2*y + x^2y^2`, `1`, `0`.
/// Variables are x, y, z (or x1..xk for more than three factors);
/// products may use `*` or juxtaposition; exponents may be negative.
pub fn parse_element(text: &str, group: &FiniteAbelianGroup) -> Result<GroupAlgebraElement> {
    let bad = |reason: &str| Error::Parse { text: text.to_string(), reason: reason.to_string() };
    let m = group.orders.len();
    let names = group.var_names();
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty input"));
    }
    let mut terms = Vec::new();
    for term in compact.split('+') {
        if term.is_empty() {
            return Err(bad("empty term"));
        }
        let chars: Vec<char> = term.chars().collect();
        let mut exps = vec![0i64; m];
        let mut zero = false;
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c == '*' {
                if i == 0 || i + 1 == chars.len() || chars[i + 1] == '*' {
                    return Err(bad("dangling `*`"));
                }
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                match chars[start..i].iter().collect::<String>().as_str() {
                    "1" => {}
                    "0" => zero = true,
                    other => return Err(bad(&format!("coefficient `{other}` is not in F2"))),
                }
                continue;
            }
            if !c.is_ascii_alphabetic() {
                return Err(bad(&format!("unexpected character `{c}`")));
            }
            let start = i;
            i += 1;
            if m > 3 {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let var: String = chars[start..i].iter().collect();
            let slot = names
                .iter()
                .position(|n| *n == var)
                .ok_or_else(|| Error::UnknownVariable { var: var.clone(), factors: m })?;
            let mut e = 1i64;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let s = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[s..i].iter().collect();
                e = digits.parse().map_err(|_| bad("missing exponent after `^`"))?;
            }
            exps[slot] += e;
        }
        if !zero {
            terms.push(group.index(&exps) as u32);
        }
    }
    Ok(GroupAlgebraElement { group: group.clone(), support: cancel_pairs(terms) })
}

/// Matrix over F₂[G], row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    group: FiniteAbelianGroup,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl RMatrix {
    pub fn zeros(group: &FiniteAbelianGroup, rows: usize, cols: usize) -> Self {
        Self { group: group.clone(), rows, cols, entries: vec![vec![]; rows * cols] }
    }

    pub fn identity(group: &FiniteAbelianGroup, n: usize) -> Self {
        let mut m = Self::zeros(group, n, n);
        for i in 0..n {
            m.entries[i * n + i] = vec![0];
        }
        m
    }

    pub fn from_elements(group: &FiniteAbelianGroup, rows: &[Vec<GroupAlgebraElement>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(group, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension("ragged RMatrix rows".into()));
            }
            for (j, e) in r.iter().enumerate() {
                group.check_same(&e.group)?;
                m.entries[i * cols + j] = e.support.clone();
            }
        }
        Ok(m)
    }

    pub fn parse(group: &FiniteAbelianGroup, rows: &[Vec<String>]) -> Result<Self> {
        let els: Vec<Vec<GroupAlgebraElement>> = rows
            .iter()
            .map(|r| r.iter().map(|t| parse_element(t, group)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        if els.is_empty() {
            return Ok(Self::zeros(group, 0, 0));
        }
        Self::from_elements(group, &els)
    }

    /// Lifts a binary matrix into R via 0 ↦ 0, 1 ↦ 1.
    pub fn from_binary(group: &FiniteAbelianGroup, m: &BitMatrix) -> Self {
        let mut out = Self::zeros(group, m.rows(), m.cols());
        for (r, c) in m.nonzeros() {
            out.entries[r * m.cols() + c] = vec![0];
        }
        out
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> GroupAlgebraElement {
        GroupAlgebraElement { group: self.group.clone(), support: self.entries[r * self.cols + c].clone() }
    }

    pub fn set(&mut self, r: usize, c: usize, e: &GroupAlgebraElement) -> Result<()> {
        self.group.check_same(&e.group)?;
        self.entries[r * self.cols + c] = e.support.clone();
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix> {
        self.group.check_same(&other.group)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("R-matrix product {:?} x {:?}", self.shape(), other.shape())));
        }
        let mut out = Self::zeros(&self.group, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i * self.cols + k];
                if a.is_empty() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.entries[k * other.cols + j];
                    if b.is_empty() {
                        continue;
                    }
                    let p = poly_mul(&self.group, a, b);
                    let slot = &mut out.entries[i * other.cols + j];
                    *slot = poly_add(slot, &p);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RMatrix) -> Result<RMatrix> {
        self.group.check_same(&other.group)?;
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!("R-matrix sum {:?} + {:?}", self.shape(), other.shape())));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| poly_add(a, b)).collect();
        Ok(Self { group: self.group.clone(), rows: self.rows, cols: self.cols, entries })
    }

    /// Transpose with entrywise antipode.
    pub fn dagger(&self) -> RMatrix {
        let mut out = Self::zeros(&self.group, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = poly_antipode(&self.group, &self.entries[i * self.cols + j]);
            }
        }
        out
    }

    /// Kronecker product over R; the left factor's index varies slowest.
    pub fn kron(&self, other: &RMatrix) -> Result<RMatrix> {
        self.group.check_same(&other.group)?;
        let (p, q) = other.shape();
        let mut out = Self::zeros(&self.group, self.rows * p, self.cols * q);
        let oc = self.cols * q;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.entries[i * self.cols + j];
                if a.is_empty() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        let b = &other.entries[k * q + l];
                        if !b.is_empty() {
                            out.entries[(i * p + k) * oc + j * q + l] = poly_mul(&self.group, a, b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn hstack(group: &FiniteAbelianGroup, blocks: &[&RMatrix]) -> Result<RMatrix> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        for b in blocks {
            group.check_same(&b.group)?;
            if b.rows != rows {
                return Err(Error::Dimension("R-matrix hstack row mismatch".into()));
            }
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(group, rows, cols);
        let mut off = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out.entries[i * cols + off + j] = b.entries[i * b.cols + j].clone();
                }
            }
            off += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(group: &FiniteAbelianGroup, blocks: &[&RMatrix]) -> Result<RMatrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        for b in blocks {
            group.check_same(&b.group)?;
            if b.cols != cols {
                return Err(Error::Dimension("R-matrix vstack column mismatch".into()));
            }
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for b in blocks {
            entries.extend(b.entries.iter().cloned());
        }
        Ok(Self { group: group.clone(), rows, cols, entries })
    }

    /// Assembles a block matrix; `None` blocks are zero of the inferred shape.
    pub fn blocks(
        group: &FiniteAbelianGroup,
        row_dims: &[usize],
        col_dims: &[usize],
        blocks: &[Vec<Option<&RMatrix>>],
    ) -> Result<RMatrix> {
        let rows = row_dims.iter().sum();
        let cols = col_dims.iter().sum();
        let mut out = Self::zeros(group, rows, cols);
        let mut r0 = 0;
        for (bi, &rd) in row_dims.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cd) in col_dims.iter().enumerate() {
                if let Some(b) = blocks[bi][bj] {
                    group.check_same(&b.group)?;
                    if b.shape() != (rd, cd) {
                        return Err(Error::Dimension(format!(
                            "block ({bi},{bj}) has shape {:?}, expected {:?}",
                            b.shape(),
                            (rd, cd)
                        )));
                    }
                    for i in 0..rd {
                        for j in 0..cd {
                            out.entries[(r0 + i) * cols + c0 + j] = b.entries[i * cd + j].clone();
                        }
                    }
                }
                c0 += cd;
            }
            r0 += rd;
        }
        Ok(out)
    }

    /// Replaces every entry by its regular representation.
    pub fn binary_rep(&self) -> BitMatrix {
        let l = self.group.size();
        let mut out = BitMatrix::zeros(self.rows * l, self.cols * l);
        for p in 0..self.rows {
            for q in 0..self.cols {
                for &a in &self.entries[p * self.cols + q] {
                    for h in 0..l {
                        out.flip(p * l + self.group.mul_idx(a as usize, h), q * l + h);
                    }
                }
            }
        }
        out
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| render_poly(&self.group, &self.entries[i * self.cols + j])).collect())
            .collect()
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix {}x{} over C{:?}", self.rows, self.cols, self.group.orders)?;
        for r in self.render() {
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(3)
    }

    #[test]
    fn parse_table_polynomial() {
        let g = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        let a = parse_element("x^2*y + x^2*y^2", &g).unwrap();
        assert_eq!(a.support(), vec![vec![2, 1], vec![2, 2]]);
        assert_eq!(parse_element("x^2y+x^2y^2", &g).unwrap(), a);
    }

    #[test]
    fn parse_zero_and_cancellation() {
        assert!(parse_element("0", &c3()).unwrap().is_zero());
        assert!(parse_element("x + x", &c3()).unwrap().is_zero());
        assert_eq!(parse_element("x^4", &c3()).unwrap(), parse_element("x", &c3()).unwrap());
        assert_eq!(parse_element("x^-1", &c3()).unwrap(), parse_element("x^2", &c3()).unwrap());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_element("y", &c3()), Err(Error::UnknownVariable { .. })));
        assert!(matches!(parse_element("x +", &c3()), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("x^", &c3()), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("2x", &c3()), Err(Error::Parse { .. })));
    }

    #[test]
    fn many_factor_syntax() {
        let g = FiniteAbelianGroup::new(vec![2, 2, 2, 3]).unwrap();
        let a = parse_element("x1*x4^2 + x2x3", &g).unwrap();
        assert_eq!(a.support(), vec![vec![0, 1, 1, 0], vec![1, 0, 0, 2]]);
        assert_eq!(parse_element(&a.render(), &g).unwrap(), a);
    }

    #[test]
    fn cyclic_arithmetic() {
        let g = c3();
        let x = parse_element("x", &g).unwrap();
        let x2 = x.mul(&x).unwrap();
        assert_eq!(x2.mul(&x2).unwrap(), x);
        let s = parse_element("1 + x", &g).unwrap();
        assert_eq!(s.mul(&s).unwrap(), parse_element("1 + x^2", &g).unwrap());
    }

    #[test]
    fn antipode_examples() {
        let g = c3();
        assert_eq!(GroupAlgebraElement::one(&g).antipode(), GroupAlgebraElement::one(&g));
        assert_eq!(parse_element("x", &g).unwrap().antipode(), parse_element("x^2", &g).unwrap());
        let g = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        let a = parse_element("x + x^2*y", &g).unwrap();
        assert_eq!(a.antipode(), parse_element("x^2 + x*y^2", &g).unwrap());
    }

    #[test]
    fn regular_rep_of_generator_is_down_shift() {
        let x = parse_element("x", &c3()).unwrap();
        assert_eq!(x.binary_rep(), BitMatrix::from_strs(&["001", "100", "010"]));
        assert_eq!(GroupAlgebraElement::one(&c3()).binary_rep(), BitMatrix::identity(3));
    }

    #[test]
    fn group_mismatch_is_reported() {
        let a = GroupAlgebraElement::one(&c3());
        let b = GroupAlgebraElement::one(&FiniteAbelianGroup::cyclic(5));
        assert!(matches!(a.mul(&b), Err(Error::GroupMismatch(..))));
    }

    #[test]
    fn dagger_is_involution() {
        let g = FiniteAbelianGroup::new(vec![3, 5]).unwrap();
        let m = RMatrix::parse(&g, &[vec!["x + y^2".into(), "1".into()], vec!["0".into(), "x*y^3".into()]]).unwrap();
        assert_eq!(m.dagger().dagger(), m);
        assert_eq!(m.dagger().binary_rep(), m.binary_rep().transpose());
    }
}
