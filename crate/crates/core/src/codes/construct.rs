use super::css::{CssCode, Provenance};
use crate::chain_complex::{ChainComplexR, Sector};
use crate::error::{Error, Result};
use crate::f2_linalg::{rank, BitMatrix};
use crate::group_algebra::{FiniteAbelianGroup, GroupAlgebraElement, RMatrix};

/// Classical code over R: bits C₁ = R^n → checks C₀ = R^r.
#[derive(Clone, Debug)]
pub struct ClassicalCode {
    pub h: RMatrix,
}

impl ClassicalCode {
    pub fn new(h: RMatrix) -> Self {
        Self { h }
    }

    pub fn from_element(a: &GroupAlgebraElement) -> Self {
        Self { h: RMatrix::from_elements(a.group(), &[vec![a.clone()]]).expect("1x1") }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.h.group()
    }

    pub fn binary(&self) -> BitMatrix {
        self.h.binary_rep()
    }

    pub fn complex(&self) -> ChainComplexR {
        ChainComplexR::from_map(&self.h)
    }

    /// (n_C, r_C) as R-module ranks.
    pub fn bits(&self) -> usize {
        self.h.cols()
    }

    pub fn checks(&self) -> usize {
        self.h.rows()
    }

    /// dim ker B(H) and dim coker B(H).
    pub fn k_and_k_transpose(&self) -> (usize, usize) {
        let b = self.binary();
        let r = rank(&b);
        (b.cols() - r, b.rows() - r)
    }
}

const FACTOR_NAMES: [char; 3] = ['A', 'B', 'C'];

pub(crate) fn sector_name(s: &Sector) -> String {
    s.degrees
        .iter()
        .enumerate()
        .map(|(i, d)| format!("{}{}", FACTOR_NAMES.get(i).copied().unwrap_or('?'), d))
        .collect()
}

/// Total complex A ⊗ B (⊗ C) over R.
pub fn lp_complex(codes: &[ClassicalCode]) -> Result<ChainComplexR> {
    if !(2..=3).contains(&codes.len()) {
        return Err(Error::Construction(format!("lifted product needs 2 or 3 classical codes, got {}", codes.len())));
    }
    let mut c = codes[0].complex();
    for code in &codes[1..] {
        c = c.tensor_product(&code.complex())?;
    }
    Ok(c)
}

/// Attaches sector layout and provenance derived from an R-complex.
pub fn code_from_r_complex(c: &ChainComplexR, provenance: Provenance) -> Result<CssCode> {
    let mut code = CssCode::from_complex(&c.binary_lift())?;
    let l = c.group().size();
    code.sector_layout = c.sectors(1).iter().map(|s| (sector_name(s), s.dim * l)).collect();
    code.provenance = provenance;
    Ok(code)
}

/// 2D (two codes) or 3D (three codes) lifted-product code.
pub fn build_lp(codes: &[ClassicalCode]) -> Result<CssCode> {
    let c = lp_complex(codes)?;
    let group = codes[0].group().clone();
    code_from_r_complex(&c, Provenance::Lp { group, checks: codes.iter().map(|c| c.h.clone()).collect() })
}

/// Tricycle code from three elements, written out directly.
pub fn bt_direct(a: &GroupAlgebraElement, b: &GroupAlgebraElement, c: &GroupAlgebraElement) -> Result<CssCode> {
    let g = a.group();
    let z = GroupAlgebraElement::zero(g);
    let (as_, bs, cs) = (a.antipode(), b.antipode(), c.antipode());
    let hx = RMatrix::from_elements(g, &[vec![a.clone(), b.clone(), c.clone()]])?;
    let hz = RMatrix::from_elements(
        g,
        &[vec![bs.clone(), as_.clone(), z.clone()], vec![cs.clone(), z.clone(), as_.clone()], vec![z, cs.clone(), bs.clone()]],
    )?;
    let mz = RMatrix::from_elements(g, &[vec![cs, bs, as_]])?;
    let mut code = CssCode::new(hx.binary_rep(), hz.binary_rep(), Some(mz.binary_rep()))?;
    let l = g.size();
    code.sector_layout = vec![("A1B0C0".into(), l), ("A0B1C0".into(), l), ("A0B0C1".into(), l)];
    code.provenance = Provenance::Bt { a: a.clone(), b: b.clone(), c: c.clone() };
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algebra::parse_element;

    #[test]
    fn trivial_group_unit_checks() {
        let g = FiniteAbelianGroup::trivial();
        let one = ClassicalCode::new(RMatrix::identity(&g, 1));
        let code = build_lp(&[one.clone(), one]).unwrap();
        assert_eq!(code.n, 2);
        assert_eq!(code.k(), 0);
    }

    #[test]
    fn zero_polynomials_free_all_qubits() {
        let g = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        let z = GroupAlgebraElement::zero(&g);
        let code = bt_direct(&z, &z, &z).unwrap();
        assert!(code.hx.is_zero());
        assert_eq!(code.k(), code.n);
    }

    #[test]
    fn bt_direct_equals_lp() {
        let g = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        let p = |s| parse_element(s, &g).unwrap();
        let (a, b, c) = (p("x^2y + x^2y^2"), p("1 + xy^2"), p("x + x^2y"));
        let d = bt_direct(&a, &b, &c).unwrap();
        let lp = build_lp(&[ClassicalCode::from_element(&a), ClassicalCode::from_element(&b), ClassicalCode::from_element(&c)])
            .unwrap();
        assert_eq!(d.hx, lp.hx);
        assert_eq!(d.hz, lp.hz);
        assert_eq!(d.mz, lp.mz);
        assert_eq!((d.n, d.k()), (27, 3));
        assert_eq!(lp.sector_layout, d.sector_layout);
    }
}
