//! Built-in code pairs.

use serde::{Deserialize, Serialize};

use super::construct::{bt_direct, code_from_r_complex, lp_complex, ClassicalCode};
use super::css::{CssCode, Provenance};
use crate::chain_complex::ChainComplexR;
use crate::error::{Error, Result};
use crate::f2_linalg::BitMatrix;
use crate::group_algebra::{parse_element, FiniteAbelianGroup, GroupAlgebraElement, RMatrix};

pub const REGISTRY_NAMES: [&str; 8] =
    ["pentagon", "lifted-toric-2", "lifted-toric-3", "bt-27", "bt-45", "bt-81", "tt-210", "fig-s1"];

/// The seven published pairs (excludes the layout example).
pub const TABLE_NAMES: [&str; 7] = ["pentagon", "lifted-toric-2", "lifted-toric-3", "bt-27", "bt-45", "bt-81", "tt-210"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nkd {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

const fn nkd(n: usize, k: usize, d: usize) -> Nkd {
    Nkd { n, k, d }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Published {
    pub code_2d: Option<Nkd>,
    pub code_3d: Nkd,
    pub ccz_depth: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum Checks {
    Matrices([RMatrix; 3]),
    Polynomials { a: String, b: String, c: String },
}

#[derive(Clone, Debug)]
pub struct CodeSpec {
    pub name: String,
    pub group: FiniteAbelianGroup,
    pub checks: Checks,
    pub published: Option<Published>,
}

impl CodeSpec {
    pub fn elements(&self) -> Result<Option<[GroupAlgebraElement; 3]>> {
        match &self.checks {
            Checks::Polynomials { a, b, c } => Ok(Some([
                parse_element(a, &self.group)?,
                parse_element(b, &self.group)?,
                parse_element(c, &self.group)?,
            ])),
            Checks::Matrices(_) => Ok(None),
        }
    }

    pub fn classical(&self) -> Result<[ClassicalCode; 3]> {
        Ok(match &self.checks {
            Checks::Matrices([a, b, c]) => [ClassicalCode::new(a.clone()), ClassicalCode::new(b.clone()), ClassicalCode::new(c.clone())],
            Checks::Polynomials { .. } => {
                let [a, b, c] = self.elements()?.expect("polynomial spec");
                [ClassicalCode::from_element(&a), ClassicalCode::from_element(&b), ClassicalCode::from_element(&c)]
            }
        })
    }
}

fn binary(rows: &[&str]) -> RMatrix {
    RMatrix::from_binary(&FiniteAbelianGroup::trivial(), &BitMatrix::from_strs(rows))
}

fn matrix(g: &FiniteAbelianGroup, rows: &[&[&str]]) -> RMatrix {
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    RMatrix::parse(g, &rows).expect("registry matrices parse")
}

fn poly_spec(name: &str, orders: Vec<usize>, a: &str, b: &str, c: &str, published: Option<Published>) -> CodeSpec {
    CodeSpec {
        name: name.into(),
        group: FiniteAbelianGroup::new(orders).expect("positive orders"),
        checks: Checks::Polynomials { a: a.into(), b: b.into(), c: c.into() },
        published,
    }
}

pub fn registry_load(name: &str) -> Result<CodeSpec> {
    let depth2 = Some(2);
    Ok(match name {
        "pentagon" => {
            let tri = binary(&["110", "011", "101"]);
            let k5 = binary(&["1000110010", "1100001001", "0110010100", "0011001010", "0001100101"]);
            CodeSpec {
                name: name.into(),
                group: FiniteAbelianGroup::trivial(),
                checks: Checks::Matrices([tri.clone(), k5, tri]),
                published: Some(Published { code_2d: Some(nkd(45, 7, 3)), code_3d: nkd(180, 8, 3), ccz_depth: Some(4) }),
            }
        }
        "lifted-toric-2" | "lifted-toric-3" => {
            let g = FiniteAbelianGroup::cyclic(2);
            let (h, published) = if name == "lifted-toric-2" {
                (
                    matrix(&g, &[&["1", "x"], &["1", "1"]]),
                    Published { code_2d: Some(nkd(16, 2, 4)), code_3d: nkd(48, 3, 4), ccz_depth: depth2 },
                )
            } else {
                (
                    matrix(&g, &[&["1", "x", "0"], &["0", "1", "1"], &["1", "0", "1"]]),
                    Published { code_2d: Some(nkd(36, 2, 6)), code_3d: nkd(162, 3, 6), ccz_depth: depth2 },
                )
            };
            CodeSpec { name: name.into(), group: g, checks: Checks::Matrices([h.clone(), h.clone(), h]), published: Some(published) }
        }
        "bt-27" => poly_spec(
            name,
            vec![3, 3],
            "x^2*y + x^2*y^2",
            "1 + x*y^2",
            "x + x^2*y",
            Some(Published { code_2d: Some(nkd(18, 2, 3)), code_3d: nkd(27, 3, 3), ccz_depth: depth2 }),
        ),
        "bt-45" => poly_spec(
            name,
            vec![3, 5],
            "x + y^2",
            "1 + x*y^2",
            "x + x*y^3",
            Some(Published { code_2d: Some(nkd(30, 2, 5)), code_3d: nkd(45, 3, 4), ccz_depth: depth2 }),
        ),
        "bt-81" => poly_spec(
            name,
            vec![3, 9],
            "x*y^3 + x^2*y",
            "1 + x*y^8",
            "x^2*y^4 + x^2*y^6",
            Some(Published { code_2d: Some(nkd(54, 2, 6)), code_3d: nkd(81, 3, 5), ccz_depth: depth2 }),
        ),
        "tt-210" => poly_spec(
            name,
            vec![2, 5, 7],
            "y^2*z^2 + x*y^2*z^4",
            "1 + x*y^2*z^3",
            "y*z + y^4*z^2",
            Some(Published { code_2d: Some(nkd(140, 2, 8)), code_3d: nkd(210, 3, 7), ccz_depth: depth2 }),
        ),
        "fig-s1" => poly_spec(
            name,
            vec![3, 3],
            "x*y^2 + x^2",
            "x^2 + x^2*y",
            "y^2 + x*y",
            Some(Published { code_2d: None, code_3d: nkd(27, 3, 3), ccz_depth: None }),
        ),
        other => return Err(Error::UnknownCode(other.to_string())),
    })
}

/// A 3D code together with its 2D component (product of the first two
/// classical codes) and the third classical code.
#[derive(Clone, Debug)]
pub struct CodePair {
    pub spec: CodeSpec,
    pub classical: [ClassicalCode; 3],
    pub complex_2d: ChainComplexR,
    pub complex_3d: ChainComplexR,
    pub code_2d: CssCode,
    pub code_3d: CssCode,
}

impl CodePair {
    pub fn build(spec: &CodeSpec) -> Result<Self> {
        let classical = spec.classical()?;
        let complex_2d = lp_complex(&classical[..2])?;
        let complex_3d = complex_2d.tensor_product(&classical[2].complex())?;
        let prov = |n: usize| Provenance::Lp {
            group: spec.group.clone(),
            checks: classical[..n].iter().map(|c| c.h.clone()).collect(),
        };
        let code_2d = code_from_r_complex(&complex_2d, prov(2))?;
        let mut code_3d = code_from_r_complex(&complex_3d, prov(3))?;
        if let Some([a, b, c]) = spec.elements()? {
            let direct = bt_direct(&a, &b, &c)?;
            if direct.hx != code_3d.hx || direct.hz != code_3d.hz || direct.mz != code_3d.mz {
                return Err(Error::Construction(format!("{}: direct tricycle form disagrees with the product", spec.name)));
            }
            code_3d.provenance = direct.provenance;
        }
        Ok(Self { spec: spec.clone(), classical, complex_2d, complex_3d, code_2d, code_3d })
    }

    pub fn load(name: &str) -> Result<Self> {
        Self::build(&registry_load(name)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name() {
        assert!(matches!(registry_load("nope"), Err(Error::UnknownCode(_))));
    }

    #[test]
    fn bt81_polynomials() {
        let s = registry_load("bt-81").unwrap();
        assert_eq!(s.group.orders(), &[3, 9]);
        let [a, _, c] = s.elements().unwrap().unwrap();
        assert_eq!(a.support(), vec![vec![1, 3], vec![2, 1]]);
        assert_eq!(c.support(), vec![vec![2, 4], vec![2, 6]]);
    }

    #[test]
    fn small_pairs_match_published_nk() {
        for name in ["bt-27", "lifted-toric-2", "fig-s1"] {
            let pair = CodePair::load(name).unwrap();
            let p = pair.spec.published.clone().unwrap();
            assert_eq!((pair.code_3d.n, pair.code_3d.k()), (p.code_3d.n, p.code_3d.k), "{name}");
            if let Some(p2) = p.code_2d {
                assert_eq!((pair.code_2d.n, pair.code_2d.k()), (p2.n, p2.k), "{name}");
            }
        }
    }
}
