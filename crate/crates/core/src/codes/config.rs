//! JSON code descriptions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::construct::{bt_direct, build_lp, ClassicalCode};
use super::css::CssCode;
use super::registry::{Checks, CodeSpec};
use crate::error::{Error, Result};
use crate::group_algebra::{parse_element, FiniteAbelianGroup, RMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupConfig {
    pub orders: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Lp2,
    Lp3,
    Bt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeConfig {
    pub group: GroupConfig,
    pub construction: Construction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomials: Option<BTreeMap<String, String>>,
}

impl CodeConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn group(&self) -> Result<FiniteAbelianGroup> {
        FiniteAbelianGroup::new(self.group.orders.clone())
    }

    fn classical(&self, names: &[&str]) -> Result<Vec<ClassicalCode>> {
        let g = self.group()?;
        if let Some(ms) = &self.matrices {
            return names
                .iter()
                .map(|n| {
                    let rows = ms.get(*n).ok_or_else(|| Error::Format(format!("missing matrix `{n}`")))?;
                    Ok(ClassicalCode::new(RMatrix::parse(&g, rows)?))
                })
                .collect();
        }
        if let Some(ps) = &self.polynomials {
            return names
                .iter()
                .map(|n| {
                    let key = n.to_ascii_lowercase();
                    let p = ps.get(&key).ok_or_else(|| Error::Format(format!("missing polynomial `{key}`")))?;
                    Ok(ClassicalCode::from_element(&parse_element(p, &g)?))
                })
                .collect();
        }
        Err(Error::Format("config needs `matrices` or `polynomials`".into()))
    }

    pub fn build(&self) -> Result<CssCode> {
        match self.construction {
            Construction::Lp2 => build_lp(&self.classical(&["A", "B"])?),
            Construction::Lp3 => build_lp(&self.classical(&["A", "B", "C"])?),
            Construction::Bt => {
                let g = self.group()?;
                let ps = self.polynomials.as_ref().ok_or_else(|| Error::Format("bt construction needs `polynomials`".into()))?;
                let get = |k: &str| {
                    ps.get(k).ok_or_else(|| Error::Format(format!("missing polynomial `{k}`"))).and_then(|p| parse_element(p, &g))
                };
                bt_direct(&get("a")?, &get("b")?, &get("c")?)
            }
        }
    }

    /// A three-code spec usable for pair construction.
    pub fn to_spec(&self, name: &str) -> Result<CodeSpec> {
        let g = self.group()?;
        let checks = match (&self.polynomials, &self.matrices) {
            (Some(ps), _) => {
                let get = |k: &str| ps.get(k).cloned().ok_or_else(|| Error::Format(format!("missing polynomial `{k}`")));
                Checks::Polynomials { a: get("a")?, b: get("b")?, c: get("c")? }
            }
            (None, Some(_)) => {
                let [a, b, c]: [ClassicalCode; 3] =
                    self.classical(&["A", "B", "C"])?.try_into().map_err(|_| Error::Format("need three matrices".into()))?;
                Checks::Matrices([a.h, b.h, c.h])
            }
            (None, None) => return Err(Error::Format("config needs `matrices` or `polynomials`".into())),
        };
        Ok(CodeSpec { name: name.into(), group: g, checks, published: None })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifted_toric_config() {
        let text = r#"{"group":{"orders":[2]},"construction":"lp3",
            "matrices":{"A":[["1","x"],["1","1"]],"B":[["1","x"],["1","1"]],"C":[["1","x"],["1","1"]]}}"#;
        let code = CodeConfig::from_json(text).unwrap().build().unwrap();
        assert_eq!((code.n, code.k()), (48, 3));
    }

    #[test]
    fn bt_config() {
        let text = r#"{"group":{"orders":[3,3]},"construction":"bt",
            "polynomials":{"a":"x^2*y + x^2*y^2","b":"1 + x*y^2","c":"x + x^2*y"}}"#;
        let code = CodeConfig::from_json(text).unwrap().build().unwrap();
        assert_eq!((code.n, code.k()), (27, 3));
    }

    #[test]
    fn missing_parts_error() {
        let text = r#"{"group":{"orders":[3]},"construction":"lp2"}"#;
        assert!(CodeConfig::from_json(text).unwrap().build().is_err());
        assert!(CodeConfig::from_json("{").is_err());
    }
}
