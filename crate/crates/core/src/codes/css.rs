use serde::{Deserialize, Serialize};

use crate::chain_complex::ChainComplexF2;
use crate::error::{Error, Result};
use crate::f2_linalg::{rank, BitMatrix};
use crate::group_algebra::{FiniteAbelianGroup, GroupAlgebraElement, RMatrix};

/// How a code was obtained; needed by layout and CCZ routines.
#[derive(Clone, Debug)]
pub enum Provenance {
    Lp { group: FiniteAbelianGroup, checks: Vec<RMatrix> },
    Bt { a: GroupAlgebraElement, b: GroupAlgebraElement, c: GroupAlgebraElement },
    Imported,
}

#[derive(Clone, Debug)]
pub struct CssCode {
    pub hx: BitMatrix,
    pub hz: BitMatrix,
    pub mz: Option<BitMatrix>,
    pub n: usize,
    /// (name, qubit count) for each summand of the qubit space, in order.
    pub sector_layout: Vec<(String, usize)>,
    pub provenance: Provenance,
}

impl CssCode {
    pub fn new(hx: BitMatrix, hz: BitMatrix, mz: Option<BitMatrix>) -> Result<Self> {
        let n = hx.cols();
        let code = Self { hx, hz, mz, n, sector_layout: vec![("data".into(), n)], provenance: Provenance::Imported };
        code.check()?;
        Ok(code)
    }

    /// Qubits on degree 1 of a 2- or 3-complex.
    pub fn from_complex(c: &ChainComplexF2) -> Result<Self> {
        let len = c.length();
        if !(2..=3).contains(&len) {
            return Err(Error::Construction(format!("a CSS code needs a 2- or 3-complex, got length {len}")));
        }
        let hx = c.boundary(1);
        let hz = c.boundary(2).transpose();
        let mz = (len == 3).then(|| c.boundary(3).transpose());
        Self::new(hx, hz, mz)
    }

    pub fn check(&self) -> Result<()> {
        if self.hz.cols() != self.n || self.hx.cols() != self.n {
            return Err(Error::Dimension(format!(
                "Hx has {} columns, Hz has {}, n = {}",
                self.hx.cols(),
                self.hz.cols(),
                self.n
            )));
        }
        if !self.hx.mul(&self.hz.transpose())?.is_zero() {
            return Err(Error::Construction("Hx·Hzᵀ ≠ 0".into()));
        }
        if let Some(mz) = &self.mz {
            if mz.cols() != self.hz.rows() || !mz.mul(&self.hz)?.is_zero() {
                return Err(Error::Construction("Mz·Hz ≠ 0".into()));
            }
        }
        Ok(())
    }

    pub fn rank_x(&self) -> usize {
        rank(&self.hx)
    }

    pub fn rank_z(&self) -> usize {
        rank(&self.hz)
    }

    pub fn k(&self) -> usize {
        self.n - self.rank_x() - self.rank_z()
    }

    pub fn as_complex(&self) -> ChainComplexF2 {
        let mut dims = vec![self.hx.rows(), self.n, self.hz.rows()];
        let mut maps = vec![self.hx.clone(), self.hz.transpose()];
        if let Some(mz) = &self.mz {
            dims.push(mz.rows());
            maps.push(mz.transpose());
        }
        ChainComplexF2::new(dims, maps).expect("CSS matrices conform")
    }

    pub fn sector_offset(&self, name: &str) -> Option<(usize, usize)> {
        let mut off = 0;
        for (s, len) in &self.sector_layout {
            if s == name {
                return Some((off, *len));
            }
            off += len;
        }
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    Exact(usize),
    Bounds { lower: usize, upper: Option<usize> },
    /// k = 0: no logical operators exist.
    Undefined,
}

impl Distance {
    pub fn upper(&self) -> Option<usize> {
        match *self {
            Distance::Exact(d) => Some(d),
            Distance::Bounds { upper, .. } => upper,
            Distance::Undefined => None,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            Distance::Exact(d) => Some(d),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        match *self {
            Distance::Exact(d) => d.to_string(),
            Distance::Bounds { lower, upper: Some(u) } if lower == u => u.to_string(),
            Distance::Bounds { lower, upper: Some(u) } => format!("{lower}..={u}"),
            Distance::Bounds { lower, upper: None } => format!(">={lower}"),
            Distance::Undefined => "-".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub d_z: Option<Distance>,
    pub d_x: Option<Distance>,
    pub max_row_weight_x: usize,
    pub max_col_weight_x: usize,
    pub max_row_weight_z: usize,
    pub max_col_weight_z: usize,
}

impl CodeParameters {
    pub fn max_stabilizer_weight(&self) -> usize {
        self.max_row_weight_x.max(self.max_row_weight_z)
    }
}

/// k and check weights; distances are filled in by the distance search.
pub fn compute_parameters(code: &CssCode) -> CodeParameters {
    CodeParameters {
        n: code.n,
        k: code.k(),
        d_z: None,
        d_x: None,
        max_row_weight_x: code.hx.max_row_weight(),
        max_col_weight_x: code.hx.max_col_weight(),
        max_row_weight_z: code.hz.max_row_weight(),
        max_col_weight_z: code.hz.max_col_weight(),
    }
}
