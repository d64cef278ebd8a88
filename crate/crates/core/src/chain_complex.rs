//! Chain complexes over F₂[G] and over F₂, total complexes of tensor
//! products, binary lifting, and homology.

use crate::error::{Error, Result};
use crate::f2_linalg::{kernel_basis, quotient_reps, BitMatrix, BitVec, RowReducer};
use crate::group_algebra::{FiniteAbelianGroup, RMatrix};

/// One summand of a total-complex module: the factor degrees it came from
/// and its rank as a free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub degrees: Vec<usize>,
    pub dim: usize,
}

/// First place where ∂_{i-1}∂_i fails to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub degree: usize,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub struct ChainComplexR {
    group: FiniteAbelianGroup,
    dims: Vec<usize>,
    /// boundaries[i - 1] = ∂_i : C_i → C_{i-1}
    boundaries: Vec<RMatrix>,
    sectors: Vec<Vec<Sector>>,
}

fn conform(dims: &[usize], shapes: impl Iterator<Item = (usize, usize)>) -> Result<()> {
    for (i, (r, c)) in shapes.enumerate() {
        let deg = i + 1;
        if r != dims[deg - 1] || c != dims[deg] {
            return Err(Error::Dimension(format!(
                "boundary {deg} has shape {r}x{c}, modules need {}x{}",
                dims[deg - 1],
                dims[deg]
            )));
        }
    }
    Ok(())
}

impl ChainComplexR {
    /// `boundaries[i-1]` is ∂_i with shape dims[i-1] × dims[i].
    pub fn new(group: &FiniteAbelianGroup, dims: Vec<usize>, boundaries: Vec<RMatrix>) -> Result<Self> {
        if dims.is_empty() || boundaries.len() + 1 != dims.len() {
            return Err(Error::Dimension(format!("{} modules need {} boundaries", dims.len(), dims.len().saturating_sub(1))));
        }
        for b in &boundaries {
            if b.group() != group {
                return Err(Error::GroupMismatch(group.orders().to_vec(), b.group().orders().to_vec()));
            }
        }
        conform(&dims, boundaries.iter().map(RMatrix::shape))?;
        let sectors = dims.iter().enumerate().map(|(i, &d)| vec![Sector { degrees: vec![i], dim: d }]).collect();
        Ok(Self { group: group.clone(), dims, boundaries, sectors })
    }

    /// The 1-complex C₁ = R^cols → C₀ = R^rows given by `h`.
    pub fn from_map(h: &RMatrix) -> Self {
        Self::new(h.group(), vec![h.rows(), h.cols()], vec![h.clone()]).expect("single map always conforms")
    }

    /// 0 → R¹ concentrated in degree 0 (the unit for tensor products).
    pub fn unit(group: &FiniteAbelianGroup) -> Self {
        Self::new(group, vec![1, 0], vec![RMatrix::zeros(group, 1, 0)]).expect("conforming")
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn length(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn sectors(&self, i: usize) -> &[Sector] {
        self.sectors.get(i).map_or(&[], Vec::as_slice)
    }

    /// ∂_i, or a zero map of conforming shape outside 1..=D.
    pub fn boundary(&self, i: usize) -> RMatrix {
        if i >= 1 && i <= self.length() {
            self.boundaries[i - 1].clone()
        } else {
            let rows = if i == 0 { 0 } else { self.dim(i - 1) };
            RMatrix::zeros(&self.group, rows, self.dim(i))
        }
    }

    pub fn boundary_ref(&self, i: usize) -> &RMatrix {
        &self.boundaries[i - 1]
    }

    /// Checks ∂_{i-1}∂_i = 0 over R.
    pub fn validate(&self) -> Result<Option<Violation>> {
        conform(&self.dims, self.boundaries.iter().map(RMatrix::shape))?;
        for i in 2..=self.length() {
            let p = self.boundaries[i - 2].mul(&self.boundaries[i - 1])?;
            for r in 0..p.rows() {
                for c in 0..p.cols() {
                    if !p.get(r, c).is_zero() {
                        return Ok(Some(Violation { degree: i, row: r, col: c }));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Total complex of the double complex A ⊗_R B. Summands of degree n are
    /// ordered by descending A-degree.
    pub fn tensor_product(&self, other: &ChainComplexR) -> Result<ChainComplexR> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(self.group.orders().to_vec(), other.group.orders().to_vec()));
        }
        let (da, db) = (self.length(), other.length());
        let g = &self.group;
        let pairs = |n: usize| -> Vec<(usize, usize)> {
            let lo = n.saturating_sub(db);
            let hi = n.min(da);
            (lo..=hi).rev().map(|i| (i, n - i)).collect()
        };
        let block_dim = |(i, j): (usize, usize)| self.dim(i) * other.dim(j);
        let mut dims = Vec::new();
        let mut sectors = Vec::new();
        for n in 0..=da + db {
            let ps = pairs(n);
            dims.push(ps.iter().map(|&p| block_dim(p)).sum());
            let mut secs = Vec::new();
            for &(i, j) in &ps {
                let right = other.sectors(j);
                for sa in self.sectors(i) {
                    if right.len() == 1 {
                        let mut degrees = sa.degrees.clone();
                        degrees.extend(&right[0].degrees);
                        secs.push(Sector { degrees, dim: sa.dim * right[0].dim });
                    } else {
                        let mut degrees = sa.degrees.clone();
                        degrees.push(j);
                        secs.push(Sector { degrees, dim: sa.dim * other.dim(j) });
                    }
                }
            }
            sectors.push(secs);
        }
        let mut boundaries = Vec::new();
        for n in 1..=da + db {
            let (src, dst) = (pairs(n), pairs(n - 1));
            let mut cache = Vec::new();
            for &(i, j) in &src {
                let a_part = if i >= 1 {
                    Some(((i - 1, j), self.boundary(i).kron(&RMatrix::identity(g, other.dim(j)))?))
                } else {
                    None
                };
                let b_part = if j >= 1 {
                    Some(((i, j - 1), RMatrix::identity(g, self.dim(i)).kron(&other.boundary(j))?))
                } else {
                    None
                };
                cache.push((a_part, b_part));
            }
            let grid: Vec<Vec<Option<&RMatrix>>> = dst
                .iter()
                .map(|&t| {
                    cache
                        .iter()
                        .map(|(a, b)| {
                            a.as_ref().filter(|(k, _)| *k == t).map(|(_, m)| m).or(b
                                .as_ref()
                                .filter(|(k, _)| *k == t)
                                .map(|(_, m)| m))
                        })
                        .collect()
                })
                .collect();
            let rd: Vec<usize> = dst.iter().map(|&p| block_dim(p)).collect();
            let cd: Vec<usize> = src.iter().map(|&p| block_dim(p)).collect();
            boundaries.push(RMatrix::blocks(g, &rd, &cd, &grid)?);
        }
        Ok(ChainComplexR { group: g.clone(), dims, boundaries, sectors })
    }

    pub fn binary_lift(&self) -> ChainComplexF2 {
        let l = self.group.size();
        ChainComplexF2 {
            dims: self.dims.iter().map(|d| d * l).collect(),
            boundaries: self.boundaries.iter().map(RMatrix::binary_rep).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexF2 {
    dims: Vec<usize>,
    boundaries: Vec<BitMatrix>,
}

/// H_i = Z_i / B_i with explicit representatives and membership tests.
#[derive(Clone, Debug)]
pub struct HomologyData {
    pub degree: usize,
    pub dimension: usize,
    pub representatives: Vec<BitVec>,
    boundary_in: BitMatrix,
    boundaries: RowReducer,
}

impl HomologyData {
    pub fn is_cycle(&self, v: &BitVec) -> bool {
        self.boundary_in.mul_vec(v).map(|s| s.is_zero()).unwrap_or(false)
    }

    pub fn is_boundary(&self, v: &BitVec) -> bool {
        self.boundaries.contains(v)
    }

    pub fn boundary_space(&self) -> &RowReducer {
        &self.boundaries
    }
}

impl ChainComplexF2 {
    pub fn new(dims: Vec<usize>, boundaries: Vec<BitMatrix>) -> Result<Self> {
        if dims.is_empty() || boundaries.len() + 1 != dims.len() {
            return Err(Error::Dimension("module/boundary count mismatch".into()));
        }
        conform(&dims, boundaries.iter().map(BitMatrix::shape))?;
        Ok(Self { dims, boundaries })
    }

    pub fn length(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn boundary(&self, i: usize) -> BitMatrix {
        if i >= 1 && i <= self.length() {
            self.boundaries[i - 1].clone()
        } else {
            let rows = if i == 0 { 0 } else { self.dim(i - 1) };
            BitMatrix::zeros(rows, self.dim(i))
        }
    }

    pub fn validate(&self) -> Result<Option<Violation>> {
        conform(&self.dims, self.boundaries.iter().map(BitMatrix::shape))?;
        for i in 2..=self.length() {
            let p = self.boundaries[i - 2].mul(&self.boundaries[i - 1])?;
            if let Some(&(row, col)) = p.nonzeros().first() {
                return Ok(Some(Violation { degree: i, row, col }));
            }
        }
        Ok(None)
    }

    /// Cochain complex viewed as a chain complex: degrees reversed, maps transposed.
    pub fn dual(&self) -> ChainComplexF2 {
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let boundaries = self.boundaries.iter().rev().map(BitMatrix::transpose).collect();
        ChainComplexF2 { dims, boundaries }
    }

    pub fn homology(&self, i: usize) -> HomologyData {
        let d_in = self.boundary(i);
        let cycles = if i == 0 || i > self.length() {
            (0..self.dim(i)).map(|k| BitVec::from_indices(self.dim(i), [k])).collect()
        } else {
            kernel_basis(&d_in)
        };
        let d_out = self.boundary(i + 1);
        let bnd: Vec<BitVec> = d_out.transpose().row_vecs();
        let reducer = RowReducer::from_rows(self.dim(i), &bnd);
        let representatives = quotient_reps(&cycles, &bnd).expect("boundaries are cycles in a valid complex");
        HomologyData {
            degree: i,
            dimension: representatives.len(),
            representatives,
            boundary_in: d_in,
            boundaries: reducer,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algebra::parse_element;

    fn rep_complex() -> ChainComplexR {
        let g = FiniteAbelianGroup::cyclic(3);
        let h = RMatrix::from_elements(&g, &[vec![parse_element("1 + x", &g).unwrap()]]).unwrap();
        ChainComplexR::from_map(&h)
    }

    #[test]
    fn single_map_validates() {
        assert_eq!(rep_complex().validate().unwrap(), None);
    }

    #[test]
    fn identity_square_fails_at_two() {
        let g = FiniteAbelianGroup::trivial();
        let i = RMatrix::identity(&g, 2);
        let c = ChainComplexR::new(&g, vec![2, 2, 2], vec![i.clone(), i]).unwrap();
        assert_eq!(c.validate().unwrap(), Some(Violation { degree: 2, row: 0, col: 0 }));
    }

    #[test]
    fn repetition_lift_and_homology() {
        let f = rep_complex().binary_lift();
        let d = f.boundary(1);
        assert!((0..3).all(|r| d.row_weight(r) == 2));
        assert_eq!(f.homology(0).dimension, 1);
        assert_eq!(f.homology(1).dimension, 1);
    }

    #[test]
    fn exact_complex_has_no_homology() {
        let c = ChainComplexF2::new(vec![3, 3], vec![BitMatrix::identity(3)]).unwrap();
        assert_eq!(c.homology(0).dimension, 0);
        assert_eq!(c.homology(1).dimension, 0);
    }

    #[test]
    fn tensor_of_two_maps() {
        let g = FiniteAbelianGroup::cyclic(3);
        let ha = RMatrix::from_elements(&g, &[vec![parse_element("x + 1", &g).unwrap()]]).unwrap();
        let hb = RMatrix::from_elements(&g, &[vec![parse_element("x^2", &g).unwrap()]]).unwrap();
        let t = ChainComplexR::from_map(&ha).tensor_product(&ChainComplexR::from_map(&hb)).unwrap();
        assert_eq!(t.dims(), &[1, 2, 1]);
        assert_eq!(t.boundary(1), RMatrix::hstack(&g, &[&ha, &hb]).unwrap());
        assert_eq!(t.boundary(2), RMatrix::vstack(&g, &[&hb, &ha]).unwrap());
        assert_eq!(t.validate().unwrap(), None);
    }

    #[test]
    fn unit_appends_empty_degree() {
        let c = rep_complex();
        let t = c.tensor_product(&ChainComplexR::unit(c.group())).unwrap();
        assert_eq!(t.dims(), &[1, 1, 0]);
        assert_eq!(t.boundary(1), c.boundary(1));
    }
}
