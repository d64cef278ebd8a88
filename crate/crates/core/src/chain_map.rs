//! Chain maps between lifted-product complexes and the logical CNOT
//! pattern they induce between a 2D code and a 3D code.

use serde::{Deserialize, Serialize};

use crate::chain_complex::ChainComplexR;
use crate::codes::{code_from_r_complex, combine, logical_basis_any, pairing_matrix, CodePair, CssCode, LogicalBasis, Provenance};
use crate::error::{Error, Result};
use crate::f2_linalg::{inverse, rank, solve_in_span, BitMatrix, BitVec, RowReducer};
use crate::group_algebra::{GroupAlgebraElement, RMatrix};

#[derive(Clone, Debug)]
pub struct ChainMapR {
    pub source: ChainComplexR,
    pub target: ChainComplexR,
    /// components[i] = γ_i : source_i → target_i
    pub components: Vec<RMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Level {
    GroupAlgebra,
    Binary,
}

/// A square ∂_i γ_i = γ_{i-1} ∂_i that fails, with the first bad entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareFailure {
    pub level: Level,
    pub degree: usize,
    pub row: usize,
    pub col: usize,
}

impl ChainMapR {
    pub fn new(source: ChainComplexR, target: ChainComplexR, components: Vec<RMatrix>) -> Result<Self> {
        if source.group() != target.group() {
            return Err(Error::GroupMismatch(source.group().orders().to_vec(), target.group().orders().to_vec()));
        }
        if source.length() != target.length() || components.len() != source.length() + 1 {
            return Err(Error::Dimension(format!(
                "complexes of length {} and {} with {} components",
                source.length(),
                target.length(),
                components.len()
            )));
        }
        for (i, g) in components.iter().enumerate() {
            if g.shape() != (target.dim(i), source.dim(i)) {
                return Err(Error::Dimension(format!(
                    "γ_{i} is {:?}, needs {}x{}",
                    g.shape(),
                    target.dim(i),
                    source.dim(i)
                )));
            }
        }
        Ok(Self { source, target, components })
    }

    pub fn identity(c: &ChainComplexR) -> Self {
        let comps = c.dims().iter().map(|&d| RMatrix::identity(c.group(), d)).collect();
        Self { source: c.clone(), target: c.clone(), components: comps }
    }

    pub fn length(&self) -> usize {
        self.source.length()
    }

    pub fn gamma1_binary(&self) -> BitMatrix {
        self.components[1].binary_rep()
    }
}

/// Tensor product of a map of 2-complexes with a map of 1-complexes,
/// block diagonal over the sectors of the total complex.
pub fn tensor_chain_maps(gx: &ChainMapR, gy: &ChainMapR) -> Result<ChainMapR> {
    let g = gx.source.group();
    if gy.source.group() != g {
        return Err(Error::GroupMismatch(g.orders().to_vec(), gy.source.group().orders().to_vec()));
    }
    let source = gx.source.tensor_product(&gy.source)?;
    let target = gx.target.tensor_product(&gy.target)?;
    let (da, db) = (gx.length(), gy.length());
    let mut components = Vec::with_capacity(da + db + 1);
    for n in 0..=da + db {
        let pairs: Vec<(usize, usize)> = (n.saturating_sub(db)..=n.min(da)).rev().map(|i| (i, n - i)).collect();
        let blocks = pairs
            .iter()
            .map(|&(i, j)| gx.components[i].kron(&gy.components[j]))
            .collect::<Result<Vec<_>>>()?;
        let rd: Vec<usize> = pairs.iter().map(|&(i, j)| gx.target.dim(i) * gy.target.dim(j)).collect();
        let cd: Vec<usize> = pairs.iter().map(|&(i, j)| gx.source.dim(i) * gy.source.dim(j)).collect();
        let grid: Vec<Vec<Option<&RMatrix>>> =
            (0..pairs.len()).map(|r| (0..pairs.len()).map(|c| (r == c).then(|| &blocks[r])).collect()).collect();
        components.push(RMatrix::blocks(g, &rd, &cd, &grid)?);
    }
    ChainMapR::new(source, target, components)
}

/// Map of 1-complexes from the unit complex into C_C picking check row q
/// (1-based): γ₀ = e_q, γ₁ = 0.
pub fn row_selector(c: &ChainComplexR, q: usize) -> Result<ChainMapR> {
    let g = c.group();
    let r = c.dim(0);
    if q == 0 || q > r {
        return Err(Error::RowOutOfRange { q, max: r });
    }
    let mut e = RMatrix::zeros(g, r, 1);
    e.set(q - 1, 0, &GroupAlgebraElement::one(g))?;
    ChainMapR::new(ChainComplexR::unit(g), c.clone(), vec![e, RMatrix::zeros(g, c.dim(1), 0)])
}

/// Inclusion of the 2D component into the 3D code along check row q.
pub fn inclusion_chain_map(pair: &CodePair, q: usize) -> Result<ChainMapR> {
    let gx = ChainMapR::identity(&pair.complex_2d);
    let gy = row_selector(&pair.classical[2].complex(), q)?;
    tensor_chain_maps(&gx, &gy)
}

/// Rows of H_C whose unit vectors span coker(H_C), in order (1-based).
pub fn cokernel_rows(h: &BitMatrix) -> Vec<usize> {
    let mut red = RowReducer::from_matrix_rows(&h.transpose());
    (0..h.rows()).filter(|&q| red.insert(&BitVec::from_indices(h.rows(), [q]))).map(|q| q + 1).collect()
}

/// One inclusion per unit-vector generator of coker(H_C) in a binary
/// hypergraph product; their qubit images are disjoint.
pub fn hgp_slice_maps(pair: &CodePair) -> Result<Vec<ChainMapR>> {
    if pair.spec.group.size() != 1 {
        return Err(Error::InvalidArgument("slice maps need a binary hypergraph product".into()));
    }
    let rows = cokernel_rows(&pair.classical[2].binary());
    if rows.is_empty() {
        return Err(Error::InvalidArgument("coker(H_C) is trivial; no slices".into()));
    }
    rows.into_iter().map(|q| inclusion_chain_map(pair, q)).collect()
}

fn first_nonzero(m: &BitMatrix) -> Option<(usize, usize)> {
    m.nonzeros().first().copied()
}

/// Checks every square over R and again after binary lift.
pub fn verify_chain_map(g: &ChainMapR) -> Result<Option<SquareFailure>> {
    for i in 1..=g.length() {
        let lhs = g.target.boundary(i).mul(&g.components[i])?;
        let rhs = g.components[i - 1].mul(&g.source.boundary(i))?;
        let diff = lhs.add(&rhs)?;
        for r in 0..diff.rows() {
            for c in 0..diff.cols() {
                if !diff.get(r, c).is_zero() {
                    return Ok(Some(SquareFailure { level: Level::GroupAlgebra, degree: i, row: r, col: c }));
                }
            }
        }
    }
    for i in 1..=g.length() {
        let lhs = g.target.boundary(i).binary_rep().mul(&g.components[i].binary_rep())?;
        let rhs = g.components[i - 1].binary_rep().mul(&g.source.boundary(i).binary_rep())?;
        if let Some((row, col)) = first_nonzero(&lhs.add(&rhs)?) {
            return Ok(Some(SquareFailure { level: Level::Binary, degree: i, row, col }));
        }
    }
    Ok(None)
}

/// Target logical basis in which the induced map reads [I; 0].
#[derive(Clone, Debug)]
pub struct TransversalBasis {
    /// N with columns [γ̄₁ | completing unit vectors]; Z'' = Nᵀ Z, X'' = N⁻¹ X.
    pub change: BitMatrix,
    pub basis: LogicalBasis,
}

#[derive(Clone, Debug)]
pub struct LogicalCnotMap {
    pub gamma1_binary: BitMatrix,
    /// k_target × k_source.
    pub bar_gamma1: BitMatrix,
    pub rank: usize,
    pub injective: bool,
    pub transversal_basis: Option<TransversalBasis>,
}

impl LogicalCnotMap {
    /// (control qubit of the 3D code, target qubit of the 2D code).
    pub fn cnot_schedule(&self) -> Vec<(usize, usize)> {
        self.gamma1_binary.nonzeros()
    }

    pub fn physically_transversal(&self) -> bool {
        self.gamma1_binary.max_row_weight() <= 1 && self.gamma1_binary.max_col_weight() <= 1
    }

    /// Target logical qubits touched in the transversal basis.
    pub fn addressed(&self) -> usize {
        self.rank
    }

    pub fn require_injective(&self) -> Result<()> {
        if self.injective {
            Ok(())
        } else {
            Err(Error::NotInjective { rank: self.rank, k_source: self.bar_gamma1.cols() })
        }
    }
}

/// Logical action of γ₁ on Z logicals, expressed in the target basis
/// modulo target Z stabilizers.
pub fn induced_logical_map(
    gamma1: &BitMatrix,
    source: &LogicalBasis,
    target_code: &CssCode,
    target: &LogicalBasis,
) -> Result<LogicalCnotMap> {
    let kt = target.k();
    let ks = source.k();
    let gens = kt + target_code.hz.rows();
    let mut red = RowReducer::tracking(target_code.n, gens);
    for z in &target.z_reps {
        red.insert(z);
    }
    for r in 0..target_code.hz.rows() {
        red.insert(&target_code.hz.row(r));
    }
    let mut bar = BitMatrix::zeros(kt, ks);
    for (i, z) in source.z_reps.iter().enumerate() {
        let image = gamma1.mul_vec(z)?;
        if !target_code.hx.mul_vec(&image)?.is_zero() {
            return Err(Error::BrokenChainMap(format!("image of Z logical {i} is not a cycle")));
        }
        let coef = red
            .express(&image)
            .ok_or_else(|| Error::BrokenChainMap(format!("image of Z logical {i} is outside the cycle space")))?;
        for j in coef.ones().take_while(|&j| j < kt) {
            bar.set(j, i, true);
        }
    }
    let rk = rank(&bar);
    let injective = rk == ks;
    let transversal_basis = injective.then(|| transversal_form(&bar, target_code.n, target)).transpose()?;
    Ok(LogicalCnotMap { gamma1_binary: gamma1.clone(), bar_gamma1: bar, rank: rk, injective, transversal_basis })
}

fn transversal_form(bar: &BitMatrix, n: usize, target: &LogicalBasis) -> Result<TransversalBasis> {
    let kt = bar.rows();
    let mut cols: Vec<BitVec> = (0..bar.cols()).map(|c| bar.col(c)).collect();
    let mut red = RowReducer::from_rows(kt, &cols);
    for j in 0..kt {
        let e = BitVec::from_indices(kt, [j]);
        if red.insert(&e) {
            cols.push(e);
        }
    }
    let change = BitMatrix::from_cols(kt, &cols);
    let inv = inverse(&change).ok_or_else(|| Error::Dimension("basis completion is singular".into()))?;
    let z = combine(&change.transpose(), &target.z_reps, n);
    let x = combine(&inv, &target.x_reps, n);
    let pairing = pairing_matrix(&z, &x);
    Ok(TransversalBasis {
        change,
        basis: LogicalBasis { z_reps: z, x_reps: x, raw_pairing: target.raw_pairing.clone(), pairing },
    })
}

/// Both codes of an inclusion, with their logical bases.
#[derive(Clone, Debug)]
pub struct Inclusion {
    pub map: ChainMapR,
    pub source_code: CssCode,
    pub source_basis: LogicalBasis,
    pub target_basis: LogicalBasis,
    pub logical: LogicalCnotMap,
}

impl Inclusion {
    pub fn build(pair: &CodePair, q: usize) -> Result<Self> {
        let map = inclusion_chain_map(pair, q)?;
        if let Some(f) = verify_chain_map(&map)? {
            return Err(Error::BrokenChainMap(format!("{f:?}")));
        }
        let source_code = code_from_r_complex(
            &map.source,
            Provenance::Lp { group: pair.spec.group.clone(), checks: pair.classical[..2].iter().map(|c| c.h.clone()).collect() },
        )?;
        let source_basis = logical_basis_any(&pair.code_2d)?;
        let target_basis = logical_basis_any(&pair.code_3d)?;
        let logical = induced_logical_map(&map.gamma1_binary(), &source_basis, &pair.code_3d, &target_basis)?;
        Ok(Self { map, source_code, source_basis, target_basis, logical })
    }
}

/// u·a + v·b = c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealCertificate {
    pub u: GroupAlgebraElement,
    pub v: GroupAlgebraElement,
}

impl IdealCertificate {
    pub fn verify(&self, a: &GroupAlgebraElement, b: &GroupAlgebraElement, c: &GroupAlgebraElement) -> Result<bool> {
        Ok(self.u.mul(a)?.add(&self.v.mul(b)?)? == *c)
    }
}

#[derive(Clone, Debug)]
pub struct IdealMembership {
    pub certificate: Option<IdealCertificate>,
    pub odd_order: bool,
}

/// Solves [B(a) | B(b)]·(u; v) = vec(c) over F₂.
pub fn ideal_membership(
    a: &GroupAlgebraElement,
    b: &GroupAlgebraElement,
    c: &GroupAlgebraElement,
) -> Result<IdealMembership> {
    let g = a.group();
    for e in [b, c] {
        if e.group() != g {
            return Err(Error::GroupMismatch(g.orders().to_vec(), e.group().orders().to_vec()));
        }
    }
    let l = g.size();
    let m = BitMatrix::hstack(&[&a.binary_rep(), &b.binary_rep()])?;
    let rhs = BitVec::from_indices(l, c.indices());
    let certificate = match solve_in_span(&m, &rhs)? {
        Some(x) => {
            let u = GroupAlgebraElement::from_indices(g, x.ones().filter(|&i| i < l));
            let v = GroupAlgebraElement::from_indices(g, x.ones().filter(|&i| i >= l).map(|i| i - l));
            let cert = IdealCertificate { u, v };
            if !cert.verify(a, b, c)? {
                return Err(Error::Dimension("ideal certificate failed re-verification".into()));
            }
            Some(cert)
        }
        None => None,
    };
    Ok(IdealMembership { certificate, odd_order: l % 2 == 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{logical_basis, registry_load, CodeSpec, Checks};
    use crate::group_algebra::{parse_element, FiniteAbelianGroup};

    #[test]
    fn bt27_inclusion_is_first_sector() {
        let pair = CodePair::load("bt-27").unwrap();
        let map = inclusion_chain_map(&pair, 1).unwrap();
        assert_eq!(verify_chain_map(&map).unwrap(), None);
        let g1 = map.gamma1_binary();
        assert_eq!(g1.shape(), (27, 18));
        assert_eq!(g1.nonzeros(), (0..18).map(|i| (i, i)).collect::<Vec<_>>());
    }

    #[test]
    fn q_out_of_range() {
        let pair = CodePair::load("bt-27").unwrap();
        assert_eq!(inclusion_chain_map(&pair, 2).unwrap_err(), Error::RowOutOfRange { q: 2, max: 1 });
        assert!(inclusion_chain_map(&pair, 0).is_err());
    }

    #[test]
    fn identity_tensor_identity() {
        let pair = CodePair::load("bt-27").unwrap();
        let id = tensor_chain_maps(&ChainMapR::identity(&pair.complex_2d), &ChainMapR::identity(&pair.classical[2].complex()))
            .unwrap();
        assert_eq!(verify_chain_map(&id).unwrap(), None);
        for (i, c) in id.components.iter().enumerate() {
            assert_eq!(c.binary_rep(), BitMatrix::identity(pair.complex_3d.dim(i) * 9));
        }
    }

    #[test]
    fn perturbed_map_fails() {
        let pair = CodePair::load("bt-27").unwrap();
        let mut map = inclusion_chain_map(&pair, 1).unwrap();
        let g = map.source.group().clone();
        map.components[1].set(2, 0, &GroupAlgebraElement::one(&g)).unwrap();
        let f = verify_chain_map(&map).unwrap().unwrap();
        assert_eq!(f.level, Level::GroupAlgebra);
    }

    #[test]
    fn bt27_addresses_two_logicals() {
        let pair = CodePair::load("bt-27").unwrap();
        let inc = Inclusion::build(&pair, 1).unwrap();
        assert!(inc.logical.injective);
        assert_eq!(inc.logical.rank, 2);
        assert!(inc.logical.physically_transversal());
        // oracle: coefficients from pairing with normalized X reps
        for (i, z) in inc.source_basis.z_reps.iter().enumerate() {
            let image = inc.logical.gamma1_binary.mul_vec(z).unwrap();
            for (j, x) in inc.target_basis.x_reps.iter().enumerate() {
                assert_eq!(inc.logical.bar_gamma1.get(j, i), image.dot(x));
            }
        }
        let tb = inc.logical.transversal_basis.as_ref().unwrap();
        assert_eq!(tb.basis.pairing, BitMatrix::identity(3));
    }

    #[test]
    fn certificates() {
        let g = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        let p = |s: &str| parse_element(s, &g).unwrap();
        let (a, b, c) = (p("x^2*y + x^2*y^2"), p("1 + x*y^2"), p("x + x^2*y"));
        let m = ideal_membership(&a, &b, &c).unwrap();
        assert!(m.odd_order && m.certificate.is_some());
        assert!(IdealCertificate { u: p("1"), v: p("x") }.verify(&a, &b, &c).unwrap());
        assert!(!IdealCertificate { u: p("x^2"), v: p("x^2") }.verify(&a, &b, &c).unwrap());
    }

    #[test]
    fn counterexample_not_injective() {
        let spec = CodeSpec {
            name: "counter".into(),
            group: FiniteAbelianGroup::cyclic(3),
            checks: Checks::Polynomials { a: "1 + x".into(), b: "1 + x".into(), c: "1".into() },
            published: None,
        };
        let [a, b, c] = spec.elements().unwrap().unwrap();
        assert!(ideal_membership(&a, &b, &c).unwrap().certificate.is_none());
        let pair = CodePair::build(&spec).unwrap();
        let inc = Inclusion::build(&pair, 1).unwrap();
        assert!(inc.source_basis.k() > 0);
        assert!(!inc.logical.injective);
        assert!(matches!(inc.logical.require_injective(), Err(Error::NotInjective { .. })));
    }

    #[test]
    fn pentagon_single_slice_and_q_choices() {
        let pair = CodePair::load("pentagon").unwrap();
        assert_eq!(hgp_slice_maps(&pair).unwrap().len(), 1);
        let mut images = Vec::new();
        for q in 1..=3 {
            let map = inclusion_chain_map(&pair, q).unwrap();
            assert_eq!(verify_chain_map(&map).unwrap(), None);
            images.push(map.gamma1_binary());
        }
        assert!(images[0] != images[1] && images[1] != images[2]);
    }

    #[test]
    fn zero_hc_gives_full_cokernel() {
        let spec = registry_load("pentagon").unwrap();
        let Checks::Matrices([ha, hb, _]) = spec.checks.clone() else { unreachable!() };
        let g = FiniteAbelianGroup::trivial();
        let zero = RMatrix::zeros(&g, 2, 3);
        let pair = CodePair::build(&CodeSpec { checks: Checks::Matrices([ha, hb, zero]), ..spec }).unwrap();
        let maps = hgp_slice_maps(&pair).unwrap();
        assert_eq!(maps.len(), 2);
        let cols: Vec<Vec<usize>> = maps.iter().map(|m| m.gamma1_binary().nonzeros().iter().map(|p| p.0).collect()).collect();
        assert!(cols[0].iter().all(|r| !cols[1].contains(r)));
        let _ = logical_basis(&pair.code_3d).unwrap();
    }
}
