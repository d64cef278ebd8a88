//! Planar embedding of tricycle codes on a triangular-lattice torus.

use serde::{Deserialize, Serialize};

use super::css::{CssCode, Provenance};
use crate::error::{Error, Result};
use crate::f2_linalg::BitMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Site {
    pub qubit: usize,
    pub sector: usize,
    pub i: usize,
    pub j: usize,
    /// Coordinates in the (u, v) lattice basis.
    pub lattice: (f64, f64),
    /// Cartesian coordinates with u = (1, 0), v = (1/2, √3/2).
    pub xy: (f64, f64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorusLayout {
    pub lx: usize,
    pub ly: usize,
    pub sites: Vec<Site>,
}

/// Sublattice s is offset by (s/3, s/3) in lattice units.
pub fn torus_layout(code: &CssCode) -> Result<TorusLayout> {
    let Provenance::Bt { a, .. } = &code.provenance else {
        return Err(Error::Construction("torus layout needs a tricycle code built from three polynomials".into()));
    };
    let orders = a.group().orders();
    let (lx, ly) = match orders {
        [lx, ly] => (*lx, *ly),
        [lx] => (*lx, 1),
        [] => (1, 1),
        _ => return Err(Error::Construction(format!("torus layout needs a bivariate group, got {orders:?}"))),
    };
    let l = lx * ly;
    if code.n != 3 * l {
        return Err(Error::Construction(format!("expected {} qubits, code has {}", 3 * l, code.n)));
    }
    let h = 3f64.sqrt() / 2.0;
    let sites = (0..3)
        .flat_map(|s| (0..lx).flat_map(move |i| (0..ly).map(move |j| (s, i, j))))
        .enumerate()
        .map(|(qubit, (sector, i, j))| {
            let off = sector as f64 / 3.0;
            let (u, v) = (i as f64 + off, j as f64 + off);
            Site { qubit, sector, i, j, lattice: (u, v), xy: (u + v / 2.0, v * h) }
        })
        .collect();
    Ok(TorusLayout { lx, ly, sites })
}

impl TorusLayout {
    fn shift_qubit(&self, q: usize, di: usize, dj: usize) -> usize {
        let l = self.lx * self.ly;
        let (s, g) = (q / l, q % l);
        let (i, j) = (g / self.ly, g % self.ly);
        s * l + ((i + di) % self.lx) * self.ly + (j + dj) % self.ly
    }

    /// Shifting row p·l + g by (di, dj) must give row p·l + g·t, bitwise.
    fn invariant_under(&self, m: &BitMatrix, di: usize, dj: usize) -> bool {
        let l = self.lx * self.ly;
        (0..m.rows()).all(|r| {
            let (p, g) = (r / l, r % l);
            let (i, j) = (g / self.ly, g % self.ly);
            let target = p * l + ((i + di) % self.lx) * self.ly + (j + dj) % self.ly;
            let mut shifted: Vec<usize> = m.row_ones(r).map(|q| self.shift_qubit(q, di, dj)).collect();
            shifted.sort_unstable();
            shifted == m.row_ones(target).collect::<Vec<_>>()
        })
    }

    /// Every X check (and every Z check within its group) maps to another
    /// check under unit translations.
    pub fn translation_invariant(&self, code: &CssCode) -> bool {
        [(1, 0), (0, 1)].iter().all(|&(di, dj)| self.invariant_under(&code.hx, di, dj) && self.invariant_under(&code.hz, di, dj))
    }

    /// Support of the X check at the identity; all others are translates.
    pub fn x_check_at_identity(&self, code: &CssCode) -> Vec<usize> {
        code.hx.row_ones(0).collect()
    }
}

/// Space-time overhead per logical qubit.
pub fn spacetime_cost(
    n: usize,
    num_x_checks: usize,
    num_z_checks: usize,
    k: usize,
    success_rate: f64,
    max_stab_weight: usize,
) -> Result<u64> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("n and k must be positive".into()));
    }
    if !(success_rate > 0.0 && success_rate <= 1.0) {
        return Err(Error::InvalidArgument(format!("success rate {success_rate} outside (0, 1]")));
    }
    let qubits = (n + num_x_checks + num_z_checks) as f64;
    Ok((qubits / (k as f64 * success_rate) * (max_stab_weight as f64 + 2.0)).round() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cost_examples() {
        assert_eq!(spacetime_cost(27, 9, 27, 3, 0.704, 6).unwrap(), 239);
        assert_eq!(spacetime_cost(81, 27, 81, 3, 0.349, 6).unwrap(), 1444);
        assert_eq!(spacetime_cost(1, 0, 0, 1, 1.0, 0).unwrap(), 2);
        assert!(spacetime_cost(1, 0, 0, 0, 1.0, 0).is_err());
        assert!(spacetime_cost(1, 0, 0, 1, 0.0, 0).is_err());
        assert!(spacetime_cost(1, 0, 0, 1, 1.5, 0).is_err());
    }
}
