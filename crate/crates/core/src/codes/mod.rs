//! CSS codes from chain complexes: lifted-product constructions,
//! parameters, logical bases, distances, and the built-in registry.

mod config;
mod construct;
mod css;
mod distance;
mod layout;
mod logical;
mod registry;

pub use config::{CodeConfig, Construction, GroupConfig};
pub use construct::{bt_direct, build_lp, code_from_r_complex, lp_complex, ClassicalCode};
pub use css::{compute_parameters, CodeParameters, CssCode, Distance, Provenance};
pub use distance::{
    auto_weight_cap, binomial, candidates_up_to, distance_search, distance_search_with, is_logical,
    isd_low_weight_logical, code_distance, min_distance, tighten, Basis, CodeDistance, DistanceResult, CANDIDATE_BUDGET,
    DEFAULT_ISD_ITERATIONS,
};
pub use layout::{spacetime_cost, torus_layout, Site, TorusLayout};
pub use logical::{logical_basis, logical_basis_any, LogicalBasis};
pub(crate) use logical::{combine, pairing_matrix};
pub use registry::{registry_load, Checks, CodePair, CodeSpec, Nkd, Published, REGISTRY_NAMES, TABLE_NAMES};

use crate::error::{Error, Result};
use crate::f2_linalg::rank;

/// Künneth prediction of k for a binary hypergraph product Q_AB ⊗ C_C.
pub fn kunneth_k_hgp(qab: &CssCode, cc: &ClassicalCode) -> Result<usize> {
    if cc.group().size() != 1 {
        return Err(Error::InvalidArgument("Künneth count applies to binary (trivial-group) products".into()));
    }
    let h1_q = qab.k();
    let h0_q = qab.hx.rows() - rank(&qab.hx);
    let (h1_c, h0_c) = cc.k_and_k_transpose();
    Ok(h1_q * h0_c + h0_q * h1_c)
}
