//! Physical CCZ tensors across three blocks of a 3D code.

mod cup;
mod equivariant;
mod tensor;

pub use cup::{cup_depth_bound, cup_product_ccz};
pub use equivariant::{equivariant_solve, EquivariantCcz, SolveOutcome, DEFAULT_BUDGET};
pub use tensor::{
    induced_logical_tensor, propagated_error_channel, verify_cup_validity, CczAnalysis, CczTensor, CorrelatedZ,
    CupViolation, LogicalCczTensor,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{logical_basis, CodePair};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn analyse(pair: &CodePair, delta: &CczTensor) -> CczAnalysis {
        let lb = logical_basis(&pair.code_3d).unwrap();
        let c = &pair.code_3d;
        induced_logical_tensor(delta, [c, c, c], [&lb, &lb, &lb]).unwrap()
    }

    #[test]
    fn zero_tensor_is_valid_and_trivial() {
        let pair = CodePair::load("bt-27").unwrap();
        let a = analyse(&pair, &CczTensor::zero([27; 3]));
        assert!(!a.nontrivial);
        assert_eq!(a.depth, 0);
        let ch = propagated_error_channel(&CczTensor::zero([27; 3]), 0.0).unwrap();
        assert_eq!(ch.len(), 81);
        assert!(ch.iter().all(|c| c.support.len() == 1 && c.p == 0.0));
    }

    #[test]
    fn cup_product_depths() {
        for (name, depth) in [("bt-27", 2), ("lifted-toric-2", 2), ("pentagon", 4)] {
            let pair = CodePair::load(name).unwrap();
            let delta = cup_product_ccz(&pair).unwrap();
            let a = analyse(&pair, &delta);
            assert!(a.nontrivial, "{name}");
            assert_eq!(a.depth, depth, "{name}");
            assert_eq!(cup_depth_bound(&pair).unwrap(), depth, "{name}");
        }
    }

    #[test]
    fn solver_bt27() {
        let pair = CodePair::load("bt-27").unwrap();
        let out = equivariant_solve(&pair.code_3d, 2, DEFAULT_BUDGET).unwrap();
        let (eq, delta) = out.solution.expect("solution");
        assert_eq!(eq.expand().unwrap(), delta);
        let a = analyse(&pair, &delta);
        assert!(a.nontrivial);
        assert!(a.depth <= 2);
        let ch = propagated_error_channel(&delta, 0.01).unwrap();
        if a.depth == 2 {
            assert!(ch.iter().all(|c| c.support.len() == 5));
        }
    }

    #[test]
    fn random_tensors_rejected() {
        let pair = CodePair::load("bt-27").unwrap();
        let c = &pair.code_3d;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rejected = (0..20)
            .filter(|_| {
                let t = (0..100).map(|_| [rng.gen_range(0..27), rng.gen_range(0..27), rng.gen_range(0..27)]);
                let d = CczTensor::from_triples([27; 3], t).unwrap();
                verify_cup_validity(&d, [c, c, c]).unwrap().is_some()
            })
            .count();
        assert_eq!(rejected, 20);
    }

    #[test]
    fn text_and_json_roundtrip() {
        let d = CczTensor::from_triples([4, 5, 6], [[0, 1, 2], [3, 4, 5], [0, 1, 2], [1, 1, 1]]).unwrap();
        assert_eq!(d.triples, vec![[1, 1, 1], [3, 4, 5]]);
        assert_eq!(CczTensor::from_text(&d.to_text(), None).unwrap(), d);
        assert_eq!(CczTensor::from_json(&d.to_json().unwrap()).unwrap(), d);
        assert!(CczTensor::from_text("0 1\n", Some([2, 2, 2])).is_err());
        assert!(CczTensor::from_text("0 1 9\n", Some([2, 2, 2])).is_err());
        assert!(CczTensor::from_text("0 1 1\n", None).is_err());
    }
}
