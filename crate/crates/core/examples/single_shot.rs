//! Single-shot repair of a noisy syndrome round through the meta-checks.

use dimjump::codes::CodePair;
use dimjump::f2_linalg::BitVec;
use dimjump::sim::{single_shot_monte_carlo, single_shot_repair, NoiseModel, SingleShotDecoder, DEFAULT_PRIOR};

fn main() -> dimjump::Result<()> {
    let pair = CodePair::load("bt-27")?;
    let code = &pair.code_3d;
    let dec = SingleShotDecoder::new(code, DEFAULT_PRIOR)?;

    let error = BitVec::from_indices(code.n, [5]);
    let mut observed = code.hz.mul_vec(&error)?;
    observed.flip(11);
    let r = single_shot_repair(&dec, &observed)?;
    println!("syndrome error at {:?}", r.syndrome_error.ones().collect::<Vec<_>>());
    println!("fix on qubits {:?}", r.fix.ones().collect::<Vec<_>>());

    for p in [5e-3, 1e-2, 2e-2] {
        let res = single_shot_monte_carlo(code, &NoiseModel::phenomenological(p), 50_000, 3)?;
        println!("p = {p}: P = {:.3e}", res.p_fail);
    }
    Ok(())
}
