//! Memory experiments under the three noise models, decoded with BP+OSD-0
//! against the detector error model.

use dimjump::codes::{Basis, CodePair};
use dimjump::sim::{memory_circuit, monte_carlo, Experiment, NoiseMode, NoiseModel};

fn main() -> dimjump::Result<()> {
    let pair = CodePair::load("bt-27")?;
    let code = &pair.code_3d;
    println!("mode,p,shots,failures,P,p_L");
    for mode in [NoiseMode::CodeCapacity, NoiseMode::Phenomenological, NoiseMode::CircuitLevel] {
        let rounds = if mode == NoiseMode::CodeCapacity { 1 } else { 3 };
        for p in [1e-3, 2e-3, 4e-3] {
            let c = memory_circuit(code, Basis::X, rounds, &NoiseModel::from_mode(mode, p))?;
            let exp = Experiment::new("memory", c, code.k(), Some(rounds))?;
            let r = monte_carlo(&exp, 100_000, 1)?;
            println!("{mode:?},{p},{},{},{:.3e},{:.3e}", r.shots, r.failures, r.p_fail, r.p_logical);
        }
    }
    Ok(())
}
