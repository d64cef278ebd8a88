//! Teleporting logical qubits between the 2D and 3D codes: exact logical
//! check, then a noisy circuit-level run.

use dimjump::codes::CodePair;
use dimjump::sim::{monte_carlo, teleport_circuit, verify_teleport_logical_action, Direction, Experiment, NoiseModel, TeleportSetup};

fn main() -> dimjump::Result<()> {
    let pair = CodePair::load("bt-27")?;
    let setup = TeleportSetup::new(&pair, 1)?;
    for dir in [Direction::To3D, Direction::To2D] {
        let report = verify_teleport_logical_action(&setup, dir)?;
        println!("{dir:?}: {} checks, {} mismatches", report.checks, report.mismatches.len());

        let c = teleport_circuit(&setup, dir, 3, &NoiseModel::circuit_level(1e-3))?;
        println!("  {} qubits, {} CNOTs, {} detectors", c.num_qubits, c.cnot_count(), c.num_detectors);
        let exp = Experiment::new("teleport", c, setup.k(), None)?;
        let r = monte_carlo(&exp, 20_000, 5)?;
        println!("  P = {:.2e} [{:.2e}, {:.2e}], p_L = {:.2e}", r.p_fail, r.ci.0, r.ci.1, r.p_logical);
    }
    Ok(())
}
