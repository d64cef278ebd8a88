use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dimjump::codes::{Basis, CodePair};
use dimjump::sim::{
    memory_circuit, reference_observables, tableau_run, teleport_circuit, Direction, FaultSampler, NoiseModel, TeleportSetup,
};

const SHOTS: u64 = 1000;

fn bit(words: &[u64], i: usize, lane: usize) -> bool {
    words[i] >> lane & 1 == 1
}

/// Faults sampled for the frame simulator, replayed one shot at a time in
/// the tableau: detectors agree, observables agree after removing the
/// noiseless reference.
fn cross_check(circuit: &dimjump::sim::Circuit, seed: u64) {
    let sampler = FaultSampler::new(circuit);
    let reference = reference_observables(circuit).unwrap();
    let mut nontrivial = 0;
    for first in (0..SHOTS).step_by(64) {
        let lanes = (SHOTS - first).min(64) as usize;
        let batch = sampler.sample_batch(circuit, seed, first, lanes);
        for lane in 0..lanes {
            let shot = first + lane as u64;
            let faults: Vec<_> = sampler
                .shot_faults(seed, shot)
                .into_iter()
                .flat_map(|s| {
                    let site = &sampler.sites[s];
                    site.effects.iter().map(move |e| (site.op, e.clone()))
                })
                .collect();
            let mut rng = ChaCha8Rng::seed_from_u64(shot);
            let run = tableau_run(circuit, &mut rng, &faults).unwrap();
            for d in 0..circuit.num_detectors {
                assert_eq!(run.detectors[d], bit(&batch.detectors, d, lane), "shot {shot} detector {d}");
            }
            for o in 0..circuit.num_observables {
                assert_eq!(run.observables[o] ^ reference[o], bit(&batch.observables, o, lane), "shot {shot} observable {o}");
            }
            nontrivial += usize::from(run.detectors.iter().any(|&b| b));
        }
    }
    assert!(nontrivial > 0);
}

#[test]
fn tableau_and_frame_agree_on_noisy_memory() {
    let pair = CodePair::load("bt-27").unwrap();
    for (basis, noise) in [
        (Basis::X, NoiseModel::circuit_level(5e-3)),
        (Basis::Z, NoiseModel::phenomenological(5e-3)),
    ] {
        let c = memory_circuit(&pair.code_3d, basis, 2, &noise).unwrap();
        cross_check(&c, 11);
    }
}

#[test]
fn tableau_and_frame_agree_on_noisy_teleport() {
    let pair = CodePair::load("bt-27").unwrap();
    let setup = TeleportSetup::new(&pair, 1).unwrap();
    for dir in [Direction::To3D, Direction::To2D] {
        let c = teleport_circuit(&setup, dir, 1, &NoiseModel::circuit_level(5e-3)).unwrap();
        cross_check(&c, 3);
    }
}
