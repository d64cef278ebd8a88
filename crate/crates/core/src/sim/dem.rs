use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::circuit::{Circuit, Pauli};
use super::frame::{frame_run, Injection};
use super::noise::{fault_sites, Effect};
use super::tableau::{tableau_run, PauliString};
use crate::error::{Error, Result};
use crate::f2_linalg::BitMatrix;

/// Merged fault class: everything with the same detector and observable
/// signature.
#[derive(Clone, Debug, PartialEq)]
pub struct DemFault {
    pub p: f64,
    pub detectors: Vec<usize>,
    pub observables: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectorModel {
    pub num_detectors: usize,
    pub num_observables: usize,
    pub faults: Vec<DemFault>,
    /// Elementary faults flipping an observable and no detector.
    pub undetectable: usize,
}

impl DetectorModel {
    /// Detectors × faults.
    pub fn check_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.num_detectors, self.faults.len());
        for (j, f) in self.faults.iter().enumerate() {
            f.detectors.iter().for_each(|&d| m.set(d, j, true));
        }
        m
    }

    /// Observables × faults.
    pub fn observable_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.num_observables, self.faults.len());
        for (j, f) in self.faults.iter().enumerate() {
            f.observables.iter().for_each(|&o| m.set(o, j, true));
        }
        m
    }

    pub fn priors(&self) -> Vec<f64> {
        self.faults.iter().map(|f| f.p).collect()
    }
}

fn pauli_effects(p: &PauliString) -> Vec<Effect> {
    let n = p.x.len();
    (0..n)
        .filter_map(|q| match (p.x.get(q), p.z.get(q)) {
            (true, false) => Some(Effect::Pauli(q, Pauli::X)),
            (true, true) => Some(Effect::Pauli(q, Pauli::Y)),
            (false, true) => Some(Effect::Pauli(q, Pauli::Z)),
            _ => None,
        })
        .collect()
}

/// Runs `groups` of effects through the frame simulator, 64 at a time,
/// returning the flipped detectors and observables of each.
fn propagate(circuit: &Circuit, groups: &[(usize, Vec<Effect>)]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::with_capacity(groups.len());
    for chunk in groups.chunks(64) {
        let inj: Vec<Injection> = chunk
            .iter()
            .enumerate()
            .flat_map(|(lane, (op, effects))| {
                effects.iter().map(move |e| Injection { op: *op, lanes: 1 << lane, effect: e.clone() })
            })
            .collect();
        let batch = frame_run(circuit, &inj);
        for lane in 0..chunk.len() {
            let pick = |words: &[u64]| (0..words.len()).filter(|&i| words[i] >> lane & 1 == 1).collect::<Vec<_>>();
            out.push((pick(&batch.detectors), pick(&batch.observables)));
        }
    }
    out
}

/// Exact check that every declared detector is 0 and every observable
/// fixed in the absence of faults: each random outcome's other branch is
/// pushed through the frame simulator.
pub fn check_determinism(circuit: &Circuit) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let run = tableau_run(circuit, &mut rng, &[])?;
    if let Some(d) = run.detectors.iter().position(|&b| b) {
        return Err(Error::NondeterministicDetector(d));
    }
    let groups: Vec<(usize, Vec<Effect>)> = run
        .random
        .iter()
        .map(|r| {
            let mut e = pauli_effects(&r.flip);
            e.extend(r.records.iter().map(|&k| Effect::FlipRecord(k)));
            (r.op, e)
        })
        .collect();
    for (dets, obs) in propagate(circuit, &groups) {
        if let Some(&d) = dets.first() {
            return Err(Error::NondeterministicDetector(d));
        }
        if let Some(&o) = obs.first() {
            return Err(Error::NondeterministicObservable(o));
        }
    }
    Ok(())
}

/// Noiseless values of the observables (fixed once determinism holds).
pub fn reference_observables(circuit: &Circuit) -> Result<Vec<bool>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    Ok(tableau_run(circuit, &mut rng, &[])?.observables)
}

pub fn build_detector_model(circuit: &Circuit) -> Result<DetectorModel> {
    circuit.validate()?;
    check_determinism(circuit)?;
    let sites = fault_sites(circuit);
    let groups: Vec<(usize, Vec<Effect>)> = sites.iter().map(|s| (s.op, s.effects.clone())).collect();
    let mut index: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
    let mut faults: Vec<DemFault> = Vec::new();
    let mut undetectable = 0;
    for (site, (dets, obs)) in sites.iter().zip(propagate(circuit, &groups)) {
        if dets.is_empty() {
            undetectable += usize::from(!obs.is_empty());
            continue;
        }
        match index.get(&(dets.clone(), obs.clone())) {
            Some(&j) => {
                let q = faults[j].p;
                faults[j].p = q * (1.0 - site.p) + site.p * (1.0 - q);
            }
            None => {
                index.insert((dets.clone(), obs.clone()), faults.len());
                faults.push(DemFault { p: site.p, detectors: dets, observables: obs });
            }
        }
    }
    Ok(DetectorModel { num_detectors: circuit.num_detectors, num_observables: circuit.num_observables, faults, undetectable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{Basis, CodePair};
    use crate::sim::extraction::memory_circuit;
    use crate::sim::NoiseModel;

    #[test]
    fn noiseless_memory_is_deterministic() {
        let pair = CodePair::load("bt-27").unwrap();
        let c = memory_circuit(&pair.code_3d, Basis::X, 3, &NoiseModel::noiseless()).unwrap();
        assert_eq!(c.num_detectors, 9 * 4);
        let dem = build_detector_model(&c).unwrap();
        assert!(dem.faults.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let run = tableau_run(&c, &mut rng, &[]).unwrap();
        assert!(run.detectors.iter().all(|&d| !d));
    }

    #[test]
    fn random_detector_flagged() {
        let mut c = Circuit::new();
        c.add_block("q", 2);
        c.reset(Basis::X, vec![0]);
        c.reset(Basis::Z, vec![1]);
        c.cnot(vec![(0, 1)]);
        let r = c.measure(Basis::Z, vec![0, 1], 0.0);
        c.detector(vec![r[0], r[1]]);
        assert!(check_determinism(&c).is_ok());
        c.detector(vec![r[0]]);
        assert!(matches!(check_determinism(&c), Err(Error::NondeterministicDetector(1))));
    }

    #[test]
    fn circuit_level_memory_has_no_undetectable_faults() {
        let pair = CodePair::load("bt-27").unwrap();
        let c = memory_circuit(&pair.code_3d, Basis::X, 2, &NoiseModel::circuit_level(1e-3)).unwrap();
        let dem = build_detector_model(&c).unwrap();
        assert_eq!(dem.undetectable, 0);
        assert!(dem.faults.iter().all(|f| !f.detectors.is_empty()));
    }
}
