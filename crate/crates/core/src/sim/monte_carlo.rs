use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::circuit::Circuit;
use super::dem::{build_detector_model, DetectorModel};
use super::decoder::BpOsd;
use super::frame::{frame_run, FrameBatch, Injection};
use super::noise::{fault_sites, FaultSite};
use crate::error::{Error, Result};
use crate::f2_linalg::BitVec;

/// A noisy circuit together with its detector model.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub name: String,
    pub circuit: Circuit,
    pub dem: DetectorModel,
    /// Logical qubits used for normalization.
    pub k: usize,
    /// Code cycles used for normalization, when per-round rates are wanted.
    pub rounds: Option<usize>,
}

impl Experiment {
    pub fn new(name: &str, circuit: Circuit, k: usize, rounds: Option<usize>) -> Result<Self> {
        let dem = build_detector_model(&circuit)?;
        Ok(Self { name: name.into(), circuit, dem, k, rounds })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloResult {
    pub shots: u64,
    pub failures: u64,
    #[serde(rename = "P")]
    pub p_fail: f64,
    #[serde(rename = "p_L")]
    pub p_logical: f64,
    /// 95% Wilson interval on P.
    pub ci: (f64, f64),
    pub seed: u64,
}

impl MonteCarloResult {
    pub fn new(shots: u64, failures: u64, k: usize, rounds: Option<usize>, seed: u64) -> Self {
        let p_fail = failures as f64 / shots as f64;
        let norm = (k.max(1) * rounds.unwrap_or(1).max(1)) as f64;
        let p_logical = 1.0 - (1.0 - p_fail).powf(1.0 / norm);
        Self { shots, failures, p_fail, p_logical, ci: wilson(failures, shots), seed }
    }
}

fn wilson(f: u64, n: u64) -> (f64, f64) {
    let z = 1.96f64;
    let n = n as f64;
    let p = f as f64 / n;
    let den = 1.0 + z * z / n;
    let mid = (p + z * z / (2.0 * n)) / den;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / den;
    ((mid - half).max(0.0), (mid + half).min(1.0))
}

/// Fault sites grouped by probability for geometric skipping.
#[derive(Clone, Debug)]
pub struct FaultSampler {
    pub sites: Vec<FaultSite>,
    buckets: Vec<(f64, Vec<usize>)>,
}

impl FaultSampler {
    pub fn new(circuit: &Circuit) -> Self {
        let sites = fault_sites(circuit);
        let mut by_p: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, s) in sites.iter().enumerate() {
            by_p.entry(s.p.to_bits()).or_default().push(i);
        }
        let buckets = by_p.into_iter().map(|(b, v)| (f64::from_bits(b), v)).collect();
        Self { sites, buckets }
    }

    /// Sites that fire in shot `shot`; each shot has its own RNG stream.
    pub fn shot_faults(&self, seed: u64, shot: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(shot);
        let mut out = Vec::new();
        for (p, idx) in &self.buckets {
            if *p >= 1.0 {
                out.extend(idx);
                continue;
            }
            let lnq = (1.0 - p).ln();
            let mut i = 0usize;
            loop {
                let u: f64 = rng.gen();
                let skip = ((1.0 - u).ln() / lnq).floor();
                if skip >= (idx.len() - i) as f64 {
                    break;
                }
                i += skip as usize;
                out.push(idx[i]);
                i += 1;
            }
        }
        out
    }

    /// Frame flips for up to 64 consecutive shots starting at `first`.
    pub fn sample_batch(&self, circuit: &Circuit, seed: u64, first: u64, lanes: usize) -> FrameBatch {
        let mut inj = Vec::new();
        for lane in 0..lanes {
            for s in self.shot_faults(seed, first + lane as u64) {
                let site = &self.sites[s];
                inj.extend(site.effects.iter().map(|e| Injection { op: site.op, lanes: 1 << lane, effect: e.clone() }));
            }
        }
        frame_run(circuit, &inj)
    }
}

pub(crate) fn lane_bits(words: &[u64], lane: usize) -> BitVec {
    BitVec::from_indices(words.len(), (0..words.len()).filter(|&i| words[i] >> lane & 1 == 1))
}

/// Frame sampling against the detector model, BP+OSD-0 decoding, and a
/// failure whenever the predicted observable flips differ from the true
/// ones. Deterministic in `seed` regardless of thread count.
pub fn monte_carlo(exp: &Experiment, shots: u64, seed: u64) -> Result<MonteCarloResult> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    if exp.circuit.num_observables > 64 {
        return Err(Error::InvalidArgument("at most 64 observables supported".into()));
    }
    let sampler = FaultSampler::new(&exp.circuit);
    let decoder = BpOsd::new(exp.dem.check_matrix(), &exp.dem.priors())?;
    let obs_matrix = exp.dem.observable_matrix();
    let predict = |syn: &BitVec| -> Result<u64> {
        let e = decoder.decode(syn)?.error;
        let flips = obs_matrix.mul_vec(&e)?;
        Ok(flips.ones().fold(0u64, |m, o| m | 1 << o))
    };
    let batches = shots.div_ceil(64);
    let failures = (0..batches)
        .into_par_iter()
        .try_fold(
            || (0u64, HashMap::<BitVec, u64>::new()),
            |(mut fails, mut cache), b| -> Result<_> {
                let first = b * 64;
                let lanes = (shots - first).min(64) as usize;
                let batch = sampler.sample_batch(&exp.circuit, seed, first, lanes);
                for lane in 0..lanes {
                    let syn = lane_bits(&batch.detectors, lane);
                    let actual = batch.observables.iter().enumerate().fold(0u64, |m, (o, w)| m | (w >> lane & 1) << o);
                    let predicted = if syn.is_zero() {
                        0
                    } else if let Some(&p) = cache.get(&syn) {
                        p
                    } else {
                        let p = predict(&syn)?;
                        cache.insert(syn, p);
                        p
                    };
                    fails += u64::from(predicted != actual);
                }
                Ok((fails, cache))
            },
        )
        .map(|r| r.map(|(f, _)| f))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(MonteCarloResult::new(shots, failures, exp.k, exp.rounds, seed))
}
