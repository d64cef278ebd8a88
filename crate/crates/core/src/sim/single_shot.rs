//! One noisy round of Z checks, repaired through the meta-checks Mz.

use rayon::prelude::*;

use super::circuit::Circuit;
use super::decoder::BpOsd;
use super::extraction::{memory_circuit, prep_noise, Checks, Extractor, Registers};
use super::monte_carlo::{lane_bits, Experiment, FaultSampler, MonteCarloResult};
use super::noise::NoiseModel;
use super::Noise;
use crate::codes::{logical_basis, Basis, CssCode, LogicalBasis};
use crate::error::{Error, Result};
use crate::f2_linalg::{solve_in_span, BitMatrix, BitVec};

/// Prior used for both decoding stages when none is given.
pub const DEFAULT_PRIOR: f64 = 0.01;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repair {
    pub repaired: BitVec,
    pub syndrome_error: BitVec,
    /// X pattern with Hz·fix = repaired.
    pub fix: BitVec,
}

#[derive(Clone, Debug)]
pub struct SingleShotDecoder {
    hz: BitMatrix,
    meta: BpOsd,
    data: BpOsd,
}

impl SingleShotDecoder {
    pub fn new(code: &CssCode, prior: f64) -> Result<Self> {
        let mz = code.mz.clone().ok_or_else(|| Error::InvalidArgument("code has no meta-checks".into()))?;
        let meta = BpOsd::new(mz, &vec![prior; code.hz.rows()])?;
        let data = BpOsd::new(code.hz.clone(), &vec![prior; code.n])?;
        Ok(Self { hz: code.hz.clone(), meta, data })
    }

    /// Fix for a syndrome already known to lie in im(Hz).
    pub fn decode_data(&self, syndrome: &BitVec) -> Result<BitVec> {
        Ok(self.data.decode(syndrome)?.error)
    }
}

/// Meta-decodes `observed` (one round of Z-check outcomes), then finds an
/// X fix for the repaired syndrome.
pub fn single_shot_repair(dec: &SingleShotDecoder, observed: &BitVec) -> Result<Repair> {
    let meta_syndrome = dec.meta.check_matrix().mul_vec(observed)?;
    let syndrome_error = dec.meta.decode(&meta_syndrome)?.error;
    let repaired = observed.xor(&syndrome_error);
    if solve_in_span(&dec.hz, &repaired)?.is_none() {
        return Err(Error::MetaDecodingFailed);
    }
    let fix = dec.decode_data(&repaired)?;
    debug_assert_eq!(dec.hz.mul_vec(&fix)?, repaired);
    Ok(Repair { repaired, syndrome_error, fix })
}

/// True when `residual` (an X pattern with zero syndrome) flips a Z logical.
pub fn flips_logical(lb: &LogicalBasis, residual: &BitVec) -> bool {
    lb.z_reps.iter().any(|z| z.dot(residual))
}

/// Z-basis preparation, data X noise, one noisy round of Z checks and a
/// noiseless transversal Z readout. Returns the circuit and the records of
/// the check round and of the readout.
pub fn single_shot_circuit(code: &CssCode, noise: &NoiseModel) -> Result<(Circuit, Vec<usize>, Vec<usize>)> {
    noise.validate()?;
    let mut c = Circuit::new();
    let reg = Registers::allocate(&mut c, "", code);
    let data = reg.data_qubits(code.n);
    c.reset(Basis::Z, data.clone());
    prep_noise(&mut c, Basis::Z, data.clone(), noise.prep());
    c.noise(Noise::XError { p: noise.p_data, qubits: data.clone() });
    let round = Extractor::new(code).append(&mut c, reg, Checks::Z, noise);
    let fin = c.measure(Basis::Z, data, 0.0);
    Ok((c, round.z, fin))
}

/// Sampled single-shot protocol: meta-decode the noisy round, apply the
/// fix, then decode the residual ideally and count logical flips. Failed
/// meta-decoding counts as a failure.
pub fn single_shot_monte_carlo(code: &CssCode, noise: &NoiseModel, shots: u64, seed: u64) -> Result<MonteCarloResult> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let lb = logical_basis(code)?;
    let prior = [noise.p_data, noise.p_meas].into_iter().fold(0.0, f64::max);
    let dec = SingleShotDecoder::new(code, if prior > 0.0 { prior } else { DEFAULT_PRIOR })?;
    let (c, round, fin) = single_shot_circuit(code, noise)?;
    let sampler = FaultSampler::new(&c);
    let failures = (0..shots.div_ceil(64))
        .into_par_iter()
        .map(|b| -> Result<u64> {
            let first = b * 64;
            let lanes = (shots - first).min(64) as usize;
            let batch = sampler.sample_batch(&c, seed, first, lanes);
            let mut fails = 0;
            for lane in 0..lanes {
                let all = lane_bits(&batch.records, lane);
                let observed = BitVec::from_indices(round.len(), (0..round.len()).filter(|&i| all.get(round[i])));
                let error = BitVec::from_indices(fin.len(), (0..fin.len()).filter(|&i| all.get(fin[i])));
                let failed = match single_shot_repair(&dec, &observed) {
                    Err(Error::MetaDecodingFailed) => true,
                    Err(e) => return Err(e),
                    Ok(r) => {
                        let residual = error.xor(&r.fix);
                        let clean = residual.xor(&dec.decode_data(&code.hz.mul_vec(&residual)?)?);
                        flips_logical(&lb, &clean)
                    }
                };
                fails += u64::from(failed);
            }
            Ok(fails)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(MonteCarloResult::new(shots, failures, lb.k(), Some(1), seed))
}

/// The same round decoded jointly with a final readout through the
/// detector model.
pub fn single_shot_dem_experiment(code: &CssCode, noise: &NoiseModel) -> Result<Experiment> {
    let c = memory_circuit(code, Basis::Z, 1, noise)?;
    Experiment::new("single_shot", c, logical_basis(code)?.k(), Some(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodePair;

    #[test]
    fn zero_and_idempotent() {
        let pair = CodePair::load("bt-27").unwrap();
        let code = &pair.code_3d;
        let dec = SingleShotDecoder::new(code, DEFAULT_PRIOR).unwrap();
        let r = single_shot_repair(&dec, &BitVec::zeros(code.hz.rows())).unwrap();
        assert!(r.repaired.is_zero() && r.fix.is_zero());
        let observed = code.hz.mul_vec(&BitVec::from_indices(code.n, [4])).unwrap().xor(&BitVec::from_indices(code.hz.rows(), [2]));
        let r = single_shot_repair(&dec, &observed).unwrap();
        let again = single_shot_repair(&dec, &r.repaired).unwrap();
        assert_eq!(again.repaired, r.repaired);
        assert!(again.syndrome_error.is_zero());
    }

    #[test]
    fn noiseless_never_fails() {
        let pair = CodePair::load("bt-27").unwrap();
        let r = single_shot_monte_carlo(&pair.code_3d, &NoiseModel::noiseless(), 256, 1).unwrap();
        assert_eq!(r.failures, 0);
        let exp = single_shot_dem_experiment(&pair.code_3d, &NoiseModel::phenomenological(0.0)).unwrap();
        assert!(exp.dem.faults.is_empty());
    }

    #[test]
    fn missing_meta_checks() {
        let code = CssCode::new(BitMatrix::zeros(0, 3), BitMatrix::from_strs(&["110", "011"]), None).unwrap();
        assert!(SingleShotDecoder::new(&code, 0.01).is_err());
    }
}
