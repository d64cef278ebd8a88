//! One-bit teleportation between a 3D code and its 2D component through the
//! homomorphic CNOT layer.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::circuit::Circuit;
use super::extraction::{check_rows, data_noise, prep_noise, Checks, Extractor, Registers};
use super::noise::NoiseModel;
use super::tableau::{tableau_run, PauliString};
use super::Noise;
use crate::chain_map::Inclusion;
use crate::codes::{Basis, CodePair, CssCode, LogicalBasis};
use crate::error::{Error, Result};
use crate::f2_linalg::{column_space_lift, solve_in_span, BitMatrix, BitVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// 2D source, 3D destination.
    To3D,
    To2D,
}

/// Everything a teleport circuit needs: the CNOT pattern (3D control,
/// 2D target), both codes, the 2D logical basis and the 3D basis in which
/// the induced map is [I; 0].
#[derive(Clone, Debug)]
pub struct TeleportSetup {
    pub gamma1: BitMatrix,
    pub code_2d: CssCode,
    pub code_3d: CssCode,
    pub source: LogicalBasis,
    pub dest: LogicalBasis,
}

impl TeleportSetup {
    pub fn new(pair: &CodePair, q: usize) -> Result<Self> {
        let inc = Inclusion::build(pair, q)?;
        inc.logical.require_injective()?;
        let tb = inc.logical.transversal_basis.clone().expect("injective map has a transversal basis");
        Ok(Self {
            gamma1: inc.logical.gamma1_binary.clone(),
            code_2d: pair.code_2d.clone(),
            code_3d: pair.code_3d.clone(),
            source: inc.source_basis,
            dest: tb.basis,
        })
    }

    /// Logical qubits carried across.
    pub fn k(&self) -> usize {
        self.source.k()
    }

    fn cnots(&self, r2: Registers, r3: Registers) -> Vec<(usize, usize)> {
        self.gamma1.nonzeros().into_iter().map(|(i, j)| (r3.data + i, r2.data + j)).collect()
    }
}

fn parity_records(support: &BitVec, recs: &[usize]) -> Vec<usize> {
    support.ones().map(|q| recs[q]).collect()
}

/// Noiseless preparation of a code state whose `basis` logicals are all +1:
/// transversal reset, one round of the opposite checks, and a Pauli
/// correction lifted from their outcomes.
pub fn prepare_code_state(c: &mut Circuit, reg: Registers, code: &CssCode, basis: Basis) -> Result<()> {
    let data = reg.data_qubits(code.n);
    c.reset(basis, data);
    let ext = Extractor::new(code);
    let (which, h) = match basis {
        Basis::Z => (Checks::X, &code.hx),
        Basis::X => (Checks::Z, &code.hz),
    };
    let recs = ext.append(c, reg, which, &NoiseModel::noiseless());
    let recs = if basis == Basis::Z { recs.x } else { recs.z };
    for (row, v) in column_space_lift(h)? {
        c.feedback(basis, v.ones().map(|q| reg.data + q).collect(), vec![recs[row]]);
    }
    Ok(())
}

fn solve_each(a_t: &BitMatrix, targets: impl Iterator<Item = BitVec>) -> Result<Vec<BitVec>> {
    targets
        .map(|b| solve_in_span(a_t, &b)?.ok_or_else(|| Error::BrokenChainMap("stabilizer image outside the stabilizer space".into())))
        .collect()
}

/// Noisy teleport experiment with detectors and observables.
///
/// To3D: 2D block in |+⟩ with `rounds_2d` extraction rounds, 3D block in
/// |+⟩ with one round, CNOT layer, transversal Z readout of the 2D block
/// with X feedback on the 3D block, final X readout of the 3D block.
/// Observables are the teleported X logicals. To2D mirrors this in the
/// other basis, with the 2D rounds after the CNOT.
pub fn teleport_circuit(setup: &TeleportSetup, dir: Direction, rounds_2d: usize, noise: &NoiseModel) -> Result<Circuit> {
    noise.validate()?;
    let (c2, c3) = (&setup.code_2d, &setup.code_3d);
    let (e2, e3) = (Extractor::new(c2), Extractor::new(c3));
    let mut c = Circuit::new();
    let r2 = Registers::allocate(&mut c, "2d_", c2);
    let r3 = Registers::allocate(&mut c, "3d_", c3);
    let (d2, d3) = (r2.data_qubits(c2.n), r3.data_qubits(c3.n));
    let k = setup.k();
    let gamma_t = setup.gamma1.transpose();
    match dir {
        Direction::To3D => {
            if rounds_2d == 0 {
                return Err(Error::InvalidArgument("teleport to 3D needs at least one 2D round".into()));
            }
            c.reset(Basis::X, d2.clone());
            prep_noise(&mut c, Basis::X, d2.clone(), noise.prep());
            let mut prev2: Option<Vec<usize>> = None;
            for _ in 0..rounds_2d {
                data_noise(&mut c, &d2, noise.per_round_data());
                let recs = e2.append(&mut c, r2, Checks::Both, noise);
                for (s, &r) in recs.x.iter().enumerate() {
                    let mut d = vec![r];
                    d.extend(prev2.as_ref().map(|p| p[s]));
                    c.detector(d);
                }
                prev2 = Some(recs.x);
            }
            let prev2 = prev2.expect("at least one round");
            c.reset(Basis::X, d3.clone());
            prep_noise(&mut c, Basis::X, d3.clone(), noise.prep());
            data_noise(&mut c, &d3, noise.per_round_data());
            let recs3 = e3.append(&mut c, r3, Checks::Both, noise);
            for &r in &recs3.x {
                c.detector(vec![r]);
            }
            c.noise(Noise::ZError { p: noise.final_data(), qubits: d2.clone() });
            let pairs = setup.cnots(r2, r3);
            c.cnot(pairs.clone());
            c.noise(Noise::Depolarize2 { p: noise.gate(), pairs });
            let m2 = c.measure(Basis::Z, d2, noise.readout());
            for i in 0..k {
                c.feedback(
                    Basis::X,
                    setup.dest.x_reps[i].ones().map(|q| r3.data + q).collect(),
                    parity_records(&setup.source.z_reps[i], &m2),
                );
            }
            let fin = c.measure(Basis::X, d3, noise.readout());
            let hx2_t = c2.hx.transpose();
            let rows3 = check_rows(&c3.hx);
            let ts = solve_each(&hx2_t, (0..c3.hx.rows()).map(|s| gamma_t.mul_vec(&c3.hx.row(s)).expect("shape")))?;
            for (s, support) in rows3.iter().enumerate() {
                let mut d: Vec<usize> = support.iter().map(|&q| fin[q]).collect();
                d.push(recs3.x[s]);
                d.extend(ts[s].ones().map(|t| prev2[t]));
                c.detector(d);
            }
            let tl = solve_each(
                &hx2_t,
                (0..k).map(|i| gamma_t.mul_vec(&setup.dest.x_reps[i]).expect("shape").xor(&setup.source.x_reps[i])),
            )?;
            for i in 0..k {
                let mut o = parity_records(&setup.dest.x_reps[i], &fin);
                o.extend(tl[i].ones().map(|t| prev2[t]));
                c.observable(i, o);
            }
        }
        Direction::To2D => {
            c.reset(Basis::Z, d3.clone());
            prep_noise(&mut c, Basis::Z, d3.clone(), noise.prep());
            data_noise(&mut c, &d3, noise.per_round_data());
            let recs3 = e3.append(&mut c, r3, Checks::Both, noise);
            for &r in &recs3.z {
                c.detector(vec![r]);
            }
            c.reset(Basis::Z, d2.clone());
            prep_noise(&mut c, Basis::Z, d2.clone(), noise.prep());
            c.noise(Noise::XError { p: noise.final_data(), qubits: d3.clone() });
            let pairs = setup.cnots(r2, r3);
            c.cnot(pairs.clone());
            c.noise(Noise::Depolarize2 { p: noise.gate(), pairs });
            let m3 = c.measure(Basis::X, d3, noise.readout());
            for i in 0..k {
                c.feedback(
                    Basis::Z,
                    setup.source.z_reps[i].ones().map(|q| r2.data + q).collect(),
                    parity_records(&setup.dest.x_reps[i], &m3),
                );
            }
            let hz3_t = c3.hz.transpose();
            let ts = solve_each(&hz3_t, (0..c2.hz.rows()).map(|s| setup.gamma1.mul_vec(&c2.hz.row(s)).expect("shape")))?;
            let mut prev2: Option<Vec<usize>> = None;
            let link = |s: usize| ts[s].ones().map(|t| recs3.z[t]).collect::<Vec<_>>();
            for _ in 0..rounds_2d {
                data_noise(&mut c, &d2, noise.per_round_data());
                let recs = e2.append(&mut c, r2, Checks::Both, noise);
                for (s, &r) in recs.z.iter().enumerate() {
                    let mut d = vec![r];
                    match &prev2 {
                        Some(p) => d.push(p[s]),
                        None => d.extend(link(s)),
                    }
                    c.detector(d);
                }
                prev2 = Some(recs.z);
            }
            let fin = c.measure(Basis::Z, d2, noise.readout());
            for (s, support) in check_rows(&c2.hz).iter().enumerate() {
                let mut d: Vec<usize> = support.iter().map(|&q| fin[q]).collect();
                match &prev2 {
                    Some(p) => d.push(p[s]),
                    None => d.extend(link(s)),
                }
                c.detector(d);
            }
            let tl = solve_each(
                &hz3_t,
                (0..k).map(|i| setup.gamma1.mul_vec(&setup.source.z_reps[i]).expect("shape").xor(&setup.dest.z_reps[i])),
            )?;
            for i in 0..k {
                let mut o = parity_records(&setup.source.z_reps[i], &fin);
                o.extend(tl[i].ones().map(|t| recs3.z[t]));
                c.observable(i, o);
            }
        }
    }
    Ok(c)
}

/// One failed expectation of the exact logical-action check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub basis: Basis,
    /// Source logical qubit flipped in the input state, if any.
    pub flipped: Option<usize>,
    pub logical: usize,
    pub expected: bool,
    /// None when the destination operator is not even stabilized.
    pub found: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TeleportReport {
    pub direction: Direction,
    pub checks: usize,
    pub mismatches: Vec<Mismatch>,
}

impl TeleportReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Noiseless teleport of every basis state with at most one logical flip,
/// in both bases, checking the destination logicals with the tableau.
pub fn verify_teleport_logical_action(setup: &TeleportSetup, dir: Direction) -> Result<TeleportReport> {
    let k = setup.k();
    let (c2, c3) = (&setup.code_2d, &setup.code_3d);
    let mut report = TeleportReport { direction: dir, checks: 0, mismatches: Vec::new() };
    for basis in [Basis::Z, Basis::X] {
        for flipped in std::iter::once(None).chain((0..k).map(Some)) {
            let mut c = Circuit::new();
            let r2 = Registers::allocate(&mut c, "2d_", c2);
            let r3 = Registers::allocate(&mut c, "3d_", c3);
            let (src_reg, src_code, src_basis, dst_reg, dst_basis) = match dir {
                Direction::To3D => (r2, c2, &setup.source, r3, &setup.dest),
                Direction::To2D => (r3, c3, &setup.dest, r2, &setup.source),
            };
            prepare_code_state(&mut c, src_reg, src_code, basis)?;
            if let Some(j) = flipped {
                // flip the j-th logical of `basis` with its conjugate partner
                let rep = if basis == Basis::Z { &src_basis.x_reps[j] } else { &src_basis.z_reps[j] };
                c.apply(basis.other(), rep.ones().map(|q| src_reg.data + q).collect());
            }
            match dir {
                Direction::To3D => prepare_code_state(&mut c, r3, c3, Basis::X)?,
                Direction::To2D => prepare_code_state(&mut c, r2, c2, Basis::Z)?,
            }
            c.cnot(setup.cnots(r2, r3));
            let (meas_basis, fb_basis) = match dir {
                Direction::To3D => (Basis::Z, Basis::X),
                Direction::To2D => (Basis::X, Basis::Z),
            };
            let m = c.measure(meas_basis, src_reg.data_qubits(src_code.n), 0.0);
            for i in 0..k {
                let (fix, read) = match dir {
                    Direction::To3D => (&setup.dest.x_reps[i], &setup.source.z_reps[i]),
                    Direction::To2D => (&setup.source.z_reps[i], &setup.dest.x_reps[i]),
                };
                c.feedback(fb_basis, fix.ones().map(|q| dst_reg.data + q).collect(), parity_records(read, &m));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let mut run = tableau_run(&c, &mut rng, &[])?;
            for i in 0..k {
                let rep = if basis == Basis::Z { &dst_basis.z_reps[i] } else { &dst_basis.x_reps[i] };
                let op = PauliString::embed(basis, c.num_qubits, dst_reg.data, rep);
                let found = run.tableau.peek(&op);
                let expected = flipped == Some(i);
                report.checks += 1;
                if found != Some(expected) {
                    report.mismatches.push(Mismatch { basis, flipped, logical: i, expected, found });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::dem::check_determinism;
    use crate::sim::{build_detector_model, monte_carlo, Experiment, Op};

    #[test]
    fn bt27_layer_and_bases() {
        let pair = CodePair::load("bt-27").unwrap();
        let s = TeleportSetup::new(&pair, 1).unwrap();
        let c = teleport_circuit(&s, Direction::To3D, 2, &NoiseModel::noiseless()).unwrap();
        let layers: Vec<usize> = c.ops.iter().filter_map(|o| if let Op::Cnot(p) = o { Some(p.len()) } else { None }).collect();
        assert!(layers.contains(&18));
        c.validate().unwrap();
        let c = teleport_circuit(&s, Direction::To2D, 2, &NoiseModel::noiseless()).unwrap();
        let d3 = c.block("3d_data").unwrap().clone();
        let d2 = c.block("2d_data").unwrap().clone();
        assert!(c.ops.iter().any(|o| matches!(o, Op::Reset { basis: Basis::Z, qubits } if qubits[0] == d2.offset)));
        assert!(c.ops.iter().any(|o| matches!(o, Op::Measure { basis: Basis::X, qubits, .. } if qubits[0] == d3.offset)));
    }

    #[test]
    fn bt27_noiseless_deterministic_and_exact() {
        let pair = CodePair::load("bt-27").unwrap();
        let s = TeleportSetup::new(&pair, 1).unwrap();
        for dir in [Direction::To3D, Direction::To2D] {
            let c = teleport_circuit(&s, dir, 3, &NoiseModel::noiseless()).unwrap();
            check_determinism(&c).unwrap();
            let r = verify_teleport_logical_action(&s, dir).unwrap();
            assert!(r.ok(), "{:?}", r.mismatches);
            assert_eq!(r.checks, 2 * 3 * 2);
        }
        let c = teleport_circuit(&s, Direction::To3D, 3, &NoiseModel::circuit_level(0.0)).unwrap();
        let exp = Experiment::new("tp", c, s.k(), None).unwrap();
        assert_eq!(monte_carlo(&exp, 256, 3).unwrap().failures, 0);
    }

    #[test]
    fn noisy_teleport_models_build() {
        let pair = CodePair::load("bt-27").unwrap();
        let s = TeleportSetup::new(&pair, 1).unwrap();
        for dir in [Direction::To3D, Direction::To2D] {
            let c = teleport_circuit(&s, dir, 2, &NoiseModel::circuit_level(1e-3)).unwrap();
            let dem = build_detector_model(&c).unwrap();
            assert!(!dem.faults.is_empty());
        }
    }

    #[test]
    fn corrupted_layer_detected() {
        let pair = CodePair::load("bt-27").unwrap();
        let mut s = TeleportSetup::new(&pair, 1).unwrap();
        let (i, j) = s.gamma1.nonzeros()[0];
        s.gamma1.set(i, j, false);
        let bad = [Direction::To3D, Direction::To2D]
            .into_iter()
            .any(|d| !verify_teleport_logical_action(&s, d).unwrap().ok());
        assert!(bad);
    }
}
