use rand::Rng;
use serde::{Deserialize, Serialize};

use super::circuit::{check_p, Circuit, Noise, Op, Pauli};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseMode {
    CodeCapacity,
    Phenomenological,
    CircuitLevel,
}

/// Where each rate enters: `p_data` on data qubits (once before readout
/// for code capacity, before every round for phenomenological noise),
/// `p_meas` on readout and preparation, `p_gate` after every CNOT.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub mode: NoiseMode,
    pub p_gate: f64,
    pub p_meas: f64,
    pub p_data: f64,
}

impl NoiseModel {
    pub fn noiseless() -> Self {
        Self { mode: NoiseMode::CodeCapacity, p_gate: 0.0, p_meas: 0.0, p_data: 0.0 }
    }

    pub fn code_capacity(p: f64) -> Self {
        Self { mode: NoiseMode::CodeCapacity, p_gate: 0.0, p_meas: 0.0, p_data: p }
    }

    pub fn phenomenological(p: f64) -> Self {
        Self { mode: NoiseMode::Phenomenological, p_gate: 0.0, p_meas: p, p_data: p }
    }

    pub fn circuit_level(p: f64) -> Self {
        Self { mode: NoiseMode::CircuitLevel, p_gate: p, p_meas: p, p_data: 0.0 }
    }

    pub fn from_mode(mode: NoiseMode, p: f64) -> Self {
        match mode {
            NoiseMode::CodeCapacity => Self::code_capacity(p),
            NoiseMode::Phenomenological => Self::phenomenological(p),
            NoiseMode::CircuitLevel => Self::circuit_level(p),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_p(self.p_gate)?;
        check_p(self.p_meas)?;
        check_p(self.p_data)
    }

    pub fn is_noiseless(&self) -> bool {
        self.p_gate == 0.0 && self.p_meas == 0.0 && self.p_data == 0.0
    }

    pub(crate) fn readout(&self) -> f64 {
        match self.mode {
            NoiseMode::CodeCapacity => 0.0,
            _ => self.p_meas,
        }
    }

    pub(crate) fn prep(&self) -> f64 {
        match self.mode {
            NoiseMode::CircuitLevel => self.p_meas,
            _ => 0.0,
        }
    }

    pub(crate) fn gate(&self) -> f64 {
        match self.mode {
            NoiseMode::CircuitLevel => self.p_gate,
            _ => 0.0,
        }
    }

    pub(crate) fn per_round_data(&self) -> f64 {
        match self.mode {
            NoiseMode::Phenomenological => self.p_data,
            _ => 0.0,
        }
    }

    pub(crate) fn final_data(&self) -> f64 {
        match self.mode {
            NoiseMode::CodeCapacity => self.p_data,
            _ => 0.0,
        }
    }
}

/// A single elementary fault, applied right after op `op` executes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Effect {
    Pauli(usize, Pauli),
    FlipRecord(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FaultSite {
    pub op: usize,
    pub p: f64,
    pub effects: Vec<Effect>,
}

const PAULIS: [Option<Pauli>; 4] = [None, Some(Pauli::X), Some(Pauli::Y), Some(Pauli::Z)];

/// Every independent fault the circuit's noise annotations allow.
pub fn fault_sites(circuit: &Circuit) -> Vec<FaultSite> {
    let offsets = circuit.record_offsets();
    let mut out = Vec::new();
    for (i, op) in circuit.ops.iter().enumerate() {
        match op {
            Op::Measure { qubits, flip_p, .. } if *flip_p > 0.0 => {
                let first = offsets[i].expect("measure op");
                for k in 0..qubits.len() {
                    out.push(FaultSite { op: i, p: *flip_p, effects: vec![Effect::FlipRecord(first + k)] });
                }
            }
            Op::Noise(n) => match n {
                Noise::XError { p, qubits } => {
                    out.extend(qubits.iter().map(|&q| FaultSite { op: i, p: *p, effects: vec![Effect::Pauli(q, Pauli::X)] }))
                }
                Noise::ZError { p, qubits } => {
                    out.extend(qubits.iter().map(|&q| FaultSite { op: i, p: *p, effects: vec![Effect::Pauli(q, Pauli::Z)] }))
                }
                Noise::Depolarize1 { p, qubits } => {
                    for &q in qubits {
                        for pa in [Pauli::X, Pauli::Y, Pauli::Z] {
                            out.push(FaultSite { op: i, p: p / 3.0, effects: vec![Effect::Pauli(q, pa)] });
                        }
                    }
                }
                Noise::Depolarize2 { p, pairs } => {
                    for &(a, b) in pairs {
                        for pa in PAULIS {
                            for pb in PAULIS {
                                if pa.is_none() && pb.is_none() {
                                    continue;
                                }
                                let effects = pa
                                    .map(|x| Effect::Pauli(a, x))
                                    .into_iter()
                                    .chain(pb.map(|x| Effect::Pauli(b, x)))
                                    .collect();
                                out.push(FaultSite { op: i, p: p / 15.0, effects });
                            }
                        }
                    }
                }
                Noise::CorrelatedZ { p, qubits } => out.push(FaultSite {
                    op: i,
                    p: *p,
                    effects: qubits.iter().map(|&q| Effect::Pauli(q, Pauli::Z)).collect(),
                }),
            },
            _ => {}
        }
    }
    out
}

/// Independent Bernoulli draw of each site.
pub fn sample_sites<'a, R: Rng>(sites: &'a [FaultSite], rng: &mut R) -> Vec<&'a FaultSite> {
    sites.iter().filter(|s| rng.gen_bool(s.p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::Basis;

    #[test]
    fn site_counts() {
        let mut c = Circuit::new();
        c.add_block("q", 4);
        c.noise(Noise::Depolarize2 { p: 0.15, pairs: vec![(0, 1), (2, 3)] });
        c.noise(Noise::CorrelatedZ { p: 0.1, qubits: vec![0, 1, 2] });
        c.measure(Basis::Z, vec![0, 1], 0.01);
        c.noise(Noise::XError { p: 0.0, qubits: vec![0] });
        let s = fault_sites(&c);
        assert_eq!(s.len(), 30 + 1 + 2);
        assert!((s[0].p - 0.01).abs() < 1e-15);
        assert_eq!(s[30].effects.len(), 3);
        assert_eq!(s[32].effects, vec![Effect::FlipRecord(1)]);
    }
}
