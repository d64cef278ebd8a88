//! Pauli-frame propagation, 64 independent lanes per word.

use super::circuit::{Circuit, Op};
use super::noise::Effect;
use crate::codes::Basis;

/// An effect applied after op `op` in every lane set in `lanes`.
#[derive(Clone, Debug, PartialEq)]
pub struct Injection {
    pub op: usize,
    pub lanes: u64,
    pub effect: Effect,
}

/// Flips relative to the noiseless reference, one bit per lane.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrameBatch {
    pub records: Vec<u64>,
    pub detectors: Vec<u64>,
    pub observables: Vec<u64>,
}

fn parity(words: &[u64], idx: &[usize]) -> u64 {
    idx.iter().fold(0, |acc, &r| acc ^ words[r])
}

pub fn frame_run(circuit: &Circuit, injections: &[Injection]) -> FrameBatch {
    let n = circuit.num_qubits;
    let mut x = vec![0u64; n];
    let mut z = vec![0u64; n];
    let mut out = FrameBatch {
        records: Vec::with_capacity(circuit.num_measurements),
        detectors: Vec::with_capacity(circuit.num_detectors),
        observables: vec![0; circuit.num_observables],
    };
    let mut inj: Vec<&Injection> = injections.iter().collect();
    inj.sort_by_key(|i| i.op);
    let mut next = 0;
    for (i, op) in circuit.ops.iter().enumerate() {
        match op {
            Op::Reset { qubits, .. } => {
                for &q in qubits {
                    x[q] = 0;
                    z[q] = 0;
                }
            }
            Op::Cnot(pairs) => {
                for &(c, t) in pairs {
                    x[t] ^= x[c];
                    z[c] ^= z[t];
                }
            }
            Op::Measure { basis, qubits, .. } => {
                let src = if *basis == Basis::Z { &x } else { &z };
                out.records.extend(qubits.iter().map(|&q| src[q]));
            }
            Op::Apply { .. } | Op::Noise(_) => {}
            Op::Feedback { pauli, targets, records } => {
                let flip = parity(&out.records, records);
                let dst = if *pauli == Basis::X { &mut x } else { &mut z };
                targets.iter().for_each(|&q| dst[q] ^= flip);
            }
            Op::Detector(rs) => out.detectors.push(parity(&out.records, rs)),
            Op::Observable(k, rs) => out.observables[*k] ^= parity(&out.records, rs),
        }
        while next < inj.len() && inj[next].op == i {
            let j = inj[next];
            match j.effect {
                Effect::Pauli(q, p) => {
                    let (px, pz) = p.bits();
                    if px {
                        x[q] ^= j.lanes;
                    }
                    if pz {
                        z[q] ^= j.lanes;
                    }
                }
                Effect::FlipRecord(r) => out.records[r] ^= j.lanes,
            }
            next += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::circuit::Pauli;

    #[test]
    fn cnot_propagation() {
        let mut c = Circuit::new();
        c.add_block("q", 2);
        c.reset(Basis::Z, vec![0, 1]);
        c.cnot(vec![(0, 1)]);
        let mz = c.measure(Basis::Z, vec![0, 1], 0.0);
        let mx = c.measure(Basis::X, vec![0, 1], 0.0);
        let _ = (mz, mx);
        let inj = [
            Injection { op: 0, lanes: 0b01, effect: Effect::Pauli(0, Pauli::X) },
            Injection { op: 0, lanes: 0b10, effect: Effect::Pauli(1, Pauli::Z) },
        ];
        let b = frame_run(&c, &inj);
        // lane 0: X on control reaches both; lane 1: Z on target reaches both
        assert_eq!(b.records, vec![0b01, 0b01, 0b10, 0b10]);
    }
}
