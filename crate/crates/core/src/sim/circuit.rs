use serde::{Deserialize, Serialize};

use crate::codes::Basis;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }
}

impl From<Basis> for Pauli {
    fn from(b: Basis) -> Self {
        match b {
            Basis::X => Pauli::X,
            Basis::Z => Pauli::Z,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Noise {
    XError { p: f64, qubits: Vec<usize> },
    ZError { p: f64, qubits: Vec<usize> },
    Depolarize1 { p: f64, qubits: Vec<usize> },
    /// Uniform over the 15 nontrivial two-qubit Paulis.
    Depolarize2 { p: f64, pairs: Vec<(usize, usize)> },
    /// One joint Z on all listed qubits.
    CorrelatedZ { p: f64, qubits: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Op {
    Reset { basis: Basis, qubits: Vec<usize> },
    /// One layer; no qubit appears twice.
    Cnot(Vec<(usize, usize)>),
    /// Appends one record per qubit; `flip_p` is the readout error rate.
    Measure { basis: Basis, qubits: Vec<usize>, flip_p: f64 },
    /// Unconditional Pauli.
    Apply { pauli: Basis, qubits: Vec<usize> },
    /// Applies `pauli` to `targets` when the records have odd parity.
    Feedback { pauli: Basis, targets: Vec<usize>, records: Vec<usize> },
    Noise(Noise),
    Detector(Vec<usize>),
    Observable(usize, Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub name: String,
    pub offset: usize,
    pub size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub num_qubits: usize,
    pub blocks: Vec<Block>,
    pub ops: Vec<Op>,
    pub num_measurements: usize,
    pub num_detectors: usize,
    pub num_observables: usize,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reserves `size` fresh qubits; returns the offset.
    pub fn add_block(&mut self, name: &str, size: usize) -> usize {
        let offset = self.num_qubits;
        self.blocks.push(Block { name: name.into(), offset, size });
        self.num_qubits += size;
        offset
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    pub fn reset(&mut self, basis: Basis, qubits: Vec<usize>) {
        if !qubits.is_empty() {
            self.ops.push(Op::Reset { basis, qubits });
        }
    }

    pub fn cnot(&mut self, pairs: Vec<(usize, usize)>) {
        if !pairs.is_empty() {
            self.ops.push(Op::Cnot(pairs));
        }
    }

    pub fn measure(&mut self, basis: Basis, qubits: Vec<usize>, flip_p: f64) -> Vec<usize> {
        let first = self.num_measurements;
        self.num_measurements += qubits.len();
        if !qubits.is_empty() {
            self.ops.push(Op::Measure { basis, qubits, flip_p });
        }
        (first..self.num_measurements).collect()
    }

    pub fn apply(&mut self, pauli: Basis, qubits: Vec<usize>) {
        if !qubits.is_empty() {
            self.ops.push(Op::Apply { pauli, qubits });
        }
    }

    pub fn feedback(&mut self, pauli: Basis, targets: Vec<usize>, records: Vec<usize>) {
        if !targets.is_empty() && !records.is_empty() {
            self.ops.push(Op::Feedback { pauli, targets, records });
        }
    }

    pub fn noise(&mut self, n: Noise) {
        let (p, empty) = match &n {
            Noise::XError { p, qubits }
            | Noise::ZError { p, qubits }
            | Noise::Depolarize1 { p, qubits }
            | Noise::CorrelatedZ { p, qubits } => (*p, qubits.is_empty()),
            Noise::Depolarize2 { p, pairs } => (*p, pairs.is_empty()),
        };
        if p > 0.0 && !empty {
            self.ops.push(Op::Noise(n));
        }
    }

    pub fn detector(&mut self, records: Vec<usize>) -> usize {
        self.ops.push(Op::Detector(records));
        self.num_detectors += 1;
        self.num_detectors - 1
    }

    pub fn observable(&mut self, index: usize, records: Vec<usize>) {
        self.ops.push(Op::Observable(index, records));
        self.num_observables = self.num_observables.max(index + 1);
    }

    /// Index of the first record of every measurement op.
    pub fn record_offsets(&self) -> Vec<Option<usize>> {
        let mut next = 0;
        self.ops
            .iter()
            .map(|op| match op {
                Op::Measure { qubits, .. } => {
                    let at = next;
                    next += qubits.len();
                    Some(at)
                }
                _ => None,
            })
            .collect()
    }

    pub fn cnot_count(&self) -> usize {
        self.ops.iter().map(|op| if let Op::Cnot(p) = op { p.len() } else { 0 }).sum()
    }

    pub fn cnot_layers(&self) -> usize {
        self.ops.iter().filter(|op| matches!(op, Op::Cnot(_))).count()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_qubits;
        let in_range = |q: usize| if q < n { Ok(()) } else { Err(Error::Circuit(format!("qubit {q} out of range ({n})"))) };
        let rec = |r: usize| {
            if r < self.num_measurements {
                Ok(())
            } else {
                Err(Error::Circuit(format!("record {r} out of range")))
            }
        };
        let mut measured = 0usize;
        for (i, op) in self.ops.iter().enumerate() {
            match op {
                Op::Reset { qubits, .. } | Op::Apply { qubits, .. } => qubits.iter().try_for_each(|&q| in_range(q))?,
                Op::Measure { qubits, flip_p, .. } => {
                    qubits.iter().try_for_each(|&q| in_range(q))?;
                    check_p(*flip_p)?;
                    measured += qubits.len();
                }
                Op::Cnot(pairs) => {
                    let mut used = vec![false; n];
                    for &(c, t) in pairs {
                        in_range(c)?;
                        in_range(t)?;
                        if c == t || used[c] || used[t] {
                            return Err(Error::Circuit(format!("op {i}: qubit reused within a CNOT layer")));
                        }
                        used[c] = true;
                        used[t] = true;
                    }
                }
                Op::Feedback { targets, records, .. } => {
                    targets.iter().try_for_each(|&q| in_range(q))?;
                    for &r in records {
                        if r >= measured {
                            return Err(Error::Circuit(format!("op {i}: feedback reads future record {r}")));
                        }
                    }
                }
                Op::Noise(noise) => match noise {
                    Noise::XError { p, qubits }
                    | Noise::ZError { p, qubits }
                    | Noise::Depolarize1 { p, qubits }
                    | Noise::CorrelatedZ { p, qubits } => {
                        check_p(*p)?;
                        qubits.iter().try_for_each(|&q| in_range(q))?;
                    }
                    Noise::Depolarize2 { p, pairs } => {
                        check_p(*p)?;
                        pairs.iter().try_for_each(|&(a, b)| in_range(a).and(in_range(b)))?;
                    }
                },
                Op::Detector(r) | Op::Observable(_, r) => r.iter().try_for_each(|&x| rec(x))?,
            }
        }
        Ok(())
    }
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("probability {p} outside [0, 1]")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layer_reuse_rejected() {
        let mut c = Circuit::new();
        c.add_block("q", 3);
        c.cnot(vec![(0, 1), (1, 2)]);
        assert!(c.validate().is_err());
        let mut c = Circuit::new();
        c.add_block("q", 3);
        c.cnot(vec![(0, 1)]);
        let r = c.measure(Basis::Z, vec![0, 1], 0.0);
        c.detector(r);
        assert!(c.validate().is_ok());
        c.feedback(Basis::X, vec![2], vec![5]);
        assert!(c.validate().is_err());
    }
}
