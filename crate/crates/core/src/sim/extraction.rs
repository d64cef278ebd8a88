use super::circuit::{Circuit, Noise};
use super::coloring::edge_coloring;
use super::noise::NoiseModel;
use crate::codes::{logical_basis, Basis, CssCode};
use crate::error::Result;
use crate::f2_linalg::BitMatrix;

/// CNOT layers for measuring the X and Z checks of one code, one ancilla
/// per check.
#[derive(Clone, Debug)]
pub struct Extractor {
    pub x_layers: Vec<Vec<(usize, usize)>>,
    pub z_layers: Vec<Vec<(usize, usize)>>,
    pub rx: usize,
    pub rz: usize,
}

/// Which check types a round measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Checks {
    X,
    Z,
    Both,
}

impl Checks {
    fn has(self, b: Basis) -> bool {
        self == Checks::Both || matches!((self, b), (Checks::X, Basis::X) | (Checks::Z, Basis::Z))
    }
}

/// Record indices of one extraction round.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundRecords {
    pub x: Vec<usize>,
    pub z: Vec<usize>,
}

/// Qubit offsets of one code block and its ancillas inside a circuit.
#[derive(Clone, Copy, Debug)]
pub struct Registers {
    pub data: usize,
    pub anc_x: usize,
    pub anc_z: usize,
}

impl Registers {
    pub fn allocate(c: &mut Circuit, prefix: &str, code: &CssCode) -> Self {
        Self {
            data: c.add_block(&format!("{prefix}data"), code.n),
            anc_x: c.add_block(&format!("{prefix}anc_x"), code.hx.rows()),
            anc_z: c.add_block(&format!("{prefix}anc_z"), code.hz.rows()),
        }
    }

    pub fn data_qubits(&self, n: usize) -> Vec<usize> {
        (self.data..self.data + n).collect()
    }
}

impl Extractor {
    pub fn new(code: &CssCode) -> Self {
        Self { x_layers: edge_coloring(&code.hx), z_layers: edge_coloring(&code.hz), rx: code.hx.rows(), rz: code.hz.rows() }
    }

    pub fn x_depth(&self) -> usize {
        self.x_layers.len()
    }

    pub fn z_depth(&self) -> usize {
        self.z_layers.len()
    }

    /// Appends one round: X checks first, then Z checks.
    pub fn append(&self, c: &mut Circuit, reg: Registers, which: Checks, noise: &NoiseModel) -> RoundRecords {
        let mut out = RoundRecords::default();
        for basis in [Basis::X, Basis::Z] {
            if !which.has(basis) {
                continue;
            }
            let (layers, rows, anc) = match basis {
                Basis::X => (&self.x_layers, self.rx, reg.anc_x),
                Basis::Z => (&self.z_layers, self.rz, reg.anc_z),
            };
            let ancillas: Vec<usize> = (anc..anc + rows).collect();
            c.reset(basis, ancillas.clone());
            prep_noise(c, basis, ancillas.clone(), noise.prep());
            for layer in layers {
                let pairs: Vec<(usize, usize)> = layer
                    .iter()
                    .map(|&(s, q)| match basis {
                        Basis::X => (anc + s, reg.data + q),
                        Basis::Z => (reg.data + q, anc + s),
                    })
                    .collect();
                c.cnot(pairs.clone());
                c.noise(Noise::Depolarize2 { p: noise.gate(), pairs });
            }
            let recs = c.measure(basis, ancillas, noise.readout());
            match basis {
                Basis::X => out.x = recs,
                Basis::Z => out.z = recs,
            }
        }
        out
    }
}

/// Error that spoils a freshly prepared basis state.
pub(crate) fn prep_noise(c: &mut Circuit, basis: Basis, qubits: Vec<usize>, p: f64) {
    match basis {
        Basis::X => c.noise(Noise::ZError { p, qubits }),
        Basis::Z => c.noise(Noise::XError { p, qubits }),
    }
}

pub(crate) fn data_noise(c: &mut Circuit, qubits: &[usize], p: f64) {
    c.noise(Noise::XError { p, qubits: qubits.to_vec() });
    c.noise(Noise::ZError { p, qubits: qubits.to_vec() });
}

/// Standalone circuit measuring the chosen checks once on a fresh block.
pub fn build_syndrome_extraction(code: &CssCode, which: Checks) -> (Circuit, RoundRecords) {
    let mut c = Circuit::new();
    let reg = Registers::allocate(&mut c, "", code);
    let recs = Extractor::new(code).append(&mut c, reg, which, &NoiseModel::noiseless());
    (c, recs)
}

pub(crate) fn check_rows(h: &BitMatrix) -> Vec<Vec<usize>> {
    (0..h.rows()).map(|r| h.row_ones(r).collect()).collect()
}

/// Memory experiment in `basis`: transversal preparation, `rounds` rounds
/// of extraction, transversal readout. Detectors compare adjacent rounds
/// of the checks of type `basis`, with the preparation and the readout as
/// boundary rounds; observables are the logical operators of that type.
pub fn memory_circuit(code: &CssCode, basis: Basis, rounds: usize, noise: &NoiseModel) -> Result<Circuit> {
    noise.validate()?;
    let lb = logical_basis(code)?;
    let ext = Extractor::new(code);
    let mut c = Circuit::new();
    let reg = Registers::allocate(&mut c, "", code);
    let data = reg.data_qubits(code.n);
    c.reset(basis, data.clone());
    prep_noise(&mut c, basis, data.clone(), noise.prep());
    let h = match basis {
        Basis::X => &code.hx,
        Basis::Z => &code.hz,
    };
    let checks = check_rows(h);
    let mut prev: Option<Vec<usize>> = None;
    for _ in 0..rounds {
        data_noise(&mut c, &data, noise.per_round_data());
        let recs = ext.append(&mut c, reg, Checks::Both, noise);
        let cur = if basis == Basis::X { recs.x } else { recs.z };
        for (s, &r) in cur.iter().enumerate() {
            let mut d = vec![r];
            d.extend(prev.as_ref().map(|p| p[s]));
            c.detector(d);
        }
        prev = Some(cur);
    }
    match basis {
        Basis::X => c.noise(Noise::ZError { p: noise.final_data(), qubits: data.clone() }),
        Basis::Z => c.noise(Noise::XError { p: noise.final_data(), qubits: data.clone() }),
    }
    let fin = c.measure(basis, data, noise.readout());
    for (s, support) in checks.iter().enumerate() {
        let mut d: Vec<usize> = support.iter().map(|&q| fin[q]).collect();
        d.extend(prev.as_ref().map(|p| p[s]));
        c.detector(d);
    }
    let reps = if basis == Basis::X { &lb.x_reps } else { &lb.z_reps };
    for (i, rep) in reps.iter().enumerate() {
        c.observable(i, rep.ones().map(|q| fin[q]).collect());
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodePair;

    #[test]
    fn bt27_x_extraction() {
        let pair = CodePair::load("bt-27").unwrap();
        let (c, recs) = build_syndrome_extraction(&pair.code_3d, Checks::X);
        assert_eq!(recs.x.len(), 9);
        assert_eq!(c.cnot_layers(), 6);
        assert_eq!(c.block("anc_x").unwrap().size, 9);
        c.validate().unwrap();
    }

    #[test]
    fn weight_one_check() {
        let code = CssCode::new(BitMatrix::from_strs(&["01"]), BitMatrix::zeros(0, 2), None).unwrap();
        let (c, _) = build_syndrome_extraction(&code, Checks::X);
        assert_eq!(c.cnot_layers(), 1);
    }
}
