//! Aaronson–Gottesman stabilizer tableau.

use rand::Rng;

use super::circuit::{Circuit, Op, Pauli};
use super::noise::Effect;
use crate::codes::Basis;
use crate::error::Result;
use crate::f2_linalg::BitVec;

/// Rows 0..n are destabilizers, n..2n stabilizers, row 2n is scratch.
#[derive(Clone, Debug)]
pub struct Tableau {
    n: usize,
    words: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    r: Vec<bool>,
}

/// A Pauli operator without phase, as X and Z support bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliString {
    pub x: BitVec,
    pub z: BitVec,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self { x: BitVec::zeros(n), z: BitVec::zeros(n) }
    }

    pub fn of_type(basis: Basis, n: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let v = BitVec::from_indices(n, support);
        match basis {
            Basis::X => Self { x: v, z: BitVec::zeros(n) },
            Basis::Z => Self { x: BitVec::zeros(n), z: v },
        }
    }

    /// Places a block-local operator at `offset` in an n-qubit register.
    pub fn embed(basis: Basis, n: usize, offset: usize, local: &BitVec) -> Self {
        Self::of_type(basis, n, local.ones().map(|q| q + offset))
    }
}

impl Tableau {
    /// |0…0⟩.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        let rows = 2 * n + 1;
        let mut t = Self { n, words, x: vec![0; rows * words], z: vec![0; rows * words], r: vec![false; rows] };
        for i in 0..n {
            t.x[i * words + i / 64] |= 1 << (i % 64);
            t.z[(n + i) * words + i / 64] |= 1 << (i % 64);
        }
        t
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    fn bit(v: &[u64], row: usize, words: usize, q: usize) -> bool {
        v[row * words + q / 64] >> (q % 64) & 1 == 1
    }

    fn xb(&self, row: usize, q: usize) -> bool {
        Self::bit(&self.x, row, self.words, q)
    }

    fn zb(&self, row: usize, q: usize) -> bool {
        Self::bit(&self.z, row, self.words, q)
    }

    pub fn h(&mut self, a: usize) {
        let (w, m) = (a / 64, 1u64 << (a % 64));
        for row in 0..2 * self.n {
            let i = row * self.words + w;
            let (xa, za) = (self.x[i] & m != 0, self.z[i] & m != 0);
            self.r[row] ^= xa && za;
            if xa != za {
                self.x[i] ^= m;
                self.z[i] ^= m;
            }
        }
    }

    pub fn cnot(&mut self, a: usize, b: usize) {
        let (wa, ma) = (a / 64, 1u64 << (a % 64));
        let (wb, mb) = (b / 64, 1u64 << (b % 64));
        for row in 0..2 * self.n {
            let base = row * self.words;
            let xa = self.x[base + wa] & ma != 0;
            let za = self.z[base + wa] & ma != 0;
            let xb = self.x[base + wb] & mb != 0;
            let zb = self.z[base + wb] & mb != 0;
            self.r[row] ^= xa && zb && (xb == za);
            if xa {
                self.x[base + wb] ^= mb;
            }
            if zb {
                self.z[base + wa] ^= ma;
            }
        }
    }

    pub fn pauli(&mut self, a: usize, p: Pauli) {
        let (px, pz) = p.bits();
        for row in 0..2 * self.n {
            // X anticommutes with z components, Z with x components
            if (px && self.zb(row, a)) != (pz && self.xb(row, a)) {
                self.r[row] ^= true;
            }
        }
    }

    /// row h ← row i · row h, tracking the sign.
    fn rowsum(&mut self, h: usize, i: usize) {
        let w = self.words;
        let mut plus = 0u32;
        let mut minus = 0u32;
        for k in 0..w {
            let (x1, z1) = (self.x[i * w + k], self.z[i * w + k]);
            let (x2, z2) = (self.x[h * w + k], self.z[h * w + k]);
            let y = x1 & z1;
            let xo = x1 & !z1;
            let zo = !x1 & z1;
            plus += (y & z2 & !x2).count_ones() + (xo & z2 & x2).count_ones() + (zo & x2 & !z2).count_ones();
            minus += (y & x2 & !z2).count_ones() + (xo & z2 & !x2).count_ones() + (zo & x2 & z2).count_ones();
        }
        let total = (2 * self.r[h] as i64 + 2 * self.r[i] as i64 + plus as i64 - minus as i64).rem_euclid(4);
        self.r[h] = total == 2;
        for k in 0..w {
            self.x[h * w + k] ^= self.x[i * w + k];
            self.z[h * w + k] ^= self.z[i * w + k];
        }
    }

    fn copy_row(&mut self, dst: usize, src: usize) {
        let w = self.words;
        self.x.copy_within(src * w..(src + 1) * w, dst * w);
        self.z.copy_within(src * w..(src + 1) * w, dst * w);
        self.r[dst] = self.r[src];
    }

    fn clear_row(&mut self, row: usize) {
        let w = self.words;
        self.x[row * w..(row + 1) * w].fill(0);
        self.z[row * w..(row + 1) * w].fill(0);
        self.r[row] = false;
    }

    fn row_pauli(&self, row: usize) -> PauliString {
        let w = self.words;
        PauliString {
            x: BitVec::from_words(self.n, self.x[row * w..(row + 1) * w].to_vec()),
            z: BitVec::from_words(self.n, self.z[row * w..(row + 1) * w].to_vec()),
        }
    }

    /// Z measurement. For random outcomes also returns the stabilizer row
    /// now holding ±Z_a; its destabilizer flips between the two branches.
    pub fn measure_z<R: Rng>(&mut self, a: usize, rng: &mut R) -> (bool, Option<usize>) {
        let n = self.n;
        if let Some(p) = (n..2 * n).find(|&row| self.xb(row, a)) {
            for row in 0..2 * n {
                if row != p && self.xb(row, a) {
                    self.rowsum(row, p);
                }
            }
            self.copy_row(p - n, p);
            self.clear_row(p);
            let outcome = rng.gen::<bool>();
            self.r[p] = outcome;
            self.z[p * self.words + a / 64] |= 1 << (a % 64);
            (outcome, Some(p))
        } else {
            let s = 2 * n;
            self.clear_row(s);
            for i in 0..n {
                if self.xb(i, a) {
                    self.rowsum(s, i + n);
                }
            }
            (self.r[s], None)
        }
    }

    pub fn measure<R: Rng>(&mut self, basis: Basis, a: usize, rng: &mut R) -> (bool, Option<usize>) {
        match basis {
            Basis::Z => self.measure_z(a, rng),
            Basis::X => {
                self.h(a);
                let out = self.measure_z(a, rng);
                self.h(a);
                out
            }
        }
    }

    /// Pauli mapping the current state onto the other outcome branch of
    /// the random measurement that left its result in stabilizer row `row`.
    pub fn branch_flip(&self, row: usize) -> PauliString {
        self.row_pauli(row - self.n)
    }

    /// Deterministic expectation of a Pauli: Some(false) for +1,
    /// Some(true) for −1, None when random.
    pub fn peek(&mut self, p: &PauliString) -> Option<bool> {
        let n = self.n;
        let anti = |t: &Self, row: usize| {
            let mut par = false;
            for q in p.x.ones() {
                par ^= t.zb(row, q);
            }
            for q in p.z.ones() {
                par ^= t.xb(row, q);
            }
            par
        };
        if (n..2 * n).any(|row| anti(self, row)) {
            return None;
        }
        let s = 2 * n;
        self.clear_row(s);
        for i in 0..n {
            if anti(self, i) {
                self.rowsum(s, i + n);
            }
        }
        debug_assert_eq!(self.row_pauli(s), *p);
        Some(self.r[s])
    }
}

/// A random measurement or reset: applying `flip` after op `op` and
/// toggling `records` yields the other outcome branch.
#[derive(Clone, Debug)]
pub struct RandomOutcome {
    pub op: usize,
    pub records: Vec<usize>,
    pub flip: PauliString,
}

/// Outcome of an exact run.
#[derive(Clone, Debug)]
pub struct TableauRun {
    pub records: Vec<bool>,
    pub detectors: Vec<bool>,
    pub observables: Vec<bool>,
    pub random: Vec<RandomOutcome>,
    pub tableau: Tableau,
}

/// Exact simulation. Noise annotations are ignored; `faults` lists
/// (op, effect) pairs applied right after the op.
pub fn tableau_run<R: Rng>(circuit: &Circuit, rng: &mut R, faults: &[(usize, Effect)]) -> Result<TableauRun> {
    circuit.validate()?;
    let mut t = Tableau::new(circuit.num_qubits);
    let mut records: Vec<bool> = Vec::with_capacity(circuit.num_measurements);
    let mut detectors = Vec::new();
    let mut observables = vec![false; circuit.num_observables];
    let mut random = Vec::new();
    let mut fi = 0;
    let mut sorted: Vec<&(usize, Effect)> = faults.iter().collect();
    sorted.sort_by_key(|f| f.0);
    for (i, op) in circuit.ops.iter().enumerate() {
        match op {
            Op::Reset { basis, qubits } => {
                let mut rows = Vec::new();
                for &q in qubits {
                    let (m, p) = t.measure(*basis, q, rng);
                    rows.extend(p.map(|p| (q, p)));
                    if m {
                        t.pauli(q, if *basis == Basis::Z { Pauli::X } else { Pauli::Z });
                    }
                }
                // the reset itself undoes the flip on the reset qubits
                for (_, p) in rows {
                    let mut g = t.branch_flip(p);
                    for &q in qubits {
                        g.x.set(q, false);
                        g.z.set(q, false);
                    }
                    if !g.x.is_zero() || !g.z.is_zero() {
                        random.push(RandomOutcome { op: i, records: Vec::new(), flip: g });
                    }
                }
            }
            Op::Cnot(pairs) => pairs.iter().for_each(|&(c, tg)| t.cnot(c, tg)),
            Op::Measure { basis, qubits, .. } => {
                let first = records.len();
                let mut rows = Vec::new();
                for &q in qubits {
                    let (m, p) = t.measure(*basis, q, rng);
                    rows.extend(p);
                    records.push(m);
                }
                // outcomes in one layer can be correlated, so a branch flip
                // toggles every record whose observable it anticommutes with
                for p in rows {
                    let g = t.branch_flip(p);
                    let flips = qubits
                        .iter()
                        .enumerate()
                        .filter(|&(_, &q)| if *basis == Basis::Z { g.x.get(q) } else { g.z.get(q) })
                        .map(|(k, _)| first + k)
                        .collect();
                    random.push(RandomOutcome { op: i, records: flips, flip: g });
                }
            }
            Op::Apply { pauli, qubits } => qubits.iter().for_each(|&q| t.pauli(q, (*pauli).into())),
            Op::Feedback { pauli, targets, records: rs } => {
                if rs.iter().fold(false, |acc, &r| acc ^ records[r]) {
                    targets.iter().for_each(|&q| t.pauli(q, (*pauli).into()));
                }
            }
            Op::Noise(_) => {}
            Op::Detector(rs) => detectors.push(rs.iter().fold(false, |acc, &r| acc ^ records[r])),
            Op::Observable(k, rs) => observables[*k] ^= rs.iter().fold(false, |acc, &r| acc ^ records[r]),
        }
        while fi < sorted.len() && sorted[fi].0 == i {
            match sorted[fi].1 {
                Effect::Pauli(q, p) => t.pauli(q, p),
                Effect::FlipRecord(r) => records[r] ^= true,
            }
            fi += 1;
        }
    }
    Ok(TableauRun { records, detectors, observables, random, tableau: t })
}


#[cfg(test)]
mod oracle {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type C = (f64, f64);

    fn apply_pauli(psi: &[C], p: &PauliString) -> Vec<C> {
        let n = p.x.len();
        let mut out = vec![(0.0, 0.0); psi.len()];
        for (b, &amp) in psi.iter().enumerate() {
            let mut nb = b;
            // phase i^(#Y) (-1)^(z·b) ; Y = iXZ
            let mut ph = 0u32;
            for q in 0..n {
                let (x, z) = (p.x.get(q), p.z.get(q));
                if z && (b >> q & 1 == 1) {
                    ph += 2;
                }
                if x && z {
                    ph += 1;
                }
                if x {
                    nb ^= 1 << q;
                }
            }
            let a = match ph % 4 {
                0 => amp,
                1 => (-amp.1, amp.0),
                2 => (-amp.0, -amp.1),
                _ => (amp.1, -amp.0),
            };
            out[nb].0 += a.0;
            out[nb].1 += a.1;
        }
        out
    }

    fn expect(psi: &[C], p: &PauliString) -> f64 {
        let q = apply_pauli(psi, p);
        psi.iter().zip(&q).map(|(a, b)| a.0 * b.0 + a.1 * b.1).sum()
    }

    #[test]
    fn matches_statevector() {
        let n = 4;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let mut t = Tableau::new(n);
            let mut psi = vec![(0.0, 0.0); 1 << n];
            psi[0] = (1.0, 0.0);
            for _ in 0..25 {
                let a = rng.gen_range(0..n);
                match rng.gen_range(0..6) {
                    0 => {
                        t.h(a);
                        let s = std::f64::consts::FRAC_1_SQRT_2;
                        let mut out = psi.clone();
                        for b in 0..psi.len() {
                            if b >> a & 1 == 0 {
                                let (u, v) = (psi[b], psi[b | 1 << a]);
                                out[b] = ((u.0 + v.0) * s, (u.1 + v.1) * s);
                                out[b | 1 << a] = ((u.0 - v.0) * s, (u.1 - v.1) * s);
                            }
                        }
                        psi = out;
                    }
                    1 => {
                        let b2 = (a + 1 + rng.gen_range(0..n - 1)) % n;
                        t.cnot(a, b2);
                        let mut out = psi.clone();
                        for b in 0..psi.len() {
                            if b >> a & 1 == 1 {
                                out[b ^ 1 << b2] = psi[b];
                            }
                        }
                        psi = out;
                    }
                    2 | 3 => {
                        let p = [Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..3)];
                        t.pauli(a, p);
                        let (x, z) = p.bits();
                        let ps = PauliString { x: BitVec::from_indices(n, (x).then_some(a)), z: BitVec::from_indices(n, (z).then_some(a)) };
                        psi = apply_pauli(&psi, &ps);
                    }
                    _ => {
                        let basis = if rng.gen() { Basis::Z } else { Basis::X };
                        let op = PauliString::of_type(basis, n, [a]);
                        let e = expect(&psi, &op);
                        let (m, rand_row) = t.measure(basis, a, &mut rng);
                        assert_eq!(rand_row.is_some(), e.abs() < 1e-9, "determinism");
                        if rand_row.is_none() {
                            assert_eq!(m, e < 0.0);
                        }
                        // project onto the observed outcome
                        let proj = apply_pauli(&psi, &op);
                        let sgn = if m { -1.0 } else { 1.0 };
                        psi = psi.iter().zip(&proj).map(|(u, v)| ((u.0 + sgn * v.0) / 2.0, (u.1 + sgn * v.1) / 2.0)).collect();
                        let norm: f64 = psi.iter().map(|u| u.0 * u.0 + u.1 * u.1).sum::<f64>().sqrt();
                        psi.iter_mut().for_each(|u| *u = (u.0 / norm, u.1 / norm));
                    }
                }
            }
            for code in 0..(1u32 << (2 * n)) {
                let p = PauliString {
                    x: BitVec::from_indices(n, (0..n).filter(|&q| code >> q & 1 == 1)),
                    z: BitVec::from_indices(n, (0..n).filter(|&q| code >> (q + n) & 1 == 1)),
                };
                let e = expect(&psi, &p);
                match t.peek(&p) {
                    None => assert!(e.abs() < 1e-9),
                    Some(s) => assert!((e - if s { -1.0 } else { 1.0 }).abs() < 1e-9, "{p:?} {e}"),
                }
            }
        }
    }
}
