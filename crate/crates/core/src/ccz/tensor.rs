use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::codes::{CssCode, LogicalBasis};
use crate::error::{Error, Result};
use crate::f2_linalg::{kernel_basis, BitMatrix, BitVec};

/// Physical CCZ gates across three code blocks: δ_{ijk} = 1 for each
/// listed triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CczTensor {
    pub block_sizes: [usize; 3],
    pub triples: Vec<[usize; 3]>,
}

impl CczTensor {
    pub fn zero(block_sizes: [usize; 3]) -> Self {
        Self { block_sizes, triples: Vec::new() }
    }

    /// Sorted, with pairs of repeated triples cancelled (F₂ coefficients).
    pub fn from_triples<I: IntoIterator<Item = [usize; 3]>>(block_sizes: [usize; 3], triples: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for t in triples {
            if (0..3).any(|b| t[b] >= block_sizes[b]) {
                return Err(Error::Dimension(format!("triple {t:?} outside blocks {block_sizes:?}")));
            }
            if !set.insert(t) {
                set.remove(&t);
            }
        }
        Ok(Self { block_sizes, triples: set.into_iter().collect() })
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// f(u, v, w) = Σ δ_{ijk} u_i v_j w_k.
    pub fn evaluate(&self, u: &BitVec, v: &BitVec, w: &BitVec) -> bool {
        self.triples.iter().filter(|[i, j, k]| u.get(*i) && v.get(*j) && w.get(*k)).count() % 2 == 1
    }

    /// Largest number of gates acting on any one physical qubit.
    pub fn depth(&self) -> usize {
        (0..3)
            .map(|b| {
                let mut count = vec![0usize; self.block_sizes[b]];
                for t in &self.triples {
                    count[t[b]] += 1;
                }
                count.into_iter().max().unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let [a, b, c] = self.block_sizes;
        let mut s = format!("# blocks {a} {b} {c}\n");
        for [i, j, k] in &self.triples {
            s.push_str(&format!("{i} {j} {k}\n"));
        }
        s
    }

    /// Reads "i j k" lines; a "# blocks n1 n2 n3" header overrides `block_sizes`.
    pub fn from_text(text: &str, block_sizes: Option<[usize; 3]>) -> Result<Self> {
        let mut sizes = block_sizes;
        let mut triples = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix('#') {
                let words: Vec<&str> = rest.split_whitespace().collect();
                if words.first() == Some(&"blocks") {
                    sizes = Some(parse3(&words[1..], ln)?);
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            triples.push(parse3(&line.split_whitespace().collect::<Vec<_>>(), ln)?);
        }
        let sizes = sizes.ok_or_else(|| Error::Format("block sizes unknown: no header and none given".into()))?;
        Self::from_triples(sizes, triples)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: CczTensor = serde_json::from_str(text)?;
        Self::from_triples(raw.block_sizes, raw.triples)
    }
}

fn parse3(words: &[&str], ln: usize) -> Result<[usize; 3]> {
    if words.len() != 3 {
        return Err(Error::Format(format!("line {}: expected three indices", ln + 1)));
    }
    let mut out = [0; 3];
    for (o, w) in out.iter_mut().zip(words) {
        *o = w.parse().map_err(|_| Error::Format(format!("line {}: bad index `{w}`", ln + 1)))?;
    }
    Ok(out)
}

/// f(s, v, w) ≠ 0 for X stabilizer `stabilizer` in `slot` and cocycle
/// basis vectors `pair` in the other two slots (in increasing slot order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupViolation {
    pub slot: usize,
    pub stabilizer: usize,
    pub pair: (usize, usize),
}

fn check_sizes(delta: &CczTensor, codes: [&CssCode; 3]) -> Result<()> {
    for b in 0..3 {
        if codes[b].n != delta.block_sizes[b] {
            return Err(Error::Dimension(format!("block {b}: tensor has {} qubits, code has {}", delta.block_sizes[b], codes[b].n)));
        }
    }
    Ok(())
}

/// f must vanish whenever one argument is an X stabilizer and the others
/// are in ker Hz; checked on generators.
pub fn verify_cup_validity(delta: &CczTensor, codes: [&CssCode; 3]) -> Result<Option<CupViolation>> {
    check_sizes(delta, codes)?;
    let kernels: Vec<BitMatrix> = codes.iter().map(|c| BitMatrix::from_rows(c.n, &kernel_basis(&c.hz))).collect();
    for slot in 0..3 {
        let (u, w) = match slot {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let mut slices: Vec<Vec<(usize, usize)>> = vec![Vec::new(); delta.block_sizes[slot]];
        for t in &delta.triples {
            slices[t[slot]].push((t[u], t[w]));
        }
        let kw_t = kernels[w].transpose();
        let hx = &codes[slot].hx;
        for s in 0..hx.rows() {
            let mut m = BitMatrix::zeros(delta.block_sizes[u], delta.block_sizes[w]);
            for i in hx.row_ones(s) {
                for &(j, k) in &slices[i] {
                    m.flip(j, k);
                }
            }
            let q = kernels[u].mul(&m)?.mul(&kw_t)?;
            if let Some(&(a, b)) = q.nonzeros().first() {
                return Ok(Some(CupViolation { slot, stabilizer: s, pair: (a, b) }));
            }
        }
    }
    Ok(None)
}

/// δ̄_{abc} = f(x_a, x_b, x_c) over the three logical X bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalCczTensor {
    pub dims: [usize; 3],
    pub entries: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CczAnalysis {
    pub logical: LogicalCczTensor,
    pub depth: usize,
    pub nontrivial: bool,
}

pub(crate) fn logical_entries(delta: &CczTensor, x: [&[BitVec]; 3]) -> Vec<[usize; 3]> {
    let dims = [x[0].len(), x[1].len(), x[2].len()];
    let mut acc = vec![false; dims[0] * dims[1] * dims[2]];
    let members = |b: usize, q: usize| -> Vec<usize> { (0..dims[b]).filter(|&a| x[b][a].get(q)).collect() };
    for &[i, j, k] in &delta.triples {
        let (ma, mb, mc) = (members(0, i), members(1, j), members(2, k));
        for &a in &ma {
            for &b in &mb {
                for &c in &mc {
                    acc[(a * dims[1] + b) * dims[2] + c] ^= true;
                }
            }
        }
    }
    acc.iter()
        .enumerate()
        .filter(|(_, &v)| v)
        .map(|(e, _)| [e / (dims[1] * dims[2]), (e / dims[2]) % dims[1], e % dims[2]])
        .collect()
}

/// Logical tensor, depth and nontriviality; fails unless δ is valid.
pub fn induced_logical_tensor(delta: &CczTensor, codes: [&CssCode; 3], bases: [&LogicalBasis; 3]) -> Result<CczAnalysis> {
    if let Some(v) = verify_cup_validity(delta, codes)? {
        return Err(Error::InvalidCcz(format!("{v:?}")));
    }
    let entries = logical_entries(delta, [&bases[0].x_reps, &bases[1].x_reps, &bases[2].x_reps]);
    let logical = LogicalCczTensor { dims: [bases[0].k(), bases[1].k(), bases[2].k()], entries };
    let nontrivial = !logical.entries.is_empty();
    Ok(CczAnalysis { logical, depth: delta.depth(), nontrivial })
}

/// Correlated Z error left behind by a faulty CCZ layer: a Z on one
/// qubit spreads to its gate partners in the other two blocks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelatedZ {
    /// (block, qubit) pairs, sorted.
    pub support: Vec<(usize, usize)>,
    pub p: f64,
}

pub fn propagated_error_channel(delta: &CczTensor, p: f64) -> Result<Vec<CorrelatedZ>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("probability {p} outside [0, 1]")));
    }
    let mut out = Vec::new();
    for b in 0..3 {
        let (u, w) = ((b + 1) % 3, (b + 2) % 3);
        let mut partners: Vec<BTreeSet<(usize, usize)>> = vec![BTreeSet::new(); delta.block_sizes[b]];
        for t in &delta.triples {
            for q in [(u, t[u]), (w, t[w])] {
                let set = &mut partners[t[b]];
                if !set.insert(q) {
                    set.remove(&q);
                }
            }
        }
        for (i, mut set) in partners.into_iter().enumerate() {
            set.insert((b, i));
            out.push(CorrelatedZ { support: set.into_iter().collect(), p });
        }
    }
    Ok(out)
}
