//! Batch reports with provenance, and the code-pair table.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ccz::{cup_product_ccz, equivariant_solve, induced_logical_tensor, verify_cup_validity};
use crate::chain_map::Inclusion;
use crate::codes::{
    auto_weight_cap, code_distance, Basis, kunneth_k_hgp, logical_basis, CodePair, CssCode, Distance, Nkd, Published,
    CANDIDATE_BUDGET, DEFAULT_ISD_ITERATIONS, TABLE_NAMES,
};
use crate::error::{Error, Result};
use crate::f2_linalg::BitVec;
use crate::sim::{
    memory_circuit, monte_carlo, single_shot_monte_carlo, teleport_circuit, Direction, Experiment, MonteCarloResult,
    NoiseMode, NoiseModel, TeleportSetup,
};

pub fn config_hash(config: &[u8]) -> String {
    format!("{:x}", Sha256::digest(config))
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub item: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport<T> {
    pub version: String,
    pub command: String,
    pub config_hash: String,
    pub results: T,
    pub timings: Vec<Timing>,
}

impl<T: Serialize> RunReport<T> {
    pub fn new(command: &str, config: &[u8], results: T, timings: Vec<Timing>) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config_hash: config_hash(config),
            results,
            timings,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Runs `f`, appending its wall time to `timings`.
pub fn timed<T>(timings: &mut Vec<Timing>, item: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    timings.push(Timing { item: item.into(), seconds: t.elapsed().as_secs_f64() });
    out
}

#[derive(Clone, Debug)]
pub struct Table1Options {
    /// Enumeration cap; chosen from the candidate budget when absent.
    pub weight_cap: Option<usize>,
    pub isd_iterations: usize,
    pub seed: u64,
    /// Node budget for the equivariant CCZ search.
    pub budget: u64,
    /// The equivariant search only runs on 3D codes up to this size.
    pub solver_max_n: usize,
}

impl Default for Table1Options {
    fn default() -> Self {
        Self { weight_cap: None, isd_iterations: DEFAULT_ISD_ITERATIONS, seed: 0, budget: crate::ccz::DEFAULT_BUDGET, solver_max_n: 100 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeRow {
    pub n: usize,
    pub k: usize,
    pub d_z: Distance,
    pub d_x: Distance,
    pub d: Distance,
    pub weight_cap: usize,
    pub max_stabilizer_weight: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverRow {
    pub found: bool,
    pub depth: Option<usize>,
    pub nodes: u64,
    pub budget_exhausted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CczRow {
    pub cup_depth: usize,
    pub cup_valid: bool,
    pub cup_nontrivial: bool,
    pub solver: Option<SolverRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub name: String,
    pub code_2d: CodeRow,
    pub code_3d: CodeRow,
    pub published: Published,
    pub nk_match: bool,
    /// Exact distances equal the published value; bounds have an upper
    /// end at or below it.
    pub d_consistent: bool,
    pub injective: bool,
    pub rank: usize,
    pub physically_transversal: bool,
    /// (predicted, computed) k of the 3D code for binary products.
    pub kunneth: Option<(usize, usize)>,
    pub ccz: CczRow,
}

fn code_row(code: &CssCode, opts: &Table1Options, hints: &[BitVec]) -> (CodeRow, Option<BitVec>) {
    let cap = opts.weight_cap.unwrap_or_else(|| auto_weight_cap(code.n, CANDIDATE_BUDGET));
    let cd = code_distance(code, cap, hints, opts.isd_iterations, opts.seed);
    let row = CodeRow {
        n: code.n,
        k: code.k(),
        d_z: cd.d_z.distance,
        d_x: cd.d_x.distance,
        d: cd.d,
        weight_cap: cap,
        max_stabilizer_weight: code.hx.max_row_weight().max(code.hz.max_row_weight()),
    };
    (row, cd.d_z.witness)
}

fn consistent(d: Distance, published: usize) -> bool {
    match d {
        Distance::Exact(x) => x == published,
        Distance::Bounds { upper, .. } => upper.is_some_and(|u| u <= published),
        Distance::Undefined => false,
    }
}

fn ccz_row(pair: &CodePair, opts: &Table1Options) -> Result<CczRow> {
    let c = &pair.code_3d;
    let lb = logical_basis(c)?;
    let delta = cup_product_ccz(pair)?;
    let cup_valid = verify_cup_validity(&delta, [c, c, c])?.is_none();
    let a = induced_logical_tensor(&delta, [c, c, c], [&lb, &lb, &lb])?;
    let solver = if pair.spec.elements()?.is_some() && c.n <= opts.solver_max_n {
        let target = pair.spec.published.as_ref().and_then(|p| p.ccz_depth).unwrap_or(2);
        let out = equivariant_solve(c, target, opts.budget)?;
        let depth = match &out.solution {
            Some((_, d)) => Some(induced_logical_tensor(d, [c, c, c], [&lb, &lb, &lb])?.depth),
            None => None,
        };
        Some(SolverRow { found: out.solution.is_some(), depth, nodes: out.nodes, budget_exhausted: out.budget_exhausted })
    } else {
        None
    };
    Ok(CczRow { cup_depth: a.depth, cup_valid, cup_nontrivial: a.nontrivial, solver })
}

pub fn table1_row(name: &str, opts: &Table1Options) -> Result<Table1Row> {
    let pair = CodePair::load(name)?;
    let published = pair.spec.published.clone().ok_or_else(|| Error::InvalidArgument(format!("{name} has no published values")))?;
    let inc = Inclusion::build(&pair, 1)?;
    let (row_2d, witness_2d) = code_row(&pair.code_2d, opts, &[]);
    let gamma1 = inc.logical.gamma1_binary.clone();
    let hints = witness_2d
        .iter()
        .chain(&inc.source_basis.z_reps)
        .map(|z| gamma1.mul_vec(z))
        .collect::<Result<Vec<_>>>()?;
    let (row_3d, _) = code_row(&pair.code_3d, opts, &hints);
    let nk = |r: &CodeRow, p: &Nkd| r.n == p.n && r.k == p.k;
    let nk_match = nk(&row_3d, &published.code_3d) && published.code_2d.as_ref().is_none_or(|p| nk(&row_2d, p));
    let d_consistent = consistent(row_3d.d, published.code_3d.d)
        && published.code_2d.as_ref().is_none_or(|p| consistent(row_2d.d, p.d));
    let kunneth = if pair.spec.group.size() == 1 {
        Some((kunneth_k_hgp(&pair.code_2d, &pair.classical[2])?, row_3d.k))
    } else {
        None
    };
    Ok(Table1Row {
        name: name.into(),
        published,
        nk_match,
        d_consistent,
        injective: inc.logical.injective,
        rank: inc.logical.rank,
        physically_transversal: inc.logical.physically_transversal(),
        kunneth,
        ccz: ccz_row(&pair, opts)?,
        code_2d: row_2d,
        code_3d: row_3d,
    })
}

pub fn table1(opts: &Table1Options) -> Result<(Vec<Table1Row>, Vec<Timing>)> {
    let mut timings = Vec::new();
    let rows = TABLE_NAMES
        .iter()
        .map(|name| timed(&mut timings, name, || table1_row(name, opts)))
        .collect::<Result<Vec<_>>>()?;
    Ok((rows, timings))
}

/// Plain-text rendering, one line per pair.
pub fn render_table1(rows: &[Table1Row]) -> String {
    let mut out = String::from("name            2D                  3D                  inj  rank  ccz  nk  d\n");
    for r in rows {
        let code = |c: &CodeRow| format!("[[{},{},{}]]", c.n, c.k, c.d.render());
        out.push_str(&format!(
            "{:<15} {:<19} {:<19} {:<4} {:<5} {:<4} {:<3} {}\n",
            r.name,
            code(&r.code_2d),
            code(&r.code_3d),
            if r.injective { "yes" } else { "no" },
            r.rank,
            r.ccz.cup_depth,
            if r.nk_match { "ok" } else { "BAD" },
            if r.d_consistent { "ok" } else { "BAD" },
        ));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Memory,
    Teleport,
    SingleShot,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Member {
    #[serde(rename = "2d")]
    TwoD,
    #[default]
    #[serde(rename = "3d")]
    ThreeD,
}

fn default_rounds() -> usize {
    1
}

fn default_q() -> usize {
    1
}

/// One simulation batch: every `p` is run with the same seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub code: String,
    pub noise: NoiseMode,
    pub p: Vec<f64>,
    pub shots: u64,
    pub seed: u64,
    #[serde(default = "default_rounds")]
    pub rounds: usize,
    pub experiment: ExperimentKind,
    /// Memory experiments only.
    #[serde(default)]
    pub member: Member,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Basis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
    #[serde(default = "default_q")]
    pub q: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimPoint {
    pub p: f64,
    #[serde(flatten)]
    pub result: MonteCarloResult,
}

impl SimConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// The experiment at one physical error rate (single-shot runs have
    /// their own sampler and return `None`).
    pub fn experiment(&self, p: f64) -> Result<Option<Experiment>> {
        let pair = CodePair::load(&self.code)?;
        let noise = NoiseModel::from_mode(self.noise, p);
        match self.experiment {
            ExperimentKind::Memory => {
                let code = match self.member {
                    Member::TwoD => &pair.code_2d,
                    Member::ThreeD => &pair.code_3d,
                };
                let c = memory_circuit(code, self.basis.unwrap_or(Basis::X), self.rounds, &noise)?;
                Ok(Some(Experiment::new("memory", c, code.k(), Some(self.rounds))?))
            }
            ExperimentKind::Teleport => {
                let setup = TeleportSetup::new(&pair, self.q)?;
                let c = teleport_circuit(&setup, self.direction.unwrap_or(Direction::To3D), self.rounds, &noise)?;
                Ok(Some(Experiment::new("teleport", c, setup.k(), None)?))
            }
            ExperimentKind::SingleShot => Ok(None),
        }
    }

    pub fn run(&self) -> Result<Vec<SimPoint>> {
        if self.p.is_empty() {
            return Err(Error::InvalidArgument("no error rates given".into()));
        }
        self.p
            .iter()
            .map(|&p| {
                let result = match self.experiment(p)? {
                    Some(exp) => monte_carlo(&exp, self.shots, self.seed)?,
                    None => {
                        let pair = CodePair::load(&self.code)?;
                        single_shot_monte_carlo(&pair.code_3d, &NoiseModel::from_mode(self.noise, p), self.shots, self.seed)?
                    }
                };
                Ok(SimPoint { p, result })
            })
            .collect()
    }
}

pub fn sim_csv(points: &[SimPoint]) -> String {
    let mut out = String::from("p,shots,failures,P,p_L\n");
    for pt in points {
        let r = &pt.result;
        out.push_str(&format!("{},{},{},{},{}\n", pt.p, r.shots, r.failures, r.p_fail, r.p_logical));
    }
    out
}
