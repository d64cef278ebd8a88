use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};

use dimjump::ccz::{cup_product_ccz, equivariant_solve, induced_logical_tensor, verify_cup_validity, CczTensor, DEFAULT_BUDGET};
use dimjump::chain_map::{verify_chain_map, Inclusion};
use dimjump::codes::{
    code_distance, compute_parameters, logical_basis, CodeConfig, CodePair, CssCode, DEFAULT_ISD_ITERATIONS,
};
use dimjump::f2_linalg::io::{to_alist, to_matrix_market};
use dimjump::f2_linalg::BitMatrix;
use dimjump::report::{render_table1, sim_csv, table1, RunReport, SimConfig, Table1Options, Timing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Mtx,
    Alist,
    Json,
}

#[derive(Parser)]
#[command(name = "dimjump", version, about = "Lifted-product codes, dimension-jump chain maps, CCZ checks and simulation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Registry code name
    #[arg(long, global = true)]
    code: Option<String>,
    /// Code description (export, map-*, ccz-*) or experiment config (sim-run)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    shots: Option<u64>,
    /// Physical error rates, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    #[arg(long, global = true)]
    rounds: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Row of the inclusion map
    #[arg(long, global = true, default_value_t = 1)]
    q: usize,
    #[arg(long, global = true)]
    weight_cap: Option<usize>,
    /// Node budget of the equivariant CCZ search
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parameters, maps and CCZ depths of all published pairs
    Table1,
    /// Write Hx, Hz and Mz
    Export,
    /// Physical CNOT schedule of the inclusion map
    MapBuild,
    /// Chain-map and transversality checks
    MapVerify,
    /// Find a CCZ tensor on the 3D code
    CczFind,
    /// Check a CCZ tensor read from a file
    CczVerify { tensor: PathBuf },
    /// Monte Carlo batch; CSV on stdout unless --out is given
    SimRun,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// The pair named by --code, or built from a code description.
fn load_pair(cli: &Cli) -> Result<(CodePair, String)> {
    match (&cli.code, &cli.config) {
        (Some(name), _) => Ok((CodePair::load(name)?, name.clone())),
        (None, Some(path)) => {
            let text = read(path)?;
            let spec = CodeConfig::from_json(&text)?.to_spec("config")?;
            Ok((CodePair::build(&spec)?, text))
        }
        _ => bail!("need --code or --config"),
    }
}

fn load_code(cli: &Cli) -> Result<(CssCode, String, String)> {
    match (&cli.code, &cli.config) {
        (Some(name), _) => Ok((CodePair::load(name)?.code_3d, name.clone(), name.clone())),
        (None, Some(path)) => {
            let text = read(path)?;
            let stem = path.file_stem().map_or("code".into(), |s| s.to_string_lossy().into_owned());
            Ok((CodeConfig::from_json(&text)?.build()?, stem, text))
        }
        _ => bail!("need --code or --config"),
    }
}

fn run_table1(cli: &Cli) -> Result<ExitCode> {
    let opts = Table1Options {
        weight_cap: cli.weight_cap,
        seed: cli.seed.unwrap_or(0),
        budget: cli.budget.unwrap_or(DEFAULT_BUDGET),
        ..Table1Options::default()
    };
    let (rows, timings) = table1(&opts)?;
    let text = if cli.format == Some(Format::Json) {
        let cfg = format!("{:?}", opts);
        RunReport::new("table1", cfg.as_bytes(), &rows, timings).to_json()? + "\n"
    } else {
        render_table1(&rows)
    };
    emit(cli.out.as_deref(), &text)?;
    if rows.iter().any(|r| !r.nk_match) {
        warn!("published (n, k) mismatch");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn run_export(cli: &Cli) -> Result<()> {
    let (code, stem, cfg) = load_code(cli)?;
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    let mut mats: Vec<(&str, &BitMatrix)> = vec![("Hx", &code.hx), ("Hz", &code.hz)];
    if let Some(mz) = &code.mz {
        mats.push(("Mz", mz));
    }
    match cli.format.unwrap_or(Format::Mtx) {
        Format::Json => {
            let mut timings = Vec::new();
            let mut params = compute_parameters(&code);
            if let Some(cap) = cli.weight_cap {
                let t = std::time::Instant::now();
                let cd = code_distance(&code, cap, &[], DEFAULT_ISD_ITERATIONS, cli.seed.unwrap_or(0));
                timings.push(Timing { item: "distance".into(), seconds: t.elapsed().as_secs_f64() });
                params.d_z = Some(cd.d_z.distance);
                params.d_x = Some(cd.d_x.distance);
            }
            let path = dir.join(format!("{stem}.json"));
            fs::write(&path, RunReport::new("export", cfg.as_bytes(), params, timings).to_json()?)?;
            info!("wrote {}", path.display());
        }
        f => {
            for (name, m) in mats {
                let (ext, text) = if f == Format::Mtx { ("mtx", to_matrix_market(m)) } else { ("alist", to_alist(m)) };
                let path = dir.join(format!("{stem}_{name}.{ext}"));
                fs::write(&path, text)?;
                info!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn run_map_build(cli: &Cli) -> Result<()> {
    let (pair, cfg) = load_pair(cli)?;
    let inc = Inclusion::build(&pair, cli.q)?;
    let schedule = inc.logical.cnot_schedule();
    let text = if cli.format == Some(Format::Json) {
        RunReport::new("map-build", format!("{cfg}/q={}", cli.q).as_bytes(), schedule, vec![]).to_json()? + "\n"
    } else {
        schedule.iter().map(|(c, t)| format!("{c} {t}\n")).collect()
    };
    emit(cli.out.as_deref(), &text)
}

fn run_map_verify(cli: &Cli) -> Result<ExitCode> {
    let (pair, _) = load_pair(cli)?;
    let map = dimjump::chain_map::inclusion_chain_map(&pair, cli.q)?;
    if let Some(f) = verify_chain_map(&map)? {
        println!("chain map FAILED: {f:?}");
        return Ok(ExitCode::FAILURE);
    }
    let inc = Inclusion::build(&pair, cli.q)?;
    let phys = if inc.logical.physically_transversal() { "physically transversal" } else { "not physically transversal" };
    let logical = if inc.logical.injective { "logically transversal" } else { "not logically transversal" };
    println!("chain map ok; {phys}; {logical} (rank {})", inc.logical.rank);
    Ok(if inc.logical.injective && inc.logical.physically_transversal() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run_ccz_find(cli: &Cli) -> Result<()> {
    let (pair, _) = load_pair(cli)?;
    let code = &pair.code_3d;
    let mut delta = None;
    if pair.spec.elements()?.is_some() {
        let target = pair.spec.published.as_ref().and_then(|p| p.ccz_depth).unwrap_or(2);
        let out = equivariant_solve(code, target, cli.budget.unwrap_or(DEFAULT_BUDGET))?;
        info!("equivariant search: {} nodes, exhausted {}", out.nodes, out.budget_exhausted);
        delta = out.solution.map(|(_, d)| d);
    }
    let delta = match delta {
        Some(d) => d,
        None => {
            info!("using the cup-product construction");
            cup_product_ccz(&pair)?
        }
    };
    let text = if cli.format == Some(Format::Json) { delta.to_json()? + "\n" } else { delta.to_text() };
    emit(cli.out.as_deref(), &text)
}

fn run_ccz_verify(cli: &Cli, path: &Path) -> Result<ExitCode> {
    let (pair, _) = load_pair(cli)?;
    let c = &pair.code_3d;
    let text = read(path)?;
    let delta = if text.trim_start().starts_with('{') {
        CczTensor::from_json(&text)?
    } else {
        CczTensor::from_text(&text, Some([c.n; 3]))?
    };
    if let Some(v) = verify_cup_validity(&delta, [c, c, c])? {
        println!("invalid: {v:?}");
        return Ok(ExitCode::FAILURE);
    }
    let lb = logical_basis(c)?;
    let a = induced_logical_tensor(&delta, [c, c, c], [&lb, &lb, &lb])?;
    println!("valid; nontrivial {}; depth {}; {} logical entries", a.nontrivial, a.depth, a.logical.entries.len());
    Ok(ExitCode::SUCCESS)
}

fn sim_config(cli: &Cli) -> Result<SimConfig> {
    let mut cfg = match &cli.config {
        Some(path) => SimConfig::from_json(&read(path)?)?,
        None => {
            let code = cli.code.clone().context("need --config or --code")?;
            SimConfig::from_json(&format!(
                r#"{{"code":"{code}","noise":"code_capacity","p":[0.001],"shots":10000,"seed":0,"experiment":"memory"}}"#
            ))?
        }
    };
    let from_file = cli.config.is_some();
    let notice = |flag: &str| {
        if from_file {
            info!("--{flag} overrides the config file");
        }
    };
    if let Some(c) = &cli.code {
        notice("code");
        cfg.code = c.clone();
    }
    if let Some(s) = cli.seed {
        notice("seed");
        cfg.seed = s;
    }
    if let Some(s) = cli.shots {
        notice("shots");
        cfg.shots = s;
    }
    if let Some(p) = &cli.p {
        notice("p");
        cfg.p = p.clone();
    }
    if let Some(r) = cli.rounds {
        notice("rounds");
        cfg.rounds = r;
    }
    Ok(cfg)
}

fn run_sim(cli: &Cli) -> Result<()> {
    let cfg = sim_config(cli)?;
    let t = std::time::Instant::now();
    let points = cfg.run()?;
    let text = if cli.format == Some(Format::Json) {
        let timing = Timing { item: "sim".into(), seconds: t.elapsed().as_secs_f64() };
        RunReport::new("sim-run", cfg.to_json()?.as_bytes(), &points, vec![timing]).to_json()? + "\n"
    } else {
        sim_csv(&points)
    };
    emit(cli.out.as_deref(), &text)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.cmd {
        Cmd::Table1 => run_table1(cli),
        Cmd::Export => run_export(cli).map(|_| ExitCode::SUCCESS),
        Cmd::MapBuild => run_map_build(cli).map(|_| ExitCode::SUCCESS),
        Cmd::MapVerify => run_map_verify(cli),
        Cmd::CczFind => run_ccz_find(cli).map(|_| ExitCode::SUCCESS),
        Cmd::CczVerify { tensor } => run_ccz_verify(cli, tensor),
        Cmd::SimRun => run_sim(cli).map(|_| ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": format!("{e:#}") }));
            ExitCode::from(2)
        }
    }
}
