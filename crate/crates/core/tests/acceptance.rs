mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{add, dense_rank, from_element, mul, poly, rows_orthogonal};
use dimjump::ccz::{
    equivariant_solve, induced_logical_tensor, propagated_error_channel, verify_cup_validity, CczTensor, DEFAULT_BUDGET,
};
use dimjump::chain_map::{ideal_membership, inclusion_chain_map, verify_chain_map, Inclusion};
use dimjump::codes::{kunneth_k_hgp, logical_basis, spacetime_cost, Basis, CodePair, CodeSpec, Checks, Distance};
use dimjump::f2_linalg::{BitMatrix, BitVec};
use dimjump::group_algebra::{FiniteAbelianGroup, GroupAlgebraElement};
use dimjump::report::{table1_row, Table1Options};
use dimjump::sim::{
    memory_circuit, monte_carlo, single_shot_dem_experiment, single_shot_monte_carlo, single_shot_repair, teleport_circuit,
    verify_teleport_logical_action, Direction, Experiment, NoiseMode, NoiseModel, SingleShotDecoder, TeleportSetup,
    DEFAULT_PRIOR,
};

const TABLE: [(&str, [usize; 3], [usize; 3]); 7] = [
    ("pentagon", [45, 7, 3], [180, 8, 3]),
    ("lifted-toric-2", [16, 2, 4], [48, 3, 4]),
    ("lifted-toric-3", [36, 2, 6], [162, 3, 6]),
    ("bt-27", [18, 2, 3], [27, 3, 3]),
    ("bt-45", [30, 2, 5], [45, 3, 4]),
    ("bt-81", [54, 2, 6], [81, 3, 5]),
    ("tt-210", [140, 2, 8], [210, 3, 7]),
];

/// Codes whose distance is reproduced exactly.
const EXACT: [[usize; 3]; 10] = [
    [18, 2, 3],
    [27, 3, 3],
    [30, 2, 5],
    [45, 3, 4],
    [48, 3, 4],
    [45, 7, 3],
    [54, 2, 6],
    [81, 3, 5],
    [180, 8, 3],
    [36, 2, 6],
];

const SLOPE_TOLERANCE: f64 = 0.3;
const SCALING_SHOTS: u64 = 4_000_000;
const NOISELESS_SHOTS: u64 = 2_000;
const RANDOM_TENSORS: usize = 100;
const MIN_REJECTED: usize = 99;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn parameters() -> Outcome {
    let t = Instant::now();
    let mut good = 0;
    let mut bad = Vec::new();
    for (name, p2, p3) in TABLE {
        let pair = CodePair::load(name).map_err(|e| e.to_string())?;
        for (code, p) in [(&pair.code_2d, p2), (&pair.code_3d, p3)] {
            if (code.n, code.k()) == (p[0], p[1]) {
                good += 1;
            } else {
                bad.push(format!("{name}: ({}, {}) vs ({}, {})", code.n, code.k(), p[0], p[1]));
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    check(bad.is_empty() && secs < 10.0, format!("{good}/14 (n,k) in {secs:.1}s {bad:?}"))
}

fn distances() -> Outcome {
    let opts = Table1Options { solver_max_n: 0, ..Table1Options::default() };
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, p2, p3) in TABLE {
        let row = table1_row(name, &opts).map_err(|e| e.to_string())?;
        for (r, p) in [(&row.code_2d, p2), (&row.code_3d, p3)] {
            if EXACT.contains(&p) {
                let good = r.d_z == Distance::Exact(p[2]) && r.d == Distance::Exact(p[2]);
                ok &= good;
                if !good {
                    notes.push(format!("[[{},{},{}]] got d_z {:?} d {:?}", p[0], p[1], p[2], r.d_z, r.d));
                }
            } else {
                let up = r.d_z.upper().zip(r.d.upper());
                let good = up.is_some_and(|(a, b)| a <= p[2] && b <= p[2]);
                ok &= good;
                notes.push(format!("[[{},{},{}]] d {}", p[0], p[1], p[2], r.d.render()));
            }
        }
    }
    check(ok, format!("10 exact; {}", notes.join(", ")))
}

fn structure() -> Outcome {
    let mut checked = 0;
    for (name, _, _) in TABLE {
        let pair = CodePair::load(name).map_err(|e| e.to_string())?;
        for cx in [&pair.complex_2d, &pair.complex_3d] {
            if cx.validate().map_err(|e| e.to_string())?.is_some() || cx.binary_lift().validate().map_err(|e| e.to_string())?.is_some() {
                return Err(format!("{name}: ∂∂ ≠ 0"));
            }
        }
        for code in [&pair.code_2d, &pair.code_3d] {
            if !rows_orthogonal(&code.hx, &code.hz) {
                return Err(format!("{name}: Hx·Hzᵀ ≠ 0"));
            }
            if let Some(mz) = &code.mz {
                if !rows_orthogonal(mz, &code.hz.transpose()) {
                    return Err(format!("{name}: Mz·Hz ≠ 0"));
                }
            }
            checked += 1;
        }
    }
    let mut products = 0u64;
    for orders in [vec![2], vec![3], vec![4], vec![5], vec![2, 2], vec![2, 3], vec![6]] {
        let g = FiniteAbelianGroup::new(orders).map_err(|e| e.to_string())?;
        let l = g.size();
        let all: Vec<GroupAlgebraElement> =
            (0..1usize << l).map(|m| GroupAlgebraElement::from_indices(&g, (0..l).filter(|i| m >> i & 1 == 1))).collect();
        for a in &all {
            for b in &all {
                let ab = a.mul(b).map_err(|e| e.to_string())?;
                if ab.binary_rep() != a.binary_rep().mul(&b.binary_rep()).map_err(|e| e.to_string())? {
                    return Err(format!("B(ab) ≠ B(a)B(b) for {} and {}", a.render(), b.render()));
                }
                products += 1;
            }
        }
    }
    Ok(format!("{checked} codes orthogonal, complexes exact, {products} products B(ab)=B(a)B(b)"))
}

fn chain_maps() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, _, _) in TABLE {
        let pair = CodePair::load(name).map_err(|e| e.to_string())?;
        let map = inclusion_chain_map(&pair, 1).map_err(|e| e.to_string())?;
        let commutes = verify_chain_map(&map).map_err(|e| e.to_string())?.is_none();
        let inc = Inclusion::build(&pair, 1).map_err(|e| e.to_string())?;
        let good = commutes && inc.logical.physically_transversal() && inc.logical.injective;
        ok &= good;
        if name == "bt-27" {
            ok &= inc.logical.addressed() == 2 && pair.code_3d.k() == 3;
            notes.push(format!("bt-27 addresses {} of {}", inc.logical.addressed(), pair.code_3d.k()));
        }
        if !good {
            notes.push(format!("{name} failed"));
        }
    }
    check(ok, format!("7 inclusions commute, transversal, injective; {}", notes.join(", ")))
}

fn certificates() -> Outcome {
    // (orders, a, b, c, u, v)
    let cases = [
        (vec![3, 3], "x^2*y + x^2*y^2", "1 + x*y^2", "x + x^2*y", "1", "x"),
        (vec![3, 5], "x + y^2", "1 + x*y^2", "x + x*y^3", "1", "x^2 + x*y^3"),
        (vec![3, 9], "x*y^3 + x^2*y", "1 + x*y^8", "x^2*y^4 + x^2*y^6", "y^3 + y^4", "x*y^6 + x*y^7"),
    ];
    let mut solved = 0;
    for (orders, a, b, c, u, v) in &cases {
        let [a, b, c, u, v] = [a, b, c, u, v].map(|s| poly(s, orders));
        if add(&mul(&u, &a, orders), &mul(&v, &b, orders)) != c {
            return Err(format!("published pair fails over {orders:?}"));
        }
        let g = FiniteAbelianGroup::new(orders.clone()).map_err(|e| e.to_string())?;
        let el = |p: &common::Poly| GroupAlgebraElement::from_indices(&g, p.iter().map(|e| g.index(&e.iter().map(|&x| x as i64).collect::<Vec<_>>())));
        let m = ideal_membership(&el(&a), &el(&b), &el(&c)).map_err(|e| e.to_string())?;
        let Some(cert) = m.certificate else { return Err(format!("solver found no certificate over {orders:?}")) };
        let (su, sv) = (from_element(&cert.u), from_element(&cert.v));
        if add(&mul(&su, &a, orders), &mul(&sv, &b, orders)) != c {
            return Err("solver certificate fails the oracle".into());
        }
        solved += 1;
    }
    let spec = CodeSpec {
        name: "counterexample".into(),
        group: FiniteAbelianGroup::cyclic(3),
        checks: Checks::Polynomials { a: "1 + x".into(), b: "1 + x".into(), c: "1".into() },
        published: None,
    };
    let [a, b, c] = spec.elements().map_err(|e| e.to_string())?.expect("polynomial spec");
    let none = ideal_membership(&a, &b, &c).map_err(|e| e.to_string())?.certificate.is_none();
    let pair = CodePair::build(&spec).map_err(|e| e.to_string())?;
    let inc = Inclusion::build(&pair, 1).map_err(|e| e.to_string())?;
    check(
        none && !inc.logical.injective,
        format!("3 published pairs verify, solver {solved}/3, counterexample has no certificate and rank {}", inc.logical.rank),
    )
}

fn kunneth() -> Outcome {
    let pair = CodePair::load("pentagon").map_err(|e| e.to_string())?;
    let predicted = kunneth_k_hgp(&pair.code_2d, &pair.classical[2]).map_err(|e| e.to_string())?;
    let k = dense_k(&pair.code_3d.hx, &pair.code_3d.hz, pair.code_3d.n);
    check(predicted == 8 && k == 8 && pair.code_2d.k() + 1 == 8, format!("predicted {predicted}, rank-computed {k}"))
}

fn dense_k(hx: &BitMatrix, hz: &BitMatrix, n: usize) -> usize {
    n - dense_rank(hx) - dense_rank(hz)
}

fn teleport() -> Outcome {
    let mut checks = 0;
    for name in ["bt-27", "bt-45", "lifted-toric-2", "pentagon"] {
        let pair = CodePair::load(name).map_err(|e| e.to_string())?;
        let setup = TeleportSetup::new(&pair, 1).map_err(|e| e.to_string())?;
        for dir in [Direction::To3D, Direction::To2D] {
            let r = verify_teleport_logical_action(&setup, dir).map_err(|e| e.to_string())?;
            if !r.ok() {
                return Err(format!("{name} {dir:?}: {:?}", r.mismatches.first()));
            }
            checks += r.checks;
        }
    }
    Ok(format!("{checks} exact logical checks, 0 mismatches"))
}

fn in_row_space(h: &BitMatrix, v: &BitVec) -> bool {
    let stacked = BitMatrix::vstack(&[h, &BitMatrix::from_rows(v.len(), std::slice::from_ref(v))]).unwrap();
    dense_rank(&stacked) == dense_rank(h)
}

fn single_shot() -> Outcome {
    let mut notes = Vec::new();
    for name in ["bt-27", "bt-45"] {
        let pair = CodePair::load(name).map_err(|e| e.to_string())?;
        let code = &pair.code_3d;
        let dec = SingleShotDecoder::new(code, DEFAULT_PRIOR).map_err(|e| e.to_string())?;
        let m = code.hz.rows();
        let mut flips = 0;
        for i in 0..m {
            let observed = BitVec::from_indices(m, [i]);
            let r = single_shot_repair(&dec, &observed).map_err(|e| e.to_string())?;
            flips += usize::from(r.repaired.is_zero() && r.fix.is_zero());
        }
        let mut data = 0;
        for j in 0..code.n {
            let e = BitVec::from_indices(code.n, [j]);
            let r = single_shot_repair(&dec, &code.hz.mul_vec(&e).unwrap()).map_err(|e| e.to_string())?;
            data += usize::from(in_row_space(&code.hx, &r.fix.xor(&e)));
        }
        notes.push(format!("{name}: {flips}/{m} bit flips, {data}/{} data errors", code.n));
        if flips != m || data != code.n {
            return Err(notes.join("; "));
        }
    }
    Ok(notes.join("; "))
}

fn noiseless_experiments() -> Result<usize, String> {
    let e = |x: dimjump::Error| x.to_string();
    let pair = CodePair::load("bt-27").map_err(e)?;
    let setup = TeleportSetup::new(&pair, 1).map_err(e)?;
    let mut runs = 0;
    for mode in [NoiseMode::CodeCapacity, NoiseMode::Phenomenological, NoiseMode::CircuitLevel] {
        let noise = NoiseModel::from_mode(mode, 0.0);
        let mut exps = Vec::new();
        for basis in [Basis::X, Basis::Z] {
            exps.push(Experiment::new("memory", memory_circuit(&pair.code_3d, basis, 2, &noise).map_err(e)?, 3, Some(2)).map_err(e)?);
        }
        for dir in [Direction::To3D, Direction::To2D] {
            exps.push(Experiment::new("teleport", teleport_circuit(&setup, dir, 2, &noise).map_err(e)?, 2, None).map_err(e)?);
        }
        exps.push(single_shot_dem_experiment(&pair.code_3d, &noise).map_err(e)?);
        for exp in &exps {
            let r = monte_carlo(exp, NOISELESS_SHOTS, 1).map_err(e)?;
            if r.p_fail != 0.0 {
                return Err(format!("noiseless {} ({mode:?}) failed {} times", exp.name, r.failures));
            }
            runs += 1;
        }
        let r = single_shot_monte_carlo(&pair.code_3d, &noise, NOISELESS_SHOTS, 1).map_err(e)?;
        if r.p_fail != 0.0 {
            return Err(format!("noiseless single-shot ({mode:?}) failed {} times", r.failures));
        }
        runs += 1;
    }
    Ok(runs)
}

fn scaling() -> Outcome {
    let pair = CodePair::load("bt-27").map_err(|e| e.to_string())?;
    let mut p_fail = Vec::new();
    for p in [1e-3, 2e-3] {
        let c = memory_circuit(&pair.code_3d, Basis::X, 1, &NoiseModel::code_capacity(p)).map_err(|e| e.to_string())?;
        let exp = Experiment::new("memory", c, 3, Some(1)).map_err(|e| e.to_string())?;
        let r = monte_carlo(&exp, SCALING_SHOTS, 2024).map_err(|e| e.to_string())?;
        p_fail.push((r.p_fail, r.failures));
    }
    let slope = (p_fail[1].0 / p_fail[0].0).ln() / 2f64.ln();
    let runs = noiseless_experiments()?;
    check(
        (slope - 2.0).abs() <= SLOPE_TOLERANCE,
        format!(
            "slope {slope:.3} ({} and {} failures in {SCALING_SHOTS} shots), {runs} noiseless runs with P = 0",
            p_fail[0].1, p_fail[1].1
        ),
    )
}

fn ccz() -> Outcome {
    let pair = CodePair::load("bt-27").map_err(|e| e.to_string())?;
    let c = &pair.code_3d;
    let lb = logical_basis(c).map_err(|e| e.to_string())?;
    let out = equivariant_solve(c, 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let Some((_, delta)) = out.solution else { return Err("solver found no tensor".into()) };
    let valid = verify_cup_validity(&delta, [c, c, c]).map_err(|e| e.to_string())?.is_none();
    let a = induced_logical_tensor(&delta, [c, c, c], [&lb, &lb, &lb]).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let rejected = (0..RANDOM_TENSORS)
        .filter(|_| {
            let t = (0..100).map(|_| [rng.gen_range(0..27), rng.gen_range(0..27), rng.gen_range(0..27)]);
            let d = CczTensor::from_triples([27; 3], t).unwrap();
            verify_cup_validity(&d, [c, c, c]).unwrap().is_some()
        })
        .count();
    let channel = propagated_error_channel(&delta, 1e-3).map_err(|e| e.to_string())?;
    let weight5 = channel.iter().all(|z| z.support.len() == 5);
    let costs = (spacetime_cost(27, 9, 27, 3, 0.704, 6), spacetime_cost(81, 27, 81, 3, 0.349, 6));
    let costs_ok = matches!(costs, (Ok(239), Ok(1444)));
    check(
        valid && a.nontrivial && a.depth == 2 && rejected >= MIN_REJECTED && weight5 && costs_ok,
        format!(
            "valid {valid}, nontrivial {}, depth {}, rejected {rejected}/{RANDOM_TENSORS}, weight-5 channel {weight5}, costs {:?}",
            a.nontrivial,
            a.depth,
            (costs.0.ok(), costs.1.ok())
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("parameter reproduction", parameters),
        ("distance reproduction", distances),
        ("structural invariants", structure),
        ("chain-map suite", chain_maps),
        ("ideal certificates", certificates),
        ("kunneth count", kunneth),
        ("teleport logical action", teleport),
        ("single-shot repair", single_shot),
        ("monte carlo scaling", scaling),
        ("ccz", ccz),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(d) => println!("[PASS] {:>2} {name}: {d} ({secs:.1}s)", i + 1),
            Err(d) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {d} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
