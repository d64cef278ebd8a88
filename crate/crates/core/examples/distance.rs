//! Exhaustive distance search with a candidate budget, plus bounds for a
//! code too large to enumerate.

use std::time::Instant;

use dimjump::codes::{auto_weight_cap, code_distance, CodePair, CANDIDATE_BUDGET, DEFAULT_ISD_ITERATIONS};

fn main() -> dimjump::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "bt-45".into());
    let pair = CodePair::load(&name)?;
    for (label, code) in [("2D", &pair.code_2d), ("3D", &pair.code_3d)] {
        let cap = auto_weight_cap(code.n, CANDIDATE_BUDGET);
        let t = Instant::now();
        let d = code_distance(code, cap, &[], DEFAULT_ISD_ITERATIONS, 1);
        println!(
            "{name} {label}: n={} cap={cap} d_z={} d_x={} d={} ({} candidates, {:.2?})",
            code.n,
            d.d_z.distance.render(),
            d.d_x.distance.render(),
            d.d.render(),
            d.d_z.candidates + d.d_x.candidates,
            t.elapsed()
        );
        if let Some(w) = &d.d_z.witness {
            println!("  Z witness on qubits {:?}", w.ones().collect::<Vec<_>>());
        }
    }
    Ok(())
}
