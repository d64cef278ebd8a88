//! Builds every registry pair and prints parameters and check weights.

use dimjump::codes::{compute_parameters, CodeConfig, CodePair, REGISTRY_NAMES};

fn main() -> dimjump::Result<()> {
    for name in REGISTRY_NAMES {
        let pair = CodePair::load(name)?;
        let p2 = compute_parameters(&pair.code_2d);
        let p3 = compute_parameters(&pair.code_3d);
        println!(
            "{name:<15} 2D [[{}, {}]] w={}   3D [[{}, {}]] w={} meta-checks={}",
            p2.n,
            p2.k,
            p2.max_stabilizer_weight(),
            p3.n,
            p3.k,
            p3.max_stabilizer_weight(),
            pair.code_3d.mz.as_ref().map_or(0, |m| m.rows()),
        );
    }

    // the same 3D code from a JSON description
    let cfg = CodeConfig::from_json(
        r#"{"group":{"orders":[3,3]},"construction":"bt",
            "polynomials":{"a":"x^2*y + x^2*y^2","b":"1 + x*y^2","c":"x + x^2*y"}}"#,
    )?;
    let code = cfg.build()?;
    println!("from config: n = {}, k = {}", code.n, code.k());
    Ok(())
}
