//! Planar torus embedding of a tricycle code.

use dimjump::codes::{torus_layout, CodePair};

fn main() -> dimjump::Result<()> {
    let pair = CodePair::load("fig-s1")?;
    let layout = torus_layout(&pair.code_3d)?;
    println!("{} x {} torus, {} sites", layout.lx, layout.ly, layout.sites.len());
    println!("translation invariant: {}", layout.translation_invariant(&pair.code_3d));
    let support = layout.x_check_at_identity(&pair.code_3d);
    for q in support {
        let s = &layout.sites[q];
        println!("  qubit {q:>3} sector {} at ({:.3}, {:.3})", s.sector, s.xy.0, s.xy.1);
    }
    Ok(())
}
