//! The 2D to 3D inclusion: commuting squares, transversality and the
//! physical CNOT schedule.

use dimjump::chain_map::{inclusion_chain_map, verify_chain_map, Inclusion};
use dimjump::codes::CodePair;

fn main() -> dimjump::Result<()> {
    let pair = CodePair::load("bt-27")?;
    let map = inclusion_chain_map(&pair, 1)?;
    println!("squares: {:?}", verify_chain_map(&map)?.map_or("commute".to_string(), |f| format!("{f:?}")));

    let inc = Inclusion::build(&pair, 1)?;
    let lm = &inc.logical;
    println!("physically transversal: {}", lm.physically_transversal());
    println!("injective: {} (rank {} of k_2D = {})", lm.injective, lm.rank, inc.source_basis.k());
    println!("induced logical map (k_3D x k_2D):");
    for r in 0..lm.bar_gamma1.rows() {
        let row: String = (0..lm.bar_gamma1.cols()).map(|c| if lm.bar_gamma1.get(r, c) { '1' } else { '0' }).collect();
        println!("  {row}");
    }
    let schedule = lm.cnot_schedule();
    println!("{} CNOTs (3D control, 2D target), first: {:?}", schedule.len(), &schedule[..4]);
    Ok(())
}
