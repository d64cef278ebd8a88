//! CCZ tensors on bt-27: equivariant search, the cup-product construction,
//! validity, logical action and the propagated Z-error channel.

use dimjump::ccz::{
    cup_product_ccz, equivariant_solve, induced_logical_tensor, propagated_error_channel, verify_cup_validity, DEFAULT_BUDGET,
};
use dimjump::codes::{logical_basis, CodePair};

fn main() -> dimjump::Result<()> {
    let pair = CodePair::load("bt-27")?;
    let c = &pair.code_3d;
    let lb = logical_basis(c)?;

    let out = equivariant_solve(c, 2, DEFAULT_BUDGET)?;
    println!("search: {} nodes, exhausted {}", out.nodes, out.budget_exhausted);
    let cup = cup_product_ccz(&pair)?;
    let found = out.solution.map(|(_, d)| d);
    for (label, delta) in [("solver", found.as_ref()), ("cup", Some(&cup))] {
        let Some(delta) = delta else { continue };
        let valid = verify_cup_validity(delta, [c, c, c])?.is_none();
        let a = induced_logical_tensor(delta, [c, c, c], [&lb, &lb, &lb])?;
        println!(
            "{label}: {} triples, valid {valid}, nontrivial {}, depth {}, logical entries {:?}",
            delta.len(),
            a.nontrivial,
            a.depth,
            a.logical.entries
        );
        let channel = propagated_error_channel(delta, 1e-3)?;
        let weights: std::collections::BTreeSet<usize> = channel.iter().map(|z| z.support.len()).collect();
        println!("  {} correlated Z channels with weights {weights:?}", channel.len());
    }
    Ok(())
}
