use dimjump::codes::{spacetime_cost, CodePair};

fn main() -> dimjump::Result<()> {
    for (name, success) in [("bt-27", 0.704), ("bt-81", 0.349)] {
        let c = CodePair::load(name)?.code_3d;
        let w = c.hx.max_row_weight().max(c.hz.max_row_weight());
        let cost = spacetime_cost(c.n, c.hx.rows(), c.hz.rows(), c.k(), success, w)?;
        println!("{name}: qubits x rounds per CCZ state = {cost}");
    }
    Ok(())
}
