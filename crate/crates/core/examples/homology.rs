//! Homology of the 3D complex and of its dual, and the Künneth count for
//! a binary product.

use dimjump::codes::{kunneth_k_hgp, CodePair};

fn main() -> dimjump::Result<()> {
    let pair = CodePair::load("bt-27")?;
    let cx = pair.complex_3d.binary_lift();
    println!("dims {:?}, euler characteristic {}", cx.dims(), cx.euler_characteristic());
    for i in 0..=cx.length() {
        println!("H_{i} has dimension {}", cx.homology(i).dimension);
    }
    let h1 = cx.homology(1);
    println!("first H_1 representative has weight {}", h1.representatives[0].weight());
    println!("k from ranks = {}", pair.code_3d.k());

    let pentagon = CodePair::load("pentagon")?;
    let predicted = kunneth_k_hgp(&pentagon.code_2d, &pentagon.classical[2])?;
    println!("pentagon: predicted k = {predicted}, computed k = {}", pentagon.code_3d.k());
    Ok(())
}
