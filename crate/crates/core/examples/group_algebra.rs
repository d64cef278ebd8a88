//! Arithmetic in F2[Z3 x Z3] and the regular representation.

use dimjump::group_algebra::{parse_element, FiniteAbelianGroup};

fn main() -> dimjump::Result<()> {
    let g = FiniteAbelianGroup::new(vec![3, 3])?;
    let a = parse_element("x^2*y + x^2*y^2", &g)?;
    let b = parse_element("1 + x*y^2", &g)?;
    let ab = a.mul(&b)?;
    println!("a = {}\nb = {}\nab = {}", a.render(), b.render(), ab.render());
    println!("antipode(a) = {}", a.antipode().render());

    let lhs = ab.binary_rep();
    let rhs = a.binary_rep().mul(&b.binary_rep())?;
    println!("B(ab) == B(a)B(b): {}", lhs == rhs);
    println!("B(a) is {}x{} with {} ones", lhs.rows(), lhs.cols(), a.binary_rep().count_ones());
    Ok(())
}
