//! Ideal membership c in (a, b) for the tricycle codes, and a case where it
//! fails and the logical map loses rank.

use dimjump::chain_map::{ideal_membership, Inclusion};
use dimjump::codes::{CodePair, CodeSpec, Checks};
use dimjump::group_algebra::FiniteAbelianGroup;

fn main() -> dimjump::Result<()> {
    for name in ["bt-27", "bt-45", "bt-81", "tt-210"] {
        let pair = CodePair::load(name)?;
        let [a, b, c] = pair.spec.elements()?.expect("polynomial code");
        let m = ideal_membership(&a, &b, &c)?;
        match m.certificate {
            Some(cert) => println!("{name}: u = {}, v = {} (odd order: {})", cert.u.render(), cert.v.render(), m.odd_order),
            None => println!("{name}: no certificate"),
        }
    }

    let spec = CodeSpec {
        name: "counterexample".into(),
        group: FiniteAbelianGroup::cyclic(3),
        checks: Checks::Polynomials { a: "1 + x".into(), b: "1 + x".into(), c: "1".into() },
        published: None,
    };
    let [a, b, c] = spec.elements()?.expect("polynomial code");
    println!("counterexample certificate: {:?}", ideal_membership(&a, &b, &c)?.certificate.is_some());
    let inc = Inclusion::build(&CodePair::build(&spec)?, 1)?;
    println!("counterexample logical map: rank {} of {}", inc.logical.rank, inc.source_basis.k());
    Ok(())
}
