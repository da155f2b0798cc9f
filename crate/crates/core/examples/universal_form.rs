//! Universal invariant forms, factorization of the Killing form, and the
//! centroid of a few small algebras.
//!
//! Run with `cargo run --example universal_form`.

use lieper::invariants::{centroid, factor_through, universal_form};
use lieper::lie::LieAlgebra;

fn main() -> lieper::error::Result<()> {
    let algebras = [
        ("su(2)", LieAlgebra::su2()),
        ("sl(2,C) as a real algebra", LieAlgebra::sl2c_real()),
        ("gl(2,R)", LieAlgebra::gl(2)),
        ("abelian R^3", LieAlgebra::abelian(3)),
    ];
    for (name, alg) in &algebras {
        let u = universal_form(alg);
        println!("{name}: dim S^2 = {}, dim V = {}, dim centroid = {}", u.sym_square_dim(), u.quotient_dim(), centroid(alg).len());
    }

    // Every invariant form factors through V(k); for su(2) the Killing form
    // is a multiple of the universal one.
    let su2 = LieAlgebra::su2();
    let u = universal_form(&su2);
    let f = factor_through(&u, &su2.killing_form())?;
    println!("Killing form of su(2) = {} * kappa_u", f.matrix.get(0, 0));
    Ok(())
}
