//! The Cartan 3-cocycle of an invariant form and the 2-cocycle of an inner
//! derivation.
//!
//! Run with `cargo run --example cartan_cocycle`.

use lieper::cohomology::{cartan_map, ce_differential, contract_first, eta_d, is_coboundary2, solve_exactness};
use lieper::exact::int;
use lieper::lie::{normalized_killing, LieAlgebra};

fn main() -> lieper::error::Result<()> {
    let su2 = LieAlgebra::su2();
    let kappa = normalized_killing(&su2);
    let c = cartan_map(&su2, &kappa)?;
    println!("C(kappa)(I, J, K) = {}", c.at(&[0, 1, 2])[0]);
    println!("closed: {}", ce_differential(&c, &su2)?.is_zero());
    println!("exact: {}", solve_exactness(&c, &su2)?.is_exact());

    let x = vec![int(1), int(2), int(-1)];
    let eta = eta_d(&su2, &kappa, &su2.ad(&x)?)?;
    let verdict = is_coboundary2(&eta, &su2)?;
    println!("eta_ad(x) is a coboundary: {}", verdict.is_exact());
    println!("witness equals kappa(x, .): {}", verdict.witness() == Some(&contract_first(&kappa, &su2, &x)));
    Ok(())
}
