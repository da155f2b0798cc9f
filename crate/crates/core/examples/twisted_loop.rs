//! Twisted loop algebra cocycles: cokernels of phi - id, the integration
//! isomorphism and the fourth-order convergence of the cocycle identity.
//!
//! Run with `cargo run --release --example twisted_loop`.

use lieper::exact::int;
use lieper::invariants::{induced_map_on_v, universal_form, MapMode};
use lieper::lie::LieAlgebra;
use lieper::random::{quarter_turn, random_finite_order_matrix, random_twisted_su2};
use lieper::twisted_loop::{cocycle_identity_check, coker_equals_fixed_for_finite_order, cokernel, integrate_twisted, section_with_integral, omega_phi};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lieper::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for dim in 2..=4 {
        let phi = random_finite_order_matrix(&mut rng, dim);
        let r = coker_equals_fixed_for_finite_order(&phi, 12)?;
        println!("order {} map on R^{dim}: dim coker = {}, dim fixed = {}, averaging iso: {}", r.order, r.coker_dim, r.fixed_dim, r.averaging_is_isomorphism);
    }

    let cycle = lieper::lie::LinearMap::new(lieper::exact::Matrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]));
    let coker = cokernel(&cycle)?;
    let f = section_with_integral(&[int(3), int(0), int(0)], &cycle, 64)?;
    println!("integral of the section built from (3, 0, 0): {:?} in coker coordinates", integrate_twisted(&f, &coker)?);

    let su2 = LieAlgebra::su2();
    let u = universal_form(&su2);
    let coker = cokernel(&induced_map_on_v(&u, &quarter_turn(), MapMode::Automorphism)?)?;
    for n in [64, 128, 256] {
        let mut r = ChaCha8Rng::seed_from_u64(7);
        let (f, g, h) = (random_twisted_su2(&mut r, n), random_twisted_su2(&mut r, n), random_twisted_su2(&mut r, n));
        let w = omega_phi(&f, &g, u.kappa(), &coker)?;
        let res = cocycle_identity_check(&su2, &f, &g, &h, u.kappa(), &coker)?;
        println!("N = {n}: omega(f, g) = {:.8}, cocycle residual {res:.2e}", w[0]);
    }
    Ok(())
}
