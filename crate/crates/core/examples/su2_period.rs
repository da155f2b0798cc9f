//! Periods of the Cartan 3-form over maps S^3 -> SU(2), and both sides of the
//! loop-period relation for the suspension generator.
//!
//! Run with `cargo run --release --example su2_period`.

use std::f64::consts::PI;

use lieper::lie::{normalized_killing, LieAlgebra, LinearMap};
use lieper::periods::{period_3form, twisted_loop_period, LoopFamily, SampledSphereMap, DEFAULT_LOOP_GRID};
use lieper::random::quarter_turn;

fn main() -> lieper::error::Result<()> {
    let kappa = normalized_killing(&LieAlgebra::su2());
    for k in [1, 2, -1, 3] {
        let r = period_3form(&kappa, &SampledSphereMap::power_s3(48, k), 1e-3)?;
        println!("z -> z^{k}: period {:.8} = {:.6} * 8 pi^2 (error estimate {:.1e})", r.value[0], r.value[0] / (8.0 * PI * PI), r.estimated_error);
    }
    for (name, twist) in [("untwisted", LinearMap::identity(3)), ("quarter turn", quarter_turn())] {
        let r = twisted_loop_period(&kappa, &LoopFamily::suspension_generator(), &twist, DEFAULT_LOOP_GRID, 1e-2)?;
        println!(
            "{name}: loop side {:.8}, 3-form side {:.8}, 4 pi^2 = {:.8}",
            r.lhs.value[0],
            r.rhs.value[0],
            4.0 * PI * PI
        );
    }
    Ok(())
}
