//! Holonomy of commutator loops on a local patch: the second derivative at
//! zero recovers twice the curvature.
//!
//! Run with `cargo run --release --example holonomy`.

use lieper::connection::{commutator_loop_holonomy, curvature, verify_second_derivative, ConnectionPatch, VectorField};
use lieper::quaternion::Quaternion;

fn main() -> lieper::error::Result<()> {
    let dx: VectorField<'_> = &|_, _| [1.0, 0.0];
    let dy: VectorField<'_> = &|_, _| [0.0, 1.0];
    for (name, patch) in [("u(1), A = x dy", ConnectionPatch::u1_x_dy()), ("su(2), A = y dx J + x dy I", ConnectionPatch::su2_test())] {
        let r = verify_second_derivative(&patch, dx, dy, 0.1, 8)?;
        println!("{name}");
        println!("  R(d/dx, d/dy) = {:?}", curvature(&patch, [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]));
        println!("  beta''(0)     = {:?} (sign {:+}, relative error {:.1e})", r.second_derivative, r.matching_sign, r.relative_error);
        println!("  |beta'(0)|    = {:.1e}", r.first_derivative.iter().map(|x| x * x).sum::<f64>().sqrt());
    }

    // Gauge transforms with dk(m0) = 0 keep the patch normalized and conjugate
    // holonomy by k(m0).
    let patch = ConnectionPatch::su2_test();
    let k = |x: f64, y: f64| Quaternion::exp_imag([0.3 * x * x, 0.2 * y * y, 0.4 + 0.5 * x * y]);
    let moved = patch.gauge_transform(k)?;
    let (a, b) = (commutator_loop_holonomy(&patch, dx, dy, 0.3, 200)?, commutator_loop_holonomy(&moved, dx, dy, 0.3, 200)?);
    let k0 = k(0.0, 0.0);
    println!("gauge covariance defect: {:.1e}", (k0.inverse() * a * k0).distance(&b));
    Ok(())
}
