//! Discreteness of period groups: exact certificates for rational and
//! symbolic generators, and numeric verdicts from sampled values.
//!
//! Run with `cargo run --release --example torus_discreteness`.

use lieper::exact::{frac, int};
use lieper::lattice::{is_discrete, torus_example, GeneratedSubgroup, SymbolicVector, TorusInput};

fn main() -> lieper::error::Result<()> {
    let q = torus_example(&TorusInput::Rational(frac(3, 7)))?;
    let basis = q.lattice.as_ref().map(|l| l.basis[0].coeffs()[0][0].to_string());
    println!("Z + (3/7)Z: {:?}, lattice basis {}", q.verdict, basis.unwrap_or_default());

    let a = torus_example(&TorusInput::Symbolic("alpha".into()))?;
    println!("Z + alpha Z: {:?}, Z-rank {} > span rank {}", a.verdict, a.z_rank, a.span_rank);

    let h: Vec<f64> = (0..=100).map(|k| (k as f64 / 100.0).powi(2)).collect();
    let s = torus_example(&TorusInput::Sampled(h))?;
    println!("Z + (integral of t^2)Z from samples: {:?}, relation {:?}", s.verdict, s.relation_basis);

    // Z^2 + Z(1, alpha) in R^2 spans R^2 but has rank 3.
    let v = |rows: Vec<Vec<i64>>| SymbolicVector::new(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect());
    let g = GeneratedSubgroup::new(2, vec!["1".into(), "alpha".into()], vec![v(vec![vec![1, 0], vec![0, 0]])?, v(vec![vec![0, 0], vec![1, 0]])?, v(vec![vec![1, 0], vec![0, 1]])?])?;
    let d = is_discrete(&g)?;
    println!("Z^2 + Z(1, alpha): {:?} (Z-rank {}, span rank {})", d.verdict, d.z_rank, d.span_rank);
    let numeric = is_discrete(&g.with_values(vec![1.0, 2f64.sqrt()])?.into_numeric()?)?;
    let small = numeric.accumulation.and_then(|w| w.small_element);
    println!("with alpha = sqrt 2: {:?}, small element {:?}", numeric.verdict, small.map(|s| s.norm));
    Ok(())
}
