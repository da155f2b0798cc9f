//! Seeded random inputs shared by the reproduction driver, examples and tests.

use std::f64::consts::PI;

use num_traits::{One, Zero};
use rand::Rng;

use crate::exact::{int, Matrix, Scalar};
use crate::lie::LinearMap;
use crate::twisted_loop::SampledTwistedSection;

/// Rotation by a quarter turn about the third axis.
pub fn quarter_turn() -> LinearMap {
    LinearMap::new(Matrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]))
}

/// `f(t) = exp(−tA) p(t)` where `exp(A)` is [`quarter_turn`] and `p` is a
/// random 1-periodic trigonometric polynomial, so `f(t + 1) = φ⁻¹ f(t)`.
pub fn random_twisted_su2(rng: &mut impl Rng, n: usize) -> SampledTwistedSection {
    let coeffs: Vec<[f64; 4]> = (0..3).map(|_| [0; 4].map(|_| rng.gen_range(-1.0..1.0))).collect();
    SampledTwistedSection::from_fn(quarter_turn(), n, move |t| {
        let p: Vec<f64> = coeffs
            .iter()
            .map(|c| c[0] * (2.0 * PI * t).sin() + c[1] * (2.0 * PI * t).cos() + c[2] * (4.0 * PI * t).sin() + c[3])
            .collect();
        let th = PI * t / 2.0;
        vec![th.cos() * p[0] + th.sin() * p[1], -th.sin() * p[0] + th.cos() * p[1], p[2]]
    })
    .expect("quarter-turn sections satisfy the twist condition")
}

fn block(rng: &mut impl Rng, room: usize) -> Vec<Vec<i64>> {
    let mut choices: Vec<Vec<Vec<i64>>> = vec![vec![vec![1]], vec![vec![-1]]];
    if room >= 2 {
        choices.extend([
            vec![vec![0, -1], vec![1, -1]],
            vec![vec![0, -1], vec![1, 0]],
            vec![vec![1, -1], vec![1, 0]],
            vec![vec![0, 1], vec![1, 0]],
        ]);
    }
    if room >= 3 {
        choices.push(vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
    }
    choices.swap_remove(rng.gen_range(0..choices.len()))
}

/// A random integer matrix of finite order (dividing 12) of size `dim`:
/// a block sum of small rotations, reflections and permutations conjugated
/// by a random unimodular matrix.
pub fn random_finite_order_matrix(rng: &mut impl Rng, dim: usize) -> LinearMap {
    let mut m = Matrix::zeros(dim, dim);
    let mut at = 0;
    while at < dim {
        let b = block(rng, dim - at);
        for (r, row) in b.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(at + r, at + c, int(*v));
            }
        }
        at += b.len();
    }
    if dim < 2 {
        return LinearMap::new(m);
    }
    // Product of elementary shears: integer with integer inverse.
    let mut p = Matrix::identity(dim);
    let mut p_inv = Matrix::identity(dim);
    for _ in 0..dim + 1 {
        let i = rng.gen_range(0..dim);
        let j = (i + rng.gen_range(1..dim)) % dim;
        let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let e = Matrix::from_fn(dim, dim, |r, c| if r == c { Scalar::one() } else if (r, c) == (i, j) { int(s) } else { Scalar::zero() });
        let e_inv = Matrix::from_fn(dim, dim, |r, c| if r == c { Scalar::one() } else if (r, c) == (i, j) { int(-s) } else { Scalar::zero() });
        p = p.mul(&e).expect("square");
        p_inv = e_inv.mul(&p_inv).expect("square");
    }
    LinearMap::new(p.mul(&m).and_then(|x| x.mul(&p_inv)).expect("square"))
}

/// A random vector with small rational entries `p/q`, `|p| <= 5`, `1 <= q <= 4`.
pub fn random_rational_vector(rng: &mut impl Rng, dim: usize) -> Vec<Scalar> {
    (0..dim).map(|_| Scalar::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=4).into())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twisted_loop::matrix_order;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn finite_order_matrices_have_small_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for dim in 1..=5 {
            for _ in 0..10 {
                let phi = random_finite_order_matrix(&mut rng, dim);
                let k = matrix_order(&phi, 12).unwrap();
                assert_eq!(12 % k, 0);
                assert!(phi.matrix.to_f64().iter().flatten().all(|x| x.fract() == 0.0));
            }
        }
    }
}
