//! Exact LLL reduction of integer bases.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Gram–Schmidt coefficients `μ` and squared norms `B`.
fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = b.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let bi = to_rat(&b[i]);
        let mut v = bi.clone();
        for j in 0..i {
            if norms[j] == BigRational::zero() {
                continue;
            }
            mu[i][j] = dot(&bi, &star[j]) / &norms[j];
            for (x, s) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * s;
            }
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (mu, norms)
}

/// LLL-reduces linearly independent rows with Lovász parameter `delta`.
pub fn lll(mut b: Vec<Vec<BigInt>>, delta: &BigRational) -> Vec<Vec<BigInt>> {
    let n = b.len();
    if n < 2 {
        return b;
    }
    let (mut mu, mut norms) = gram_schmidt(&b);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if !q.is_zero() {
                let qi = q.to_integer();
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &qi * y;
                }
                for l in 0..j {
                    let t = &q * &mu[j][l];
                    mu[k][l] -= t;
                }
                mu[k][j] -= &q;
            }
        }
        let lhs = norms[k].clone();
        let rhs = (delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let gs = gram_schmidt(&b);
            mu = gs.0;
            norms = gs.1;
            k = (k - 1).max(1);
        }
    }
    b
}

/// Default Lovász parameter `99/100`.
pub fn default_delta() -> BigRational {
    BigRational::new(BigInt::from(99), BigInt::from(100))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Signed};

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn norm2(v: &[BigInt]) -> BigInt {
        v.iter().map(|x| x * x).sum()
    }

    #[test]
    fn reduces_classic_example() {
        let b = big(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]);
        let r = lll(b, &default_delta());
        // The reduced basis is (0,1,0), (1,0,1), (-1,0,2).
        assert_eq!(norm2(&r[0]), BigInt::one());
        let (mu, norms) = gram_schmidt(&r);
        for i in 1..r.len() {
            for j in 0..i {
                assert!(mu[i][j].abs() <= BigRational::new(1.into(), 2.into()));
            }
            assert!(norms[i] >= (default_delta() - &mu[i][i - 1] * &mu[i][i - 1]) * &norms[i - 1]);
        }
    }

    #[test]
    fn finds_integer_relation() {
        // Rows [e_i | round(C v_i)] for v = (1, 3/7) with C = 10^6.
        let b = big(&[&[1, 0, 1_000_000], &[0, 1, 428_571]]);
        let r = lll(b, &default_delta());
        assert_eq!(r[0][..2].iter().map(|x| x * x).sum::<BigInt>(), BigInt::from(58));
    }
}
