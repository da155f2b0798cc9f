//! Row-style Hermite normal form over the integers with a unimodular transform.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `H = U·A` with `U` unimodular and `H` in row Hermite normal form: pivots
/// positive and strictly to the right of the previous row's, entries above a
/// pivot reduced into `[0, pivot)`, zero rows last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    pub rank: usize,
}

fn row_axpy(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

pub fn hnf(a: &[Vec<BigInt>], cols: usize) -> Hnf {
    let m = a.len();
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut row = 0;
    for col in 0..cols {
        if row == m {
            break;
        }
        loop {
            // Smallest nonzero entry at or below `row` becomes the pivot.
            let best = (row..m)
                .filter(|&r| !h[r][col].is_zero())
                .min_by(|&x, &y| h[x][col].abs().cmp(&h[y][col].abs()));
            let Some(p) = best else { break };
            h.swap(row, p);
            u.swap(row, p);
            let mut done = true;
            for r in row + 1..m {
                if !h[r][col].is_zero() {
                    let q = h[r][col].div_floor(&h[row][col]);
                    row_axpy(&mut h, r, row, &q);
                    row_axpy(&mut u, r, row, &q);
                    if !h[r][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if row < m && !h[row][col].is_zero() {
            if h[row][col].is_negative() {
                for x in h[row].iter_mut().chain(u[row].iter_mut()) {
                    *x = -x.clone();
                }
            }
            for r in 0..row {
                let q = h[r][col].div_floor(&h[row][col]);
                row_axpy(&mut h, r, row, &q);
                row_axpy(&mut u, r, row, &q);
            }
            row += 1;
        }
    }
    Hnf { h, u, rank: row }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mul(u: &[Vec<BigInt>], a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let cols = a.first().map_or(0, |r| r.len());
        u.iter()
            .map(|ur| (0..cols).map(|c| ur.iter().zip(a).map(|(x, ar)| x * &ar[c]).sum()).collect())
            .collect()
    }

    #[test]
    fn relation_of_one_and_half() {
        // Generators 1 and 1/2 scaled by 2: rows (2), (1).
        let r = hnf(&big(&[&[2], &[1]]), 1);
        assert_eq!(r.rank, 1);
        assert_eq!(r.h, big(&[&[1], &[0]]));
        // The zero row of H gives the relation 1·(1) − 2·(1/2) = 0 up to sign.
        let rel = &r.u[1];
        assert_eq!(rel[0].clone() * 2 + rel[1].clone(), BigInt::zero());
        assert_eq!(rel[0].abs(), BigInt::one());
    }

    proptest! {
        #[test]
        fn transform_is_consistent(rows in proptest::collection::vec(proptest::collection::vec(-20i64..20, 3), 1..5)) {
            let a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let r = hnf(&a, 3);
            prop_assert_eq!(mul(&r.u, &a), r.h.clone());
            for row in &r.h[r.rank..] {
                prop_assert!(row.iter().all(|x| x.is_zero()));
            }
            let det = crate::exact::Matrix::from_fn(a.len(), a.len(), |i, j| num_rational::BigRational::from_integer(r.u[i][j].clone())).determinant().unwrap();
            prop_assert_eq!(det.abs(), num_rational::BigRational::one());
        }
    }
}
