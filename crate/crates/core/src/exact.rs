//! Exact rational matrices.
//!
//! Everything structural in the crate (ranks, kernels, quotients, exactness
//! verdicts) goes through this module, so none of those answers depends on a
//! floating tolerance. Elimination is fraction-free: each row is scaled to
//! integers and reduced with Bareiss' algorithm, and rationals only reappear
//! in the final back-substitution that produces the reduced echelon form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-1.25"` (exactly).
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((whole, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{whole}{frac_part}").parse().map_err(|_| bad())?;
        let denom = num_traits::pow::pow(BigInt::from(10), frac_part.len());
        return Ok(Scalar::new(digits, denom));
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar::new(p, q))
        }
        None => Ok(Scalar::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Huge numerator and denominator: divide in f64 after shifting.
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of reducing a matrix to reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Reduced row-echelon form; only the first `pivots.len()` rows are nonzero.
    pub rref: Matrix,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot, increasing.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.rref.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.rref.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let n = self.rref.cols;
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Scalar::zero(); n];
                v[f] = Scalar::one();
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.rref.get(r, f).clone();
                }
                v
            })
            .collect()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), cols, |r, c| int(rows[r][c]))
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<Scalar>], rows: usize) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c) + other.get(r, c)
        }))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c) - other.get(r, c)
        }))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn pow(&self, k: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Stacks `other` to the right of `self`.
    pub fn hconcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        }))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(to_f64).collect())
            .collect()
    }

    pub fn echelon(&self) -> Echelon {
        let (rows, pivots) = bareiss_echelon(self);
        let rref = back_substitute(rows, &pivots, self.rows, self.cols);
        Echelon { rref, pivots }
    }

    pub fn rank(&self) -> usize {
        bareiss_echelon(self).1.len()
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.echelon().kernel_basis()
    }

    /// Any solution of `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let rhs = Matrix::from_columns(&[b.to_vec()], self.rows);
        let ech = self.hconcat(&rhs)?.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.rref.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Some(Self::zeros(0, 0)));
        }
        let ech = self.hconcat(&Self::identity(n))?.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(Self::from_fn(n, n, |r, c| {
            ech.rref.get(r, n + c).clone()
        })))
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one());
        }
        // Bareiss on the integer-scaled rows: det(A) = det(scaled) / prod(scales).
        let mut scale = Scalar::one();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|r| {
                let (row, s) = integer_row(self.row(r));
                scale *= Scalar::from_integer(s);
                row
            })
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(Scalar::from_integer(sign * prev) / scale)
    }
}

/// Scales a rational row to a primitive integer row. Returns the row and the
/// positive factor it was multiplied by.
fn integer_row(row: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        (ints, lcm)
    } else {
        (ints.into_iter().map(|x| x / &g).collect(), lcm / g)
    }
}

/// Fraction-free forward elimination. Returns the echelon rows (integer) and
/// the pivot columns.
fn bareiss_echelon(m: &Matrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows).map(|r| integer_row(m.row(r)).0).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..m.rows {
            if a[i][c].is_zero() {
                // Row still needs the common scaling to keep the minors exact.
                for j in c + 1..m.cols {
                    let v = &a[r][c] * &a[i][j];
                    a[i][j] = v / &prev;
                }
                continue;
            }
            for j in c + 1..m.cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

fn back_substitute(rows: Vec<Vec<BigInt>>, pivots: &[usize], nrows: usize, ncols: usize) -> Matrix {
    let mut out = Matrix::zeros(nrows, ncols);
    for (r, &p) in pivots.iter().enumerate() {
        let lead = Scalar::from_integer(rows[r][p].clone());
        for c in p..ncols {
            if !rows[r][c].is_zero() {
                out.set(r, c, Scalar::from_integer(rows[r][c].clone()) / &lead);
            }
        }
    }
    for (r, &p) in pivots.iter().enumerate().rev() {
        for above in 0..r {
            let factor = out.get(above, p).clone();
            if factor.is_zero() {
                continue;
            }
            for c in p..ncols {
                let sub = &factor * out.get(r, c);
                if !sub.is_zero() {
                    let v = out.get(above, c) - sub;
                    out.set(above, c, v);
                }
            }
        }
    }
    out
}

/// Rank of a list of vectors of equal length.
pub fn span_rank(vectors: &[Vec<Scalar>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_fn(vectors.len(), dim, |r, c| vectors[r][c].clone()).rank()
}

/// Row-reduced basis of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let ech = Matrix::from_fn(vectors.len(), dim, |r, c| vectors[r][c].clone()).echelon();
    (0..ech.rank()).map(|r| ech.rref.row(r).to_vec()).collect()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn abs_max(v: &[Scalar]) -> Scalar {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Scalar::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_scalar("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_scalar(" -7 ").unwrap(), int(-7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert_eq!(parse_scalar("-0.25").unwrap(), frac(-1, 4));
        assert!(parse_scalar("1.").is_err());
    }

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&m.mul_vec(&k[0]).unwrap()));
    }

    #[test]
    fn rank_deficient_with_skipped_columns() {
        // The second column is dependent, forcing Bareiss to skip it.
        let m = Matrix::from_i64(&[&[2, 4, 1, 3], &[1, 2, 5, 7], &[3, 6, 6, 10], &[0, 0, 3, 1]]);
        assert_eq!(m.rank(), 3);
        let ech = m.echelon();
        assert_eq!(ech.pivots, vec![0, 2, 3]);
        for v in ech.kernel_basis() {
            assert!(is_zero_vec(&m.mul_vec(&v).unwrap()));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = Matrix::from_fn(3, 3, |r, c| frac((r * 3 + c) as i64 % 5 + 1, (c + 1) as i64));
        let b = vec![int(1), frac(-1, 3), int(2)];
        if let Some(inv) = m.inverse().unwrap() {
            assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
            let x = m.solve(&b).unwrap().unwrap();
            assert_eq!(m.mul_vec(&x).unwrap(), b);
        } else {
            assert!(m.determinant().unwrap().is_zero());
        }
        let singular = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(singular.inverse().unwrap().is_none());
        assert!(singular.solve(&[int(1), int(2)]).unwrap().is_none());
    }

    #[test]
    fn determinant_matches_cofactor() {
        let m = Matrix::from_i64(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2(−6−20) − (−1)(−2−0) + 0 = −52 − 2
        assert_eq!(m.determinant().unwrap(), int(-54));
        let half = m.scale(&frac(1, 2));
        assert_eq!(half.determinant().unwrap(), frac(-54, 8));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Matrix> {
            (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
                proptest::collection::vec((-4i64..5, 1i64..4), r * c)
                    .prop_map(move |v| Matrix::from_fn(r, c, |i, j| frac(v[i * c + j].0, v[i * c + j].1)))
            })
        }

        proptest! {
            #[test]
            fn rank_nullity(m in small_matrix()) {
                let ech = m.echelon();
                prop_assert_eq!(ech.rank() + ech.kernel_basis().len(), m.cols());
                prop_assert_eq!(ech.rank(), m.transpose().rank());
                for v in ech.kernel_basis() {
                    prop_assert!(is_zero_vec(&m.mul_vec(&v).unwrap()));
                }
            }
        }
    }
}
