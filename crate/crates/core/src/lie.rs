//! Finite-dimensional Lie algebras over the rationals.
//!
//! An algebra is stored by its dense structure-constant tensor
//! `c[i][j][k]`, meaning `[e_i, e_j] = sum_k c[i][j][k] e_k`. Antisymmetry and
//! the Jacobi identity are checked exactly when an algebra is constructed, so
//! every `LieAlgebra` value in the program really is one.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{frac, int, is_zero_vec, span_basis, span_rank, Matrix, Scalar};

/// Upper bound on the dimension of a dense algebra.
pub const MAX_DIM: usize = 64;

/// A linear map between coordinate spaces; `matrix` has `target_dim` rows and
/// `source_dim` columns and acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap::new(Matrix::identity(n))
    }

    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        LinearMap::new(Matrix::zeros(target_dim, source_dim))
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap::new(self.matrix.mul(&other.matrix)?))
    }

    pub fn inverse(&self) -> Result<Option<LinearMap>> {
        Ok(self.matrix.inverse()?.map(LinearMap::new))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.matrix.to_f64()
    }
}

/// Symmetric bilinear map `k × k → Q^d`, stored on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymBilinearForm {
    dim: usize,
    value_dim: usize,
    table: Vec<Vec<Scalar>>,
}

impl SymBilinearForm {
    /// Builds a form from its values on basis pairs. Only pairs `i <= j` are
    /// queried; the table is filled symmetrically.
    pub fn from_fn(dim: usize, value_dim: usize, mut f: impl FnMut(usize, usize) -> Vec<Scalar>) -> Self {
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                assert_eq!(v.len(), value_dim, "form value has wrong length");
                table[j * dim + i] = v.clone();
                table[i * dim + j] = v;
            }
        }
        SymBilinearForm {
            dim,
            value_dim,
            table,
        }
    }

    /// Builds a form from a full table `table[i][j]`, rejecting asymmetric input.
    pub fn from_table(table: Vec<Vec<Vec<Scalar>>>, value_dim: usize) -> Result<Self> {
        let dim = table.len();
        for (i, row) in table.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != value_dim {
                    return Err(Error::DimensionMismatch {
                        expected: value_dim,
                        found: v.len(),
                    });
                }
                if *v != table[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(SymBilinearForm {
            dim,
            value_dim,
            table: table.into_iter().flatten().collect(),
        })
    }

    pub fn zero(dim: usize, value_dim: usize) -> Self {
        Self::from_fn(dim, value_dim, |_, _| vec![Scalar::zero(); value_dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }

    pub fn get(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i * self.dim + j]
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.value_dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (o, v) in out.iter_mut().zip(self.get(i, j)) {
                    if !v.is_zero() {
                        *o += &w * v;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        SymBilinearForm {
            dim: self.dim,
            value_dim: self.value_dim,
            table: self
                .table
                .iter()
                .map(|v| v.iter().map(|x| x * s).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim || self.value_dim != other.value_dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(SymBilinearForm {
            dim: self.dim,
            value_dim: self.value_dim,
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        })
    }

    /// Post-composes the values with a linear map `phi: Q^d → Q^e`.
    pub fn map_values(&self, phi: &LinearMap) -> Result<Self> {
        if phi.source_dim() != self.value_dim {
            return Err(Error::DimensionMismatch {
                expected: self.value_dim,
                found: phi.source_dim(),
            });
        }
        let table = self
            .table
            .iter()
            .map(|v| phi.apply(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(SymBilinearForm {
            dim: self.dim,
            value_dim: phi.target_dim(),
            table,
        })
    }

    /// Row-major `[i][j][component]` floating copy for quadrature kernels.
    pub fn to_f64(&self) -> Vec<Vec<Vec<f64>>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.get(i, j).iter().map(crate::exact::to_f64).collect())
                    .collect()
            })
            .collect()
    }
}

/// `(i, j, [(k, c)])` meaning `[e_i, e_j] = Σ c e_k`.
pub type BracketEntry = (usize, usize, Vec<(usize, Scalar)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    c: Vec<Scalar>,
}

impl LieAlgebra {
    /// Builds an algebra from a dense tensor `c[i][j][k]`, validating
    /// antisymmetry and the Jacobi identity exactly.
    pub fn new(names: Vec<String>, c: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidAlgebra(format!("dimension {n} is outside 1..={MAX_DIM}")));
        }
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::InvalidAlgebra("structure tensor has the wrong shape".into()));
        }
        let alg = LieAlgebra {
            names,
            c: c.into_iter().flatten().flatten().collect(),
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Builds an algebra from brackets on pairs `i < j`; other pairs follow
    /// by antisymmetry and omitted pairs bracket to zero.
    pub fn from_brackets(names: Vec<String>, brackets: &[BracketEntry]) -> Result<Self> {
        let n = names.len();
        let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (i, j, terms) in brackets {
            let (i, j) = (*i, *j);
            if i >= j || j >= n {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket pair ({i}, {j}) must satisfy i < j < {n}"
                )));
            }
            for (k, v) in terms {
                if *k >= n {
                    return Err(Error::InvalidAlgebra(format!("bracket target {k} out of range")));
                }
                c[i][j][*k] += v;
                c[j][i][*k] -= v;
            }
        }
        Self::new(names, c)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if *self.structure_constant(i, j, k) != -self.structure_constant(j, i, k) {
                        return Err(Error::InvalidAlgebra(format!(
                            "antisymmetry fails for [{}, {}]",
                            self.names[i], self.names[j]
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let a = self.bracket_unchecked(&x, &self.bracket_unchecked(&y, &z));
                    let b = self.bracket_unchecked(&y, &self.bracket_unchecked(&z, &x));
                    let cc = self.bracket_unchecked(&z, &self.bracket_unchecked(&x, &y));
                    let sum: Vec<Scalar> = (0..n).map(|l| &a[l] + &b[l] + &cc[l]).collect();
                    if !is_zero_vec(&sum) {
                        return Err(Error::InvalidAlgebra(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim();
        &self.c[(i * n + j) * n + k]
    }

    /// Coefficients of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim();
        &self.c[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let w = xi * yj;
                for (o, c) in out.iter_mut().zip(self.basis_bracket(i, j)) {
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad x = [x, ·]`.
    pub fn ad(&self, x: &[Scalar]) -> Result<LinearMap> {
        self.check_len(x)?;
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|l| self.bracket_unchecked(x, &self.basis_vector(l)))
            .collect();
        Ok(LinearMap::new(Matrix::from_columns(&cols, n)))
    }

    /// `tr(ad e_i ∘ ad e_j)` as a 1-dimensional form.
    pub fn killing_form(&self) -> SymBilinearForm {
        let n = self.dim();
        SymBilinearForm::from_fn(n, 1, |i, j| {
            let mut t = Scalar::zero();
            for k in 0..n {
                for l in 0..n {
                    let a = self.structure_constant(i, l, k);
                    let b = self.structure_constant(j, k, l);
                    if !a.is_zero() && !b.is_zero() {
                        t += a * b;
                    }
                }
            }
            vec![t]
        })
    }

    /// `κ([e_i, e_j], e_k) == κ(e_i, [e_j, e_k])` for all basis triples.
    pub fn is_invariant(&self, kappa: &SymBilinearForm) -> bool {
        let n = self.dim();
        if kappa.dim() != n {
            return false;
        }
        for i in 0..n {
            let ei = self.basis_vector(i);
            for j in 0..n {
                for k in 0..n {
                    let ek = self.basis_vector(k);
                    let left = kappa.eval(self.basis_bracket(i, j), &ek);
                    let right = kappa.eval(&ei, self.basis_bracket(j, k));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `D[e_i, e_j] == [D e_i, e_j] + [e_i, D e_j]` for all basis pairs.
    pub fn is_derivation(&self, d: &LinearMap) -> bool {
        let n = self.dim();
        if d.source_dim() != n || d.target_dim() != n {
            return false;
        }
        let images: Vec<Vec<Scalar>> = (0..n).map(|i| d.matrix.column(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let Ok(lhs) = d.apply(self.basis_bracket(i, j)) else {
                    return false;
                };
                let a = self.bracket_unchecked(&images[i], &self.basis_vector(j));
                let b = self.bracket_unchecked(&self.basis_vector(i), &images[j]);
                if (0..n).any(|k| lhs[k] != &a[k] + &b[k]) {
                    return false;
                }
            }
        }
        true
    }

    /// `φ[e_i, e_j] == [φ e_i, φ e_j]` for all basis pairs (no invertibility check).
    pub fn preserves_brackets(&self, phi: &LinearMap) -> bool {
        let n = self.dim();
        if phi.source_dim() != n || phi.target_dim() != n {
            return false;
        }
        let images: Vec<Vec<Scalar>> = (0..n).map(|i| phi.matrix.column(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let Ok(lhs) = phi.apply(self.basis_bracket(i, j)) else {
                    return false;
                };
                if lhs != self.bracket_unchecked(&images[i], &images[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_automorphism(&self, phi: &LinearMap) -> bool {
        self.preserves_brackets(phi) && phi.matrix.rank() == self.dim()
    }

    /// Basis of the derived algebra `[k, k]`.
    pub fn derived_algebra(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        let brackets: Vec<Vec<Scalar>> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.basis_bracket(i, j).to_vec())
            .collect();
        span_basis(&brackets, n)
    }

    /// Solvable radical, computed as the Killing-orthogonal complement of
    /// the derived algebra.
    pub fn radical(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        let killing = self.killing_form();
        let derived = self.derived_algebra();
        if derived.is_empty() {
            return (0..n).map(|i| self.basis_vector(i)).collect();
        }
        let rows: Vec<Vec<Scalar>> = derived
            .iter()
            .map(|y| (0..n).map(|i| killing.eval(y, &self.basis_vector(i))[0].clone()).collect())
            .collect();
        Matrix::from_rows(rows, n).expect("rows have length n").kernel()
    }

    /// Whether `span(basis)` is an ideal.
    pub fn is_ideal(&self, basis: &[Vec<Scalar>]) -> bool {
        let n = self.dim();
        let r = span_rank(basis, n);
        for i in 0..n {
            for b in basis {
                let mut ext = basis.to_vec();
                ext.push(self.bracket_unchecked(&self.basis_vector(i), b));
                if span_rank(&ext, n) != r {
                    return false;
                }
            }
        }
        true
    }

    /// Direct sum `self ⊕ other`, with basis names suffixed `.1` / `.2`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let names = self
            .names
            .iter()
            .map(|s| format!("{s}.1"))
            .chain(other.names.iter().map(|s| format!("{s}.2")))
            .collect();
        let mut c = vec![vec![vec![Scalar::zero(); n + m]; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = self.structure_constant(i, j, k).clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    c[n + i][n + j][n + k] = other.structure_constant(i, j, k).clone();
                }
            }
        }
        LieAlgebra::new(names, c).expect("direct sum of Lie algebras is a Lie algebra")
    }

    /// Structure constants of a matrix Lie algebra given by a basis of square
    /// matrices closed under the commutator.
    pub fn from_matrix_basis(names: Vec<String>, basis: &[Matrix]) -> Result<Self> {
        let n = basis.len();
        let size = basis.first().map_or(0, Matrix::rows);
        let flat = |m: &Matrix| -> Vec<Scalar> {
            (0..size).flat_map(|r| (0..size).map(move |c| (r, c))).map(|(r, c)| m.get(r, c).clone()).collect()
        };
        let columns: Vec<Vec<Scalar>> = basis.iter().map(flat).collect();
        let coords = Matrix::from_columns(&columns, size * size);
        let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let comm = basis[i].mul(&basis[j])?.sub(&basis[j].mul(&basis[i])?)?;
                let sol = coords.solve(&flat(&comm))?.ok_or_else(|| {
                    Error::InvalidAlgebra(format!("matrix basis not closed under [{}, {}]", names[i], names[j]))
                })?;
                c[i][j] = sol;
            }
        }
        Self::new(names, c)
    }

    // --- standard algebras ---

    /// `su(2)` as imaginary quaternions `I, J, K` with `[I,J] = 2K` and cyclic.
    pub fn su2() -> Self {
        let names = ["I", "J", "K"].map(String::from).to_vec();
        Self::from_brackets(
            names,
            &[(0, 1, vec![(2, int(2))]), (1, 2, vec![(0, int(2))]), (0, 2, vec![(1, int(-2))])],
        )
        .expect("su2 is a Lie algebra")
    }

    pub fn abelian(n: usize) -> Self {
        let names = (0..n).map(|i| format!("e{i}")).collect();
        Self::from_brackets(names, &[]).expect("abelian algebra")
    }

    /// `gl_n(R)` in the elementary-matrix basis `E_ij`, row-major.
    pub fn gl(n: usize) -> Self {
        let mut names = Vec::new();
        let mut basis = Vec::new();
        for i in 0..n {
            for j in 0..n {
                names.push(format!("E{}{}", i + 1, j + 1));
                let mut m = Matrix::zeros(n, n);
                m.set(i, j, Scalar::one());
                basis.push(m);
            }
        }
        Self::from_matrix_basis(names, &basis).expect("gl_n is a Lie algebra")
    }

    /// `sl_2(R)` in the basis `H, E, F`.
    pub fn sl2() -> Self {
        let names = ["H", "E", "F"].map(String::from).to_vec();
        Self::from_brackets(
            names,
            &[(0, 1, vec![(1, int(2))]), (0, 2, vec![(2, int(-2))]), (1, 2, vec![(0, int(1))])],
        )
        .expect("sl2 is a Lie algebra")
    }

    /// `sl_2(C)` viewed as a 6-dimensional real algebra with basis
    /// `H, E, F, iH, iE, iF`.
    pub fn sl2c_real() -> Self {
        let base = Self::sl2();
        let names = ["H", "E", "F", "iH", "iE", "iF"].map(String::from).to_vec();
        let mut c = vec![vec![vec![Scalar::zero(); 6]; 6]; 6];
        for a in 0..3 {
            for b in 0..3 {
                for k in 0..3 {
                    let v = base.structure_constant(a, b, k).clone();
                    // [x, y] = v, [ix, y] = [x, iy] = iv, [ix, iy] = -v
                    c[a][b][k] = v.clone();
                    c[a + 3][b][k + 3] = v.clone();
                    c[a][b + 3][k + 3] = v.clone();
                    c[a + 3][b + 3][k] = -v;
                }
            }
        }
        Self::new(names, c).expect("sl2(C) is a real Lie algebra")
    }

    /// Multiplication by `i` on `sl_2(C)_R` (an element of the centroid).
    pub fn sl2c_complex_structure() -> LinearMap {
        LinearMap::new(Matrix::from_fn(6, 6, |r, c| {
            if c < 3 && r == c + 3 {
                int(1)
            } else if c >= 3 && r + 3 == c {
                int(-1)
            } else {
                int(0)
            }
        }))
    }

    /// Complex conjugation on `sl_2(C)_R` fixing the real form `sl_2(R)`.
    pub fn sl2c_conjugation() -> LinearMap {
        LinearMap::new(Matrix::from_fn(6, 6, |r, c| {
            if r != c {
                int(0)
            } else if r < 3 {
                int(1)
            } else {
                int(-1)
            }
        }))
    }
}

/// `κ = -¼ tr(ad x ad y)`, the normalization with `κ(x,x) = 2|x|^2` on su(2).
pub fn normalized_killing(alg: &LieAlgebra) -> SymBilinearForm {
    alg.killing_form().scale(&frac(-1, 4))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn su2_brackets() {
        let su2 = LieAlgebra::su2();
        assert_eq!(su2.bracket(&v(&[1, 0, 0]), &v(&[0, 1, 0])).unwrap(), v(&[0, 0, 2]));
        let x = v(&[3, -1, 2]);
        assert!(is_zero_vec(&su2.bracket(&x, &x).unwrap()));
        assert!(su2.bracket(&x, &v(&[1, 0])).is_err());
    }

    #[test]
    fn gl2_matches_matrix_commutator() {
        // E11 E12 - E12 E11 = E12
        let gl2 = LieAlgebra::gl(2);
        assert_eq!(gl2.bracket(&v(&[1, 0, 0, 0]), &v(&[0, 1, 0, 0])).unwrap(), v(&[0, 1, 0, 0]));
        // [E12, E21] = E11 - E22
        assert_eq!(gl2.bracket(&v(&[0, 1, 0, 0]), &v(&[0, 0, 1, 0])).unwrap(), v(&[1, 0, 0, -1]));
    }

    #[test]
    fn rejects_non_jacobi() {
        // [x,y] = x, [y,z] = y, [x,z] = y violates Jacobi.
        let names = ["x", "y", "z"].map(String::from).to_vec();
        let res = LieAlgebra::from_brackets(
            names,
            &[(0, 1, vec![(0, int(1))]), (1, 2, vec![(1, int(1))]), (0, 2, vec![(1, int(1))])],
        );
        assert!(matches!(res, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn killing_values() {
        let su2 = LieAlgebra::su2();
        let k = su2.killing_form();
        assert_eq!(k.get(0, 0), &[int(-8)]);
        assert_eq!(k.get(0, 1), &[int(0)]);
        assert_eq!(normalized_killing(&su2).get(0, 0), &[int(2)]);
        assert_eq!(LieAlgebra::abelian(3).killing_form(), SymBilinearForm::zero(3, 1));
    }

    #[test]
    fn invariance_checks() {
        let su2 = LieAlgebra::su2();
        assert!(su2.is_invariant(&normalized_killing(&su2)));
        let diag = SymBilinearForm::from_fn(3, 1, |i, j| vec![if i == j { int(i as i64 + 1) } else { int(0) }]);
        assert!(!su2.is_invariant(&diag));

        // tr(x) tr(y) on gl2: traces of E11..E22 are 1,0,0,1.
        let gl2 = LieAlgebra::gl(2);
        let tr = [1, 0, 0, 1];
        let trtr = SymBilinearForm::from_fn(4, 1, |i, j| vec![int(tr[i] * tr[j])]);
        assert!(gl2.is_invariant(&trtr));
    }

    #[test]
    fn derivations() {
        let su2 = LieAlgebra::su2();
        assert!(su2.is_derivation(&su2.ad(&v(&[1, 2, -3])).unwrap()));
        assert!(su2.is_derivation(&LinearMap::zero(3, 3)));
        assert!(!su2.is_derivation(&LinearMap::identity(3)));
    }

    #[test]
    fn radicals() {
        assert!(LieAlgebra::su2().radical().is_empty());
        assert_eq!(LieAlgebra::abelian(4).radical().len(), 4);
        let rad = LieAlgebra::gl(2).radical();
        assert_eq!(rad.len(), 1);
        // Proportional to the identity E11 + E22.
        let r = &rad[0];
        assert!(r[1].is_zero() && r[2].is_zero() && r[0] == r[3] && !r[0].is_zero());
        assert!(LieAlgebra::gl(2).is_ideal(&rad));
    }

    #[test]
    fn sl2c_real_structure() {
        let g = LieAlgebra::sl2c_real();
        assert!(g.is_automorphism(&LieAlgebra::sl2c_conjugation()));
        let i = LieAlgebra::sl2c_complex_structure();
        assert_eq!(i.compose(&i).unwrap(), LinearMap::new(Matrix::identity(6).scale(&int(-1))));
        // Multiplication by i commutes with every ad.
        for k in 0..6 {
            let ad = g.ad(&g.basis_vector(k)).unwrap();
            assert_eq!(ad.compose(&i).unwrap(), i.compose(&ad).unwrap());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn vec3() -> impl Strategy<Value = Vec<Scalar>> {
            proptest::collection::vec((-5i64..6, 1i64..4), 3).prop_map(|v| v.into_iter().map(|(p, q)| frac(p, q)).collect())
        }

        proptest! {
            #[test]
            fn bracket_is_antisymmetric(x in vec3(), y in vec3()) {
                let su2 = LieAlgebra::su2();
                let a = su2.bracket(&x, &y).unwrap();
                let b = su2.bracket(&y, &x).unwrap();
                prop_assert!(a.iter().zip(&b).all(|(p, q)| p == &-q));
            }

            #[test]
            fn ad_is_a_derivation(x in vec3()) {
                let su2 = LieAlgebra::su2();
                prop_assert!(su2.is_derivation(&su2.ad(&x).unwrap()));
            }
        }
    }
}
