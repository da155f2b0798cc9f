//! Low-degree Chevalley–Eilenberg cochains with trivial coefficients.
//!
//! Convention: `(dc)(x_0..x_p) = Σ_{i<j} (-1)^{i+j} c([x_i,x_j], x_0..x̂_i..x̂_j..x_p)`,
//! so `(dλ)(x,y) = -λ([x,y])` in degree one.

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{frac, Matrix, Scalar};
use crate::lie::{LieAlgebra, LinearMap, SymBilinearForm};

pub const MAX_DEGREE: usize = 3;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Increasing `p`-tuples of `0..n` in lexicographic order.
pub fn increasing_tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(n, p));
    rec(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Lexicographic rank of an increasing tuple.
fn tuple_rank(n: usize, t: &[usize]) -> usize {
    let p = t.len();
    let mut rank = 0;
    let mut prev = 0;
    for (pos, &v) in t.iter().enumerate() {
        for skipped in prev..v {
            rank += binomial(n - skipped - 1, p - pos - 1);
        }
        prev = v + 1;
    }
    rank
}

/// Sorts a tuple, returning the permutation sign, or `None` on repeats.
fn sort_with_sign(t: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = t.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Alternating `Q^d`-valued `p`-cochain stored on increasing basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    dim: usize,
    value_dim: usize,
    values: Vec<Vec<Scalar>>,
}

impl Cochain {
    pub fn zero(degree: usize, dim: usize, value_dim: usize) -> Self {
        Cochain {
            degree,
            dim,
            value_dim,
            values: vec![vec![Scalar::zero(); value_dim]; binomial(dim, degree)],
        }
    }

    /// Builds a cochain from its values on increasing tuples.
    pub fn from_fn(degree: usize, dim: usize, value_dim: usize, mut f: impl FnMut(&[usize]) -> Vec<Scalar>) -> Self {
        let values = increasing_tuples(dim, degree)
            .iter()
            .map(|t| {
                let v = f(t);
                assert_eq!(v.len(), value_dim);
                v
            })
            .collect();
        Cochain {
            degree,
            dim,
            value_dim,
            values,
        }
    }

    /// Random cochain with small rational entries.
    pub fn random(degree: usize, dim: usize, value_dim: usize, rng: &mut impl Rng) -> Self {
        Self::from_fn(degree, dim, value_dim, |_| {
            (0..value_dim)
                .map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
                .collect()
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Zero::is_zero)
    }

    /// Value on an arbitrary basis tuple, using antisymmetry.
    pub fn at(&self, t: &[usize]) -> Vec<Scalar> {
        assert_eq!(t.len(), self.degree, "tuple length must equal the degree");
        match sort_with_sign(t) {
            None => vec![Scalar::zero(); self.value_dim],
            Some((sorted, sign)) => {
                let v = &self.values[tuple_rank(self.dim, &sorted)];
                if sign > 0 {
                    v.clone()
                } else {
                    v.iter().map(|x| -x).collect()
                }
            }
        }
    }

    /// Multilinear evaluation on vectors.
    pub fn eval(&self, args: &[Vec<Scalar>]) -> Vec<Scalar> {
        assert_eq!(args.len(), self.degree);
        let mut out = vec![Scalar::zero(); self.value_dim];
        let mut idx = vec![0usize; self.degree];
        self.eval_rec(args, 0, Scalar::from_integer(1.into()), &mut idx, &mut out);
        out
    }

    fn eval_rec(&self, args: &[Vec<Scalar>], pos: usize, w: Scalar, idx: &mut Vec<usize>, out: &mut [Scalar]) {
        if pos == self.degree {
            for (o, v) in out.iter_mut().zip(self.at(idx)) {
                *o += &w * v;
            }
            return;
        }
        for (i, a) in args[pos].iter().enumerate() {
            if a.is_zero() || idx[..pos].contains(&i) {
                continue;
            }
            idx[pos] = i;
            self.eval_rec(args, pos + 1, &w * a, idx, out);
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Cochain {
            values: self.values.iter().map(|v| v.iter().map(|x| x * s).collect()).collect(),
            ..self.clone()
        }
    }

    /// The scalar cochain formed by one value component.
    fn component(&self, r: usize) -> Vec<Scalar> {
        self.values.iter().map(|v| v[r].clone()).collect()
    }

    fn from_components(degree: usize, dim: usize, comps: Vec<Vec<Scalar>>) -> Self {
        let value_dim = comps.len();
        let count = binomial(dim, degree);
        let values = (0..count).map(|i| comps.iter().map(|c| c[i].clone()).collect()).collect();
        Cochain {
            degree,
            dim,
            value_dim,
            values,
        }
    }
}

/// Matrix of `d: C^p → C^{p+1}` on scalar cochains (rows: `(p+1)`-tuples,
/// columns: `p`-tuples).
pub fn differential_matrix(alg: &LieAlgebra, p: usize) -> Matrix {
    let n = alg.dim();
    let rows = increasing_tuples(n, p + 1);
    let mut m = Matrix::zeros(rows.len(), binomial(n, p));
    for (r, t) in rows.iter().enumerate() {
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let sign: i64 = if (i + j) % 2 == 0 { 1 } else { -1 };
                let rest: Vec<usize> = t.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &v)| v).collect();
                for (k, c) in alg.basis_bracket(t[i], t[j]).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut tuple = vec![k];
                    tuple.extend(&rest);
                    if let Some((sorted, s)) = sort_with_sign(&tuple) {
                        let col = tuple_rank(n, &sorted);
                        let v = m.get(r, col) + c * Scalar::from_integer((sign * s).into());
                        m.set(r, col, v);
                    }
                }
            }
        }
    }
    m
}

pub fn ce_differential(c: &Cochain, alg: &LieAlgebra) -> Result<Cochain> {
    if c.degree > MAX_DEGREE {
        return Err(Error::DegreeOverflow(c.degree));
    }
    if c.dim != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: c.dim,
        });
    }
    let d = differential_matrix(alg, c.degree);
    let comps = (0..c.value_dim)
        .map(|r| d.mul_vec(&c.component(r)))
        .collect::<Result<Vec<_>>>()?;
    if comps.is_empty() {
        return Ok(Cochain::zero(c.degree + 1, c.dim, 0));
    }
    Ok(Cochain::from_components(c.degree + 1, c.dim, comps))
}

/// `C(κ)(x,y,z) = κ([x,y],z)`.
pub fn cartan_map(alg: &LieAlgebra, kappa: &SymBilinearForm) -> Result<Cochain> {
    if !alg.is_invariant(kappa) {
        return Err(Error::NotInvariant);
    }
    let n = alg.dim();
    let value = |i: usize, j: usize, k: usize| kappa.eval(alg.basis_bracket(i, j), &alg.basis_vector(k));
    let c = Cochain::from_fn(3, n, kappa.value_dim(), |t| value(t[0], t[1], t[2]));
    debug_assert!((0..n).all(|i| (0..n).all(|j| (0..n).all(|k| c.at(&[i, j, k]) == value(i, j, k)))));
    debug_assert!(ce_differential(&c, alg).map(|d| d.is_zero()).unwrap_or(true));
    Ok(c)
}

/// Whether `target = dη` for some cochain of one degree lower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactnessVerdict {
    Exact(Cochain),
    /// Rank witness: `rank(d) < rank([d | target])` for the offending component.
    NotExact {
        component: usize,
        matrix_rank: usize,
        augmented_rank: usize,
    },
}

impl ExactnessVerdict {
    pub fn is_exact(&self) -> bool {
        matches!(self, ExactnessVerdict::Exact(_))
    }

    pub fn witness(&self) -> Option<&Cochain> {
        match self {
            ExactnessVerdict::Exact(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Serialize)]
struct VerdictJson {
    exact: bool,
    matrix_rank: Option<usize>,
    augmented_rank: Option<usize>,
}

impl Serialize for ExactnessVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExactnessVerdict::Exact(_) => VerdictJson {
                exact: true,
                matrix_rank: None,
                augmented_rank: None,
            },
            ExactnessVerdict::NotExact {
                matrix_rank,
                augmented_rank,
                ..
            } => VerdictJson {
                exact: false,
                matrix_rank: Some(*matrix_rank),
                augmented_rank: Some(*augmented_rank),
            },
        }
        .serialize(s)
    }
}

fn solve_coboundary(target: &Cochain, alg: &LieAlgebra) -> Result<ExactnessVerdict> {
    if target.degree == 0 || target.degree > MAX_DEGREE + 1 {
        return Err(Error::DegreeOverflow(target.degree));
    }
    if target.dim != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: target.dim,
        });
    }
    let d = differential_matrix(alg, target.degree - 1);
    let mut comps = Vec::with_capacity(target.value_dim);
    for r in 0..target.value_dim {
        let rhs = target.component(r);
        match d.solve(&rhs)? {
            Some(sol) => comps.push(sol),
            None => {
                let aug = d.hconcat(&Matrix::from_columns(&[rhs], d.rows()))?;
                return Ok(ExactnessVerdict::NotExact {
                    component: r,
                    matrix_rank: d.rank(),
                    augmented_rank: aug.rank(),
                });
            }
        }
    }
    let eta = if comps.is_empty() {
        Cochain::zero(target.degree - 1, target.dim, 0)
    } else {
        Cochain::from_components(target.degree - 1, target.dim, comps)
    };
    Ok(ExactnessVerdict::Exact(eta))
}

/// Solves `dη = C` for a 3-cocycle `C`.
pub fn solve_exactness(c: &Cochain, alg: &LieAlgebra) -> Result<ExactnessVerdict> {
    if c.degree != 3 {
        return Err(Error::DegreeOverflow(c.degree));
    }
    solve_coboundary(c, alg)
}

/// Solves `dλ = ω` for a 2-cochain `ω`.
pub fn is_coboundary2(omega: &Cochain, alg: &LieAlgebra) -> Result<ExactnessVerdict> {
    if omega.degree != 2 {
        return Err(Error::DegreeOverflow(omega.degree));
    }
    solve_coboundary(omega, alg)
}

/// `η_D(x,y) = κ(x, Dy)` for a κ-skew derivation `D`.
pub fn eta_d(alg: &LieAlgebra, kappa: &SymBilinearForm, d: &LinearMap) -> Result<Cochain> {
    let n = alg.dim();
    if !alg.is_derivation(d) {
        return Err(Error::NotDerivation);
    }
    let images: Vec<Vec<Scalar>> = (0..n).map(|i| d.matrix.column(i)).collect();
    for i in 0..n {
        for j in i..n {
            let a = kappa.eval(&images[i], &alg.basis_vector(j));
            let b = kappa.eval(&alg.basis_vector(i), &images[j]);
            if a.iter().zip(&b).any(|(x, y)| !(x + y).is_zero()) {
                return Err(Error::NotSkew);
            }
        }
    }
    let eta = Cochain::from_fn(2, n, kappa.value_dim(), |t| kappa.eval(&alg.basis_vector(t[0]), &images[t[1]]));
    debug_assert!(ce_differential(&eta, alg)?.is_zero());
    Ok(eta)
}

/// The 1-cochain `λ(y) = κ(x, y)`.
pub fn contract_first(kappa: &SymBilinearForm, alg: &LieAlgebra, x: &[Scalar]) -> Cochain {
    Cochain::from_fn(1, alg.dim(), kappa.value_dim(), |t| kappa.eval(x, &alg.basis_vector(t[0])))
}
