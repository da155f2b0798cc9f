//! The universal invariant symmetric bilinear form `V(k) = S²(k) / k·S²(k)`.
//!
//! `S²(k)` uses the lexicographic basis `{e_i ∨ e_j : i <= j}` and `∨` is the
//! symmetric bilinear product, so `x ∨ y = Σ x_i y_j (e_i ∨ e_j)` with each
//! unordered pair mapped to one coordinate. Quotient coordinates come from the
//! non-pivot columns of the reduced row-echelon form of the relation matrix,
//! which makes every `κ_u` table deterministic.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{span_rank, Matrix, Scalar};
use crate::lie::{LieAlgebra, LinearMap, SymBilinearForm};

/// `R^ambient / span(relations)` with an explicit projection and section.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    ambient_dim: usize,
    relation_basis: Vec<Vec<Scalar>>,
    projection: LinearMap,
    section: LinearMap,
}

impl QuotientSpace {
    pub fn new(ambient_dim: usize, relations: &[Vec<Scalar>]) -> Result<Self> {
        if let Some(r) = relations.iter().find(|r| r.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: r.len(),
            });
        }
        let ech = if relations.is_empty() {
            Matrix::zeros(0, ambient_dim).echelon()
        } else {
            Matrix::from_rows(relations.to_vec(), ambient_dim)?.echelon()
        };
        let free = ech.free_columns();
        let q = free.len();
        // e_{pivot_r} ≡ -Σ_f rref[r][f] e_f modulo the relations.
        let mut proj = Matrix::zeros(q, ambient_dim);
        for (qi, &f) in free.iter().enumerate() {
            proj.set(qi, f, Scalar::one());
            for (r, &p) in ech.pivots.iter().enumerate() {
                let v = ech.rref.get(r, f);
                if !v.is_zero() {
                    proj.set(qi, p, -v.clone());
                }
            }
        }
        let mut sec = Matrix::zeros(ambient_dim, q);
        for (qi, &f) in free.iter().enumerate() {
            sec.set(f, qi, Scalar::one());
        }
        let relation_basis = (0..ech.rank()).map(|r| ech.rref.row(r).to_vec()).collect();
        Ok(QuotientSpace {
            ambient_dim,
            relation_basis,
            projection: LinearMap::new(proj),
            section: LinearMap::new(sec),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn quotient_dim(&self) -> usize {
        self.projection.target_dim()
    }

    pub fn relation_rank(&self) -> usize {
        self.relation_basis.len()
    }

    pub fn relation_basis(&self) -> &[Vec<Scalar>] {
        &self.relation_basis
    }

    pub fn projection(&self) -> &LinearMap {
        &self.projection
    }

    pub fn section(&self) -> &LinearMap {
        &self.section
    }

    pub fn project(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.projection.apply(v)
    }

    pub fn project_f64(&self, v: &[f64]) -> Vec<f64> {
        self.projection
            .to_f64()
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Index of `e_i ∨ e_j` in the lexicographic basis of `S²(R^n)`.
pub fn sym_index(n: usize, i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    // Σ_{a' < a} (n - a') pairs precede row a.
    a * n - a * a.saturating_sub(1) / 2 + (b - a)
}

pub fn sym_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Coordinates of `x ∨ y` in `S²(R^n)`.
pub fn sym_product(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = x.len();
    let mut out = vec![Scalar::zero(); sym_dim(n)];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() {
                out[sym_index(n, i, j)] += xi * yj;
            }
        }
    }
    out
}

/// The pair `(i, j)`, `i <= j`, of each symmetric basis index.
pub fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

#[derive(Clone, Debug)]
pub struct UniversalForm {
    algebra: LieAlgebra,
    space: QuotientSpace,
    kappa_u: SymBilinearForm,
}

impl UniversalForm {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn space(&self) -> &QuotientSpace {
        &self.space
    }

    pub fn kappa(&self) -> &SymBilinearForm {
        &self.kappa_u
    }

    pub fn quotient_dim(&self) -> usize {
        self.space.quotient_dim()
    }

    pub fn sym_square_dim(&self) -> usize {
        self.space.ambient_dim()
    }

    /// `S²(φ)` as a matrix on the symmetric basis, with `φ` acting either as a
    /// group element (`φx ∨ φy`) or as a derivation (`Dx ∨ y + x ∨ Dy`).
    fn sym_square_map(&self, phi: &LinearMap, mode: MapMode) -> Matrix {
        let n = self.algebra.dim();
        let images: Vec<Vec<Scalar>> = (0..n).map(|i| phi.matrix.column(i)).collect();
        let cols: Vec<Vec<Scalar>> = sym_pairs(n)
            .into_iter()
            .map(|(i, j)| match mode {
                MapMode::Automorphism => sym_product(&images[i], &images[j]),
                MapMode::Derivation => {
                    let a = sym_product(&images[i], &self.algebra.basis_vector(j));
                    let b = sym_product(&self.algebra.basis_vector(i), &images[j]);
                    a.into_iter().zip(b).map(|(x, y)| x + y).collect()
                }
            })
            .collect();
        Matrix::from_columns(&cols, sym_dim(n))
    }
}

/// Computes `V(k)` and `κ_u`.
pub fn universal_form(alg: &LieAlgebra) -> UniversalForm {
    let n = alg.dim();
    let pairs = sym_pairs(n);
    let mut relations = Vec::with_capacity(n * pairs.len());
    for k in 0..n {
        for &(i, j) in &pairs {
            // e_k.(e_i ∨ e_j) = [e_k, e_i] ∨ e_j + e_i ∨ [e_k, e_j]
            let a = sym_product(alg.basis_bracket(k, i), &alg.basis_vector(j));
            let b = sym_product(&alg.basis_vector(i), alg.basis_bracket(k, j));
            let rel: Vec<Scalar> = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
            if rel.iter().any(|x| !x.is_zero()) {
                relations.push(rel);
            }
        }
    }
    let space = QuotientSpace::new(sym_dim(n), &relations).expect("relations have length dim S²");
    let proj = space.projection().clone();
    let kappa_u = SymBilinearForm::from_fn(n, space.quotient_dim(), |i, j| {
        proj.matrix.column(sym_index(n, i, j))
    });
    UniversalForm {
        algebra: alg.clone(),
        space,
        kappa_u,
    }
}

/// The unique linear map `φ: V(k) → W` with `φ ∘ κ_u = β`.
pub fn factor_through(u: &UniversalForm, beta: &SymBilinearForm) -> Result<LinearMap> {
    let n = u.algebra.dim();
    if beta.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: beta.dim(),
        });
    }
    if !u.algebra.is_invariant(beta) {
        return Err(Error::NotInvariant);
    }
    // Solve φ·P = B, where P (q × m) is the projection and B (d × m) lists β on
    // the symmetric basis. Rows of φ are independent systems P^T φ_r = B_r.
    let m = u.sym_square_dim();
    let pairs = sym_pairs(n);
    let pt = u.space.projection().matrix.transpose();
    let q = u.quotient_dim();
    let mut phi = Matrix::zeros(beta.value_dim(), q);
    for r in 0..beta.value_dim() {
        let rhs: Vec<Scalar> = pairs.iter().map(|&(i, j)| beta.get(i, j)[r].clone()).collect();
        debug_assert_eq!(rhs.len(), m);
        let sol = pt.solve(&rhs)?.ok_or(Error::NotInvariant)?;
        for (c, v) in sol.into_iter().enumerate() {
            phi.set(r, c, v);
        }
    }
    let phi = LinearMap::new(phi);
    debug_assert_eq!(u.kappa_u.map_values(&phi)?, *beta);
    Ok(phi)
}

/// Basis of `Cent(k) = {φ ∈ End(k) : [φ, ad x] = 0 for all x}`, as matrices.
pub fn centroid(alg: &LieAlgebra) -> Vec<LinearMap> {
    let n = alg.dim();
    let ads: Vec<Matrix> = (0..n)
        .map(|i| alg.ad(&alg.basis_vector(i)).expect("basis vector").matrix)
        .collect();
    // Unknown φ flattened row-major: φ[a][b] ↦ a*n + b.
    let mut rows = Vec::new();
    for ad in &ads {
        for a in 0..n {
            for b in 0..n {
                // (φ ad)[a][b] - (ad φ)[a][b] = Σ_c φ[a][c] ad[c][b] - ad[a][c] φ[c][b]
                let mut row = vec![Scalar::zero(); n * n];
                for c in 0..n {
                    row[a * n + c] += ad.get(c, b);
                    row[c * n + b] -= ad.get(a, c);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::zeros(0, n * n).kernel()
    } else {
        Matrix::from_rows(rows, n * n).expect("row length n²").kernel()
    };
    kernel
        .into_iter()
        .map(|v| LinearMap::new(Matrix::from_fn(n, n, |a, b| v[a * n + b].clone())))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MapMode {
    Automorphism,
    Derivation,
}

/// The map `V(φ)` on quotient coordinates.
pub fn induced_map_on_v(u: &UniversalForm, phi: &LinearMap, mode: MapMode) -> Result<LinearMap> {
    let alg = &u.algebra;
    let ok = match mode {
        MapMode::Automorphism => alg.is_automorphism(phi),
        MapMode::Derivation => alg.is_derivation(phi),
    };
    if !ok {
        return Err(Error::NotMorphism);
    }
    let s2 = u.sym_square_map(phi, mode);
    let proj = &u.space.projection().matrix;
    let induced = proj.mul(&s2)?.mul(&u.space.section().matrix)?;
    // Well defined: relations map into relations.
    debug_assert!(u
        .space
        .relation_basis()
        .iter()
        .all(|w| proj.mul_vec(&s2.mul_vec(w).unwrap()).unwrap().iter().all(Zero::is_zero)));
    Ok(LinearMap::new(induced))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    /// `dim V_0, dim V_1, …`.
    pub dims: Vec<usize>,
    pub total_dim: usize,
    pub direct: bool,
    pub exhaustive: bool,
}

/// Checks `V(k) = V_0 ⊕ V_1 ⊕ … ⊕ V_r` for a supplied radical and list of
/// semisimple blocks, with `V_0 = κ_u(r, k)` and `V_i = κ_u(s_i, s_i)`.
pub fn verify_decomposition(
    u: &UniversalForm,
    radical_basis: &[Vec<Scalar>],
    blocks: &[Vec<Vec<Scalar>>],
) -> Result<DecompositionReport> {
    let alg = &u.algebra;
    let n = alg.dim();
    let all: Vec<Vec<Scalar>> = radical_basis
        .iter()
        .chain(blocks.iter().flatten())
        .cloned()
        .collect();
    if let Some(v) = all.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if all.len() != n || span_rank(&all, n) != n {
        return Err(Error::InputNotComplementary(format!(
            "{} vectors of rank {} do not form a basis of a {n}-dimensional algebra",
            all.len(),
            span_rank(&all, n)
        )));
    }
    let kappa = &u.kappa_u;
    let q = u.quotient_dim();
    let v0: Vec<Vec<Scalar>> = radical_basis
        .iter()
        .flat_map(|r| (0..n).map(move |j| (r, j)))
        .map(|(r, j)| kappa.eval(r, &alg.basis_vector(j)))
        .collect();
    let mut pieces = vec![v0];
    for block in blocks {
        pieces.push(
            block
                .iter()
                .flat_map(|a| block.iter().map(move |b| (a, b)))
                .map(|(a, b)| kappa.eval(a, b))
                .collect(),
        );
    }
    let dims: Vec<usize> = pieces.iter().map(|p| span_rank(p, q)).collect();
    let union: Vec<Vec<Scalar>> = pieces.into_iter().flatten().collect();
    let total = span_rank(&union, q);
    Ok(DecompositionReport {
        direct: dims.iter().sum::<usize>() == total,
        exhaustive: total == q,
        total_dim: total,
        dims,
    })
}
