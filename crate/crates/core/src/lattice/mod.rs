//! Discreteness of finitely generated subgroups of `R^n`.
//!
//! Coordinates of generators are `Q`-linear combinations of named real
//! constants, one of which is `"1"`. Unless numeric mode is requested, the
//! constants other than `"1"` are treated as algebraically independent
//! transcendentals. Under that model:
//!
//! * the abstract rank (`z_rank`) is the `Q`-rank of the coefficient matrix,
//!   and integer relations are read off a Hermite normal form;
//! * the real span rank (`span_rank`) is the rank over the field of rational
//!   functions in the constants;
//! * the group is discrete iff the two ranks agree.

pub mod hnf;
pub mod lll;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{to_f64, Matrix, Scalar};
use crate::lie::LinearMap;
use crate::quadrature::simpson_vec;

/// Relative tolerance for numeric ranks and relations.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;
/// Largest coefficient accepted in a numerically detected integer relation.
pub const RELATION_COEFFICIENT_BOUND: f64 = 1e6;
/// Largest evaluation grid for the exact span-rank certificate.
const MAX_GRID_POINTS: usize = 200_000;

fn ser_scalar_rows<S: Serializer>(rows: &[Vec<Scalar>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    v.serialize(s)
}

fn ser_int_rows<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    v.serialize(s)
}

fn ser_int_row<S: Serializer>(row: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<String> = row.iter().map(|x| x.to_string()).collect();
    v.serialize(s)
}

/// `v = Σ_j coeffs[·][j] b_j`, one row per ambient coordinate and one column
/// per constant `b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicVector {
    #[serde(serialize_with = "ser_scalar_rows")]
    coeffs: Vec<Vec<Scalar>>,
}

impl SymbolicVector {
    pub fn new(coeffs: Vec<Vec<Scalar>>) -> Result<Self> {
        let k = coeffs.first().map_or(0, |r| r.len());
        if let Some(r) = coeffs.iter().find(|r| r.len() != k) {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: r.len(),
            });
        }
        Ok(SymbolicVector { coeffs })
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn num_constants(&self) -> usize {
        self.coeffs.first().map_or(0, |r| r.len())
    }

    pub fn coeffs(&self) -> &[Vec<Scalar>] {
        &self.coeffs
    }

    fn flatten(&self) -> Vec<Scalar> {
        self.coeffs.iter().flatten().cloned().collect()
    }

    fn from_flat(flat: &[Scalar], n: usize, k: usize) -> Self {
        SymbolicVector {
            coeffs: (0..n).map(|i| flat[i * k..(i + 1) * k].to_vec()).collect(),
        }
    }

    pub fn evaluate(&self, values: &[f64]) -> Vec<f64> {
        self.coeffs.iter().map(|r| r.iter().zip(values).map(|(c, v)| to_f64(c) * v).sum()).collect()
    }

    fn evaluate_exact(&self, point: &[Scalar]) -> Vec<Scalar> {
        self.coeffs
            .iter()
            .map(|r| r.iter().zip(point).fold(Scalar::zero(), |acc, (c, v)| acc + c * v))
            .collect()
    }
}

/// Subgroup of `R^n` generated by finitely many symbolic vectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratedSubgroup {
    ambient_dim: usize,
    constants: Vec<String>,
    generators: Vec<SymbolicVector>,
    values: Option<Vec<f64>>,
    numeric: bool,
}

impl GeneratedSubgroup {
    pub fn new(ambient_dim: usize, constants: Vec<String>, generators: Vec<SymbolicVector>) -> Result<Self> {
        for (i, c) in constants.iter().enumerate() {
            if constants[..i].contains(c) {
                return Err(Error::Parse(format!("constant '{c}' declared twice")));
            }
        }
        if !constants.iter().any(|c| c == "1") {
            return Err(Error::Parse("the constant \"1\" must be declared".into()));
        }
        for g in &generators {
            if g.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: g.ambient_dim(),
                });
            }
            if ambient_dim > 0 && g.num_constants() != constants.len() {
                return Err(Error::DimensionMismatch {
                    expected: constants.len(),
                    found: g.num_constants(),
                });
            }
        }
        Ok(GeneratedSubgroup {
            ambient_dim,
            constants,
            generators,
            values: None,
            numeric: false,
        })
    }

    /// Generators with rational coordinates only.
    pub fn rational(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let gens = vectors
            .iter()
            .map(|v| SymbolicVector::new(v.iter().map(|x| vec![x.clone()]).collect()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient_dim, vec!["1".into()], gens)
    }

    /// Attaches numeric values of the constants (`"1"` must be `1.0`).
    pub fn with_values(mut self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.constants.len() {
            return Err(Error::DimensionMismatch {
                expected: self.constants.len(),
                found: values.len(),
            });
        }
        let one = self.one_index();
        if values[one] != 1.0 {
            return Err(Error::Parse("the constant \"1\" must have value 1".into()));
        }
        self.values = Some(values);
        Ok(self)
    }

    /// Switches to numeric mode; requires values.
    pub fn into_numeric(mut self) -> Result<Self> {
        if self.values.is_none() {
            return Err(Error::MissingNumericValues);
        }
        self.numeric = true;
        Ok(self)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn generators(&self) -> &[SymbolicVector] {
        &self.generators
    }

    pub fn values(&self) -> Option<&[f64]> {
        self.values.as_deref()
    }

    pub fn is_numeric(&self) -> bool {
        self.numeric
    }

    fn one_index(&self) -> usize {
        self.constants.iter().position(|c| c == "1").expect("validated")
    }

    fn flat_dim(&self) -> usize {
        self.ambient_dim * self.constants.len()
    }

    fn numeric_vectors(&self) -> Result<Vec<Vec<f64>>> {
        let values = self.values.as_ref().ok_or(Error::MissingNumericValues)?;
        Ok(self.generators.iter().map(|g| g.evaluate(values)).collect())
    }

    /// Generators as integer rows after scaling each flattened coordinate by
    /// the lcm of its denominators.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let flat: Vec<Vec<Scalar>> = self.generators.iter().map(|g| g.flatten()).collect();
        let d = self.flat_dim();
        let scales: Vec<BigInt> = (0..d)
            .map(|c| flat.iter().fold(BigInt::one(), |acc, r| acc.lcm(r[c].denom())))
            .collect();
        let rows = flat
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&scales)
                    .map(|(x, s)| (x * Scalar::from_integer(s.clone())).to_integer())
                    .collect()
            })
            .collect();
        (rows, scales)
    }
}

/// Abstract rank and a `Z`-basis of the integer relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZRank {
    pub rank: usize,
    #[serde(serialize_with = "ser_int_rows")]
    pub relation_basis: Vec<Vec<BigInt>>,
}

pub fn z_rank(g: &GeneratedSubgroup) -> Result<ZRank> {
    if g.is_numeric() {
        return Err(Error::NumericModeUnsupported);
    }
    let (rows, _) = g.integer_rows();
    let h = hnf::hnf(&rows, g.flat_dim());
    Ok(ZRank {
        rank: h.rank,
        relation_basis: h.u[h.rank..].to_vec(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanRankMethod {
    /// Exact ranks at every point of a grid large enough to certify the
    /// generic rank, or stopped early at full rank.
    GridCertificate,
    /// Exact ranks at pseudo-random integer points; correct with probability
    /// at least `1 − degree / 2^31` per point.
    RandomEvaluation,
    /// Singular values of the numeric vectors.
    Numeric,
}

fn numeric_rank(vectors: &[Vec<f64>], n: usize) -> usize {
    if vectors.is_empty() || n == 0 {
        return 0;
    }
    let m = DMatrix::from_fn(n, vectors.len(), |i, j| vectors[j][i]);
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
    sv.iter().filter(|s| **s > NUMERIC_TOLERANCE * top).count()
}

/// Rank of the real span and how it was obtained.
pub fn span_rank_with_method(g: &GeneratedSubgroup) -> Result<(usize, SpanRankMethod)> {
    let n = g.ambient_dim();
    let m = g.generators().len();
    if g.is_numeric() {
        return Ok((numeric_rank(&g.numeric_vectors()?, n), SpanRankMethod::Numeric));
    }
    let full = n.min(m);
    if full == 0 {
        return Ok((0, SpanRankMethod::GridCertificate));
    }
    let one = g.one_index();
    let vars: Vec<usize> = (0..g.constants().len()).filter(|&j| j != one).collect();
    let rank_at = |point: &[Scalar]| {
        let cols: Vec<Vec<Scalar>> = g.generators().iter().map(|v| v.evaluate_exact(point)).collect();
        Matrix::from_columns(&cols, n).rank()
    };
    let mut point = vec![Scalar::zero(); g.constants().len()];
    point[one] = Scalar::one();
    // Every minor has degree at most `full`, so a nonzero minor is nonzero
    // somewhere on {0..full}^s.
    let side = full + 1;
    let grid = side.checked_pow(vars.len() as u32).filter(|&p| p <= MAX_GRID_POINTS);
    let mut best = 0;
    if let Some(total) = grid {
        for idx in 0..total {
            let mut r = idx;
            for &v in &vars {
                point[v] = Scalar::from_integer(BigInt::from(r % side));
                r /= side;
            }
            best = best.max(rank_at(&point));
            if best == full {
                break;
            }
        }
        return Ok((best, SpanRankMethod::GridCertificate));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..32 {
        for &v in &vars {
            point[v] = Scalar::from_integer(BigInt::from(rng.gen_range(0u32..(1 << 31))));
        }
        best = best.max(rank_at(&point));
        if best == full {
            break;
        }
    }
    Ok((best, SpanRankMethod::RandomEvaluation))
}

pub fn span_rank(g: &GeneratedSubgroup) -> Result<usize> {
    Ok(span_rank_with_method(g)?.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Discrete,
    NotDiscrete,
    LikelyDiscrete,
    LikelyNotDiscrete,
}

/// A basis of the group as a lattice in its span, with every generator
/// written as an integer combination of it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeCertificate {
    pub basis: Vec<SymbolicVector>,
    #[serde(serialize_with = "ser_int_rows")]
    pub generator_expressions: Vec<Vec<BigInt>>,
    pub verified: bool,
}

/// A nonzero group element `w = Σ c_i v_i` with `|w| < ε / count`, so
/// `0, w, 2w, …, count·w` are `count + 1` distinct elements in the `ε`-ball.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmallElement {
    #[serde(serialize_with = "ser_int_row")]
    pub coefficients: Vec<BigInt>,
    pub norm: f64,
    pub epsilon: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AccumulationWitness {
    pub rank_excess: usize,
    pub small_element: Option<SmallElement>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscretenessVerdict {
    pub verdict: Verdict,
    pub z_rank: usize,
    pub span_rank: usize,
    pub span_rank_method: SpanRankMethod,
    #[serde(serialize_with = "ser_int_rows")]
    pub relation_basis: Vec<Vec<BigInt>>,
    pub lattice: Option<LatticeCertificate>,
    pub accumulation: Option<AccumulationWitness>,
}

impl DiscretenessVerdict {
    pub fn is_discrete(&self) -> bool {
        matches!(self.verdict, Verdict::Discrete | Verdict::LikelyDiscrete)
    }
}

fn lattice_certificate(g: &GeneratedSubgroup) -> Result<LatticeCertificate> {
    let (rows, scales) = g.integer_rows();
    let d = g.flat_dim();
    let h = hnf::hnf(&rows, d);
    let m = rows.len();
    let basis_flat: Vec<Vec<Scalar>> = h.h[..h.rank]
        .iter()
        .map(|r| r.iter().zip(&scales).map(|(x, s)| Scalar::new(x.clone(), s.clone())).collect())
        .collect();
    let u = Matrix::from_fn(m, m, |i, j| Scalar::from_integer(h.u[i][j].clone()));
    let u_inv = u.inverse()?.ok_or(Error::SingularTwist)?;
    let mut expressions = Vec::with_capacity(m);
    let mut verified = true;
    for (i, gen) in g.generators().iter().enumerate() {
        let coeffs: Vec<Scalar> = (0..h.rank).map(|r| u_inv.get(i, r).clone()).collect();
        verified &= coeffs.iter().all(|c| c.is_integer());
        let mut sum = vec![Scalar::zero(); d];
        for (c, b) in coeffs.iter().zip(&basis_flat) {
            for (s, x) in sum.iter_mut().zip(b) {
                *s += c * x;
            }
        }
        verified &= sum == gen.flatten();
        expressions.push(coeffs.iter().map(|c| c.to_integer()).collect());
    }
    let basis = basis_flat
        .iter()
        .map(|f| SymbolicVector::from_flat(f, g.ambient_dim(), g.constants().len()))
        .collect();
    Ok(LatticeCertificate {
        basis,
        generator_expressions: expressions,
        verified,
    })
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn combine(vectors: &[Vec<f64>], x: &[BigInt], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n];
    for (v, c) in vectors.iter().zip(x) {
        let c = c.to_f64().unwrap_or(f64::INFINITY);
        for (o, y) in out.iter_mut().zip(v) {
            *o += c * y;
        }
    }
    out
}

fn combine_exact(vectors: &[Vec<Scalar>], x: &[BigInt], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (v, c) in vectors.iter().zip(x) {
        let c = Scalar::from_integer(c.clone());
        for (o, y) in out.iter_mut().zip(v) {
            *o += &c * y;
        }
    }
    out
}

/// The numeric vectors with every `f64` read as the exact rational it encodes.
fn exact_vectors(vectors: &[Vec<f64>]) -> Vec<Vec<Scalar>> {
    vectors
        .iter()
        .map(|v| v.iter().map(|x| Scalar::from_float(*x).unwrap_or_else(Scalar::zero)).collect())
        .collect()
}

/// LLL-reduced rows `[e_i | round(C v_i)]`, computed exactly.
fn relation_lattice(vectors: &[Vec<Scalar>], n: usize, scale: &Scalar) -> Vec<Vec<BigInt>> {
    let m = vectors.len();
    let rows: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            let mut r: Vec<BigInt> = (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect();
            r.extend((0..n).map(|c| (&vectors[i][c] * scale).round().to_integer()));
            r
        })
        .collect();
    lll::lll(rows, &lll::default_delta())
        .into_iter()
        .map(|mut r| {
            r.truncate(m);
            r
        })
        .collect()
}

fn magnitude(vectors: &[Vec<f64>]) -> f64 {
    vectors.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max).max(1.0)
}

fn scale_for(exp: i32, mag: f64) -> Scalar {
    let ten = Scalar::from_integer(BigInt::from(10));
    let mag = Scalar::from_float(mag).unwrap_or_else(Scalar::one);
    num_traits::pow::pow(ten, exp as usize) / mag
}

/// Searches for a nonzero element of norm below `epsilon / count`, treating
/// the numeric values as exact. `is_relation` decides whether a coefficient
/// vector gives the zero element.
fn find_small_element(
    vectors: &[Vec<f64>],
    n: usize,
    epsilon: f64,
    count: usize,
    is_relation: impl Fn(&[BigInt]) -> bool,
) -> Option<SmallElement> {
    let count = count.max(1);
    let target = Scalar::from_float(epsilon / count as f64)?;
    let target2 = &target * &target;
    let exact = exact_vectors(vectors);
    let mag = magnitude(vectors);
    for exp in (6..=60).step_by(3) {
        for x in relation_lattice(&exact, n, &scale_for(exp, mag)) {
            if is_relation(&x) {
                continue;
            }
            let w = combine_exact(&exact, &x, n);
            let w2 = w.iter().fold(Scalar::zero(), |acc, y| acc + y * y);
            if !w2.is_zero() && w2 < target2 {
                return Some(SmallElement {
                    coefficients: x,
                    norm: to_f64(&w2).sqrt(),
                    epsilon,
                    count,
                });
            }
        }
    }
    None
}

/// Default radius for the accumulation witness.
pub const DEFAULT_EPSILON: f64 = 1e-6;

fn exact_relation(g: &GeneratedSubgroup) -> impl Fn(&[BigInt]) -> bool + '_ {
    move |x: &[BigInt]| {
        let flat: Vec<Vec<Scalar>> = g.generators().iter().map(|v| v.flatten()).collect();
        combine_exact(&flat, x, g.flat_dim()).iter().all(|s| s.is_zero())
    }
}

fn numeric_relation(vectors: &[Vec<f64>], n: usize) -> impl Fn(&[BigInt]) -> bool + '_ {
    let tol = NUMERIC_TOLERANCE * magnitude(vectors);
    move |x: &[BigInt]| {
        let small = x.iter().all(|c| c.abs().to_f64().unwrap_or(f64::INFINITY) <= RELATION_COEFFICIENT_BOUND);
        small && x.iter().any(|c| !c.is_zero()) && norm(&combine(vectors, x, n)) <= tol
    }
}

/// Decides discreteness; exact unless the group is in numeric mode.
pub fn is_discrete(g: &GeneratedSubgroup) -> Result<DiscretenessVerdict> {
    is_discrete_with_epsilon(g, DEFAULT_EPSILON)
}

pub fn is_discrete_with_epsilon(g: &GeneratedSubgroup, epsilon: f64) -> Result<DiscretenessVerdict> {
    let n = g.ambient_dim();
    let m = g.generators().len();
    let (span, method) = span_rank_with_method(g)?;
    if g.is_numeric() {
        let vectors = g.numeric_vectors()?;
        let is_rel = numeric_relation(&vectors, n);
        let relations: Vec<Vec<BigInt>> = if m == 0 {
            Vec::new()
        } else {
            relation_lattice(&exact_vectors(&vectors), n, &scale_for(12, magnitude(&vectors)))
                .into_iter()
                .filter(|x| is_rel(x))
                .collect()
        };
        let zr = m - relations.len().min(m);
        let discrete = zr <= span;
        let accumulation = (!discrete).then(|| AccumulationWitness {
            rank_excess: zr - span,
            small_element: find_small_element(&vectors, n, epsilon, m, &is_rel),
        });
        return Ok(DiscretenessVerdict {
            verdict: if discrete { Verdict::LikelyDiscrete } else { Verdict::LikelyNotDiscrete },
            z_rank: zr,
            span_rank: span,
            span_rank_method: method,
            relation_basis: relations,
            lattice: None,
            accumulation,
        });
    }
    let zr = z_rank(g)?;
    let discrete = zr.rank == span;
    let lattice = if discrete { Some(lattice_certificate(g)?) } else { None };
    let accumulation = if discrete {
        None
    } else {
        let small_element = match g.numeric_vectors() {
            Ok(vectors) => find_small_element(&vectors, n, epsilon, m, exact_relation(g)),
            Err(_) => None,
        };
        Some(AccumulationWitness {
            rank_excess: zr.rank - span,
            small_element,
        })
    };
    Ok(DiscretenessVerdict {
        verdict: if discrete { Verdict::Discrete } else { Verdict::NotDiscrete },
        z_rank: zr.rank,
        span_rank: span,
        span_rank_method: method,
        relation_basis: zr.relation_basis,
        lattice,
        accumulation,
    })
}

/// Pushes every generator through `p`.
pub fn image_under_projection(g: &GeneratedSubgroup, p: &LinearMap) -> Result<GeneratedSubgroup> {
    if p.source_dim() != g.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: g.ambient_dim(),
            found: p.source_dim(),
        });
    }
    let k = g.constants().len();
    let gens = g
        .generators()
        .iter()
        .map(|v| {
            let coeffs = (0..p.target_dim())
                .map(|i| {
                    (0..k)
                        .map(|j| (0..p.source_dim()).fold(Scalar::zero(), |acc, c| acc + p.matrix.get(i, c) * &v.coeffs()[c][j]))
                        .collect()
                })
                .collect();
            SymbolicVector { coeffs }
        })
        .collect();
    Ok(GeneratedSubgroup {
        ambient_dim: p.target_dim(),
        generators: gens,
        ..g.clone()
    })
}

/// Value of `∫₀¹ h`, given exactly, as a named independent constant, or by
/// samples on a uniform grid of `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub enum TorusInput {
    Rational(Scalar),
    Symbolic(String),
    Sampled(Vec<f64>),
}

/// The group `Z + Z·∫₀¹ h` in `R`.
pub fn torus_group(input: &TorusInput) -> Result<GeneratedSubgroup> {
    match input {
        TorusInput::Rational(q) => GeneratedSubgroup::rational(1, &[vec![Scalar::one()], vec![q.clone()]]),
        TorusInput::Symbolic(name) => {
            if name == "1" {
                return Err(Error::Parse("the symbolic integral needs a name other than \"1\"".into()));
            }
            let gens = vec![
                SymbolicVector::new(vec![vec![Scalar::one(), Scalar::zero()]])?,
                SymbolicVector::new(vec![vec![Scalar::zero(), Scalar::one()]])?,
            ];
            GeneratedSubgroup::new(1, vec!["1".into(), name.clone()], gens)
        }
        TorusInput::Sampled(h) => {
            if h.len() < 3 || h.len() % 2 == 0 {
                return Err(Error::Parse("sampled h needs an odd number (at least 3) of samples".into()));
            }
            let samples: Vec<Vec<f64>> = h.iter().map(|x| vec![*x]).collect();
            let value = simpson_vec(&samples, 1.0)[0];
            let gens = vec![
                SymbolicVector::new(vec![vec![Scalar::one(), Scalar::zero()]])?,
                SymbolicVector::new(vec![vec![Scalar::zero(), Scalar::one()]])?,
            ];
            GeneratedSubgroup::new(1, vec!["1".into(), "h".into()], gens)?
                .with_values(vec![1.0, value])?
                .into_numeric()
        }
    }
}

pub fn torus_example(input: &TorusInput) -> Result<DiscretenessVerdict> {
    is_discrete(&torus_group(input)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};
    use crate::twisted_loop::averaging_projector;
    use proptest::prelude::*;

    fn sv(rows: &[&[i64]]) -> SymbolicVector {
        SymbolicVector::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    fn alpha_group(vectors: Vec<SymbolicVector>, n: usize) -> GeneratedSubgroup {
        GeneratedSubgroup::new(n, vec!["1".into(), "alpha".into()], vectors).unwrap()
    }

    #[test]
    fn z_rank_examples() {
        let one = GeneratedSubgroup::rational(1, &[vec![int(1)]]).unwrap();
        assert_eq!(z_rank(&one).unwrap().rank, 1);
        let half = GeneratedSubgroup::rational(1, &[vec![int(1)], vec![frac(1, 2)]]).unwrap();
        let zr = z_rank(&half).unwrap();
        assert_eq!(zr.rank, 1);
        let rel = &zr.relation_basis[0];
        assert_eq!(rel[0].abs(), BigInt::one());
        assert_eq!(rel[1].abs(), BigInt::from(2));
        let indep = alpha_group(vec![sv(&[&[1, 0]]), sv(&[&[0, 1]])], 1);
        assert_eq!(z_rank(&indep).unwrap().rank, 2);
        let numeric = indep.with_values(vec![1.0, 2f64.sqrt()]).unwrap().into_numeric().unwrap();
        assert_eq!(z_rank(&numeric), Err(Error::NumericModeUnsupported));
    }

    #[test]
    fn span_rank_examples() {
        let g = alpha_group(vec![sv(&[&[1, 0]]), sv(&[&[0, 1]])], 1);
        assert_eq!(span_rank(&g).unwrap(), 1);
        let g = alpha_group(vec![sv(&[&[1, 0], &[0, 0]]), sv(&[&[0, 0], &[1, 0]]), sv(&[&[0, 1], &[0, 1]])], 2);
        assert_eq!(span_rank(&g).unwrap(), 2);
        let empty = GeneratedSubgroup::rational(3, &[]).unwrap();
        assert_eq!(span_rank(&empty).unwrap(), 0);
        assert!(is_discrete(&empty).unwrap().is_discrete());
        // (1, α) and (α, α²) would be dependent, but (1, α), (α, 1) are not.
        let g = alpha_group(vec![sv(&[&[1, 0], &[0, 1]]), sv(&[&[0, 1], &[1, 0]])], 2);
        assert_eq!(span_rank(&g).unwrap(), 2);
    }

    #[test]
    fn discreteness_examples() {
        let rational = torus_example(&TorusInput::Rational(frac(3, 7))).unwrap();
        assert_eq!(rational.verdict, Verdict::Discrete);
        let cert = rational.lattice.unwrap();
        assert!(cert.verified);
        assert_eq!(cert.basis.len(), 1);
        assert_eq!(cert.basis[0].coeffs()[0][0], frac(1, 7));
        let symbolic = torus_example(&TorusInput::Symbolic("alpha".into())).unwrap();
        assert_eq!(symbolic.verdict, Verdict::NotDiscrete);
        assert_eq!(symbolic.accumulation.unwrap().rank_excess, 1);
        let period = GeneratedSubgroup::new(1, vec!["1".into(), "pi^2".into()], vec![sv(&[&[0, 4]])]).unwrap();
        let v = is_discrete(&period).unwrap();
        assert_eq!((v.verdict, v.z_rank, v.span_rank), (Verdict::Discrete, 1, 1));
        let zero = torus_example(&TorusInput::Rational(int(0))).unwrap();
        assert_eq!(zero.verdict, Verdict::Discrete);
    }

    #[test]
    fn accumulation_witness_with_values() {
        let g = alpha_group(vec![sv(&[&[1, 0]]), sv(&[&[0, 1]])], 1).with_values(vec![1.0, 2f64.sqrt()]).unwrap();
        let v = is_discrete(&g).unwrap();
        assert_eq!(v.verdict, Verdict::NotDiscrete);
        let w = v.accumulation.unwrap().small_element.unwrap();
        assert!(w.norm < 1e-6 / 2.0 && w.norm > 0.0);
        let r2 = Scalar::from_float(2f64.sqrt()).unwrap();
        let direct = Scalar::from_integer(w.coefficients[0].clone()) + Scalar::from_integer(w.coefficients[1].clone()) * r2;
        assert_eq!(to_f64(&direct.abs()), w.norm);
    }

    #[test]
    fn numeric_mode_verdicts() {
        let sampled = torus_example(&TorusInput::Sampled(vec![0.0; 33])).unwrap();
        assert_eq!(sampled.verdict, Verdict::LikelyDiscrete);
        let h: Vec<f64> = (0..=64).map(|j| (j as f64 / 64.0) * 6.0 / 7.0).collect();
        assert_eq!(torus_example(&TorusInput::Sampled(h)).unwrap().verdict, Verdict::LikelyDiscrete);
        let h: Vec<f64> = (0..=64).map(|j| (j as f64 / 64.0).powi(2) * 3f64.sqrt()).collect();
        let v = torus_example(&TorusInput::Sampled(h)).unwrap();
        assert_eq!(v.verdict, Verdict::LikelyNotDiscrete);
        assert!(v.accumulation.unwrap().small_element.is_some());
        let g = alpha_group(vec![sv(&[&[1, 0]])], 1);
        assert_eq!(g.into_numeric().unwrap_err(), Error::MissingNumericValues);
    }

    #[test]
    fn projection_examples() {
        let std3 = GeneratedSubgroup::rational(3, &[vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]]).unwrap();
        let cyc = LinearMap::new(Matrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]));
        let p = averaging_projector(&cyc, 10).unwrap();
        let img = image_under_projection(&std3, &p).unwrap();
        let v = is_discrete(&img).unwrap();
        assert_eq!((v.verdict, v.z_rank, v.span_rank), (Verdict::Discrete, 1, 1));
        assert_eq!(v.lattice.unwrap().basis[0].coeffs()[0][0], frac(1, 3));
        assert_eq!(image_under_projection(&std3, &LinearMap::identity(3)).unwrap(), std3);
        let zero = image_under_projection(&std3, &LinearMap::zero(3, 3)).unwrap();
        assert_eq!(is_discrete(&zero).unwrap().z_rank, 0);
        assert!(image_under_projection(&std3, &LinearMap::identity(2)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn exact_verdicts_are_sound(
            coeffs in proptest::collection::vec(proptest::collection::vec((-6i64..6, 1i64..5, -3i64..3), 2), 1..5)
        ) {
            let gens: Vec<SymbolicVector> = coeffs
                .iter()
                .map(|row| SymbolicVector::new(row.iter().map(|&(p, q, a)| vec![frac(p, q), int(a)]).collect()).unwrap())
                .collect();
            let g = alpha_group(gens, 2);
            let v = is_discrete(&g).unwrap();
            prop_assert_eq!(v.verdict == Verdict::Discrete, v.z_rank == v.span_rank);
            prop_assert!(v.z_rank >= v.span_rank);
            if let Some(cert) = v.lattice {
                prop_assert!(cert.verified);
                prop_assert_eq!(cert.basis.len(), v.z_rank);
            } else {
                let g = g.with_values(vec![1.0, std::f64::consts::E]).unwrap();
                let v = is_discrete(&g).unwrap();
                let w = v.accumulation.unwrap().small_element;
                prop_assert!(w.is_some_and(|w| w.norm < w.epsilon / w.count as f64));
            }
        }
    }
}
