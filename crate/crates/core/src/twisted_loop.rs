//! Discretized twisted loop algebras `C^∞(R, k)_φ = {f : f(t+1) = φ⁻¹ f(t)}`.
//!
//! A section is stored by its `N + 1` samples on the uniform grid
//! `t_j = j / N`. Samples outside `[0, 1]` are recovered from the twist:
//! `f(t_k) = φ⁻¹ f(t_{k-N})` for `k > N` and `f(t_k) = φ f(t_{k+N})` for
//! `k < 0`, so derivatives use centered fourth-order stencils everywhere.
//! Integrals use composite Simpson.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{to_f64, Matrix, Scalar};
use crate::invariants::QuotientSpace;
use crate::lie::{LieAlgebra, LinearMap, SymBilinearForm};
use crate::quadrature::simpson_vec;

const TWIST_TOLERANCE: f64 = 1e-10;

fn apply_f64(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// A twisted section sampled at `t_j = j / N`, `j = 0..=N`.
#[derive(Clone, Debug)]
pub struct SampledTwistedSection {
    twist: LinearMap,
    twist_f64: Vec<Vec<f64>>,
    twist_inv_f64: Vec<Vec<f64>>,
    samples: Vec<Vec<f64>>,
}

impl SampledTwistedSection {
    /// Validates `N` (even, at least 4), dimensions and `f(1) = φ⁻¹ f(0)`.
    pub fn new(twist: LinearMap, samples: Vec<Vec<f64>>) -> Result<Self> {
        let dim = twist.source_dim();
        if twist.target_dim() != dim {
            return Err(Error::NotSquare);
        }
        let inv = twist.inverse()?.ok_or(Error::SingularTwist)?;
        if samples.len() < 5 || !(samples.len() - 1).is_multiple_of(2) {
            return Err(Error::Parse(format!(
                "a section needs an even number N >= 4 of intervals, got {} samples",
                samples.len()
            )));
        }
        if let Some(s) = samples.iter().find(|s| s.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.len(),
            });
        }
        let twist_inv_f64 = inv.to_f64();
        let expected = apply_f64(&twist_inv_f64, &samples[0]);
        let last = &samples[samples.len() - 1];
        let dev = expected.iter().zip(last).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let scale = expected.iter().map(|x| x.abs()).fold(1.0, f64::max);
        if dev > TWIST_TOLERANCE * scale {
            return Err(Error::TwistMismatch);
        }
        Ok(SampledTwistedSection {
            twist_f64: twist.to_f64(),
            twist,
            twist_inv_f64,
            samples,
        })
    }

    /// Exact samples; the twist condition is checked without rounding.
    pub fn from_exact(twist: LinearMap, samples: &[Vec<Scalar>]) -> Result<Self> {
        let inv = twist.inverse()?.ok_or(Error::SingularTwist)?;
        if let (Some(first), Some(last)) = (samples.first(), samples.last()) {
            if &inv.apply(first)? != last {
                return Err(Error::TwistMismatch);
            }
        }
        let f = samples.iter().map(|s| s.iter().map(to_f64).collect()).collect();
        Self::new(twist, f)
    }

    /// Samples `f` at `j / n`; `f` must satisfy the twist condition.
    pub fn from_fn(twist: LinearMap, n: usize, f: impl Fn(f64) -> Vec<f64>) -> Result<Self> {
        let samples = (0..=n).map(|j| f(j as f64 / n as f64)).collect();
        Self::new(twist, samples)
    }

    pub fn zero(twist: LinearMap, n: usize) -> Result<Self> {
        let d = twist.source_dim();
        Self::new(twist, vec![vec![0.0; d]; n + 1])
    }

    pub fn grid_size(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.twist.source_dim()
    }

    pub fn twist(&self) -> &LinearMap {
        &self.twist
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        &self.samples
    }

    /// Sample at any integer index, extended by the twist.
    pub fn extended(&self, k: isize) -> Vec<f64> {
        let n = self.grid_size() as isize;
        if k > n {
            apply_f64(&self.twist_inv_f64, &self.extended(k - n))
        } else if k < 0 {
            apply_f64(&self.twist_f64, &self.extended(k + n))
        } else {
            self.samples[k as usize].clone()
        }
    }

    /// Fourth-order centered derivative at every grid point.
    pub fn derivative(&self) -> Vec<Vec<f64>> {
        let n = self.grid_size();
        let h = 1.0 / n as f64;
        (0..=n as isize)
            .map(|j| {
                let (m2, m1, p1, p2) = (self.extended(j - 2), self.extended(j - 1), self.extended(j + 1), self.extended(j + 2));
                (0..self.dim())
                    .map(|r| (m2[r] - p2[r] + 8.0 * (p1[r] - m1[r])) / (12.0 * h))
                    .collect()
            })
            .collect()
    }

    /// Section whose samples are the fourth-order derivative of `self`.
    pub fn derivative_section(&self) -> Result<Self> {
        Self::new(self.twist.clone(), self.derivative())
    }

    /// Pointwise bracket; the twist must be an automorphism of `alg`.
    pub fn bracket(&self, other: &Self, alg: &LieAlgebra) -> Result<Self> {
        self.check_compatible(other)?;
        if alg.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: self.dim(),
            });
        }
        if !alg.is_automorphism(&self.twist) {
            return Err(Error::NotMorphism);
        }
        let n = alg.dim();
        let c: Vec<Vec<Vec<f64>>> = (0..n)
            .map(|i| (0..n).map(|j| alg.basis_bracket(i, j).iter().map(to_f64).collect()).collect())
            .collect();
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(x, y)| {
                let mut out = vec![0.0; n];
                for i in 0..n {
                    for j in 0..n {
                        let w = x[i] * y[j];
                        if w != 0.0 {
                            for (o, v) in out.iter_mut().zip(&c[i][j]) {
                                *o += w * v;
                            }
                        }
                    }
                }
                out
            })
            .collect();
        // The twist condition holds up to rounding because φ is an automorphism.
        Ok(SampledTwistedSection {
            samples,
            ..self.clone()
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.twist != other.twist || self.grid_size() != other.grid_size() {
            return Err(Error::TwistMismatch);
        }
        Ok(())
    }
}

/// `V / im(φ_V − id)`.
#[derive(Clone, Debug)]
pub struct CokernelSpace {
    phi: LinearMap,
    quotient: QuotientSpace,
}

impl CokernelSpace {
    pub fn phi(&self) -> &LinearMap {
        &self.phi
    }

    pub fn dim(&self) -> usize {
        self.quotient.quotient_dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.quotient.ambient_dim()
    }

    /// Basis of `im(φ_V − id)` in reduced echelon form.
    pub fn image_basis(&self) -> &[Vec<Scalar>] {
        self.quotient.relation_basis()
    }

    pub fn projection(&self) -> &LinearMap {
        self.quotient.projection()
    }

    pub fn section(&self) -> &LinearMap {
        self.quotient.section()
    }

    pub fn project(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.quotient.project(v)
    }

    pub fn project_f64(&self, v: &[f64]) -> Vec<f64> {
        self.quotient.project_f64(v)
    }
}

fn minus_identity(phi: &LinearMap) -> Result<Matrix> {
    if !phi.matrix.is_square() {
        return Err(Error::NotSquare);
    }
    phi.matrix.sub(&Matrix::identity(phi.source_dim()))
}

pub fn cokernel(phi: &LinearMap) -> Result<CokernelSpace> {
    let m = minus_identity(phi)?;
    let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|c| m.column(c)).collect();
    let quotient = QuotientSpace::new(m.rows(), &cols)?;
    Ok(CokernelSpace {
        phi: phi.clone(),
        quotient,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CokerFixedReport {
    pub order: u32,
    pub coker_dim: usize,
    pub fixed_dim: usize,
    /// The averaging projector kills `im(φ − id)`.
    pub averaging_descends: bool,
    /// The averaging projector lands in `ker(φ − id)`.
    pub averaging_is_fixed: bool,
    /// The induced map `coker → ker` is bijective.
    pub averaging_is_isomorphism: bool,
}

impl CokerFixedReport {
    pub fn holds(&self) -> bool {
        self.coker_dim == self.fixed_dim && self.averaging_descends && self.averaging_is_fixed && self.averaging_is_isomorphism
    }
}

/// Smallest `k <= bound` with `φ^k = id`.
pub fn matrix_order(phi: &LinearMap, bound: u32) -> Result<u32> {
    if !phi.matrix.is_square() {
        return Err(Error::NotSquare);
    }
    let id = Matrix::identity(phi.source_dim());
    let mut p = phi.matrix.clone();
    for k in 1..=bound {
        if p == id {
            return Ok(k);
        }
        p = p.mul(&phi.matrix)?;
    }
    Err(Error::OrderBoundExceeded(bound))
}

/// `(1/k) Σ_{j<k} φ^j` for `k = ord(φ)`.
pub fn averaging_projector(phi: &LinearMap, bound: u32) -> Result<LinearMap> {
    let k = matrix_order(phi, bound)?;
    let n = phi.source_dim();
    let mut sum = Matrix::zeros(n, n);
    let mut p = Matrix::identity(n);
    for _ in 0..k {
        sum = sum.add(&p)?;
        p = p.mul(&phi.matrix)?;
    }
    Ok(LinearMap::new(sum.scale(&(Scalar::one() / Scalar::from_integer(k.into())))))
}

/// Compares `coker(φ − id)` with `ker(φ − id)` for `φ` of finite order.
pub fn coker_equals_fixed_for_finite_order(phi: &LinearMap, order_bound: u32) -> Result<CokerFixedReport> {
    let order = matrix_order(phi, order_bound)?;
    let avg = averaging_projector(phi, order_bound)?;
    let m = minus_identity(phi)?;
    let coker = cokernel(phi)?;
    let fixed_dim = m.kernel().len();
    let averaging_descends = avg.matrix.mul(&m)?.is_zero();
    let averaging_is_fixed = m.mul(&avg.matrix)?.is_zero();
    let induced = avg.matrix.mul(&coker.section().matrix)?;
    let averaging_is_isomorphism = induced.rank() == coker.dim() && coker.dim() == fixed_dim;
    Ok(CokerFixedReport {
        order,
        coker_dim: coker.dim(),
        fixed_dim,
        averaging_descends,
        averaging_is_fixed,
        averaging_is_isomorphism,
    })
}

/// Exact check of `φ_V(κ(x, y)) = κ(φ_k x, φ_k y)` on basis pairs.
pub fn is_compatible(kappa: &SymBilinearForm, phi_k: &LinearMap, phi_v: &LinearMap) -> Result<bool> {
    let n = kappa.dim();
    if phi_k.source_dim() != n || phi_k.target_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: phi_k.source_dim(),
        });
    }
    if phi_v.source_dim() != kappa.value_dim() || phi_v.target_dim() != kappa.value_dim() {
        return Err(Error::DimensionMismatch {
            expected: kappa.value_dim(),
            found: phi_v.source_dim(),
        });
    }
    for i in 0..n {
        let xi = phi_k.matrix.column(i);
        for j in i..n {
            let xj = phi_k.matrix.column(j);
            if phi_v.apply(kappa.get(i, j))? != kappa.eval(&xi, &xj) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn form_f64(kappa: &SymBilinearForm) -> Vec<Vec<Vec<f64>>> {
    kappa.to_f64()
}

fn eval_form_f64(k: &[Vec<Vec<f64>>], x: &[f64], y: &[f64], d: usize) -> Vec<f64> {
    let mut out = vec![0.0; d];
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            let w = xi * yj;
            if w != 0.0 {
                for (o, v) in out.iter_mut().zip(&k[i][j]) {
                    *o += w * v;
                }
            }
        }
    }
    out
}

/// `ω_φ(f, g) = [∫₀¹ κ(f, g') dt]` in coordinates of `coker`.
pub fn omega_phi(f: &SampledTwistedSection, g: &SampledTwistedSection, kappa: &SymBilinearForm, coker: &CokernelSpace) -> Result<Vec<f64>> {
    f.check_compatible(g)?;
    if !is_compatible(kappa, f.twist(), coker.phi())? {
        return Err(Error::IncompatibleKappa);
    }
    let k = form_f64(kappa);
    let d = kappa.value_dim();
    let gp = g.derivative();
    let integrand: Vec<Vec<f64>> = f.samples().iter().zip(&gp).map(|(x, y)| eval_form_f64(&k, x, y, d)).collect();
    Ok(coker.project_f64(&simpson_vec(&integrand, 1.0)))
}

/// `max |Σ_cyc ω_φ([f, g], h)|` over coker coordinates.
pub fn cocycle_identity_check(
    alg: &LieAlgebra,
    f: &SampledTwistedSection,
    g: &SampledTwistedSection,
    h: &SampledTwistedSection,
    kappa: &SymBilinearForm,
    coker: &CokernelSpace,
) -> Result<f64> {
    f.check_compatible(g)?;
    f.check_compatible(h)?;
    let a = omega_phi(&f.bracket(g, alg)?, h, kappa, coker)?;
    let b = omega_phi(&g.bracket(h, alg)?, f, kappa, coker)?;
    let c = omega_phi(&h.bracket(f, alg)?, g, kappa, coker)?;
    Ok((0..a.len()).map(|r| (a[r] + b[r] + c[r]).abs()).fold(0.0, f64::max))
}

/// `[f dt] ↦ [∫₀¹ f dt]` for a `V`-valued section twisted by `φ_V`.
pub fn integrate_twisted(f: &SampledTwistedSection, coker: &CokernelSpace) -> Result<Vec<f64>> {
    if f.twist() != coker.phi() {
        return Err(Error::TwistMismatch);
    }
    Ok(coker.project_f64(&simpson_vec(f.samples(), 1.0)))
}

/// Fraction of `[0, 1]` on each side where the step is constant.
fn plateau(n: usize) -> f64 {
    (2 * (n / 16).max(1)) as f64 / n as f64
}

/// Smooth step: `0` on `[0, a]`, `1` on `[1 − a, 1]`, quintic smoothstep in
/// between. It satisfies `γ(t) + γ(1 − t) = 1`, so `∫₀¹ γ = ½`, and any
/// quadrature rule with symmetric weights reproduces `½` exactly.
pub fn smooth_step(t: f64, a: f64) -> f64 {
    if t <= a {
        0.0
    } else if t >= 1.0 - a {
        1.0
    } else {
        let s = (t - a) / (1.0 - 2.0 * a);
        s * s * s * (10.0 - 15.0 * s + 6.0 * s * s)
    }
}

/// `f_v(t) = (1 − γ(t)) v + γ(t) φ_V⁻¹ v`, a twisted section with `∫ f_v ≡ v`.
pub fn section_with_integral(v: &[Scalar], phi_v: &LinearMap, n: usize) -> Result<SampledTwistedSection> {
    let inv = phi_v.inverse()?.ok_or(Error::SingularTwist)?;
    let w = inv.apply(v)?;
    let vf: Vec<f64> = v.iter().map(to_f64).collect();
    let wf: Vec<f64> = w.iter().map(to_f64).collect();
    let a = plateau(n);
    let samples: Vec<Vec<f64>> = (0..=n)
        .map(|j| {
            let g = if j == 0 {
                0.0
            } else if j == n {
                1.0
            } else {
                // Symmetric evaluation keeps γ(t_j) + γ(t_{N-j}) = 1 in floating point.
                let t = j as f64 / n as f64;
                if 2 * j <= n {
                    smooth_step(t, a)
                } else {
                    1.0 - smooth_step((n - j) as f64 / n as f64, a)
                }
            };
            vf.iter().zip(&wf).map(|(x, y)| (1.0 - g) * x + g * y).collect()
        })
        .collect();
    if v.iter().all(|x| x.is_zero()) {
        return SampledTwistedSection::zero(phi_v.clone(), n);
    }
    SampledTwistedSection::new(phi_v.clone(), samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{quarter_turn, random_twisted_su2};
    use crate::exact::{frac, int};
    use crate::invariants::{induced_map_on_v, universal_form, MapMode};
    use crate::lie::normalized_killing;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn su2_setup() -> (LieAlgebra, SymBilinearForm, CokernelSpace) {
        let alg = LieAlgebra::su2();
        let u = universal_form(&alg);
        let phi_v = induced_map_on_v(&u, &quarter_turn(), MapMode::Automorphism).unwrap();
        let kappa = u.kappa().clone();
        (alg, kappa, cokernel(&phi_v).unwrap())
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&LinearMap::identity(1)).unwrap().dim(), 1);
        assert_eq!(cokernel(&LinearMap::new(Matrix::from_i64(&[&[-1]]))).unwrap().dim(), 0);
        // 120° rotation: x ↦ (−x − y ... ) in the basis where it is rational.
        let rot = LinearMap::new(Matrix::from_i64(&[&[0, -1], &[1, -1]]));
        let c = cokernel(&rot).unwrap();
        assert_eq!(c.dim(), 0);
        assert_eq!(coker_equals_fixed_for_finite_order(&rot, 12).unwrap().fixed_dim, 0);
    }

    #[test]
    fn projection_kills_image() {
        let phi = LinearMap::new(Matrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]));
        let c = cokernel(&phi).unwrap();
        let m = minus_identity(&phi).unwrap();
        assert!(c.projection().matrix.mul(&m).unwrap().is_zero());
        assert_eq!(c.dim(), 3 - m.rank());
    }

    #[test]
    fn coker_fixed_examples() {
        let cyc = LinearMap::new(Matrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]));
        let r = coker_equals_fixed_for_finite_order(&cyc, 10).unwrap();
        assert_eq!((r.order, r.coker_dim, r.fixed_dim), (3, 1, 1));
        assert!(r.holds());
        let id = coker_equals_fixed_for_finite_order(&LinearMap::identity(4), 10).unwrap();
        assert_eq!((id.coker_dim, id.fixed_dim), (4, 4));
        let swap = coker_equals_fixed_for_finite_order(&LinearMap::new(Matrix::from_i64(&[&[0, 1], &[1, 0]])), 10).unwrap();
        assert_eq!((swap.coker_dim, swap.fixed_dim), (1, 1));
        assert!(swap.holds());
        let shear = LinearMap::new(Matrix::from_i64(&[&[1, 1], &[0, 1]]));
        assert_eq!(coker_equals_fixed_for_finite_order(&shear, 20), Err(Error::OrderBoundExceeded(20)));
    }

    #[test]
    fn twist_condition_enforced() {
        let bad = SampledTwistedSection::from_fn(quarter_turn(), 8, |_| vec![1.0, 0.0, 0.0]);
        assert_eq!(bad.unwrap_err(), Error::TwistMismatch);
        let exact = vec![vec![int(1), int(0), int(0)], vec![frac(1, 2), int(0), int(0)], vec![int(0), int(-1), int(0)]];
        assert!(SampledTwistedSection::from_exact(quarter_turn(), &exact).is_err()); // N = 2 too small
    }

    #[test]
    fn extension_respects_twist() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_twisted_su2(&mut rng, 32);
        let e = f.extended(34);
        let direct = apply_f64(&quarter_turn().inverse().unwrap().unwrap().to_f64(), &f.samples()[2]);
        for r in 0..3 {
            assert!((e[r] - direct[r]).abs() < 1e-14);
        }
        let back = f.extended(-3);
        let direct = apply_f64(&quarter_turn().to_f64(), &f.samples()[29]);
        for r in 0..3 {
            assert!((back[r] - direct[r]).abs() < 1e-14);
        }
    }

    #[test]
    fn omega_is_antisymmetric() {
        let (_, kappa, coker) = su2_setup();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let f = random_twisted_su2(&mut rng, 64);
            let g = random_twisted_su2(&mut rng, 64);
            let a = omega_phi(&f, &g, &kappa, &coker).unwrap();
            let b = omega_phi(&g, &f, &kappa, &coker).unwrap();
            assert!((a[0] + b[0]).abs() < 1e-8, "{a:?} {b:?}");
            assert!(omega_phi(&f, &f, &kappa, &coker).unwrap()[0].abs() < 1e-8);
        }
    }

    #[test]
    fn omega_untwisted_orthogonal_pair_vanishes() {
        let alg = LieAlgebra::su2();
        let kappa = normalized_killing(&alg);
        let coker = cokernel(&LinearMap::identity(1)).unwrap();
        let f = SampledTwistedSection::from_fn(LinearMap::identity(3), 64, |t| vec![(2.0 * PI * t).sin(), 0.0, 0.0]).unwrap();
        let g = SampledTwistedSection::from_fn(LinearMap::identity(3), 64, |t| vec![0.0, (2.0 * PI * t).cos(), 0.0]).unwrap();
        assert!(omega_phi(&f, &g, &kappa, &coker).unwrap()[0].abs() < 1e-12);
        // κ(I, I) = 2, so ∫ κ(sin I, (cos I)') = −4π ∫ sin² = −2π.
        let h = SampledTwistedSection::from_fn(LinearMap::identity(3), 64, |t| vec![(2.0 * PI * t).cos(), 0.0, 0.0]).unwrap();
        let v = omega_phi(&f, &h, &kappa, &coker).unwrap()[0];
        assert!((v + 2.0 * PI).abs() < 1e-4, "{v}");
        let zero = SampledTwistedSection::zero(LinearMap::identity(3), 64).unwrap();
        assert_eq!(omega_phi(&zero, &g, &kappa, &coker).unwrap(), vec![0.0]);
    }

    #[test]
    fn omega_rejects_incompatible_inputs() {
        let (_, kappa, coker) = su2_setup();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_twisted_su2(&mut rng, 32);
        let g = random_twisted_su2(&mut rng, 64);
        assert_eq!(omega_phi(&f, &g, &kappa, &coker), Err(Error::TwistMismatch));
        let minus = cokernel(&LinearMap::new(Matrix::from_i64(&[&[-1]]))).unwrap();
        assert_eq!(omega_phi(&f, &f, &kappa, &minus), Err(Error::IncompatibleKappa));
    }

    fn cocycle_residual(n: usize, seed: u64) -> f64 {
        let (alg, kappa, coker) = su2_setup();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_twisted_su2(&mut rng, n);
        let g = random_twisted_su2(&mut rng, n);
        let h = random_twisted_su2(&mut rng, n);
        cocycle_identity_check(&alg, &f, &g, &h, &kappa, &coker).unwrap()
    }

    #[test]
    fn cocycle_residual_is_fourth_order() {
        let r: Vec<f64> = [64, 128, 256].iter().map(|&n| cocycle_residual(n, 11)).collect();
        assert!(r[2] < 1e-6, "{r:?}");
        let slope = (r[2] / r[0]).ln() / 4f64.ln();
        assert!((slope + 4.0).abs() < 0.5, "slope {slope}, residuals {r:?}");
    }

    #[test]
    fn cocycle_with_repeated_argument_cancels() {
        let (alg, kappa, coker) = su2_setup();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_twisted_su2(&mut rng, 64);
        let g = random_twisted_su2(&mut rng, 64);
        assert!(cocycle_identity_check(&alg, &f, &f, &g, &kappa, &coker).unwrap() < 1e-10);
        let ab = LieAlgebra::abelian(3);
        let k = SymBilinearForm::from_fn(3, 1, |i, j| vec![if i == j { int(1) } else { int(0) }]);
        let id = LinearMap::identity(3);
        let c = cokernel(&LinearMap::identity(1)).unwrap();
        let s = SampledTwistedSection::from_fn(id.clone(), 16, |t| vec![(2.0 * PI * t).sin(), 1.0, t * (1.0 - t)]).unwrap();
        assert_eq!(cocycle_identity_check(&ab, &s, &s, &s, &k, &c).unwrap(), 0.0);
    }

    #[test]
    fn exact_derivatives_integrate_to_zero() {
        let phi = LinearMap::new(Matrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]));
        let c = cokernel(&phi).unwrap();
        let inv = phi.inverse().unwrap().unwrap().to_f64();
        // g = (1 − γ) u + γ φ⁻¹ u is twisted, so ∫ g' = φ⁻¹u − u ∈ im(φ − id).
        let u = [1.0, -2.0, 0.5];
        let g = SampledTwistedSection::from_fn(phi.clone(), 64, |t| {
            let s = smooth_step(t, 0.125);
            let w = apply_f64(&inv, &u);
            (0..3).map(|r| (1.0 - s) * u[r] + s * w[r]).collect()
        })
        .unwrap();
        let df = g.derivative_section().unwrap();
        let out = integrate_twisted(&df, &c).unwrap();
        assert!(out.iter().all(|x| x.abs() < 1e-8), "{out:?}");
    }

    #[test]
    fn twisted_integral_examples() {
        let id = LinearMap::identity(1);
        let c = cokernel(&id).unwrap();
        let f = section_with_integral(&[int(1)], &id, 32).unwrap();
        assert!((integrate_twisted(&f, &c).unwrap()[0] - 1.0).abs() < 1e-14);
        let minus = LinearMap::new(Matrix::from_i64(&[&[-1]]));
        let f = section_with_integral(&[int(1)], &minus, 32).unwrap();
        assert!(simpson_vec(f.samples(), 1.0)[0].abs() < 1e-14);
        let zero = section_with_integral(&[int(0), int(0)], &LinearMap::identity(2), 16).unwrap();
        assert!(zero.samples().iter().flatten().all(|x| *x == 0.0));
        let singular = LinearMap::new(Matrix::from_i64(&[&[1, 0], &[0, 0]]));
        assert_eq!(section_with_integral(&[int(1), int(0)], &singular, 16).unwrap_err(), Error::SingularTwist);
    }

    #[test]
    fn twisted_integral_round_trip_on_cycle() {
        let phi = LinearMap::new(Matrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]));
        let c = cokernel(&phi).unwrap();
        let v = vec![frac(3, 2), int(-1), int(4)];
        let f = section_with_integral(&v, &phi, 64).unwrap();
        let got = integrate_twisted(&f, &c).unwrap();
        let want: Vec<f64> = c.project(&v).unwrap().iter().map(to_f64).collect();
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
