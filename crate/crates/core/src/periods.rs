//! Period integrals of left-invariant forms on `SU(2)`.
//!
//! Two integrals are provided:
//!
//! * `period_3form`: `∫_{S³} σ^*C(κ)^l` for a map `σ: S³ → SU(2)`, evaluated
//!   as `∫ C(κ)(δσ(∂_ψ), δσ(∂_θ), δσ(∂_φ)) dψ dθ dφ` on the hyperspherical
//!   chart. The pull-back already carries the chart Jacobian, so no extra
//!   volume weight is applied.
//! * `twisted_loop_period`: for a family `σ̃: [0,1] × S² → SU(2)` of loops it
//!   evaluates both `∫_{S²} ω̃(δσ, δσ)` with the symmetrized cochain
//!   `ω̃(f,g) = ½∫₀¹ κ(f,g') − κ(g,f') dt` and `½∫_{[0,1]×S²} σ̃^*C(κ)^l`.
//!
//! Orientation: the chart `(ψ, θ, φ)` of `S³` and the product orientation
//! `(t, θ, φ)` of `[0,1] × S²` are positive; with this choice the identity map
//! of `SU(2)` has period `+8π²` for `κ = -¼ tr(ad ad)`.
//!
//! Quadrature sums are reduced in a fixed order (outer-axis partial sums
//! collected in index order), so results are bit-reproducible for a given grid.

use std::f64::consts::PI;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LinearMap, SymBilinearForm};
use crate::quadrature::{gauss_legendre, periodic_nodes};
use crate::quaternion::{bracket3, Quaternion};

/// Default Gauss–Legendre nodes per axis for `S³`.
pub const DEFAULT_S3_RESOLUTION: usize = 48;
/// Default `(t, θ, φ)` grid for `[0,1] × S²`.
pub const DEFAULT_LOOP_GRID: (usize, usize, usize) = (32, 32, 64);
/// Default relative tolerance on the two-resolution error estimate.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

const SPHERE_STEP: f64 = 1e-5;
const LOOP_STEP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SphereDomain {
    S2,
    S3,
}

/// Point of `S³ ⊂ H` in hyperspherical coordinates `(ψ, θ, φ)`.
pub fn s3_chart(psi: f64, theta: f64, phi: f64) -> Quaternion {
    let (sp, st) = (psi.sin(), theta.sin());
    Quaternion::new(psi.cos(), sp * theta.cos(), sp * st * phi.cos(), sp * st * phi.sin())
}

/// Point of `S² ⊂ R³` in spherical coordinates `(θ, φ)`.
pub fn s2_chart(theta: f64, phi: f64) -> [f64; 3] {
    let st = theta.sin();
    [st * phi.cos(), st * phi.sin(), theta.cos()]
}

type GroupMap = Arc<dyn Fn(Quaternion) -> Quaternion + Send + Sync>;

/// A map from a sphere into `SU(2)`, sampled lazily on a product
/// Gauss–Legendre grid of the chart. Points of `S²` are passed to the map as
/// imaginary unit quaternions.
#[derive(Clone)]
pub struct SampledSphereMap {
    domain: SphereDomain,
    resolution: usize,
    map: GroupMap,
}

impl std::fmt::Debug for SampledSphereMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SampledSphereMap")
            .field("domain", &self.domain)
            .field("resolution", &self.resolution)
            .finish()
    }
}

impl SampledSphereMap {
    pub fn new(domain: SphereDomain, resolution: usize, map: impl Fn(Quaternion) -> Quaternion + Send + Sync + 'static) -> Self {
        SampledSphereMap {
            domain,
            resolution,
            map: Arc::new(map),
        }
    }

    pub fn identity_s3(resolution: usize) -> Self {
        Self::new(SphereDomain::S3, resolution, |q| q)
    }

    /// `q ↦ q^k`, a map of degree `k`.
    pub fn power_s3(resolution: usize, k: i32) -> Self {
        Self::new(SphereDomain::S3, resolution, move |q| q.powi(k))
    }

    pub fn constant_s3(resolution: usize, value: Quaternion) -> Self {
        Self::new(SphereDomain::S3, resolution, move |_| value)
    }

    pub fn domain(&self) -> SphereDomain {
        self.domain
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn with_resolution(&self, resolution: usize) -> Self {
        SampledSphereMap {
            resolution,
            ..self.clone()
        }
    }

    /// Precomposes with another self-map of the sphere.
    pub fn precompose(&self, rho: impl Fn(Quaternion) -> Quaternion + Send + Sync + 'static) -> Self {
        let map = self.map.clone();
        SampledSphereMap {
            map: Arc::new(move |q| map(rho(q))),
            ..self.clone()
        }
    }

    fn chart_point(&self, coords: &[f64]) -> Quaternion {
        match self.domain {
            SphereDomain::S3 => s3_chart(coords[0], coords[1], coords[2]),
            SphereDomain::S2 => Quaternion::from_imag(s2_chart(coords[0], coords[1])),
        }
    }

    pub fn value_at(&self, coords: &[f64]) -> Quaternion {
        (self.map)(self.chart_point(coords))
    }

    /// Chart axes and their ranges.
    fn axes(&self) -> Vec<(f64, f64)> {
        match self.domain {
            SphereDomain::S3 => vec![(0.0, PI), (0.0, PI), (0.0, 2.0 * PI)],
            SphereDomain::S2 => vec![(0.0, PI), (0.0, 2.0 * PI)],
        }
    }

    /// Product Gauss–Legendre nodes of the chart.
    pub fn nodes(&self) -> Vec<(Vec<f64>, f64)> {
        let rules: Vec<(Vec<f64>, Vec<f64>)> = self
            .axes()
            .into_iter()
            .map(|(a, b)| gauss_legendre(self.resolution, a, b))
            .collect();
        let mut out = vec![(Vec::new(), 1.0)];
        for (x, w) in rules {
            out = out
                .into_iter()
                .flat_map(|(c, cw)| {
                    x.iter().zip(&w).map(move |(xi, wi)| {
                        let mut c = c.clone();
                        c.push(*xi);
                        (c, cw * wi)
                    })
                })
                .collect();
        }
        out
    }

    /// `σ(m)^{-1} ∂_axis σ(m)` by central differences, projected to the
    /// imaginary quaternions.
    pub fn log_derivative(&self, coords: &[f64], axis: usize) -> [f64; 3] {
        let h = SPHERE_STEP;
        let mut plus = coords.to_vec();
        let mut minus = coords.to_vec();
        plus[axis] += h;
        minus[axis] -= h;
        let d = (self.value_at(&plus) - self.value_at(&minus)) * (0.5 / h);
        (self.value_at(coords).inverse() * d).imag()
    }
}

/// Left logarithmic derivative of a uniformly sampled curve at index `j`,
/// by central differences; endpoints wrap around when `periodic`, otherwise
/// use second-order one-sided stencils.
pub fn log_derivative_1d(samples: &[Quaternion], h: f64, j: usize, periodic: bool) -> [f64; 3] {
    let n = samples.len();
    let d = if periodic {
        (samples[(j + 1) % n] - samples[(j + n - 1) % n]) * (0.5 / h)
    } else if j == 0 {
        (samples[0] * -3.0 + samples[1] * 4.0 - samples[2]) * (0.5 / h)
    } else if j == n - 1 {
        (samples[n - 1] * 3.0 - samples[n - 2] * 4.0 + samples[n - 3]) * (0.5 / h)
    } else {
        (samples[j + 1] - samples[j - 1]) * (0.5 / h)
    };
    (samples[j].inverse() * d).imag()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodResult {
    pub value: Vec<f64>,
    pub estimated_error: f64,
    pub grid_resolutions: Vec<usize>,
}

fn kappa_f64(kappa: &SymBilinearForm) -> Result<Vec<Vec<Vec<f64>>>> {
    if kappa.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: kappa.dim(),
        });
    }
    if !LieAlgebra::su2().is_invariant(kappa) {
        return Err(Error::NotInvariant);
    }
    Ok(kappa.to_f64())
}

fn eval_form(k: &[Vec<Vec<f64>>], x: [f64; 3], y: [f64; 3], out: &mut [f64], weight: f64) {
    for i in 0..3 {
        for j in 0..3 {
            let w = weight * x[i] * y[j];
            if w != 0.0 {
                for (o, v) in out.iter_mut().zip(&k[i][j]) {
                    *o += w * v;
                }
            }
        }
    }
}

/// `C(κ)(a, b, c) = κ([a, b], c)` accumulated into `out`.
fn cartan_f64(k: &[Vec<Vec<f64>>], a: [f64; 3], b: [f64; 3], c: [f64; 3], out: &mut [f64], weight: f64) {
    eval_form(k, bracket3(a, b), c, out, weight);
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn max_abs(a: &[f64]) -> f64 {
    a.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

fn check_tolerance(value: &[f64], estimate: f64, tolerance: f64) -> Result<()> {
    let scale = max_abs(value).max(1.0);
    if estimate > tolerance * scale {
        return Err(Error::GridTooCoarse {
            estimate,
            tolerance: tolerance * scale,
        });
    }
    Ok(())
}

fn integrate_s3(k: &[Vec<Vec<f64>>], sigma: &SampledSphereMap) -> Vec<f64> {
    let d = k[0][0].len();
    let n = sigma.resolution();
    let (psi, wpsi) = gauss_legendre(n, 0.0, PI);
    let (theta, wtheta) = gauss_legendre(n, 0.0, PI);
    let (phi, wphi) = gauss_legendre(n, 0.0, 2.0 * PI);
    let partials: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = vec![0.0; d];
            for (tj, wj) in theta.iter().zip(&wtheta) {
                for (pk, wk) in phi.iter().zip(&wphi) {
                    let c = [psi[i], *tj, *pk];
                    let a = sigma.log_derivative(&c, 0);
                    let b = sigma.log_derivative(&c, 1);
                    let e = sigma.log_derivative(&c, 2);
                    cartan_f64(k, a, b, e, &mut acc, wpsi[i] * wj * wk);
                }
            }
            acc
        })
        .collect();
    partials.into_iter().fold(vec![0.0; d], |mut acc, p| {
        for (a, v) in acc.iter_mut().zip(p) {
            *a += v;
        }
        acc
    })
}

/// `∫_{S³} σ^*C(κ)^l` with a two-resolution error estimate.
///
/// The value is taken from the doubled grid; `estimated_error` is the max-norm
/// difference to the base grid. `tolerance` is relative to `max(1, |value|)`.
pub fn period_3form(kappa: &SymBilinearForm, sigma: &SampledSphereMap, tolerance: f64) -> Result<PeriodResult> {
    if sigma.domain() != SphereDomain::S3 {
        return Err(Error::DimensionMismatch { expected: 3, found: 2 });
    }
    let k = kappa_f64(kappa)?;
    let coarse = integrate_s3(&k, sigma);
    let fine_map = sigma.with_resolution(2 * sigma.resolution());
    let fine = integrate_s3(&k, &fine_map);
    let estimate = max_abs_diff(&coarse, &fine);
    check_tolerance(&fine, estimate, tolerance)?;
    Ok(PeriodResult {
        value: fine,
        estimated_error: estimate,
        grid_resolutions: vec![sigma.resolution(), fine_map.resolution()],
    })
}

type FamilyMap = Arc<dyn Fn(f64, [f64; 3]) -> Quaternion + Send + Sync>;

/// A family `σ̃(t, u)` of loops in `SU(2)` parametrized by `u ∈ S²`.
#[derive(Clone)]
pub struct LoopFamily {
    map: FamilyMap,
}

impl LoopFamily {
    pub fn new(map: impl Fn(f64, [f64; 3]) -> Quaternion + Send + Sync + 'static) -> Self {
        LoopFamily { map: Arc::new(map) }
    }

    /// The generator of `π₂(ΩSU(2)) ≅ π₃(SU(2))` built from the collapse map
    /// `(t, u) ↦ cos(πt) + sin(πt)u = exp(πtu)`, which sends `{0}×S²` and
    /// `{1}×S²` to the poles `±1`. Right multiplication by the fixed path
    /// `exp(-πtK)` closes each path into a based loop; that factor depends on
    /// `t` alone and does not change the degree.
    pub fn suspension_generator() -> Self {
        Self::new(|t, u| {
            let s = [PI * t * u[0], PI * t * u[1], PI * t * u[2]];
            Quaternion::exp_imag(s) * Quaternion::exp_imag([0.0, 0.0, -PI * t])
        })
    }

    pub fn constant(value: Quaternion) -> Self {
        Self::new(move |_, _| value)
    }

    pub fn eval(&self, t: f64, u: [f64; 3]) -> Quaternion {
        (self.map)(t, u)
    }
}

/// Both sides of the loop-period relation.
#[derive(Clone, Debug, Serialize)]
pub struct LoopPeriodResult {
    /// `∫_{S²} ω̃(δσ, δσ)`.
    pub lhs: PeriodResult,
    /// `½ ∫_{[0,1]×S²} σ̃^*C(κ)^l`.
    pub rhs: PeriodResult,
    /// `|lhs − rhs| / max(|rhs|, 1)` on the fine grid.
    pub relative_difference: f64,
}

/// Inner automorphism of `SU(2)` realizing `φ` on `su(2)`, as the conjugating
/// unit quaternion `g` with `φ(x) = g x g⁻¹`.
pub fn conjugator_for(phi: &LinearMap) -> Result<Quaternion> {
    if !LieAlgebra::su2().is_automorphism(phi) {
        return Err(Error::NotMorphism);
    }
    let m = phi.to_f64();
    // Shepperd's method on the rotation matrix.
    let tr = m[0][0] + m[1][1] + m[2][2];
    let q = if tr > 0.0 {
        let s = (tr + 1.0).sqrt() * 2.0;
        Quaternion::new(0.25 * s, (m[2][1] - m[1][2]) / s, (m[0][2] - m[2][0]) / s, (m[1][0] - m[0][1]) / s)
    } else if m[0][0] > m[1][1] && m[0][0] > m[2][2] {
        let s = (1.0 + m[0][0] - m[1][1] - m[2][2]).sqrt() * 2.0;
        Quaternion::new((m[2][1] - m[1][2]) / s, 0.25 * s, (m[0][1] + m[1][0]) / s, (m[0][2] + m[2][0]) / s)
    } else if m[1][1] > m[2][2] {
        let s = (1.0 + m[1][1] - m[0][0] - m[2][2]).sqrt() * 2.0;
        Quaternion::new((m[0][2] - m[2][0]) / s, (m[0][1] + m[1][0]) / s, 0.25 * s, (m[1][2] + m[2][1]) / s)
    } else {
        let s = (1.0 + m[2][2] - m[0][0] - m[1][1]).sqrt() * 2.0;
        Quaternion::new((m[1][0] - m[0][1]) / s, (m[0][2] + m[2][0]) / s, (m[1][2] + m[2][1]) / s, 0.25 * s)
    };
    let q = q.normalize();
    // Automorphisms of su(2) with [I,J] = 2K are exactly the rotations; check.
    for (col, e) in [Quaternion::I, Quaternion::J, Quaternion::K].iter().enumerate() {
        let img = (q * *e * q.conj()).imag();
        if (0..3).any(|r| (img[r] - m[r][col]).abs() > 1e-12) {
            return Err(Error::NotMorphism);
        }
    }
    Ok(q)
}

struct TwistedFamily<'a> {
    family: &'a LoopFamily,
    /// `g` with `φ(q) = g q g⁻¹`.
    g: Quaternion,
}

impl TwistedFamily<'_> {
    /// Extends `σ̃` beyond `[0,1]` by `σ̃(t+1) = φ^{-1}(σ̃(t))`.
    fn eval(&self, t: f64, u: [f64; 3]) -> Quaternion {
        if t < 0.0 {
            let q = self.eval(t + 1.0, u);
            self.g * q * self.g.conj()
        } else if t > 1.0 {
            let q = self.eval(t - 1.0, u);
            self.g.conj() * q * self.g
        } else {
            self.family.eval(t, u)
        }
    }

    fn at(&self, t: f64, theta: f64, phi: f64) -> Quaternion {
        self.eval(t, s2_chart(theta, phi))
    }

    /// Left log-derivative along coordinate `axis` of `(t, θ, φ)`, by the
    /// fourth-order five-point stencil.
    fn log_derivative(&self, c: [f64; 3], axis: usize) -> [f64; 3] {
        let h = LOOP_STEP;
        let shifted = |s: f64| {
            let mut p = c;
            p[axis] += s;
            self.at(p[0], p[1], p[2])
        };
        let d = (shifted(-2.0 * h) - shifted(2.0 * h) + (shifted(h) - shifted(-h)) * 8.0) * (1.0 / (12.0 * h));
        (self.at(c[0], c[1], c[2]).inverse() * d).imag()
    }

    /// `∂_t` of the S²-log-derivative along `axis` (1 or 2).
    fn log_derivative_t(&self, c: [f64; 3], axis: usize) -> [f64; 3] {
        let h = LOOP_STEP;
        let f = |s: f64| self.log_derivative([c[0] + s, c[1], c[2]], axis);
        let (m2, m1, p1, p2) = (f(-2.0 * h), f(-h), f(h), f(2.0 * h));
        let mut out = [0.0; 3];
        for r in 0..3 {
            out[r] = (m2[r] - p2[r] + 8.0 * (p1[r] - m1[r])) / (12.0 * h);
        }
        out
    }
}

fn integrate_loop(k: &[Vec<Vec<f64>>], fam: &TwistedFamily<'_>, grid: (usize, usize, usize)) -> (Vec<f64>, Vec<f64>) {
    let d = k[0][0].len();
    let (nt, nth, nph) = grid;
    let ts = periodic_nodes(nt, 0.0, 1.0);
    let wt = 1.0 / nt as f64;
    let (th, wth) = gauss_legendre(nth, 0.0, PI);
    let phs = periodic_nodes(nph, 0.0, 2.0 * PI);
    let wph = 2.0 * PI / nph as f64;
    let partials: Vec<(Vec<f64>, Vec<f64>)> = (0..nth)
        .into_par_iter()
        .map(|i| {
            let mut lhs = vec![0.0; d];
            let mut rhs = vec![0.0; d];
            for &p in &phs {
                for &t in &ts {
                    let c = [t, th[i], p];
                    let w = wt * wth[i] * wph;
                    let ft = fam.log_derivative(c, 0);
                    let fa = fam.log_derivative(c, 1);
                    let fb = fam.log_derivative(c, 2);
                    let fa_t = fam.log_derivative_t(c, 1);
                    let fb_t = fam.log_derivative_t(c, 2);
                    // ω̃(f_a, f_b) = ½ ∫ κ(f_a, f_b') − κ(f_b, f_a') dt
                    eval_form(k, fa, fb_t, &mut lhs, 0.5 * w);
                    eval_form(k, fb, fa_t, &mut lhs, -0.5 * w);
                    // ½ C(κ)(f_t, f_a, f_b)
                    cartan_f64(k, ft, fa, fb, &mut rhs, 0.5 * w);
                }
            }
            (lhs, rhs)
        })
        .collect();
    let mut lhs = vec![0.0; d];
    let mut rhs = vec![0.0; d];
    for (l, r) in partials {
        for q in 0..d {
            lhs[q] += l[q];
            rhs[q] += r[q];
        }
    }
    (lhs, rhs)
}

/// Evaluates both sides of the loop-period relation for the family `σ̃`.
///
/// `twist` is `φ_k` on `su(2)`; the family must satisfy
/// `σ̃(1, u) = φ^{-1}(σ̃(0, u))` with `φ` the inner automorphism realizing
/// `φ_k`. `grid` is `(t, θ, φ)` nodes; the error estimate compares it with
/// the doubled grid.
pub fn twisted_loop_period(
    kappa: &SymBilinearForm,
    family: &LoopFamily,
    twist: &LinearMap,
    grid: (usize, usize, usize),
    tolerance: f64,
) -> Result<LoopPeriodResult> {
    let k = kappa_f64(kappa)?;
    let g = conjugator_for(twist)?;
    let fam = TwistedFamily { family, g };
    let (_, nth, nph) = grid;
    let (th, _) = gauss_legendre(nth, 0.0, PI);
    let mut deviation: f64 = 0.0;
    for &theta in &th {
        for phi in periodic_nodes(nph, 0.0, 2.0 * PI) {
            let u = s2_chart(theta, phi);
            let start = family.eval(0.0, u);
            let end = family.eval(1.0, u);
            deviation = deviation.max(end.distance(&(g.conj() * start * g)));
        }
    }
    if deviation > 1e-10 {
        return Err(Error::BoundaryMismatch(deviation));
    }
    let (l0, r0) = integrate_loop(&k, &fam, grid);
    let fine_grid = (2 * grid.0, 2 * grid.1, 2 * grid.2);
    let (l1, r1) = integrate_loop(&k, &fam, fine_grid);
    let el = max_abs_diff(&l0, &l1);
    let er = max_abs_diff(&r0, &r1);
    check_tolerance(&l1, el, tolerance)?;
    check_tolerance(&r1, er, tolerance)?;
    let relative_difference = max_abs_diff(&l1, &r1) / max_abs(&r1).max(1.0);
    let res = vec![grid.0, grid.1, grid.2, fine_grid.0, fine_grid.1, fine_grid.2];
    Ok(LoopPeriodResult {
        lhs: PeriodResult {
            value: l1,
            estimated_error: el,
            grid_resolutions: res.clone(),
        },
        rhs: PeriodResult {
            value: r1,
            estimated_error: er,
            grid_resolutions: res,
        },
        relative_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};
    use crate::exact::Matrix;
    use crate::lie::normalized_killing;
    use approx::assert_relative_eq;

    fn kappa() -> SymBilinearForm {
        normalized_killing(&LieAlgebra::su2())
    }

    #[test]
    fn chart_orientation_is_positive() {
        // At ψ = θ = π/2, φ = 0 the frame (δ∂ψ, δ∂θ, δ∂φ) = (J, -K, -I).
        let sigma = SampledSphereMap::identity_s3(4);
        let c = [PI / 2.0, PI / 2.0, 0.0];
        let a = sigma.log_derivative(&c, 0);
        let b = sigma.log_derivative(&c, 1);
        let e = sigma.log_derivative(&c, 2);
        for (v, w) in [(a, [0.0, 1.0, 0.0]), (b, [0.0, 0.0, -1.0]), (e, [-1.0, 0.0, 0.0])] {
            for r in 0..3 {
                assert!((v[r] - w[r]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn log_derivative_of_constant_and_exponential() {
        let x = [0.4, -0.2, 0.9];
        let h = 1e-3;
        let samples: Vec<Quaternion> = (0..=20)
            .map(|j| {
                let t = j as f64 * h;
                Quaternion::exp_imag([t * x[0], t * x[1], t * x[2]])
            })
            .collect();
        for j in [0, 7, 20] {
            let d = log_derivative_1d(&samples, h, j, false);
            for r in 0..3 {
                assert!((d[r] - x[r]).abs() < 1e-5);
            }
        }
        let constant = vec![Quaternion::J; 8];
        assert_eq!(log_derivative_1d(&constant, 0.1, 3, true), [0.0; 3]);
    }

    #[test]
    fn log_derivative_is_left_invariant() {
        let g = Quaternion::exp_imag([0.3, 0.1, -0.5]);
        let sigma = SampledSphereMap::power_s3(4, 2);
        let moved = SampledSphereMap::new(SphereDomain::S3, 4, move |q| g * q * q);
        let c = [0.7, 1.1, 2.0];
        for axis in 0..3 {
            let a = sigma.log_derivative(&c, axis);
            let b = moved.log_derivative(&c, axis);
            for r in 0..3 {
                assert!((a[r] - b[r]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn identity_period_is_8_pi_squared() {
        let res = period_3form(&kappa(), &SampledSphereMap::identity_s3(16), DEFAULT_TOLERANCE).unwrap();
        assert_relative_eq!(res.value[0], 8.0 * PI * PI, max_relative = 1e-6);
        let zero = period_3form(&kappa(), &SampledSphereMap::constant_s3(8, Quaternion::J), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(zero.value, vec![0.0]);
    }

    #[test]
    fn period_is_linear_in_kappa() {
        let sigma = SampledSphereMap::power_s3(8, 2);
        let k1 = kappa();
        let k2 = k1.scale(&frac(3, 2));
        let combo = k1.scale(&int(2)).add(&k2.scale(&int(-1))).unwrap();
        let p = |k: &SymBilinearForm| period_3form(k, &sigma, 1.0).unwrap().value[0];
        assert_relative_eq!(p(&combo), 2.0 * p(&k1) - p(&k2), max_relative = 1e-12);
    }

    #[test]
    fn rejects_non_invariant_or_coarse() {
        let diag = SymBilinearForm::from_fn(3, 1, |i, j| vec![if i == j { int(i as i64 + 1) } else { int(0) }]);
        assert_eq!(
            period_3form(&diag, &SampledSphereMap::identity_s3(4), 1e-3).unwrap_err(),
            Error::NotInvariant
        );
        let coarse = period_3form(&kappa(), &SampledSphereMap::power_s3(2, 3), 1e-9);
        assert!(matches!(coarse, Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn conjugator_recovers_rotation() {
        let rot = LinearMap::new(Matrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]));
        let g = conjugator_for(&rot).unwrap();
        let img = (g * Quaternion::I * g.conj()).imag();
        assert!((img[1] - 1.0).abs() < 1e-14);
        let reflection = LinearMap::new(Matrix::from_i64(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(conjugator_for(&reflection), Err(Error::NotMorphism));
    }

    #[test]
    fn constant_family_has_zero_period() {
        let r = twisted_loop_period(&kappa(), &LoopFamily::constant(Quaternion::ONE), &LinearMap::identity(3), (4, 4, 8), 1e-6).unwrap();
        assert_eq!(r.lhs.value, vec![0.0]);
        assert_eq!(r.rhs.value, vec![0.0]);
    }

    #[test]
    fn boundary_mismatch_detected() {
        let open = LoopFamily::new(|t, u| Quaternion::exp_imag([PI * t * u[0], PI * t * u[1], PI * t * u[2]]));
        let err = twisted_loop_period(&kappa(), &open, &LinearMap::identity(3), (4, 4, 8), 1e-6).unwrap_err();
        assert!(matches!(err, Error::BoundaryMismatch(_)));
    }

    #[test]
    fn loop_generator_period_matches_half_sphere_period() {
        let r = twisted_loop_period(&kappa(), &LoopFamily::suspension_generator(), &LinearMap::identity(3), (16, 16, 32), 1e-6).unwrap();
        assert_relative_eq!(r.rhs.value[0], 4.0 * PI * PI, max_relative = 1e-6);
        assert!(r.relative_difference < 1e-6);
    }

    #[test]
    fn twisted_family_satisfies_relation() {
        let rot = LinearMap::new(Matrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]));
        let g = conjugator_for(&rot).unwrap();
        let a = g.log_unit();
        let base = LoopFamily::suspension_generator();
        let fam = LoopFamily::new(move |t, u| {
            let gt = Quaternion::exp_imag([t * a[0], t * a[1], t * a[2]]);
            gt.conj() * base.eval(t, u) * gt
        });
        let r = twisted_loop_period(&kappa(), &fam, &rot, (16, 16, 32), 1e-5).unwrap();
        assert!(r.relative_difference < 1e-6, "{r:?}");
    }
}
