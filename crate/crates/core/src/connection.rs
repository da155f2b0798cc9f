//! Connections on a trivial bundle `U × H` over a planar patch `U`, with
//! `H = U(1)` or `SU(2)` realized in the unit quaternions.
//!
//! Algebra elements are imaginary quaternions `[I, J, K]`; `u(1)` uses the
//! `I` component only. The connection 1-form on `U × H` is
//! `θ = κ_H + Ad(ρ)⁻¹ A` with `A = A_x dx + A_y dy`, so horizontal lifts
//! solve `ρ' = −A_γ(γ') · ρ` with `ρ(0) = 1`, and the curvature pulled back
//! along `m ↦ (m, 1)` is `F(v, w) = ∂_v A(w) − ∂_w A(v) + [A(v), A(w)]`.

use std::sync::Arc;

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{bracket3, Quaternion};

pub type AlgebraValue = [f64; 3];
type Component = Arc<dyn Fn(f64, f64) -> AlgebraValue + Send + Sync>;

const NORMALIZATION_TOLERANCE: f64 = 1e-12;
const DIFF_STEP: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureGroup {
    U1,
    Su2,
}

#[derive(Clone)]
pub struct ConnectionPatch {
    group: StructureGroup,
    ax: Component,
    ay: Component,
    base: [f64; 2],
    domain: [[f64; 2]; 2],
}

impl std::fmt::Debug for ConnectionPatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConnectionPatch")
            .field("group", &self.group)
            .field("base", &self.base)
            .field("domain", &self.domain)
            .finish()
    }
}

fn add(a: AlgebraValue, b: AlgebraValue) -> AlgebraValue {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(a: AlgebraValue, s: f64) -> AlgebraValue {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn norm(a: AlgebraValue) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// Monomial `coeff · x^px · y^py` times a basis element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: f64,
    pub px: u32,
    pub py: u32,
    /// 0, 1, 2 for `I`, `J`, `K`.
    pub component: usize,
}

fn eval_poly(terms: &[Monomial], x: f64, y: f64) -> AlgebraValue {
    let mut out = [0.0; 3];
    for t in terms {
        out[t.component] += t.coeff * x.powi(t.px as i32) * y.powi(t.py as i32);
    }
    out
}

/// Polynomial connection data, as read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialSpec {
    pub group: StructureGroup,
    #[serde(rename = "Ax", default)]
    pub ax: Vec<Monomial>,
    #[serde(rename = "Ay", default)]
    pub ay: Vec<Monomial>,
    #[serde(default)]
    pub base: Option<[f64; 2]>,
    #[serde(default)]
    pub domain: Option<[[f64; 2]; 2]>,
}

impl ConnectionPatch {
    /// Checks the group restriction and `A(m₀) = 0`.
    pub fn new(
        group: StructureGroup,
        ax: impl Fn(f64, f64) -> AlgebraValue + Send + Sync + 'static,
        ay: impl Fn(f64, f64) -> AlgebraValue + Send + Sync + 'static,
        base: [f64; 2],
        domain: [[f64; 2]; 2],
    ) -> Result<Self> {
        let patch = ConnectionPatch {
            group,
            ax: Arc::new(ax),
            ay: Arc::new(ay),
            base,
            domain,
        };
        if !patch.contains(base) {
            return Err(Error::StepOutOfPatch(base[0], base[1]));
        }
        let a = [(patch.ax)(base[0], base[1]), (patch.ay)(base[0], base[1])];
        let size = norm(a[0]).max(norm(a[1]));
        if size > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized(size));
        }
        if group == StructureGroup::U1 {
            // Probe a few points for components outside u(1).
            let [[x0, x1], [y0, y1]] = domain;
            for (s, t) in [(0.25, 0.5), (0.5, 0.25), (0.75, 0.75), (0.3, 0.9)] {
                let (x, y) = (x0 + s * (x1 - x0), y0 + t * (y1 - y0));
                for v in [(patch.ax)(x, y), (patch.ay)(x, y)] {
                    if v[1] != 0.0 || v[2] != 0.0 {
                        return Err(Error::InvalidAlgebra("u1 connections take values in the I component only".into()));
                    }
                }
            }
        }
        Ok(patch)
    }

    pub fn from_polynomial(spec: &PolynomialSpec) -> Result<Self> {
        if let Some(m) = spec.ax.iter().chain(&spec.ay).find(|m| m.component > 2) {
            return Err(Error::Parse(format!("component index {} out of range", m.component)));
        }
        let (ax, ay) = (spec.ax.clone(), spec.ay.clone());
        Self::new(
            spec.group,
            move |x, y| eval_poly(&ax, x, y),
            move |x, y| eval_poly(&ay, x, y),
            spec.base.unwrap_or([0.0, 0.0]),
            spec.domain.unwrap_or([[-1.0, 1.0], [-1.0, 1.0]]),
        )
    }

    /// `A = 0`.
    pub fn trivial(group: StructureGroup) -> Self {
        Self::new(group, |_, _| [0.0; 3], |_, _| [0.0; 3], [0.0, 0.0], [[-1.0, 1.0], [-1.0, 1.0]]).expect("valid")
    }

    /// `A = x dy` in `u(1)`.
    pub fn u1_x_dy() -> Self {
        Self::new(StructureGroup::U1, |_, _| [0.0; 3], |x, _| [x, 0.0, 0.0], [0.0, 0.0], [[-1.0, 1.0], [-1.0, 1.0]]).expect("valid")
    }

    /// `A = x dy · I + y dx · J` in `su(2)`.
    pub fn su2_test() -> Self {
        Self::new(StructureGroup::Su2, |_, y| [0.0, y, 0.0], |x, _| [x, 0.0, 0.0], [0.0, 0.0], [[-1.0, 1.0], [-1.0, 1.0]]).expect("valid")
    }

    pub fn group(&self) -> StructureGroup {
        self.group
    }

    pub fn base_point(&self) -> [f64; 2] {
        self.base
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        let [[x0, x1], [y0, y1]] = self.domain;
        p[0] >= x0 && p[0] <= x1 && p[1] >= y0 && p[1] <= y1
    }

    /// `A_p(v)`.
    pub fn eval(&self, p: [f64; 2], v: [f64; 2]) -> AlgebraValue {
        add(scale((self.ax)(p[0], p[1]), v[0]), scale((self.ay)(p[0], p[1]), v[1]))
    }

    /// Gauge transform by `k: U → H` with `dk(m₀) = 0`:
    /// `A' = k⁻¹ A k + k⁻¹ dk`. Lifts transform as `ρ ↦ k(γ)⁻¹ ρ k(m₀)`,
    /// so loop holonomies change by conjugation with `k(m₀)`.
    pub fn gauge_transform(&self, k: impl Fn(f64, f64) -> Quaternion + Send + Sync + 'static) -> Result<Self> {
        let k = Arc::new(k);
        let make = |axis: usize| {
            let k = k.clone();
            let a = if axis == 0 { self.ax.clone() } else { self.ay.clone() };
            move |x: f64, y: f64| {
                let h = 1e-3;
                let at = |s: f64| if axis == 0 { k(x + s, y) } else { k(x, y + s) };
                let dk = (at(-2.0 * h) - at(2.0 * h) + (at(h) - at(-h)) * 8.0) * (1.0 / (12.0 * h));
                let kv = k(x, y);
                let kinv = kv.inverse();
                let conj = (kinv * Quaternion::from_imag(a(x, y)) * kv).imag();
                let mc = (kinv * dk).imag();
                [conj[0] + mc[0], conj[1] + mc[1], conj[2] + mc[2]]
            }
        };
        Self::new(self.group, make(0), make(1), self.base, self.domain)
    }
}

/// `F(v, w)` at `point`, by central differences of `A` plus the exact bracket.
pub fn curvature(patch: &ConnectionPatch, point: [f64; 2], v: [f64; 2], w: [f64; 2]) -> AlgebraValue {
    let h = DIFF_STEP;
    let shifted = |dir: [f64; 2], s: f64| [point[0] + s * dir[0], point[1] + s * dir[1]];
    let dv_aw = scale(add(patch.eval(shifted(v, h), w), scale(patch.eval(shifted(v, -h), w), -1.0)), 0.5 / h);
    let dw_av = scale(add(patch.eval(shifted(w, h), v), scale(patch.eval(shifted(w, -h), v), -1.0)), 0.5 / h);
    let br = bracket3(patch.eval(point, v), patch.eval(point, w));
    add(add(dv_aw, scale(dw_av, -1.0)), br)
}

/// Samples of a lift `ρ(t_j)`, `ρ(0) = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolonomyCurve {
    pub times: Vec<f64>,
    pub samples: Vec<Quaternion>,
}

impl HolonomyCurve {
    pub fn end(&self) -> Quaternion {
        *self.samples.last().expect("nonempty")
    }
}

fn lift_rhs(patch: &ConnectionPatch, rho: Quaternion, p: [f64; 2], v: [f64; 2]) -> Quaternion {
    -(Quaternion::from_imag(patch.eval(p, v)) * rho)
}

fn check(patch: &ConnectionPatch, p: [f64; 2]) -> Result<()> {
    if patch.contains(p) {
        Ok(())
    } else {
        Err(Error::StepOutOfPatch(p[0], p[1]))
    }
}

/// Horizontal lift of `γ` on `[0, t_end]`, where `path(t)` returns the point
/// and velocity. RK4 with `steps` steps, renormalized to unit length.
pub fn horizontal_lift(
    patch: &ConnectionPatch,
    path: impl Fn(f64) -> ([f64; 2], [f64; 2]),
    t_end: f64,
    steps: usize,
    start: Quaternion,
) -> Result<HolonomyCurve> {
    let h = t_end / steps as f64;
    let mut rho = start;
    let mut times = vec![0.0];
    let mut samples = vec![rho];
    for n in 0..steps {
        let t = n as f64 * h;
        let (p0, v0) = path(t);
        let (pm, vm) = path(t + 0.5 * h);
        let (p1, v1) = path(t + h);
        for p in [p0, pm, p1] {
            check(patch, p)?;
        }
        let k1 = lift_rhs(patch, rho, p0, v0);
        let k2 = lift_rhs(patch, rho + k1 * (0.5 * h), pm, vm);
        let k3 = lift_rhs(patch, rho + k2 * (0.5 * h), pm, vm);
        let k4 = lift_rhs(patch, rho + k3 * h, p1, v1);
        rho = (rho + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)).normalize();
        times.push(t + h);
        samples.push(rho);
    }
    Ok(HolonomyCurve { times, samples })
}

pub type VectorField<'a> = &'a dyn Fn(f64, f64) -> [f64; 2];

/// Integrates the flow of `sign · X` for time `t` together with the lift.
fn flow_with_lift(
    patch: &ConnectionPatch,
    x: VectorField<'_>,
    sign: f64,
    t: f64,
    steps: usize,
    p: [f64; 2],
    rho: Quaternion,
) -> Result<([f64; 2], Quaternion)> {
    let h = t / steps as f64;
    let field = |p: [f64; 2]| {
        let v = x(p[0], p[1]);
        [sign * v[0], sign * v[1]]
    };
    let rhs = |p: [f64; 2], r: Quaternion| -> Result<([f64; 2], Quaternion)> {
        check(patch, p)?;
        let v = field(p);
        Ok((v, lift_rhs(patch, r, p, v)))
    };
    let (mut p, mut rho) = (p, rho);
    let axpy = |p: [f64; 2], v: [f64; 2], s: f64| [p[0] + s * v[0], p[1] + s * v[1]];
    for _ in 0..steps {
        let (a1, b1) = rhs(p, rho)?;
        let (a2, b2) = rhs(axpy(p, a1, 0.5 * h), rho + b1 * (0.5 * h))?;
        let (a3, b3) = rhs(axpy(p, a2, 0.5 * h), rho + b2 * (0.5 * h))?;
        let (a4, b4) = rhs(axpy(p, a3, h), rho + b3 * h)?;
        p = [
            p[0] + h / 6.0 * (a1[0] + 2.0 * a2[0] + 2.0 * a3[0] + a4[0]),
            p[1] + h / 6.0 * (a1[1] + 2.0 * a2[1] + 2.0 * a3[1] + a4[1]),
        ];
        rho = (rho + (b1 + b2 * 2.0 + b3 * 2.0 + b4) * (h / 6.0)).normalize();
    }
    check(patch, p)?;
    Ok((p, rho))
}

/// `γ(s) = Fl^Y_{−s} ∘ Fl^X_{−s} ∘ Fl^Y_s ∘ Fl^X_s (m₀)`.
fn gamma(patch: &ConnectionPatch, x: VectorField<'_>, y: VectorField<'_>, s: f64, steps: usize) -> Result<[f64; 2]> {
    let one = Quaternion::ONE;
    let mut p = patch.base_point();
    for (f, sign) in [(x, 1.0), (y, 1.0), (x, -1.0), (y, -1.0)] {
        p = flow_with_lift(patch, f, sign, s, steps, p, one)?.0;
    }
    Ok(p)
}

/// Default RK4 steps per loop segment.
pub const DEFAULT_STEPS: usize = 200;

/// `β(t) = ℋ(α_t)` for the loop `α_t`: flow along `X`, `Y`, `−X`, `−Y` for
/// time `t` each, then back to `m₀` along `γ` reversed.
pub fn commutator_loop_holonomy(patch: &ConnectionPatch, x: VectorField<'_>, y: VectorField<'_>, t: f64, steps: usize) -> Result<Quaternion> {
    if t == 0.0 {
        return Ok(Quaternion::ONE);
    }
    let mut p = patch.base_point();
    let mut rho = Quaternion::ONE;
    for (f, sign) in [(x, 1.0), (y, 1.0), (x, -1.0), (y, -1.0)] {
        (p, rho) = flow_with_lift(patch, f, sign, t, steps, p, rho)?;
    }
    // The closing edge s ↦ γ(t − s); it is constant when the fields commute.
    let end = gamma(patch, x, y, t, steps)?;
    let gap = (end[0] - p[0]).abs() + (end[1] - p[1]).abs();
    let base = patch.base_point();
    let closing = (end[0] - base[0]).abs() + (end[1] - base[1]).abs();
    if closing > 1e-13 {
        let inner = steps.max(16);
        let hd = 1e-5 * t;
        let path = |s: f64| -> ([f64; 2], [f64; 2]) {
            let at = |u: f64| gamma(patch, x, y, (t - u).clamp(0.0, t), inner).unwrap_or(base);
            let q = at(s);
            let (a, b) = if s - hd < 0.0 {
                (at(s), at(s + hd))
            } else if s + hd > t {
                (at(s - hd), at(s))
            } else {
                (at(s - hd), at(s + hd))
            };
            let denom = if s - hd < 0.0 || s + hd > t { hd } else { 2.0 * hd };
            (q, [(b[0] - a[0]) / denom, (b[1] - a[1]) / denom])
        };
        rho = horizontal_lift(patch, path, t, steps, rho)?.end();
    }
    debug_assert!(gap < 1e-8);
    Ok(rho)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SecondDerivativeReport {
    /// Fitted `β'(0)` as an algebra element.
    pub first_derivative: AlgebraValue,
    /// Richardson-extrapolated `β''(0)`.
    pub second_derivative: AlgebraValue,
    /// `R(X(m₀), Y(m₀))`.
    pub curvature: AlgebraValue,
    /// `+1` if `β''(0) ≈ 2R(X, Y)`, `−1` if `β''(0) ≈ 2R(Y, X)`.
    pub matching_sign: i32,
    /// `|β''(0) − 2·sign·R| / |2R|`, or the absolute error when `R = 0`.
    pub relative_error: f64,
    /// `||β''(0)| − |2R|| / |2R|`, the sign-agnostic comparison.
    pub magnitude_error: f64,
    pub t_max: f64,
    pub samples: usize,
}

/// Least-squares fit `y ≈ a t + b t² + c t³ + d t⁴` on times in `(0, T]`,
/// returning `(a, b)`. The basis is scaled to `t / T` for conditioning.
fn fit_quartic(times: &[f64], values: &[f64]) -> (f64, f64) {
    let span = times.iter().cloned().fold(0.0, f64::max);
    let mut m = Matrix4::zeros();
    let mut r = Vector4::zeros();
    for (&t, &y) in times.iter().zip(values) {
        let s = t / span;
        let basis = Vector4::new(s, s * s, s * s * s, s * s * s * s);
        m += basis * basis.transpose();
        r += basis * y;
    }
    let sol = m.lu().solve(&r).unwrap_or_else(Vector4::zeros);
    (sol[0] / span, sol[1] / (span * span))
}

fn fitted(patch: &ConnectionPatch, x: VectorField<'_>, y: VectorField<'_>, t_max: f64, samples: usize, steps: usize) -> Result<([f64; 3], [f64; 3])> {
    let times: Vec<f64> = (1..=samples).map(|j| t_max * j as f64 / samples as f64).collect();
    let logs = times
        .iter()
        .map(|&t| Ok(commutator_loop_holonomy(patch, x, y, t, steps)?.log_unit()))
        .collect::<Result<Vec<_>>>()?;
    let mut a = [0.0; 3];
    let mut b = [0.0; 3];
    for r in 0..3 {
        let vals: Vec<f64> = logs.iter().map(|l| l[r]).collect();
        (a[r], b[r]) = fit_quartic(&times, &vals);
    }
    Ok((a, b))
}

/// Fits `log β(t)` on `samples` equispaced times in `(0, t_max]` and at half
/// that range, Richardson-combines the linear and quadratic coefficients
/// (truncation errors `O(T⁴)` and `O(T³)`) and compares `β''(0) = 2b` with
/// `±2R`.
pub fn verify_second_derivative(patch: &ConnectionPatch, x: VectorField<'_>, y: VectorField<'_>, t_max: f64, samples: usize) -> Result<SecondDerivativeReport> {
    let steps = DEFAULT_STEPS;
    let (a_full, b_full) = fitted(patch, x, y, t_max, samples, steps)?;
    let (a_half, b_half) = fitted(patch, x, y, t_max / 2.0, samples, steps)?;
    let a: [f64; 3] = std::array::from_fn(|r| (16.0 * a_half[r] - a_full[r]) / 15.0);
    let b: [f64; 3] = std::array::from_fn(|r| (8.0 * b_half[r] - b_full[r]) / 7.0);
    let second = scale(b, 2.0);
    let m0 = patch.base_point();
    let curv = curvature(patch, m0, x(m0[0], m0[1]), y(m0[0], m0[1]));
    let target = scale(curv, 2.0);
    let scale_ref = norm(target);
    let err = |sign: f64| {
        let d = norm(add(second, scale(target, -sign)));
        if scale_ref > 0.0 {
            d / scale_ref
        } else {
            d
        }
    };
    let (plus, minus) = (err(1.0), err(-1.0));
    let matching_sign = if plus <= minus { 1 } else { -1 };
    let magnitude_error = if scale_ref > 0.0 {
        (norm(second) - scale_ref).abs() / scale_ref
    } else {
        norm(second)
    };
    Ok(SecondDerivativeReport {
        first_derivative: a,
        second_derivative: second,
        curvature: curv,
        matching_sign,
        relative_error: plus.min(minus),
        magnitude_error,
        t_max,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dx(_: f64, _: f64) -> [f64; 2] {
        [1.0, 0.0]
    }

    fn dy(_: f64, _: f64) -> [f64; 2] {
        [0.0, 1.0]
    }

    fn close(a: AlgebraValue, b: AlgebraValue, tol: f64) -> bool {
        norm(add(a, scale(b, -1.0))) <= tol
    }

    #[test]
    fn normalization_and_group_checks() {
        let bad = ConnectionPatch::new(StructureGroup::Su2, |_, _| [0.1, 0.0, 0.0], |_, _| [0.0; 3], [0.0, 0.0], [[-1.0, 1.0], [-1.0, 1.0]]);
        assert!(matches!(bad, Err(Error::NotNormalized(_))));
        let not_u1 = ConnectionPatch::new(StructureGroup::U1, |_, y| [0.0, y, 0.0], |_, _| [0.0; 3], [0.0, 0.0], [[-1.0, 1.0], [-1.0, 1.0]]);
        assert!(matches!(not_u1, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn curvature_examples() {
        let o = [0.0, 0.0];
        assert_eq!(curvature(&ConnectionPatch::trivial(StructureGroup::Su2), o, [1.0, 0.0], [0.0, 1.0]), [0.0; 3]);
        let u1 = ConnectionPatch::u1_x_dy();
        for p in [o, [0.3, -0.4]] {
            assert!(close(curvature(&u1, p, [1.0, 0.0], [0.0, 1.0]), [1.0, 0.0, 0.0], 1e-9));
        }
        let spec = PolynomialSpec {
            group: StructureGroup::Su2,
            ax: vec![],
            ay: vec![Monomial { coeff: 1.0, px: 1, py: 0, component: 0 }],
            base: None,
            domain: None,
        };
        let su2 = ConnectionPatch::from_polynomial(&spec).unwrap();
        assert!(close(curvature(&su2, o, [1.0, 0.0], [0.0, 1.0]), [1.0, 0.0, 0.0], 1e-9));
        let test = ConnectionPatch::su2_test();
        assert!(close(curvature(&test, o, [1.0, 0.0], [0.0, 1.0]), [1.0, -1.0, 0.0], 1e-9));
        // Off the base point the bracket term contributes: [y J, x I] = −2xy K.
        let p = [0.5, 0.4];
        assert!(close(curvature(&test, p, [1.0, 0.0], [0.0, 1.0]), [1.0, -1.0, -0.4], 1e-9));
    }

    #[test]
    fn trivial_connection_has_trivial_lifts() {
        let patch = ConnectionPatch::trivial(StructureGroup::Su2);
        let lift = horizontal_lift(&patch, |t| ([0.5 * t, 0.2 * t], [0.5, 0.2]), 1.0, 50, Quaternion::ONE).unwrap();
        assert!(lift.samples.iter().all(|q| q.distance(&Quaternion::ONE) < 1e-15));
        assert_eq!(commutator_loop_holonomy(&patch, &dx, &dy, 0.3, 20).unwrap(), Quaternion::ONE);
    }

    #[test]
    fn constant_connection_along_line_matches_exponential() {
        let x0 = [0.3, -0.7, 0.2];
        let patch = ConnectionPatch::new(StructureGroup::Su2, move |_, y| scale(x0, y), |_, _| [0.0; 3], [0.0, 0.0], [[-2.0, 2.0], [-2.0, 2.0]]).unwrap();
        let lift = horizontal_lift(&patch, |t| ([t - 1.0, 1.0], [1.0, 0.0]), 2.0, 400, Quaternion::ONE).unwrap();
        for (t, q) in lift.times.iter().zip(&lift.samples) {
            let expected = Quaternion::exp_imag(scale(x0, -t));
            assert!(q.distance(&expected) < 1e-8);
        }
    }

    #[test]
    fn lift_leaving_patch_is_an_error() {
        let patch = ConnectionPatch::u1_x_dy();
        let err = horizontal_lift(&patch, |t| ([t, 0.0], [1.0, 0.0]), 2.0, 10, Quaternion::ONE).unwrap_err();
        assert!(matches!(err, Error::StepOutOfPatch(..)));
    }

    #[test]
    fn u1_square_holonomy_is_exact() {
        let patch = ConnectionPatch::u1_x_dy();
        for t in [0.05, 0.2] {
            let b = commutator_loop_holonomy(&patch, &dx, &dy, t, 50).unwrap();
            assert!(b.distance(&Quaternion::exp_imag([-t * t, 0.0, 0.0])) < 1e-12);
        }
    }

    #[test]
    fn pure_gauge_is_flat_with_trivial_holonomy() {
        let k = |x: f64, y: f64| Quaternion::exp_imag([0.0, x * x, y * y * x + y * y]);
        let patch = ConnectionPatch::trivial(StructureGroup::Su2).gauge_transform(k).unwrap();
        // A is itself a finite difference here, so only ~1e-7 is meaningful.
        assert!(norm(curvature(&patch, [0.3, 0.2], [1.0, 0.0], [0.0, 1.0])) < 1e-6);
        for t in [0.2, 0.5] {
            assert!(commutator_loop_holonomy(&patch, &dx, &dy, t, 100).unwrap().distance(&Quaternion::ONE) < 1e-8);
        }
        // A closed circle around the base point.
        let circle = horizontal_lift(&patch, |s| ([0.5 * s.cos() - 0.5, 0.5 * s.sin()], [-0.5 * s.sin(), 0.5 * s.cos()]), 2.0 * std::f64::consts::PI, 400, Quaternion::ONE).unwrap();
        assert!(circle.end().distance(&Quaternion::ONE) < 1e-8);
        // u(1): A = d(x² y).
        let exact = ConnectionPatch::new(StructureGroup::U1, |x, y| [2.0 * x * y, 0.0, 0.0], |x, _| [x * x, 0.0, 0.0], [0.0, 0.0], [[-1.0, 1.0], [-1.0, 1.0]]).unwrap();
        assert!(commutator_loop_holonomy(&exact, &dx, &dy, 0.4, 100).unwrap().distance(&Quaternion::ONE) < 1e-8);
    }

    #[test]
    fn gauge_change_conjugates_holonomy() {
        let base = ConnectionPatch::su2_test();
        let k = |x: f64, y: f64| Quaternion::exp_imag([0.3 + x * x, 0.1, -0.2 + y * y]);
        let gauged = base.gauge_transform(k).unwrap();
        for t in [0.1, 0.3] {
            let a = commutator_loop_holonomy(&base, &dx, &dy, t, 100).unwrap();
            let b = commutator_loop_holonomy(&gauged, &dx, &dy, t, 100).unwrap();
            assert!((a.a - b.a).abs() < 1e-8);
            let k0 = k(0.0, 0.0);
            assert!((k0.inverse() * a * k0).distance(&b) < 1e-8);
        }
    }

    #[test]
    fn second_derivative_matches_curvature() {
        let zero = verify_second_derivative(&ConnectionPatch::trivial(StructureGroup::U1), &dx, &dy, 0.1, 8).unwrap();
        assert_eq!(zero.second_derivative, [0.0; 3]);
        let u1 = verify_second_derivative(&ConnectionPatch::u1_x_dy(), &dx, &dy, 0.1, 8).unwrap();
        assert!(u1.magnitude_error < 1e-4, "{u1:?}");
        assert_eq!(u1.matching_sign, -1);
        assert!(norm(u1.first_derivative) < 1e-6);
        let su2 = verify_second_derivative(&ConnectionPatch::su2_test(), &dx, &dy, 0.1, 8).unwrap();
        assert!(su2.relative_error < 1e-3, "{su2:?}");
        assert_eq!(su2.matching_sign, -1);
        assert!(norm(su2.first_derivative) < 1e-6);
    }

    #[test]
    fn non_commuting_fields_close_up() {
        let patch = ConnectionPatch::su2_test();
        let rot = |_: f64, y: f64| [1.0, y];
        let b = commutator_loop_holonomy(&patch, &rot, &dy, 0.2, 100).unwrap();
        assert!(b.is_unit());
        let rep = verify_second_derivative(&patch, &rot, &dy, 0.1, 8).unwrap();
        assert!(rep.relative_error < 1e-3, "{rep:?}");
    }
}
