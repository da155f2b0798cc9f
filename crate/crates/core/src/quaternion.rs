//! Quaternions `a + bI + cJ + dK`; unit quaternions model `SU(2)` and the
//! imaginary ones its Lie algebra with basis `I, J, K`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

pub const UNIT_TOLERANCE: f64 = 1e-12;

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn from_imag(v: [f64; 3]) -> Self {
        Quaternion::new(0.0, v[0], v[1], v[2])
    }

    pub fn imag(&self) -> [f64; 3] {
        [self.b, self.c, self.d]
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&self) -> Self {
        *self * (1.0 / self.norm())
    }

    pub fn inverse(&self) -> Self {
        self.conj() * (1.0 / self.norm_sqr())
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= UNIT_TOLERANCE
    }

    /// `exp(v)` for an imaginary quaternion `v`.
    pub fn exp_imag(v: [f64; 3]) -> Self {
        let theta = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if theta < 1e-300 {
            return Quaternion::ONE;
        }
        let s = theta.sin() / theta;
        Quaternion::new(theta.cos(), s * v[0], s * v[1], s * v[2])
    }

    /// Principal logarithm of a unit quaternion, as an imaginary vector.
    pub fn log_unit(&self) -> [f64; 3] {
        let v = self.imag();
        let s = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if s < 1e-300 {
            return [0.0; 3];
        }
        let theta = s.atan2(self.a);
        let f = theta / s;
        [f * v[0], f * v[1], f * v[2]]
    }

    pub fn powi(&self, k: i32) -> Self {
        let base = if k < 0 { self.inverse() } else { *self };
        (0..k.unsigned_abs()).fold(Quaternion::ONE, |acc, _| acc * base)
    }

    pub fn distance(&self, other: &Quaternion) -> f64 {
        (*self - *other).norm()
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.a * o.a - self.b * o.b - self.c * o.c - self.d * o.d,
            self.a * o.b + self.b * o.a + self.c * o.d - self.d * o.c,
            self.a * o.c - self.b * o.d + self.c * o.a + self.d * o.b,
            self.a * o.d + self.b * o.c - self.c * o.b + self.d * o.a,
        )
    }
}

/// Commutator of imaginary vectors, `[x, y] = xy - yx = 2 x × y`.
pub fn bracket3(x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
    [
        2.0 * (x[1] * y[2] - x[2] * y[1]),
        2.0 * (x[2] * y[0] - x[0] * y[2]),
        2.0 * (x[0] * y[1] - x[1] * y[0]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hamilton_relations() {
        use Quaternion as Q;
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        assert_eq!(Q::I * Q::I, -Q::ONE);
        let c = Q::I * Q::J - Q::J * Q::I;
        assert_eq!(c.imag(), bracket3([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]));
    }

    #[test]
    fn exp_log_round_trip() {
        let v = [0.3, -1.1, 0.7];
        let q = Quaternion::exp_imag(v);
        assert!(q.is_unit());
        let l = q.log_unit();
        for k in 0..3 {
            assert_abs_diff_eq!(l[k], v[k], epsilon = 1e-14);
        }
        assert_abs_diff_eq!((q * q.inverse()).a, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.powi(3).distance(&(q * q * q)), 0.0, epsilon = 1e-15);
    }
}
