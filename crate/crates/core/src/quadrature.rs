//! One-dimensional quadrature rules.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[a, b]`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    for i in 0..n.div_ceil(2) {
        // Initial guess for the i-th root of P_n.
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for k in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * k + 1) as f64 * z * p1 - k as f64 * p2) / (k + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = mid - half * z;
        x[n - 1 - i] = mid + half * z;
        w[i] = half * wi;
        w[n - 1 - i] = half * wi;
    }
    (x, w)
}

/// Composite Simpson weights for `n + 1` equally spaced samples on an
/// interval of length `len`; `n` must be even.
pub fn simpson_weights(n: usize, len: f64) -> Vec<f64> {
    assert!(n >= 2 && n.is_multiple_of(2), "Simpson needs an even number of panels");
    let h = len / n as f64;
    (0..=n)
        .map(|j| {
            let c = if j == 0 || j == n {
                1.0
            } else if j % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * h / 3.0
        })
        .collect()
}

/// Composite Simpson rule over samples of a vector-valued function.
pub fn simpson_vec(samples: &[Vec<f64>], len: f64) -> Vec<f64> {
    let n = samples.len() - 1;
    let w = simpson_weights(n, len);
    let dim = samples[0].len();
    let mut out = vec![0.0; dim];
    for (s, wj) in samples.iter().zip(&w) {
        for (o, v) in out.iter_mut().zip(s) {
            *o += wj * v;
        }
    }
    out
}

/// Nodes of the periodic trapezoid rule on `[a, a + len)`; weights are all `len / n`.
pub fn periodic_nodes(n: usize, a: f64, len: f64) -> Vec<f64> {
    (0..n).map(|j| a + len * (j as f64 + 0.5) / n as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let (x, w) = gauss_legendre(5, 0.0, 2.0);
        // Exact up to degree 9.
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(9)).sum();
        assert_relative_eq!(integral, 2f64.powi(10) / 10.0, max_relative = 1e-13);
        let (x, w) = gauss_legendre(48, 0.0, PI);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.sin().powi(2)).sum();
        assert_relative_eq!(s, PI / 2.0, max_relative = 1e-14);
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let n = 8;
        let samples: Vec<Vec<f64>> = (0..=n).map(|j| {
            let t = j as f64 / n as f64;
            vec![t * t * t - t, 1.0]
        }).collect();
        let v = simpson_vec(&samples, 1.0);
        assert_relative_eq!(v[0], -0.25, max_relative = 1e-14);
        assert_relative_eq!(v[1], 1.0, max_relative = 1e-14);
    }
}
