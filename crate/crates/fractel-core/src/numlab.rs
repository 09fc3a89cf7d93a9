//! Numerical Laplace-transform utilities used as independent validation
//! routes: a forward transform by adaptive quadrature and the fixed-Talbot
//! inverse transform.

use crate::error::{CoreError, Result};
use crate::quad::adaptive_simpson;
use num_complex::Complex64;
use std::f64::consts::PI;

/// ∫_0^∞ e^{-st} f(t) dt for s > 0 and f bounded, by adaptive quadrature on
/// [0, T*] with T* chosen so the truncated tail is below tol/10.
pub fn numeric_laplace<F>(f: &F, s: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    if !(s.is_finite() && s > 0.0) {
        return Err(CoreError::Domain(format!(
            "numeric_laplace requires s > 0, got {s}"
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CoreError::Domain("tolerance must be positive".to_string()));
    }
    // crude bound on |f| from dyadic probes; f is assumed bounded
    let mut bound = 0.0f64;
    let mut t = 0.0;
    while t < 64.0 {
        bound = bound.max(f(t)?.abs());
        t = if t == 0.0 { 0.03125 } else { t * 2.0 };
    }
    let bound = bound.max(1e-6) * 2.0;
    let t_star = ((10.0 * bound / tol).ln() / s).max(1.0 / s);
    let g = |t: f64| Ok((-s * t).exp() * f(t)?);
    adaptive_simpson(&g, 0.0, t_star, tol / 10.0)
}

/// Fixed-Talbot inverse Laplace transform of F at t > 0.
///
/// Starts from `m_start` nodes (minimum 8) and doubles until two successive
/// evaluations differ by less than 1e-8, up to M = 128.
pub fn talbot_invert<F>(f_image: &F, t: f64, m_start: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64 + ?Sized,
{
    if !(t.is_finite() && t > 0.0) {
        return Err(CoreError::Domain(format!(
            "talbot_invert requires t > 0, got {t}"
        )));
    }
    let mut m = m_start.max(8);
    let mut prev = talbot_fixed(f_image, t, m);
    while m < 128 {
        m *= 2;
        let cur = talbot_fixed(f_image, t, m);
        if (cur - prev).abs() < 1e-8 {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(CoreError::Convergence(format!(
        "talbot_invert did not stabilize by M = 128 at t = {t}"
    )))
}

/// Single fixed-Talbot evaluation with M nodes, contour radius r = 2M/(5t).
pub fn talbot_fixed<F>(f_image: &F, t: f64, m: usize) -> f64
where
    F: Fn(Complex64) -> Complex64 + ?Sized,
{
    let r = 2.0 * m as f64 / (5.0 * t);
    let mut acc = 0.5 * f_image(Complex64::new(r, 0.0)).re * (r * t).exp();
    for k in 1..m {
        let theta = k as f64 * PI / m as f64;
        let cot = theta.cos() / theta.sin();
        let s = Complex64::new(r * theta * cot, r * theta);
        let sigma = theta + (theta * cot - 1.0) * cot;
        let term = (s * t).exp() * f_image(s) * Complex64::new(1.0, sigma);
        acc += term.re;
    }
    acc * r / m as f64
}
