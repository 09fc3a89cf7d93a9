//! Shared quadrature building blocks: Gauss-Legendre panels and adaptive
//! Simpson with Result-returning integrands.

use crate::error::{CoreError, Result};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Gauss-Legendre nodes and weights on [-1, 1], computed once per order by
/// Newton iteration on the Legendre recurrence and cached.
pub fn gauss_legendre(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_p_dp(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_p_dp(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    let arc = Arc::new((nodes, weights));
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

fn legendre_p_dp(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss-Legendre integral of `f` over [a, b] with `n` nodes.
pub fn gl_integrate<F>(f: &F, a: f64, b: f64, n: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    let rule = gauss_legendre(n);
    let c = 0.5 * (b - a);
    let m = 0.5 * (a + b);
    let mut acc = 0.0;
    for (x, w) in rule.0.iter().zip(rule.1.iter()) {
        acc += w * f(m + c * x)?;
    }
    Ok(acc * c)
}

/// Adaptive Simpson quadrature with absolute tolerance.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    let m = 0.5 * (a + b);
    let fa = f(a)?;
    let fm = f(m)?;
    let fb = f(b)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 {
        // the per-leaf tolerance has been halved ~48 times by now; a residual
        // still this far below the caller's budget is harmless roughness
        // (interpolation kinks), not a divergence
        if delta.abs() > 1e6 * tol && (b - a) > 1e-12 * (1.0 + a.abs()) {
            return Err(CoreError::Convergence(format!(
                "adaptive Simpson stalled on [{a}, {b}] (residual {:.3e})",
                delta.abs()
            )));
        }
        return Ok(left + right + delta / 15.0);
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    let half_tol = 0.5 * tol;
    Ok(
        simpson_rec(f, a, m, fa, flm, fm, left, half_tol, depth - 1)?
            + simpson_rec(f, m, b, fm, frm, fb, right, half_tol, depth - 1)?,
    )
}

/// Adaptive Gauss-Legendre: a 16-point panel is accepted when it agrees
/// with its two half-panels; otherwise the halves recurse. Far fewer
/// integrand calls than adaptive Simpson at tight tolerances.
pub fn gl_adaptive<F>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    gl_adaptive_rec(f, a, b, tol, 24)
}

fn gl_adaptive_rec<F>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    let whole = gl_integrate(f, a, b, 16)?;
    let m = 0.5 * (a + b);
    let split = gl_integrate(f, a, m, 16)? + gl_integrate(f, m, b, 16)?;
    let delta = (split - whole).abs();
    if delta <= tol || (b - a) < 1e-12 * (1.0 + a.abs()) {
        return Ok(split);
    }
    if depth == 0 {
        if delta > 1e6 * tol {
            return Err(CoreError::Convergence(format!(
                "adaptive Gauss-Legendre stalled on [{a}, {b}] (residual {delta:.3e})"
            )));
        }
        return Ok(split);
    }
    Ok(gl_adaptive_rec(f, a, m, 0.5 * tol, depth - 1)?
        + gl_adaptive_rec(f, m, b, 0.5 * tol, depth - 1)?)
}

/// Limit of the sequence of partial sums `s` by repeated adjacent averaging
/// (Euler transformation of the underlying alternating series), together
/// with an error estimate from the last averaging level.
pub fn averaged_limit(partial_sums: &[f64]) -> (f64, f64) {
    debug_assert!(partial_sums.len() >= 2);
    let mut v = partial_sums.to_vec();
    let mut prev = *v.last().unwrap();
    while v.len() > 1 {
        for i in 0..v.len() - 1 {
            v[i] = 0.5 * (v[i] + v[i + 1]);
        }
        v.pop();
        let cur = *v.last().unwrap();
        if v.len() == 1 {
            return (cur, (cur - prev).abs());
        }
        prev = cur;
    }
    (prev, f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_exactness_on_polynomials() {
        // 16-point rule integrates degree-31 polynomials exactly
        let f = |x: f64| Ok(x.powi(10) - 3.0 * x.powi(7) + x);
        let got = gl_integrate(&f, -1.0, 2.0, 16).unwrap();
        let exact = (2.0f64.powi(11) - (-1.0f64).powi(11)) / 11.0
            - 3.0 * (2.0f64.powi(8) - 1.0) / 8.0
            + (4.0 - 1.0) / 2.0;
        assert!((got - exact).abs() < 1e-11 * exact.abs());
    }

    #[test]
    fn simpson_gaussian_integral() {
        let f = |x: f64| Ok((-x * x / 2.0).exp());
        let got = adaptive_simpson(&f, -10.0, 10.0, 1e-12).unwrap();
        assert!((got - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn averaged_limit_of_slow_alternating_series() {
        // log 2 = sum (-1)^{k+1}/k, painfully slow without acceleration
        let mut s = 0.0;
        let sums: Vec<f64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        let (lim, err) = averaged_limit(&sums);
        assert!((lim - std::f64::consts::LN_2).abs() < 1e-7);
        assert!(err < 1e-5);
    }
}
