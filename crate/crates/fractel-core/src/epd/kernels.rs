//! Frequency-domain kernels of the Euler-Poisson-Darboux equation and the
//! Erdélyi-Kober fractional integral.
//!
//! Four independent evaluations of the same kernel:
//! Bessel closed form, Poisson integral, Erdélyi-Kober quadrature of the
//! wave kernel, and (in `mc.rs`) Beta subordination.

use crate::error::{CoreError, Result};
use crate::quad::gauss_legendre;
use crate::specfun::gamma_fn;
use std::f64::consts::PI;

/// Spectral wave multiplier cos(t√m).
pub fn wave_hat(m: f64, t: f64) -> f64 {
    debug_assert!(m >= 0.0 && t >= 0.0);
    (t * m.sqrt()).cos()
}

/// EPD kernel (2/(t√m))^{λ-1/2} Γ(λ+1/2) J_{λ-1/2}(t√m), continued to 1 at
/// t√m = 0; |kernel| ≤ 1.
pub fn epd_hat_bessel(lambda_epd: f64, m: f64, t: f64) -> Result<f64> {
    check_epd_args(lambda_epd, m, t)?;
    let z = t * m.sqrt();
    crate::specfun::normalized_bessel_j(lambda_epd - 0.5, z)
}

/// Poisson-integral form B(λ,1/2)^{-1} ∫_{-1}^{1} (1-w²)^{λ-1} cos(t√m·w) dw
/// with w = sin θ absorbing the endpoint singularity; panels graded toward
/// θ = π/2 keep small λ accurate (λ < 0.05 is rejected).
pub fn epd_hat_poisson(lambda_epd: f64, m: f64, t: f64) -> Result<f64> {
    check_epd_args(lambda_epd, m, t)?;
    if lambda_epd < 0.05 {
        return Err(CoreError::Convergence(format!(
            "epd_hat_poisson endpoint weight too singular for lambda = {lambda_epd} < 0.05"
        )));
    }
    let z = t * m.sqrt();
    // (2/B(λ,1/2)) ∫_0^{π/2} cos^{2λ-1}θ cos(z sin θ) dθ
    let beta_fn = gamma_fn(lambda_epd)? * gamma_fn(0.5)? / gamma_fn(lambda_epd + 0.5)?;
    let rule = gauss_legendre(16);
    let integrand = |theta: f64| -> f64 {
        theta.cos().powf(2.0 * lambda_epd - 1.0) * (z * theta.sin()).cos()
    };
    let mut acc = 0.0;
    // oscillation-resolving uniform panels away from the endpoint; the
    // weight cos^{2λ-1}θ stays mild while cos θ ≥ 1/2
    let body_end = PI / 2.0 - 0.5;
    let body_panels = (8 + (z / 2.0) as usize).min(4000);
    let h = body_end / body_panels as f64;
    for p in 0..body_panels {
        let (a, b) = (p as f64 * h, (p + 1) as f64 * h);
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        for (u, w) in rule.0.iter().zip(rule.1.iter()) {
            acc += w * half * integrand(mid + half * u);
        }
    }
    // geometric panels into the endpoint: [π/2-2^{-j}, π/2-2^{-j-1}]
    for j in 1..220 {
        let a = PI / 2.0 - 2.0f64.powi(-j);
        let b = PI / 2.0 - 2.0f64.powi(-j - 1);
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        let mut panel = 0.0;
        for (u, w) in rule.0.iter().zip(rule.1.iter()) {
            panel += w * half * integrand(mid + half * u);
        }
        acc += panel;
        if panel.abs() < 1e-16 {
            break;
        }
    }
    // the final sliver [π/2 - 2^-220, π/2] integrates to ~ δ^{2λ}/(2λ): below 1e-16
    Ok(2.0 * acc / beta_fn)
}

/// Erdélyi-Kober fractional integral
///
/// ```text
/// (I^{m}_α f)(x) = (m/Γ(α)) ∫_0^x (x^m - y^m)^{α-1} y^{m-1} f(y) dy,
/// ```
///
/// computed through y^m = x^m·u then u = 1 - v^{1/α}, which absorbs the
/// algebraic kernel singularity; panels are graded toward both endpoints so
/// integrable singularities of f itself stay accurate.
pub fn erdelyi_kober<F>(alpha_ek: f64, m_ek: f64, f: &F, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    if !(alpha_ek > 0.0 && alpha_ek.is_finite() && m_ek > 0.0 && m_ek.is_finite()) {
        return Err(CoreError::Domain(format!(
            "erdelyi_kober requires alpha > 0 and m > 0, got {alpha_ek}, {m_ek}"
        )));
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(CoreError::Domain(format!(
            "erdelyi_kober requires x > 0, got {x}"
        )));
    }
    // (x^{mα}/Γ(α+1)) ∫_0^1 f(x (1-v^{1/α})^{1/m}) dv
    let g = |v: f64| -> Result<f64> {
        let u = 1.0 - v.powf(1.0 / alpha_ek);
        f(x * u.max(0.0).powf(1.0 / m_ek))
    };
    let rule = gauss_legendre(12);
    let mut acc = 0.0;
    let integrate_panel = |a: f64, b: f64| -> Result<f64> {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        let mut panel = 0.0;
        for (u, w) in rule.0.iter().zip(rule.1.iter()) {
            panel += w * half * g(mid + half * u)?;
        }
        Ok(panel)
    };
    // graded dyadic panels toward v=0 and v=1, bulk in the middle
    let depth = 60;
    for j in (1..=depth).rev() {
        acc += integrate_panel(2.0f64.powi(-j - 1), 2.0f64.powi(-j))?;
    }
    acc += integrate_panel(0.0, 2.0f64.powi(-depth - 1))?;
    for j in 1..=depth {
        acc += integrate_panel(1.0 - 2.0f64.powi(-j), 1.0 - 2.0f64.powi(-j - 1))?;
    }
    acc += integrate_panel(1.0 - 2.0f64.powi(-depth - 1), 1.0)?;
    let scale = x.powf(m_ek * alpha_ek) / (gamma_fn(alpha_ek)? * alpha_ek);
    Ok(scale * acc)
}

/// EPD kernel through the Erdélyi-Kober route:
/// (Γ(λ+1/2)/√π) I^1_λ[ cos(t√(m·y))/√y ](1).
pub fn epd_hat_ek(lambda_epd: f64, m: f64, t: f64) -> Result<f64> {
    check_epd_args(lambda_epd, m, t)?;
    let sqrt_m = m.sqrt();
    let wave_over_sqrt = |y: f64| -> Result<f64> {
        if y <= 0.0 {
            // integrable endpoint: the substitution never evaluates at exactly 0
            return Ok(0.0);
        }
        Ok((t * sqrt_m * y.sqrt()).cos() / y.sqrt())
    };
    let scale = gamma_fn(lambda_epd + 0.5)? / PI.sqrt();
    Ok(scale * erdelyi_kober(lambda_epd, 1.0, &wave_over_sqrt, 1.0)?)
}

fn check_epd_args(lambda_epd: f64, m: f64, t: f64) -> Result<()> {
    if !(lambda_epd.is_finite() && lambda_epd > 0.0) {
        return Err(CoreError::Domain(format!(
            "EPD kernel requires lambda > 0, got {lambda_epd}"
        )));
    }
    if !(m.is_finite() && m >= 0.0 && t.is_finite() && t >= 0.0) {
        return Err(CoreError::Domain(format!(
            "EPD kernel requires m >= 0 and t >= 0, got m = {m}, t = {t}"
        )));
    }
    Ok(())
}
