//! Frequency-domain kernel Φ̂_α(t, m) of the fractional telegraph equation
//! and its Laplace-domain rational form.

use crate::error::{CoreError, Result};
use crate::specfun::{mittag_leffler, MLQuery};
use crate::symbols::FracParams;
use num_complex::Complex64;

/// Characteristic roots r₁ = -λ + √(λ²-m), r₂ = -λ - √(λ²-m), principal
/// branch (i√(m-λ²) when m > λ²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharRoots {
    pub r1: Complex64,
    pub r2: Complex64,
}

pub fn char_roots(p: &FracParams, m: f64) -> Result<CharRoots> {
    if !(m.is_finite() && m >= 0.0) {
        return Err(CoreError::Domain(format!(
            "char_roots requires m >= 0, got {m}"
        )));
    }
    let lambda = p.lambda;
    let disc = lambda * lambda - m;
    let root = if disc >= 0.0 {
        Complex64::new(disc.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-disc).sqrt())
    };
    Ok(CharRoots {
        r1: -lambda + root,
        r2: -lambda - root,
    })
}

/// Φ̂_α(t, m): the solution multiplier with Φ̂(0) = 1 and D^α Φ̂(0) = 0,
///
/// ```text
/// Φ̂ = ½ [(1 + λ/√(λ²-m)) E_{α,1}(r₁ t^α) + (1 - λ/√(λ²-m)) E_{α,1}(r₂ t^α)].
/// ```
///
/// Near the degenerate root m = λ² the kernel is evaluated at m(1 ± 1e-6)
/// and averaged, which sidesteps the 0/0 of the weights with O(ε²) error.
pub fn phi_hat(p: &FracParams, m: f64, t: f64) -> Result<f64> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(CoreError::Domain(format!(
            "phi_hat requires t >= 0, got {t}"
        )));
    }
    if !(m.is_finite() && m >= 0.0) {
        return Err(CoreError::Domain(format!(
            "phi_hat requires m >= 0, got {m}"
        )));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let l2 = p.lambda * p.lambda;
    if (m - l2).abs() <= 1e-8 * l2 {
        const EPS_DEG: f64 = 1e-6;
        let hi = phi_hat_regular(p, l2 * (1.0 + EPS_DEG), t)?;
        let lo = phi_hat_regular(p, l2 * (1.0 - EPS_DEG), t)?;
        return Ok(0.5 * (hi + lo));
    }
    phi_hat_regular(p, m, t)
}

fn phi_hat_regular(p: &FracParams, m: f64, t: f64) -> Result<f64> {
    let roots = char_roots(p, m)?;
    let disc = Complex64::new(p.lambda * p.lambda - m, 0.0);
    let c = Complex64::new(p.lambda, 0.0) / disc.sqrt();
    let ta = t.powf(p.alpha);
    let e1 = mittag_leffler(&MLQuery::new(p.alpha, 1.0, roots.r1 * ta)?)?;
    let e2 = mittag_leffler(&MLQuery::new(p.alpha, 1.0, roots.r2 * ta)?)?;
    let value = 0.5 * ((1.0 + c) * e1 + (1.0 - c) * e2);
    if value.im.abs() > 1e-9 * (1.0 + value.re.abs()) {
        return Err(CoreError::AccuracyLoss(format!(
            "phi_hat imaginary residue {:.3e} at alpha={}, lambda={}, m={m}, t={t}",
            value.im, p.alpha, p.lambda
        )));
    }
    Ok(value.re)
}

/// Laplace transform of Φ̂_α in t:
/// (s^{2α-1} + 2λ s^{α-1}) / (s^{2α} + 2λ s^α + m), strictly positive for
/// s > 0.
pub fn phi_hat_laplace(p: &FracParams, m: f64, s: f64) -> Result<f64> {
    if !(s.is_finite() && s > 0.0) {
        return Err(CoreError::Domain(format!(
            "phi_hat_laplace requires s > 0, got {s}"
        )));
    }
    if !(m.is_finite() && m >= 0.0) {
        return Err(CoreError::Domain(format!(
            "phi_hat_laplace requires m >= 0, got {m}"
        )));
    }
    let sa = s.powf(p.alpha);
    Ok((sa * sa / s + 2.0 * p.lambda * sa / s) / (sa * sa + 2.0 * p.lambda * sa + m))
}

/// The α = 1 kernel (also the integrand of the α = 1/2 Brownian-clock
/// representation):
///
/// ```text
/// g(t, m) = e^{-λt} [cosh(t√(λ²-m)) + λ sinh(t√(λ²-m))/√(λ²-m)],
/// ```
///
/// real for every m ≥ 0 (circular functions once m > λ²), with the
/// degenerate limit e^{-λt}(1 + λt) at m = λ².
pub fn g_kernel_half(lambda: f64, m: f64, t: f64) -> Result<f64> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(CoreError::Domain(format!(
            "g_kernel_half requires lambda > 0, got {lambda}"
        )));
    }
    if !(m.is_finite() && m >= 0.0 && t.is_finite() && t >= 0.0) {
        return Err(CoreError::Domain(format!(
            "g_kernel_half requires m >= 0 and t >= 0, got m = {m}, t = {t}"
        )));
    }
    let disc = lambda * lambda - m;
    let scale = (-lambda * t).exp();
    let z2 = disc * t * t;
    if z2.abs() < 1e-12 {
        // cosh(w) + λt sinhc(w) with w² → 0: 1 + λt + O(w²)
        return Ok(scale * (1.0 + lambda * t + 0.5 * z2 * (1.0 + lambda * t / 3.0)));
    }
    if disc > 0.0 {
        let w = disc.sqrt() * t;
        Ok(scale * (w.cosh() + lambda * t * w.sinh() / w))
    } else {
        let w = (-disc).sqrt() * t;
        Ok(scale * (w.cos() + lambda * t * w.sin() / w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::adaptive_simpson;
    use crate::specfun::erf;

    fn fp(alpha: f64, lambda: f64) -> FracParams {
        FracParams::new(alpha, lambda).unwrap()
    }

    #[test]
    fn roots_vieta_and_branch() {
        let p = fp(0.5, 1.0);
        for &m in &[0.0, 0.3, 1.0, 5.0, 40.0] {
            let r = char_roots(&p, m).unwrap();
            let sum = r.r1 + r.r2;
            let prod = r.r1 * r.r2;
            assert!((sum.re + 2.0).abs() < 1e-12 && sum.im.abs() < 1e-12, "m={m}");
            assert!(
                (prod.re - m).abs() < 1e-12 * (1.0 + m) && prod.im.abs() < 1e-12,
                "m={m}"
            );
        }
        // explicit cases from the degenerate and oscillatory regimes
        let r = char_roots(&p, 0.0).unwrap();
        assert!((r.r1 - Complex64::new(0.0, 0.0)).norm() < 1e-14);
        assert!((r.r2 - Complex64::new(-2.0, 0.0)).norm() < 1e-14);
        let r = char_roots(&p, 1.0).unwrap();
        assert!((r.r1 - r.r2).norm() < 1e-14);
        let r = char_roots(&p, 5.0).unwrap();
        assert!((r.r1 - Complex64::new(-1.0, 2.0)).norm() < 1e-12);
        assert!((r.r2 - Complex64::new(-1.0, -2.0)).norm() < 1e-12);
    }

    #[test]
    fn kernel_is_one_at_time_zero() {
        for &(a, l, m) in &[(0.3, 1.0, 0.5), (0.7, 2.0, 9.0), (1.0, 0.5, 0.25)] {
            assert_eq!(phi_hat(&fp(a, l), m, 0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn alpha_one_matches_exponential_form() {
        // oscillatory case of the spec: e^{-0.7}[cos 1.4 + sin(1.4)/2]
        let p = fp(1.0, 1.0);
        let got = phi_hat(&p, 5.0, 0.7).unwrap();
        let want = (-0.7f64).exp() * ((1.4f64).cos() + 0.5 * (1.4f64).sin());
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        // and the g-kernel is that same closed form for every regime
        for &m in &[0.0, 0.3, 0.999, 1.0, 1.001, 5.0, 30.0] {
            let a = phi_hat(&p, m, 0.7).unwrap();
            let b = g_kernel_half(1.0, m, 0.7).unwrap();
            assert!((a - b).abs() < 2e-10, "m={m}: {a} vs {b}");
        }
    }

    #[test]
    fn half_alpha_matches_erf_closed_form() {
        // §-level closed form with real roots: ½[(1+c)e^{r₁²t}(1+erf r₁√t) + ...]
        let p = fp(0.5, 1.0);
        let (m, t) = (0.25, 1.0);
        let disc = (1.0f64 - m).sqrt();
        let (r1, r2) = (-1.0 + disc, -1.0 - disc);
        let cw = 1.0 / disc;
        let want = 0.5
            * ((1.0 + cw) * (r1 * r1 * t).exp() * (1.0 + erf(r1 * t.sqrt()))
                + (1.0 - cw) * (r2 * r2 * t).exp() * (1.0 + erf(r2 * t.sqrt())));
        let got = phi_hat(&p, m, t).unwrap();
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }

    #[test]
    fn half_alpha_matches_brownian_clock_expectation() {
        // Φ̂_{1/2}(t, m) = E[g(|B(t)|, m)], |B(t)| with density (πt)^{-1/2}e^{-z²/4t}
        let (lambda, m, t) = (1.0, 2.0, 0.8);
        let p = fp(0.5, lambda);
        let density = |z: f64| (std::f64::consts::PI * t).sqrt().recip() * (-z * z / (4.0 * t)).exp();
        let integrand = |z: f64| Ok(density(z) * g_kernel_half(lambda, m, z)?);
        let expect = adaptive_simpson(&integrand, 0.0, 40.0, 1e-11).unwrap();
        let got = phi_hat(&p, m, t).unwrap();
        assert!((got - expect).abs() < 1e-8, "{got} vs {expect}");
    }

    #[test]
    fn laplace_form_arithmetic() {
        // m = 0 collapses to 1/s
        let p = fp(0.7, 1.3);
        for &s in &[0.5, 1.0, 4.0] {
            assert!((phi_hat_laplace(&p, 0.0, s).unwrap() - 1.0 / s).abs() < 1e-14);
        }
        // α = 1, λ = 1, m = 3, s = 2 → 4/11
        let p = fp(1.0, 1.0);
        assert!((phi_hat_laplace(&p, 3.0, 2.0).unwrap() - 4.0 / 11.0).abs() < 1e-14);
    }

    #[test]
    fn degenerate_root_continuity() {
        for &alpha in &[0.4, 1.0] {
            let p = fp(alpha, 1.0);
            let mut t = 0.0;
            while t <= 5.0 {
                let hi = phi_hat(&p, 1.0 + 1e-4, t).unwrap();
                let lo = phi_hat(&p, 1.0 - 1e-4, t).unwrap();
                assert!(
                    (hi - lo).abs() <= 1e-3,
                    "alpha={alpha}, t={t}: jump {:.3e}",
                    (hi - lo).abs()
                );
                t += 0.25;
            }
        }
    }

    #[test]
    fn g_kernel_degenerate_limit() {
        let (lambda, t) = (1.0, 0.9);
        let got = g_kernel_half(lambda, 1.0, t).unwrap();
        let want = (-t).exp() * (1.0 + t);
        assert!((got - want).abs() < 1e-12);
        assert_eq!(g_kernel_half(2.0, 3.0, 0.0).unwrap(), 1.0);
    }
}
