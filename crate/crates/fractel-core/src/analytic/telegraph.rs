//! Telegraph-process densities: the finite-velocity law at a fixed time and
//! the α = 1/2 solution as the law of the telegraph run for a Brownian
//! duration.

use crate::error::{CoreError, Result};
use crate::quad::adaptive_simpson;
use crate::specfun::{bessel_i0_scaled, bessel_i1_scaled};
use std::f64::consts::PI;

/// Absolutely continuous part and per-atom weight of the telegraph law at
/// time t:
///
/// ```text
/// ac(x) = (e^{-λt}/2) [λ I₀(λξ) + λ t I₁(λξ)/ξ] 1_{|x|<t},  ξ = √(t²-x²),
/// atoms of weight e^{-λt}/2 at ±t.
/// ```
pub fn telegraph_density(lambda: f64, t: f64, x: f64) -> Result<(f64, f64)> {
    if !(lambda.is_finite() && lambda > 0.0 && t.is_finite() && t > 0.0) {
        return Err(CoreError::Domain(format!(
            "telegraph_density requires lambda > 0 and t > 0, got {lambda}, {t}"
        )));
    }
    let atom = 0.5 * (-lambda * t).exp();
    if x.abs() >= t {
        return Ok((0.0, atom));
    }
    let xi = (t * t - x * x).sqrt();
    let z = lambda * xi;
    // e^{-λt} I(λξ) = e^{λ(ξ-t)} [e^{-λξ} I(λξ)], ξ ≤ t keeps the exponent ≤ 0
    let damp = (lambda * (xi - t)).exp();
    let i0 = damp * bessel_i0_scaled(z);
    let i1_over_xi = if z < 1e-8 {
        // λ I₁(λξ)/ξ → λ²/2 as ξ → 0
        damp * 0.5 * lambda * lambda
    } else {
        damp * bessel_i1_scaled(z) * lambda / z * lambda
    };
    let ac = 0.5 * (lambda * i0 + t * i1_over_xi);
    Ok((ac, atom))
}

/// u_{1/2}(t, x): the fractional solution at α = 1/2 for the Laplacian,
/// equal to the density of T(|B(t)|) — the telegraph position run for an
/// independent half-normal duration with density (πt)^{-1/2} e^{-z²/4t}.
/// The smeared boundary atoms collapse analytically to
/// (2√(πt))^{-1} e^{-x²/4t - λ|x|}.
pub fn telegraph_halftime_density(lambda: f64, t: f64, x: f64) -> Result<f64> {
    if !(lambda.is_finite() && lambda > 0.0 && t.is_finite() && t > 0.0) {
        return Err(CoreError::Domain(format!(
            "telegraph_halftime_density requires lambda > 0 and t > 0, got {lambda}, {t}"
        )));
    }
    let ax = x.abs();
    let clock_norm = 1.0 / (PI * t).sqrt();
    let atom_part = 0.5 * clock_norm * (-x * x / (4.0 * t) - lambda * ax).exp();
    // continuous telegraph part mixed over clock values z > |x|, through
    // the boundary-layer substitution z = √(x² + 4tu²): the Gaussian clock
    // factor becomes e^{-u²} with the bulk always at u = 0, so the
    // quadrature cannot lose the (narrow, x-dependent) support
    let scale = (-x * x / (4.0 * t)).exp() * clock_norm;
    let integrand = |u: f64| {
        let z = (x * x + 4.0 * t * u * u).sqrt().max(1e-300);
        let (ac, _) = telegraph_density(lambda, z, x)?;
        Ok((-u * u).exp() * ac * 4.0 * t * u / z)
    };
    let mixed = scale * adaptive_simpson(&integrand, 0.0, 6.8, 1e-12)?;
    Ok(mixed + atom_part)
}

/// CDF of the half-time law on a grid: F(x) for each requested x ≥ 0 plus
/// symmetry F(-x) = 1 - F(x). Used by the Kolmogorov-Smirnov validations.
pub struct HalftimeCdf {
    xs: Vec<f64>,
    cdf: Vec<f64>,
}

impl HalftimeCdf {
    /// Tabulate on [0, x_max] with `cells` panels of Gauss-Legendre 8.
    pub fn build(lambda: f64, t: f64, x_max: f64, cells: usize) -> Result<HalftimeCdf> {
        if cells < 16 || !(x_max > 0.0) {
            return Err(CoreError::InvalidConfig(
                "HalftimeCdf needs x_max > 0 and at least 16 cells".to_string(),
            ));
        }
        let rule = crate::quad::gauss_legendre(8);
        let h = x_max / cells as f64;
        let mut xs = Vec::with_capacity(cells + 1);
        let mut cdf = Vec::with_capacity(cells + 1);
        xs.push(0.0);
        cdf.push(0.5); // symmetry: F(0) = 1/2
        let mut acc = 0.5;
        for c in 0..cells {
            let (a, b) = (c as f64 * h, (c + 1) as f64 * h);
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            let mut panel = 0.0;
            for (u, w) in rule.0.iter().zip(rule.1.iter()) {
                panel += w * telegraph_halftime_density(lambda, t, mid + half * u)?;
            }
            acc += panel * half;
            xs.push(b);
            cdf.push(acc.min(1.0));
        }
        Ok(HalftimeCdf { xs, cdf })
    }

    /// F(x) by linear interpolation (exact symmetry for x < 0).
    pub fn eval(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 1.0 - self.eval(-x);
        }
        let last = *self.xs.last().unwrap();
        if x >= last {
            return *self.cdf.last().unwrap();
        }
        let i = match self
            .xs
            .binary_search_by(|g| g.partial_cmp(&x).unwrap())
        {
            Ok(i) => return self.cdf[i],
            Err(i) => i,
        };
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let w = (x - x0) / (x1 - x0);
        self.cdf[i - 1] * (1.0 - w) + self.cdf[i] * w
    }
}
