//! Bessel functions J_ν (real order ν ≥ -1/2) and modified I_0, I_1.

use crate::dd::{dd_gamma, dd_lgamma, Dd};
use crate::error::{CoreError, Result};
use std::f64::consts::PI;

/// J_ν(x) for ν ≥ -1/2, x ≥ 0.
///
/// Ascending series in double-double below `max(16, ν²)`, Hankel asymptotic
/// expansion beyond. Either branch self-certifies and reports accuracy loss
/// instead of returning a degraded value.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !nu.is_finite() || !x.is_finite() || nu < -0.5 || x < 0.0 {
        return Err(CoreError::Domain(format!(
            "bessel_j requires nu >= -1/2 and x >= 0, got nu = {nu}, x = {x}"
        )));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    let switch = 16.0f64.max(nu * nu);
    if x < 10.0f64.min(switch) {
        // cancellation below x = 10 stays within ~2 f64 digits
        bessel_j_series_f64(nu, x)
    } else if x < switch {
        bessel_j_series(nu, x)
    } else {
        bessel_j_asymptotic(nu, x)
    }
}

/// Plain-f64 ascending series; only used where the alternating terms grow
/// mildly, leaving absolute error below ~1e-13.
fn bessel_j_series_f64(nu: f64, x: f64) -> Result<f64> {
    let half = 0.5 * x;
    let lead = (nu * half.ln() - dd_lgamma(Dd::from_f64(nu + 1.0)).hi).exp();
    let neg_q = -half * half;
    let mut term = lead;
    let mut sum = lead;
    let mut comp = 0.0f64; // Kahan carry
    for k in 0..200 {
        let kf = k as f64;
        term *= neg_q / ((kf + 1.0) * (kf + 1.0 + nu));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() < 1e-18 * (1.0 + sum.abs()) {
            return Ok(sum);
        }
    }
    Err(CoreError::Convergence(format!(
        "bessel_j series did not converge at nu = {nu}, x = {x}"
    )))
}

fn bessel_j_series(nu: f64, x: f64) -> Result<f64> {
    // (x/2)^nu / Γ(nu+1) * Σ_k (-(x/2)^2)^k / (k! (nu+1)_k)
    let half = Dd::from_f64(x).div_f64(2.0);
    let neg_q = half.mul(half).neg();
    let lead = half
        .ln()
        .mul_f64(nu)
        .sub(dd_lgamma(Dd::from_f64(nu + 1.0)))
        .exp();
    let mut term = lead;
    let mut sum = lead;
    let mut max_t = lead.abs_hi();
    for k in 0..400 {
        let kf = k as f64;
        // keep the Pochhammer factors in double-double: f64 rounding of the
        // per-term ratio accumulates coherently across the big terms
        let divisor = Dd::from_f64(kf + 1.0).mul(Dd::from_f64(kf + 1.0).add_f64(nu));
        term = term.mul(neg_q).div(divisor);
        sum = sum.add(term);
        max_t = max_t.max(term.abs_hi());
        if term.abs_hi() < 1e-34 * max_t && term.abs_hi() < 1e-20 * (1.0 + sum.abs_hi()) {
            let err = 1e-31 * max_t;
            if err > 1e-11 {
                return Err(CoreError::AccuracyLoss(format!(
                    "bessel_j series cancellation beyond double-double at nu = {nu}, x = {x}"
                )));
            }
            return Ok(sum.hi);
        }
    }
    Err(CoreError::Convergence(format!(
        "bessel_j series did not converge at nu = {nu}, x = {x}"
    )))
}

fn bessel_j_asymptotic(nu: f64, x: f64) -> Result<f64> {
    // J_nu(x) ~ sqrt(2/(πx)) [P cos χ - Q sin χ], χ = x - (ν/2 + 1/4)π
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut prev = f64::INFINITY;
    let mut converged = false;
    for k in 1..40 {
        let kf = k as f64;
        term *= (mu - (2.0 * kf - 1.0) * (2.0 * kf - 1.0)) / (8.0 * kf * x);
        if term.abs() >= prev {
            // asymptotic series started diverging
            if prev > 1e-12 {
                return Err(CoreError::AccuracyLoss(format!(
                    "bessel_j asymptotic stalls at nu = {nu}, x = {x} (tail {prev:.2e})"
                )));
            }
            converged = true;
            break;
        }
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        prev = term.abs();
        if term.abs() < 1e-17 {
            converged = true;
            break;
        }
    }
    if !converged && prev > 1e-12 {
        return Err(CoreError::AccuracyLoss(format!(
            "bessel_j asymptotic tail {prev:.2e} too large at nu = {nu}, x = {x}"
        )));
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    Ok((2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin()))
}

/// I_0(x) for x ≥ 0; overflows past x ≈ 709.
pub fn bessel_i0(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(CoreError::Domain(format!(
            "bessel_i0 requires x >= 0, got {x}"
        )));
    }
    if x > 709.0 {
        return Err(CoreError::Overflow(format!(
            "bessel_i0({x}) exceeds f64 range; use bessel_i0_scaled"
        )));
    }
    if x <= 20.0 {
        Ok(i_series(0, x))
    } else {
        Ok(bessel_i0_scaled(x) * x.exp())
    }
}

/// e^{-x} I_0(x), safe for all x ≥ 0.
pub fn bessel_i0_scaled(x: f64) -> f64 {
    if x <= 20.0 {
        i_series(0, x) * (-x).exp()
    } else {
        i_asymptotic_scaled(0.0, x)
    }
}

/// I_1(x) for x ≥ 0; overflows past x ≈ 709.
pub fn bessel_i1(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(CoreError::Domain(format!(
            "bessel_i1 requires x >= 0, got {x}"
        )));
    }
    if x > 709.0 {
        return Err(CoreError::Overflow(format!(
            "bessel_i1({x}) exceeds f64 range; use bessel_i1_scaled"
        )));
    }
    if x <= 20.0 {
        Ok(i_series(1, x))
    } else {
        Ok(bessel_i1_scaled(x) * x.exp())
    }
}

/// e^{-x} I_1(x), safe for all x ≥ 0.
pub fn bessel_i1_scaled(x: f64) -> f64 {
    if x <= 20.0 {
        i_series(1, x) * (-x).exp()
    } else {
        i_asymptotic_scaled(1.0, x)
    }
}

/// Ascending series for I_n, n in {0, 1}; all terms positive, no cancellation.
fn i_series(n: u32, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = if n == 0 { 1.0 } else { 0.5 * x };
    let mut sum = term;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (kf + n as f64));
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

fn i_asymptotic_scaled(nu: f64, x: f64) -> f64 {
    // e^{-x} I_nu(x) ~ (2πx)^{-1/2} Σ_k (-1)^k a_k(nu)/x^k
    let mu = 4.0 * nu * nu;
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 1..40 {
        let kf = k as f64;
        term *= -(mu - (2.0 * kf - 1.0) * (2.0 * kf - 1.0)) / (8.0 * kf * x);
        sum += term;
        if term.abs() < 1e-17 {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

/// (2/z)^μ Γ(μ+1) J_μ(z): the Bessel kernel normalized to 1 at z = 0.
/// Series branch avoids the 0^μ/0 indeterminacy of assembling the factors.
pub(crate) fn normalized_bessel_j(mu: f64, z: f64) -> Result<f64> {
    debug_assert!(mu >= -0.5);
    if z == 0.0 {
        return Ok(1.0);
    }
    if z < 0.5f64.max(mu.abs()) {
        // Σ_k (-z²/4)^k / (k! (μ+1)_k)
        let q = -0.25 * z * z;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 0..200 {
            let kf = k as f64;
            term *= q / ((kf + 1.0) * (kf + 1.0 + mu));
            sum += term;
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        Ok(sum)
    } else {
        let j = bessel_j(mu, z)?;
        let scale = (2.0 / z).powf(mu) * dd_gamma(Dd::from_f64(mu + 1.0)).hi;
        Ok(scale * j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_trivial_values() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1.0, 0.0).unwrap(), 0.0);
        assert!((bessel_j(0.5, PI).unwrap()).abs() < 1e-14);
        assert!((bessel_j(1.0, 1.0).unwrap() - 0.440_050_585_744_933_5).abs() < 1e-13);
    }

    #[test]
    fn j_half_integer_closed_forms() {
        let mut x = 0.05f64;
        while x <= 50.0 {
            let jm = bessel_j(-0.5, x).unwrap();
            let jp = bessel_j(0.5, x).unwrap();
            let c = (2.0 / (PI * x)).sqrt();
            assert!((jm - c * x.cos()).abs() < 1e-10, "J_-1/2 at {x}");
            assert!((jp - c * x.sin()).abs() < 1e-10, "J_1/2 at {x}");
            x *= 1.17;
        }
    }

    #[test]
    fn j_series_asymptotic_seam() {
        // both branches agree where they meet
        for &nu in &[-0.5, 0.0, 0.5, 1.0, 2.5] {
            for &x in &[15.5, 16.0, 16.5, 17.0] {
                let s = bessel_j_series(nu, x).unwrap();
                let a = bessel_j_asymptotic(nu, x).unwrap();
                assert!((s - a).abs() < 1e-11, "seam nu={nu} x={x}: {s} vs {a}");
            }
        }
    }

    #[test]
    fn j_large_argument() {
        // J_0(x) at x = 1e4 against the closed half-integer neighbors' scale
        let v = bessel_j(0.0, 1e4).unwrap();
        assert!(v.abs() < 1.0e-2);
        assert!(v.is_finite());
        // cross-check with the recurrence J_{ν-1} + J_{ν+1} = (2ν/x) J_ν
        let (j0, j1, j2) = (
            bessel_j(0.0, 40.0).unwrap(),
            bessel_j(1.0, 40.0).unwrap(),
            bessel_j(2.0, 40.0).unwrap(),
        );
        assert!((j0 + j2 - 2.0 / 40.0 * j1).abs() < 1e-12);
    }

    #[test]
    fn j_domain_errors() {
        assert!(matches!(bessel_j(-0.6, 1.0), Err(CoreError::Domain(_))));
        assert!(matches!(bessel_j(0.5, -1.0), Err(CoreError::Domain(_))));
        assert!(matches!(
            bessel_j(f64::NAN, 1.0),
            Err(CoreError::Domain(_))
        ));
    }

    #[test]
    fn i0_values_and_monotonicity() {
        assert_eq!(bessel_i0(0.0).unwrap(), 1.0);
        assert!((bessel_i0(1.0).unwrap() - 1.266_065_877_752_008_3).abs() < 1e-12);
        assert!(bessel_i0(2.0).unwrap() > bessel_i0(1.0).unwrap());
        assert!(bessel_i0(700.0).unwrap().is_finite());
        assert!(matches!(bessel_i0(710.0), Err(CoreError::Overflow(_))));
    }

    #[test]
    fn i_scaled_consistency() {
        for &x in &[0.5, 5.0, 19.9, 20.1, 50.0, 300.0] {
            let rel0 = (bessel_i0_scaled(x) * x.exp() - bessel_i0(x).unwrap()).abs()
                / bessel_i0(x).unwrap();
            assert!(rel0 < 1e-12, "i0 scaled mismatch at {x}");
            let rel1 = (bessel_i1_scaled(x) * x.exp() - bessel_i1(x).unwrap()).abs()
                / bessel_i1(x).unwrap();
            assert!(rel1 < 1e-12, "i1 scaled mismatch at {x}");
        }
        // wronskian-like check: I_0' = I_1 via central difference
        let h = 1e-5;
        let d = (bessel_i0(3.0 + h).unwrap() - bessel_i0(3.0 - h).unwrap()) / (2.0 * h);
        assert!((d - bessel_i1(3.0).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn normalized_kernel_limits() {
        assert_eq!(normalized_bessel_j(0.7, 0.0).unwrap(), 1.0);
        // the internal series branch must match the direct assembly
        // (2/z)^μ Γ(μ+1) J_μ(z) at the same point
        for &mu in &[-0.5f64, 0.0, 0.2, 1.0, 2.0] {
            let zc = 0.5f64.max(mu.abs());
            for &z in &[0.25 * zc, 0.999 * zc] {
                let a = normalized_bessel_j(mu, z).unwrap();
                let direct = (2.0 / z).powf(mu)
                    * dd_gamma(Dd::from_f64(mu + 1.0)).hi
                    * bessel_j(mu, z).unwrap();
                assert!(
                    (a - direct).abs() < 1e-12,
                    "kernel branches disagree at mu={mu}, z={z}: {a} vs {direct}"
                );
            }
        }
    }
}
