//! One-sided (totally positively skewed) stable draws, Kanter /
//! Chambers-Mallows-Stuck construction, normalized so that the subordinator
//! H with H(t) ~ t^{1/α}·S satisfies E[e^{-u H(t)}] = e^{-t u^α}.

use crate::error::{CoreError, Result};
use crate::stochastic::rng::RngStream;
use std::f64::consts::PI;

/// Standard draw S with E[e^{-u S}] = e^{-u^α}, α ∈ (0, 1).
///
/// S = [sin(αΘ)/sin(Θ)^{1/α}] · [sin((1-α)Θ)/E]^{(1-α)/α},
/// Θ uniform on (0, π), E unit exponential. Degenerates to the constant 1
/// as α → 1.
pub fn sample_standard_stable(alpha: f64, rng: &mut RngStream) -> f64 {
    debug_assert!(alpha > 0.0 && alpha <= 1.0);
    if alpha > 1.0 - 1e-9 {
        // unit drift: consume the same number of draws so couplings stay aligned
        let _ = rng.uniform_open();
        let _ = rng.uniform_open();
        return 1.0;
    }
    let theta = rng.uniform_open() * PI;
    let e = rng.exponential();
    let s1 = (alpha * theta).sin() / theta.sin().powf(1.0 / alpha);
    let s2 = (((1.0 - alpha) * theta).sin() / e).powf((1.0 - alpha) / alpha);
    s1 * s2
}

/// Draw of the stable subordinator H(t), E[e^{-u H(t)}] = e^{-t u^{α_s}}.
pub fn sample_stable_subordinator(alpha_s: f64, t: f64, rng: &mut RngStream) -> Result<f64> {
    if !(alpha_s > 0.0 && alpha_s < 1.0) {
        return Err(CoreError::Domain(format!(
            "stable subordinator requires alpha in (0, 1), got {alpha_s}"
        )));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(CoreError::Domain(format!(
            "stable subordinator requires t > 0, got {t}"
        )));
    }
    Ok(t.powf(1.0 / alpha_s) * sample_standard_stable(alpha_s, rng))
}
