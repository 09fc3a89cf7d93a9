//! Stochastic EPD routes: Beta subordination of the wave solution and the
//! inhomogeneous-telegraph heuristic.

use crate::error::{CoreError, Result};
use crate::stochastic::{mc_field_estimate, sample_telegraph_inhomogeneous, McField, RngStream};
use rand_distr::{Beta, Distribution};

/// Draws of 𝔛 ~ Beta(1/2, λ) under the fixed block layout (concatenated in
/// block order, so they are reproducible and worker-count independent).
pub fn beta_draws(lambda_epd: f64, n: usize, rng: &RngStream) -> Result<Vec<f64>> {
    if !(lambda_epd.is_finite() && lambda_epd > 0.0) {
        return Err(CoreError::Domain(format!(
            "Beta subordination requires lambda > 0, got {lambda_epd}"
        )));
    }
    let beta = Beta::new(0.5, lambda_epd).map_err(|e| {
        CoreError::Domain(format!("Beta(1/2, {lambda_epd}) construction failed: {e}"))
    })?;
    crate::stochastic::collect_block_draws(n, rng, move |stream| Ok(beta.sample(stream)))
}

/// Shared-draw estimate of E[cos(t√(m·𝔛))] used as a frequency kernel by the
/// Beta-MC solve route.
pub fn beta_mixed_kernel(draws: &[f64], m: f64, t: f64) -> f64 {
    let s = m.sqrt();
    draws.iter().map(|&x| (t * x.sqrt() * s).cos()).sum::<f64>() / draws.len() as f64
}

/// Beta-subordination Monte Carlo for the EPD solution:
/// u(t) = E[ū(t√𝔛)], 𝔛 ~ Beta(1/2, λ). `wave_eval` maps a time to the wave
/// field on the output grid.
pub fn epd_beta_mc<F>(
    lambda_epd: f64,
    wave_eval: F,
    grid: Vec<f64>,
    t: f64,
    n: usize,
    rng: &RngStream,
) -> Result<McField>
where
    F: Fn(f64) -> Result<Vec<f64>> + Sync,
{
    if !(lambda_epd.is_finite() && lambda_epd > 0.0) {
        return Err(CoreError::Domain(format!(
            "epd_beta_mc requires lambda > 0, got {lambda_epd}"
        )));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(CoreError::Domain(format!("time must be >= 0, got {t}")));
    }
    let grid_len = grid.len();
    if t == 0.0 {
        let mean = wave_eval(0.0)?;
        if mean.len() != grid_len {
            return Err(CoreError::InvalidConfig(
                "wave_eval returned a field of mismatched length".to_string(),
            ));
        }
        return Ok(McField {
            grid,
            mean,
            stderr: vec![0.0; grid_len],
            n,
            seed: rng.seed(),
            stream_id: rng.stream_id(),
            blocks: crate::stochastic::MC_BLOCKS,
        });
    }
    let beta = Beta::new(0.5, lambda_epd)
        .map_err(|e| CoreError::Domain(format!("Beta(1/2, {lambda_epd}) failed: {e}")))?;
    mc_field_estimate(grid_len, grid, n, rng, move |stream, out| {
        let x: f64 = beta.sample(stream);
        let field = wave_eval(t * x.sqrt())?;
        if field.len() != out.len() {
            return Err(CoreError::InvalidConfig(
                "wave_eval returned a field of mismatched length".to_string(),
            ));
        }
        out.copy_from_slice(&field);
        Ok(())
    })
}

/// Heuristic EPD route: average the wave solution along the inhomogeneous
/// telegraph motion X_ε(t) with switching rate λ/(s+ε). Tends to the EPD
/// solution as ε → 0.
pub fn epd_inhomogeneous_telegraph_mc<F>(
    lambda_epd: f64,
    eps: f64,
    wave_eval: F,
    grid: Vec<f64>,
    t: f64,
    n: usize,
    rng: &RngStream,
) -> Result<McField>
where
    F: Fn(f64) -> Result<Vec<f64>> + Sync,
{
    if !(eps.is_finite() && eps > 0.0) {
        return Err(CoreError::Domain(format!(
            "inhomogeneous telegraph route requires eps > 0, got {eps}"
        )));
    }
    if !(lambda_epd.is_finite() && lambda_epd >= 0.0) {
        return Err(CoreError::Domain(format!(
            "inhomogeneous telegraph route requires lambda >= 0, got {lambda_epd}"
        )));
    }
    mc_field_estimate(grid.len(), grid.clone(), n, rng, move |stream, out| {
        let x = sample_telegraph_inhomogeneous(lambda_epd, eps, t, stream)?;
        // the wave kernel is even in its time argument
        let field = wave_eval(x.abs())?;
        if field.len() != out.len() {
            return Err(CoreError::InvalidConfig(
                "wave_eval returned a field of mismatched length".to_string(),
            ));
        }
        out.copy_from_slice(&field);
        Ok(())
    })
}
