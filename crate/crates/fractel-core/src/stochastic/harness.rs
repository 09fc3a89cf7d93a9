//! Monte Carlo estimator assembly.
//!
//! Every estimator partitions its n samples into a fixed number of blocks;
//! block b draws from the deterministic child stream b of the master stream
//! and partial sums are merged in block order. The layout is independent of
//! the worker count, so estimates are bit-identical no matter how the blocks
//! are scheduled.

use crate::error::{CoreError, Result};
use crate::field::InitialCondition;
use crate::stochastic::histogram::Histogram;
use crate::stochastic::inverse_clock::sample_inverse_clock;
use crate::stochastic::processes::{sample_telegraph, ProcessSampler};
use crate::stochastic::rng::RngStream;
use crate::symbols::{process_for_symbol, FracParams, SpectralSymbol};
use rayon::prelude::*;
use serde::Serialize;

/// Fixed block count of the deterministic split layout.
pub const MC_BLOCKS: usize = 64;

/// Monte Carlo mean and standard error per grid point.
#[derive(Debug, Clone, Serialize)]
pub struct McField {
    pub grid: Vec<f64>,
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
    pub n: usize,
    pub seed: u64,
    pub stream_id: u64,
    pub blocks: usize,
}

struct BlockSums {
    sum: Vec<f64>,
    sumsq: Vec<f64>,
    n: usize,
}

/// Run `per_sample` n times over the fixed block layout; the closure fills
/// one value per grid point into its scratch slice.
pub fn mc_field_estimate<F>(
    grid_len: usize,
    grid: Vec<f64>,
    n: usize,
    rng: &RngStream,
    per_sample: F,
) -> Result<McField>
where
    F: Fn(&mut RngStream, &mut [f64]) -> Result<()> + Sync,
{
    if n < 100 {
        return Err(CoreError::InvalidConfig(format!(
            "Monte Carlo estimators need n >= 100, got {n}"
        )));
    }
    let blocks: Vec<Result<BlockSums>> = (0..MC_BLOCKS)
        .into_par_iter()
        .map(|b| {
            let mut stream = rng.child(b as u64);
            let n_b = n / MC_BLOCKS + usize::from(b < n % MC_BLOCKS);
            let mut sum = vec![0.0; grid_len];
            let mut sumsq = vec![0.0; grid_len];
            let mut scratch = vec![0.0; grid_len];
            for _ in 0..n_b {
                per_sample(&mut stream, &mut scratch)?;
                for (i, v) in scratch.iter().enumerate() {
                    sum[i] += v;
                    sumsq[i] += v * v;
                }
            }
            Ok(BlockSums { sum, sumsq, n: n_b })
        })
        .collect();

    // merge in block order (fixed, associative)
    let mut sum = vec![0.0; grid_len];
    let mut sumsq = vec![0.0; grid_len];
    let mut total = 0usize;
    for b in blocks {
        let b = b?;
        for i in 0..grid_len {
            sum[i] += b.sum[i];
            sumsq[i] += b.sumsq[i];
        }
        total += b.n;
    }
    debug_assert_eq!(total, n);
    let nf = total as f64;
    let mean: Vec<f64> = sum.iter().map(|s| s / nf).collect();
    let stderr: Vec<f64> = sumsq
        .iter()
        .zip(mean.iter())
        .map(|(sq, m)| {
            let var = ((sq - nf * m * m) / (nf - 1.0)).max(0.0);
            (var / nf).sqrt()
        })
        .collect();
    Ok(McField {
        grid,
        mean,
        stderr,
        n: total,
        seed: rng.seed(),
        stream_id: rng.stream_id(),
        blocks: MC_BLOCKS,
    })
}

/// Monte Carlo route for the fractional telegraph equation (α ≤ 1/2):
/// per sample draw the inverse clock L, then X(L) for the symbol's process,
/// and average f(x + X) over the grid of evaluation points.
pub fn mc_solve_telegraph(
    p: &FracParams,
    sym: &SpectralSymbol,
    f: &InitialCondition,
    xgrid: &[f64],
    d: usize,
    t: f64,
    n: usize,
    rng: &RngStream,
    tol_l: f64,
) -> Result<McField> {
    if !p.stochastic_regime() {
        return Err(CoreError::Unsupported(format!(
            "Monte Carlo telegraph route requires alpha <= 1/2, got {}",
            p.alpha
        )));
    }
    if matches!(f, InitialCondition::Delta) {
        return Err(CoreError::InvalidConfig(
            "delta initial data needs the histogram mode, not pointwise estimation".to_string(),
        ));
    }
    f.validate()?;
    if t == 0.0 {
        let mean: Vec<f64> = xgrid
            .iter()
            .map(|&x| f.eval_radial(x.abs(), d))
            .collect::<Result<_>>()?;
        return Ok(McField {
            grid: xgrid.to_vec(),
            mean,
            stderr: vec![0.0; xgrid.len()],
            n,
            seed: rng.seed(),
            stream_id: rng.stream_id(),
            blocks: MC_BLOCKS,
        });
    }
    let kind = process_for_symbol(sym, d)?;

    let blocks: Vec<Result<BlockSums>> = (0..MC_BLOCKS)
        .into_par_iter()
        .map(|b| {
            let mut stream = rng.child(b as u64);
            let n_b = n / MC_BLOCKS + usize::from(b < n % MC_BLOCKS);
            // clocks first: table-backed samplers need the realized range
            let clocks: Vec<f64> = (0..n_b)
                .map(|_| sample_inverse_clock(p, t, &mut stream, tol_l))
                .collect::<Result<_>>()?;
            let (lo, hi) = clocks
                .iter()
                .fold((f64::INFINITY, 0.0f64), |(lo, hi), &c| (lo.min(c), hi.max(c)));
            let sampler = ProcessSampler::new(kind, (lo.min(hi), hi.max(lo)))?;
            let mut sum = vec![0.0; xgrid.len()];
            let mut sumsq = vec![0.0; xgrid.len()];
            for &l in &clocks {
                let x = sampler.sample(l, &mut stream)?;
                for (i, &x0) in xgrid.iter().enumerate() {
                    let mut head = x[0] + x0;
                    let rho = if d == 1 {
                        head.abs()
                    } else {
                        let tail: f64 = x[1..].iter().map(|v| v * v).sum();
                        head = head * head;
                        (head + tail).sqrt()
                    };
                    let v = f.eval_radial(rho, d)?;
                    sum[i] += v;
                    sumsq[i] += v * v;
                }
            }
            Ok(BlockSums { sum, sumsq, n: n_b })
        })
        .collect();
    merge_blocks(blocks, xgrid.to_vec(), n, rng)
}

fn merge_blocks(
    blocks: Vec<Result<BlockSums>>,
    grid: Vec<f64>,
    n: usize,
    rng: &RngStream,
) -> Result<McField> {
    let grid_len = grid.len();
    let mut sum = vec![0.0; grid_len];
    let mut sumsq = vec![0.0; grid_len];
    let mut total = 0usize;
    for b in blocks {
        let b = b?;
        for i in 0..grid_len {
            sum[i] += b.sum[i];
            sumsq[i] += b.sumsq[i];
        }
        total += b.n;
    }
    debug_assert_eq!(total, n);
    let nf = total as f64;
    let mean: Vec<f64> = sum.iter().map(|s| s / nf).collect();
    let stderr: Vec<f64> = sumsq
        .iter()
        .zip(mean.iter())
        .map(|(sq, m)| {
            let var = ((sq - nf * m * m) / (nf - 1.0)).max(0.0);
            (var / nf).sqrt()
        })
        .collect();
    Ok(McField {
        grid,
        mean,
        stderr,
        n: total,
        seed: rng.seed(),
        stream_id: rng.stream_id(),
        blocks: MC_BLOCKS,
    })
}

/// Histogram mode of the Monte Carlo telegraph route (delta initial data):
/// binned law of X(L^α(t)) started at the origin.
pub fn mc_telegraph_histogram(
    p: &FracParams,
    sym: &SpectralSymbol,
    t: f64,
    n: usize,
    rng: &RngStream,
    tol_l: f64,
) -> Result<Histogram> {
    if !p.stochastic_regime() {
        return Err(CoreError::Unsupported(format!(
            "Monte Carlo telegraph route requires alpha <= 1/2, got {}",
            p.alpha
        )));
    }
    let kind = process_for_symbol(sym, 1)?;
    let per_block: Vec<Result<Vec<f64>>> = (0..MC_BLOCKS)
        .into_par_iter()
        .map(|b| {
            let mut stream = rng.child(b as u64);
            let n_b = n / MC_BLOCKS + usize::from(b < n % MC_BLOCKS);
            let clocks: Vec<f64> = (0..n_b)
                .map(|_| sample_inverse_clock(p, t, &mut stream, tol_l))
                .collect::<Result<_>>()?;
            let (lo, hi) = clocks
                .iter()
                .fold((f64::INFINITY, 0.0f64), |(lo, hi), &c| (lo.min(c), hi.max(c)));
            let sampler = ProcessSampler::new(kind, (lo.min(hi), hi.max(lo)))?;
            clocks
                .iter()
                .map(|&l| Ok(sampler.sample(l, &mut stream)?[0]))
                .collect()
        })
        .collect();
    let mut draws = Vec::with_capacity(n);
    for block in per_block {
        draws.extend(block?);
    }
    Histogram::from_draws(&draws, 0, 0)
}

/// One draw of the half-time law T(|B(t)|) together with its boundary flag
/// (no direction switch occurred, so the position sits at ± the clock).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HalftimeDraw {
    pub position: f64,
    pub at_boundary: bool,
}

/// Samples of T(|B(t)|): a rate-λ telegraph motion run for an independent
/// half-normal duration with density (πt)^{-1/2} e^{-z²/4t}.
pub fn sample_halftime_law(
    lambda: f64,
    t: f64,
    n: usize,
    rng: &RngStream,
) -> Result<Vec<HalftimeDraw>> {
    if !(lambda > 0.0 && t > 0.0) {
        return Err(CoreError::Domain(format!(
            "halftime law requires lambda > 0 and t > 0, got {lambda}, {t}"
        )));
    }
    let per_block: Vec<Result<Vec<HalftimeDraw>>> = (0..MC_BLOCKS)
        .into_par_iter()
        .map(|b| {
            let mut stream = rng.child(b as u64);
            let n_b = n / MC_BLOCKS + usize::from(b < n % MC_BLOCKS);
            let mut out = Vec::with_capacity(n_b);
            for _ in 0..n_b {
                // |B(t)| with variance 2t
                let clock = ((2.0 * t).sqrt() * stream.standard_normal()).abs().max(1e-300);
                let position = sample_telegraph(lambda, clock, &mut stream);
                out.push(HalftimeDraw {
                    position,
                    at_boundary: position.abs() >= clock - 1e-14 * clock,
                });
            }
            Ok(out)
        })
        .collect();
    let mut draws = Vec::with_capacity(n);
    for block in per_block {
        draws.extend(block?);
    }
    Ok(draws)
}

/// Binned density of the half-time law, boundary draws reported as separate
/// point masses.
pub fn mc_solve_halftime(lambda: f64, t: f64, n: usize, rng: &RngStream) -> Result<Histogram> {
    let draws = sample_halftime_law(lambda, t, n, rng)?;
    let mut continuous = Vec::with_capacity(draws.len());
    let (mut atom_pos, mut atom_neg) = (0u64, 0u64);
    for d in &draws {
        if d.at_boundary {
            if d.position >= 0.0 {
                atom_pos += 1;
            } else {
                atom_neg += 1;
            }
        } else {
            continuous.push(d.position);
        }
    }
    Histogram::from_draws(&continuous, atom_pos, atom_neg)
}

/// Raw draws under the fixed block layout (used by histogram builders; the
/// per-block vectors are concatenated in block order).
pub fn collect_block_draws<F>(n: usize, rng: &RngStream, draw: F) -> Result<Vec<f64>>
where
    F: Fn(&mut RngStream) -> Result<f64> + Sync,
{
    let per_block: Vec<Result<Vec<f64>>> = (0..MC_BLOCKS)
        .into_par_iter()
        .map(|b| {
            let mut stream = rng.child(b as u64);
            let n_b = n / MC_BLOCKS + usize::from(b < n % MC_BLOCKS);
            (0..n_b).map(|_| draw(&mut stream)).collect()
        })
        .collect();
    let mut draws = Vec::with_capacity(n);
    for block in per_block {
        draws.extend(block?);
    }
    Ok(draws)
}
