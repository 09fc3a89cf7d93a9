//! Samplers for the Lévy marginals X(t) associated with each spectral
//! symbol, plus the finite-velocity telegraph processes.
//!
//! Conventions: the heat multiplier is e^{-t m(‖ξ‖)}, so "Brownian motion"
//! means B(2t) (variance 2t per coordinate) and every subordinated family is
//! B_d(2·clock).

use crate::error::{CoreError, Result};
use crate::stochastic::bessel_riesz::BesselRieszSampler;
use crate::stochastic::rng::RngStream;
use crate::stochastic::stable::sample_stable_subordinator;

/// Identity of a Markov process paired with a generator −A (or a telegraph
/// motion for the α = 1/2 representations).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProcessKind {
    Brownian { d: usize },
    IsotropicStable { d: usize, beta: f64 },
    BesselRiesz { d: usize, beta: f64, gamma: f64 },
    Relativistic { d: usize, nu: f64, mass: f64 },
    Telegraph { lambda: f64 },
    InhomTelegraph { lambda: f64, eps: f64 },
}

impl ProcessKind {
    pub fn dimension(&self) -> usize {
        match *self {
            ProcessKind::Brownian { d }
            | ProcessKind::IsotropicStable { d, .. }
            | ProcessKind::BesselRiesz { d, .. }
            | ProcessKind::Relativistic { d, .. } => d,
            ProcessKind::Telegraph { .. } | ProcessKind::InhomTelegraph { .. } => 1,
        }
    }
}

/// Reusable sampler; Bessel-Riesz builds its quantile tables once for the
/// declared clock range instead of per draw.
pub struct ProcessSampler {
    kind: ProcessKind,
    briesz: Option<BesselRieszSampler>,
}

impl ProcessSampler {
    /// `t_range` is the closed range of clock times the sampler will be
    /// queried at (a single instant is the pair (t, t)).
    pub fn new(kind: ProcessKind, t_range: (f64, f64)) -> Result<Self> {
        let briesz = match kind {
            ProcessKind::BesselRiesz { beta, gamma, .. } => Some(BesselRieszSampler::build(
                beta,
                gamma,
                t_range.0,
                t_range.1,
            )?),
            ProcessKind::Relativistic { nu, mass, .. } => {
                if !(nu > 0.0 && nu < 2.0 && mass > 0.0) {
                    return Err(CoreError::Domain(format!(
                        "relativistic process requires nu in (0,2), mass > 0; got {nu}, {mass}"
                    )));
                }
                if mass * t_range.1 > 20.0 {
                    return Err(CoreError::Unsupported(format!(
                        "relativistic rejection sampler needs mass*t <= 20, got {}",
                        mass * t_range.1
                    )));
                }
                None
            }
            ProcessKind::IsotropicStable { beta, .. } => {
                if !(beta > 0.0 && beta <= 2.0) {
                    return Err(CoreError::Domain(format!(
                        "isotropic stable requires beta in (0,2], got {beta}"
                    )));
                }
                None
            }
            _ => None,
        };
        Ok(ProcessSampler { kind, briesz })
    }

    pub fn kind(&self) -> ProcessKind {
        self.kind
    }

    /// One draw of X(t) (length-d vector; telegraph kinds return length 1).
    pub fn sample(&self, t: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
        if !(t.is_finite() && t > 0.0) {
            return Err(CoreError::Domain(format!(
                "process sample requires t > 0, got {t}"
            )));
        }
        match self.kind {
            ProcessKind::Brownian { d } => Ok(gaussian_vector(d, 2.0 * t, rng)),
            ProcessKind::IsotropicStable { d, beta } => {
                if beta >= 2.0 {
                    return Ok(gaussian_vector(d, 2.0 * t, rng));
                }
                let s = sample_stable_subordinator(0.5 * beta, t, rng)?;
                Ok(gaussian_vector(d, 2.0 * s, rng))
            }
            ProcessKind::BesselRiesz { d, .. } => {
                let table = self.briesz.as_ref().expect("table built in new()");
                let l = table.sample(t, rng)?;
                Ok(gaussian_vector(d, 2.0 * l, rng))
            }
            ProcessKind::Relativistic { d, nu, mass } => {
                let clock = sample_relativistic_clock(nu, mass, t, rng)?;
                Ok(gaussian_vector(d, 2.0 * clock, rng))
            }
            ProcessKind::Telegraph { lambda } => Ok(vec![sample_telegraph(lambda, t, rng)]),
            ProcessKind::InhomTelegraph { lambda, eps } => {
                Ok(vec![sample_telegraph_inhomogeneous(lambda, eps, t, rng)?])
            }
        }
    }
}

/// Convenience one-shot draw (builds throwaway tables for Bessel-Riesz —
/// prefer `ProcessSampler` in loops).
pub fn sample_process(kind: ProcessKind, t: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
    ProcessSampler::new(kind, (t, t))?.sample(t, rng)
}

fn gaussian_vector(d: usize, variance: f64, rng: &mut RngStream) -> Vec<f64> {
    let sd = variance.sqrt();
    (0..d).map(|_| sd * rng.standard_normal()).collect()
}

/// Relativistic clock T(t) with E[e^{-u T}] = e^{-t((m^{2/ν}+u)^{ν/2} - m)}:
/// exponential tilting of the ν/2-stable subordinator by rejection. The
/// acceptance rate is e^{-mass·t}.
fn sample_relativistic_clock(nu: f64, mass: f64, t: f64, rng: &mut RngStream) -> Result<f64> {
    if mass * t > 20.0 {
        return Err(CoreError::Unsupported(format!(
            "relativistic rejection sampler needs mass*t <= 20, got {}",
            mass * t
        )));
    }
    let tilt = mass.powf(2.0 / nu);
    let budget = (200.0 * (mass * t).exp()).ceil() as usize + 1000;
    for _ in 0..budget {
        let s = sample_stable_subordinator(0.5 * nu, t, rng)?;
        if rng.uniform_open() < (-tilt * s).exp() {
            return Ok(s);
        }
    }
    Err(CoreError::Budget(format!(
        "relativistic rejection did not accept within {budget} attempts (mass*t = {})",
        mass * t
    )))
}

/// Homogeneous telegraph position T(t) = V(0) ∫_0^t (-1)^{N(s)} ds with
/// rate-λ switches and V(0) = ±1 equiprobable. Exact between switches.
pub fn sample_telegraph(lambda: f64, t: f64, rng: &mut RngStream) -> f64 {
    debug_assert!(lambda >= 0.0 && t > 0.0);
    let v0 = if rng.uniform_open() < 0.5 { 1.0 } else { -1.0 };
    v0 * telegraph_integral(t, &mut |r: &mut RngStream| r.exponential() / lambda, rng)
}

/// Inhomogeneous telegraph with rate λ/(s+ε), started upward. Event times
/// invert Λ(s) = λ log((s+ε)/ε) against unit-exponential arrivals.
pub fn sample_telegraph_inhomogeneous(
    lambda: f64,
    eps: f64,
    t: f64,
    rng: &mut RngStream,
) -> Result<f64> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(CoreError::Domain(format!(
            "inhomogeneous telegraph requires eps > 0, got {eps}"
        )));
    }
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(CoreError::Domain(format!(
            "inhomogeneous telegraph requires lambda >= 0, got {lambda}"
        )));
    }
    if lambda == 0.0 {
        return Ok(t);
    }
    // cumulative hazard so far is Λ(s); next event at Λ^{-1}(Λ(s) + E)
    let mut position = 0.0;
    let mut velocity = 1.0;
    let mut s = 0.0;
    loop {
        let next = (s + eps) * (rng.exponential() / lambda).exp() - eps;
        if next >= t {
            position += velocity * (t - s);
            return Ok(position);
        }
        position += velocity * (next - s);
        velocity = -velocity;
        s = next;
    }
}

fn telegraph_integral(
    t: f64,
    next_gap: &mut dyn FnMut(&mut RngStream) -> f64,
    rng: &mut RngStream,
) -> f64 {
    let mut position = 0.0;
    let mut velocity = 1.0;
    let mut s = 0.0;
    loop {
        let gap = next_gap(rng);
        if s + gap >= t {
            position += velocity * (t - s);
            return position;
        }
        position += velocity * gap;
        velocity = -velocity;
        s += gap;
    }
}
