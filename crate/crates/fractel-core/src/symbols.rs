//! Catalog of isotropic spectral symbols m(‖ξ‖) and the Lévy processes they
//! generate.
//!
//! Each symbol defines the positive operator A through `A^ = m(‖ξ‖)·` in the
//! Fourier domain; e^{-t m} is then the transition multiplier of the
//! associated process, which the Monte Carlo routes sample.

use crate::error::{CoreError, Result};
use crate::stochastic::ProcessKind;
use serde::{Deserialize, Serialize};

/// Isotropic multiplier m(‖ξ‖) identifying the operator A.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralSymbol {
    /// m(r) = r², generator of Brownian motion (variance 2t per coordinate).
    Laplacian,
    /// m(r) = r^β, β ∈ (0, 2], generator of the isotropic stable process.
    FractionalLaplacian { beta: f64 },
    /// m(r) = r^β (1 + r²)^{γ/2}, β ∈ (0, 2], γ ≥ 0.
    BesselRiesz { beta: f64, gamma: f64 },
    /// m(r) = (mass^{2/ν} + r²)^{ν/2} − mass, ν ∈ (0, 2), mass > 0.
    Relativistic { nu: f64, mass: f64 },
}

impl SpectralSymbol {
    pub fn laplacian() -> Self {
        SpectralSymbol::Laplacian
    }

    pub fn fractional_laplacian(beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta <= 0.0 || beta > 2.0 {
            return Err(CoreError::Domain(format!(
                "fractional Laplacian requires beta in (0, 2], got {beta}"
            )));
        }
        Ok(SpectralSymbol::FractionalLaplacian { beta })
    }

    pub fn bessel_riesz(beta: f64, gamma: f64) -> Result<Self> {
        if !beta.is_finite() || beta <= 0.0 || beta > 2.0 {
            return Err(CoreError::Domain(format!(
                "Bessel-Riesz requires beta in (0, 2], got {beta}"
            )));
        }
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(CoreError::Domain(format!(
                "Bessel-Riesz requires gamma >= 0, got {gamma}"
            )));
        }
        Ok(SpectralSymbol::BesselRiesz { beta, gamma })
    }

    pub fn relativistic(nu: f64, mass: f64) -> Result<Self> {
        if !nu.is_finite() || nu <= 0.0 || nu >= 2.0 {
            return Err(CoreError::Domain(format!(
                "relativistic symbol requires nu in (0, 2), got {nu}"
            )));
        }
        if !mass.is_finite() || mass <= 0.0 {
            return Err(CoreError::Domain(format!(
                "relativistic symbol requires mass > 0, got {mass}"
            )));
        }
        Ok(SpectralSymbol::Relativistic { nu, mass })
    }

    /// Validate parameter ranges (used after deserializing configs).
    pub fn validate(&self) -> Result<()> {
        match *self {
            SpectralSymbol::Laplacian => Ok(()),
            SpectralSymbol::FractionalLaplacian { beta } => {
                Self::fractional_laplacian(beta).map(|_| ())
            }
            SpectralSymbol::BesselRiesz { beta, gamma } => {
                Self::bessel_riesz(beta, gamma).map(|_| ())
            }
            SpectralSymbol::Relativistic { nu, mass } => Self::relativistic(nu, mass).map(|_| ()),
        }
    }

    /// True when the Bessel-Riesz sampler restriction β + γ ≤ 2 holds
    /// (vacuously true for the other kinds).
    pub fn sampler_supported(&self) -> bool {
        match *self {
            SpectralSymbol::BesselRiesz { beta, gamma } => beta + gamma <= 2.0,
            _ => true,
        }
    }

    /// The relativistic propositions are stated for ν ≤ 1; larger ν is
    /// accepted but flagged so front ends can surface a diagnostic.
    pub fn outside_proposition_range(&self) -> bool {
        matches!(*self, SpectralSymbol::Relativistic { nu, .. } if nu > 1.0)
    }

    /// Short human-readable description for CSV headers and manifests.
    pub fn describe(&self) -> String {
        match *self {
            SpectralSymbol::Laplacian => "laplacian".to_string(),
            SpectralSymbol::FractionalLaplacian { beta } => {
                format!("fractional_laplacian(beta={beta})")
            }
            SpectralSymbol::BesselRiesz { beta, gamma } => {
                format!("bessel_riesz(beta={beta},gamma={gamma})")
            }
            SpectralSymbol::Relativistic { nu, mass } => {
                format!("relativistic(nu={nu},mass={mass})")
            }
        }
    }
}

/// m(r) for r ≥ 0; nonnegative and nondecreasing for every catalog member.
pub fn evaluate_symbol(sym: &SpectralSymbol, r: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 {
        return Err(CoreError::Domain(format!(
            "evaluate_symbol requires r >= 0, got {r}"
        )));
    }
    Ok(match *sym {
        SpectralSymbol::Laplacian => r * r,
        SpectralSymbol::FractionalLaplacian { beta } => r.powf(beta),
        SpectralSymbol::BesselRiesz { beta, gamma } => {
            r.powf(beta) * (1.0 + r * r).powf(0.5 * gamma)
        }
        SpectralSymbol::Relativistic { nu, mass } => {
            (mass.powf(2.0 / nu) + r * r).powf(0.5 * nu) - mass
        }
    })
}

/// The Markov process generated by −A, for Monte Carlo sampling in
/// dimension `d`.
pub fn process_for_symbol(sym: &SpectralSymbol, d: usize) -> Result<ProcessKind> {
    if d == 0 {
        return Err(CoreError::Domain("dimension must be >= 1".to_string()));
    }
    match *sym {
        SpectralSymbol::Laplacian => Ok(ProcessKind::Brownian { d }),
        SpectralSymbol::FractionalLaplacian { beta } => {
            Ok(ProcessKind::IsotropicStable { d, beta })
        }
        SpectralSymbol::BesselRiesz { beta, gamma } => {
            if beta + gamma > 2.0 {
                return Err(CoreError::Unsupported(format!(
                    "Bessel-Riesz sampler requires beta + gamma <= 2, got {}",
                    beta + gamma
                )));
            }
            Ok(ProcessKind::BesselRiesz { d, beta, gamma })
        }
        SpectralSymbol::Relativistic { nu, mass } => Ok(ProcessKind::Relativistic { d, nu, mass }),
    }
}

/// Parameters (α, λ) of the time-fractional telegraph equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracParams {
    pub alpha: f64,
    pub lambda: f64,
}

impl FracParams {
    pub fn new(alpha: f64, lambda: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha > 1.0 {
            return Err(CoreError::Domain(format!(
                "FracParams requires alpha in (0, 1], got {alpha}"
            )));
        }
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(CoreError::Domain(format!(
                "FracParams requires lambda > 0, got {lambda}"
            )));
        }
        Ok(FracParams { alpha, lambda })
    }

    /// α ≤ 1/2, the regime in which the inverse-clock stochastic
    /// representation is available.
    pub fn stochastic_regime(&self) -> bool {
        self.alpha <= 0.5
    }
}
