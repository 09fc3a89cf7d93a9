//! JSON run configuration: one document describing the problem, routes and
//! Monte Carlo settings. All physical parameters are dimensionless.

use fractel_core::epd::{EigenSystem, EpdParams};
use fractel_core::{CoreError, FracParams, InitialCondition, Result, SpectralSymbol};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub equation: Equation,
    /// (α, λ) for the telegraph equation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frac: Option<FracParamsCfg>,
    /// λ for the EPD equation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_epd: Option<f64>,
    pub symbol: SpectralSymbol,
    pub initial: InitialCondition,
    #[serde(default = "default_dimension")]
    pub dimension: usize,
    pub grid: GridSpec,
    pub times: Vec<f64>,
    #[serde(default)]
    pub routes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc: Option<McSettings>,
    /// Discrete eigen-system for series solves (optional).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigen: Option<EigenSystem>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    Telegraph,
    Epd,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct FracParamsCfg {
    pub alpha: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct McSettings {
    pub n: usize,
    /// Mandatory explicit seed: every run must be replayable.
    pub seed: u64,
    #[serde(default = "default_stream")]
    pub stream_id: u64,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default = "default_tol_l")]
    pub tol_l: f64,
}

fn default_dimension() -> usize {
    1
}

fn default_stream() -> u64 {
    0
}

fn default_workers() -> usize {
    1
}

fn default_tol_l() -> f64 {
    1e-4
}

impl GridSpec {
    pub fn materialize(&self) -> Result<Vec<f64>> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(CoreError::InvalidConfig(format!(
                "grid requires min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.points < 2 {
            return Err(CoreError::InvalidConfig(
                "grid needs at least 2 points".to_string(),
            ));
        }
        let h = (self.max - self.min) / (self.points - 1) as f64;
        Ok((0..self.points).map(|i| self.min + i as f64 * h).collect())
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig> {
        let cfg: RunConfig = serde_json::from_str(text)
            .map_err(|e| CoreError::InvalidConfig(format!("config parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    #[allow(dead_code)] // round-trip surface, exercised by the config tests
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.symbol.validate()?;
        self.initial.validate()?;
        self.frac_params()?;
        if self.equation == Equation::Epd {
            let lam = self.lambda_epd.ok_or_else(|| {
                CoreError::InvalidConfig("EPD runs require `lambda_epd`".to_string())
            })?;
            EpdParams::new(lam, self.symbol, self.dimension)?;
        }
        if self.dimension == 0 {
            return Err(CoreError::InvalidConfig(
                "dimension must be >= 1".to_string(),
            ));
        }
        self.grid.materialize()?;
        if self.times.is_empty() || !self.times.iter().all(|t| t.is_finite() && *t >= 0.0) {
            return Err(CoreError::InvalidConfig(
                "`times` must be a nonempty list of t >= 0".to_string(),
            ));
        }
        if let Some(mc) = &self.mc {
            if mc.n < 100 {
                return Err(CoreError::InvalidConfig(
                    "mc.n must be at least 100".to_string(),
                ));
            }
            if mc.workers == 0 {
                return Err(CoreError::InvalidConfig(
                    "mc.workers must be >= 1".to_string(),
                ));
            }
            if !(mc.tol_l > 0.0) {
                return Err(CoreError::InvalidConfig(
                    "mc.tol_l must be positive".to_string(),
                ));
            }
        }
        if let Some(e) = &self.eigen {
            e.validate()?;
        }
        Ok(())
    }

    /// Telegraph parameters with range validation (None for EPD-only runs).
    pub fn frac_params(&self) -> Result<Option<FracParams>> {
        match (self.equation, &self.frac) {
            (Equation::Telegraph, Some(f)) => Ok(Some(FracParams::new(f.alpha, f.lambda)?)),
            (Equation::Telegraph, None) => Err(CoreError::InvalidConfig(
                "telegraph runs require `frac: { alpha, lambda }`".to_string(),
            )),
            (Equation::Epd, _) => Ok(None),
        }
    }

    pub fn epd_params(&self) -> Result<EpdParams> {
        let lam = self
            .lambda_epd
            .ok_or_else(|| CoreError::InvalidConfig("EPD runs require `lambda_epd`".to_string()))?;
        EpdParams::new(lam, self.symbol, self.dimension)
    }
}
