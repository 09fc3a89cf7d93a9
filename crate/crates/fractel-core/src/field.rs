//! Solution fields on spatial grids, initial conditions, and their CSV
//! serialization.

use crate::error::{CoreError, Result};
use serde::{Deserialize, Serialize};

/// Which evaluation route produced a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Analytic,
    LaplaceCheck,
    MonteCarlo,
    EpdBessel,
    EpdEk,
    EpdBeta,
    EpdSeries,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Analytic => "analytic",
            Route::LaplaceCheck => "laplace-check",
            Route::MonteCarlo => "monte-carlo",
            Route::EpdBessel => "epd-bessel",
            Route::EpdEk => "epd-ek",
            Route::EpdBeta => "epd-beta",
            Route::EpdSeries => "epd-series",
        }
    }

    pub fn parse(s: &str) -> Result<Route> {
        Ok(match s {
            "analytic" => Route::Analytic,
            "laplace-check" => Route::LaplaceCheck,
            "monte-carlo" => Route::MonteCarlo,
            "epd-bessel" => Route::EpdBessel,
            "epd-ek" => Route::EpdEk,
            "epd-beta" => Route::EpdBeta,
            "epd-series" => Route::EpdSeries,
            other => {
                return Err(CoreError::InvalidConfig(format!("unknown route '{other}'")))
            }
        })
    }
}

/// Initial datum f of the Cauchy problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum InitialCondition {
    /// Point mass at the origin; handled symbolically (solutions return the
    /// fundamental kernel itself, never a discretized spike).
    Delta,
    /// Normalized Gaussian density with the given center and width.
    Gaussian { center: f64, width: f64 },
    /// Indicator of the interval [a, b] (one-dimensional problems).
    Indicator { a: f64, b: f64 },
    /// Piecewise-linear interpolant of tabulated values, zero outside.
    Tabulated { grid: Vec<f64>, values: Vec<f64> },
}

impl InitialCondition {
    pub fn validate(&self) -> Result<()> {
        match self {
            InitialCondition::Delta => Ok(()),
            InitialCondition::Gaussian { width, center } => {
                if !width.is_finite() || *width <= 0.0 || !center.is_finite() {
                    Err(CoreError::InvalidConfig(format!(
                        "gaussian initial condition requires finite center and width > 0, \
                         got center = {center}, width = {width}"
                    )))
                } else {
                    Ok(())
                }
            }
            InitialCondition::Indicator { a, b } => {
                if !(a.is_finite() && b.is_finite() && a < b) {
                    Err(CoreError::InvalidConfig(format!(
                        "indicator initial condition requires a < b, got [{a}, {b}]"
                    )))
                } else {
                    Ok(())
                }
            }
            InitialCondition::Tabulated { grid, values } => {
                if grid.len() != values.len() || grid.len() < 2 {
                    return Err(CoreError::InvalidConfig(
                        "tabulated initial condition needs matching grid/values of length >= 2"
                            .to_string(),
                    ));
                }
                if !grid.windows(2).all(|w| w[0] < w[1]) {
                    return Err(CoreError::InvalidConfig(
                        "tabulated grid must be strictly increasing".to_string(),
                    ));
                }
                if !values.iter().all(|v| v.is_finite()) {
                    return Err(CoreError::InvalidConfig(
                        "tabulated values must be finite".to_string(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Pointwise evaluation at a 1-D coordinate (delta is not evaluable).
    pub fn eval_1d(&self, x: f64) -> Result<f64> {
        match self {
            InitialCondition::Delta => Err(CoreError::Unsupported(
                "delta initial condition is not pointwise evaluable".to_string(),
            )),
            InitialCondition::Gaussian { center, width } => {
                let u = (x - center) / width;
                Ok((-0.5 * u * u).exp() / (width * (2.0 * std::f64::consts::PI).sqrt()))
            }
            InitialCondition::Indicator { a, b } => {
                Ok(if x >= *a && x <= *b { 1.0 } else { 0.0 })
            }
            InitialCondition::Tabulated { grid, values } => {
                if x < grid[0] || x > *grid.last().unwrap() {
                    return Ok(0.0);
                }
                let i = match grid.binary_search_by(|g| g.partial_cmp(&x).unwrap()) {
                    Ok(i) => return Ok(values[i]),
                    Err(i) => i,
                };
                let (x0, x1) = (grid[i - 1], grid[i]);
                let w = (x - x0) / (x1 - x0);
                Ok(values[i - 1] * (1.0 - w) + values[i] * w)
            }
        }
    }

    /// Radial evaluation in d dimensions at distance rho from the origin.
    /// Gaussian data must be centered for d ≥ 2.
    pub fn eval_radial(&self, rho: f64, d: usize) -> Result<f64> {
        if d == 1 {
            return self.eval_1d(rho);
        }
        match self {
            InitialCondition::Gaussian { center, width } => {
                if *center != 0.0 {
                    return Err(CoreError::Unsupported(
                        "non-centered gaussian data is not radial in d >= 2".to_string(),
                    ));
                }
                let w2 = width * width;
                let norm = (2.0 * std::f64::consts::PI * w2).powf(-(d as f64) / 2.0);
                Ok(norm * (-0.5 * rho * rho / w2).exp())
            }
            InitialCondition::Delta => Err(CoreError::Unsupported(
                "delta initial condition is not pointwise evaluable".to_string(),
            )),
            _ => Err(CoreError::Unsupported(
                "only gaussian (or delta) initial data is supported for d >= 2".to_string(),
            )),
        }
    }
}

/// A solution u(t, ·) sampled on a spatial (radial or 1-D) grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionField {
    pub d: usize,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub t: f64,
    pub route: Route,
    /// Quadrature / truncation notes accumulated while building the field.
    #[serde(default)]
    pub diagnostics: Vec<String>,
}

impl SolutionField {
    pub fn new(d: usize, grid: Vec<f64>, values: Vec<f64>, t: f64, route: Route) -> Result<Self> {
        if grid.len() != values.len() || grid.len() < 2 {
            return Err(CoreError::InvalidConfig(
                "field grid/values must have equal length >= 2".to_string(),
            ));
        }
        if !grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(CoreError::InvalidConfig(
                "field grid must be strictly increasing".to_string(),
            ));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(CoreError::InvalidConfig(
                "field values must be finite".to_string(),
            ));
        }
        Ok(SolutionField {
            d,
            grid,
            values,
            t,
            route,
            diagnostics: Vec::new(),
        })
    }

    /// CSV serialization: one metadata header line, then `x,value` rows with
    /// 17 significant digits (bit-faithful f64 round trips).
    pub fn to_csv(&self, equation: &str, params: &str, symbol: &str) -> String {
        let mut out = format!(
            "# route={},d={},t={},equation={},{},symbol={}\n",
            self.route.as_str(),
            self.d,
            fmt_g17(self.t),
            equation,
            params,
            symbol
        );
        out.push_str("x,value\n");
        for (x, v) in self.grid.iter().zip(self.values.iter()) {
            out.push_str(&format!("{},{}\n", fmt_g17(*x), fmt_g17(*v)));
        }
        out
    }
}

/// Format with 17 significant digits.
pub fn fmt_g17(v: f64) -> String {
    format!("{v:.16e}")
}
