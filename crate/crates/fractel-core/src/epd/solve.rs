//! EPD solution fields: frequency-domain multiplication with the selected
//! kernel evaluator followed by Hankel inversion, plus the discrete-spectrum
//! eigen-series solver.

use crate::analytic::hankel_inverse;
use crate::epd::kernels::{epd_hat_bessel, epd_hat_ek, wave_hat};
use crate::epd::mc::beta_mixed_kernel;
use crate::error::{CoreError, Result};
use crate::field::{InitialCondition, Route, SolutionField};
use crate::stochastic::RngStream;
use crate::symbols::{evaluate_symbol, SpectralSymbol};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const HANKEL_TOL: f64 = 1e-9;

/// Parameters of the abstract EPD problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpdParams {
    pub lambda_epd: f64,
    pub symbol: SpectralSymbol,
    pub d: usize,
}

impl EpdParams {
    pub fn new(lambda_epd: f64, symbol: SpectralSymbol, d: usize) -> Result<Self> {
        if !(lambda_epd.is_finite() && lambda_epd > 0.0) {
            return Err(CoreError::Domain(format!(
                "EpdParams requires lambda > 0, got {lambda_epd}"
            )));
        }
        if d == 0 {
            return Err(CoreError::Domain("dimension must be >= 1".to_string()));
        }
        symbol.validate()?;
        Ok(EpdParams { lambda_epd, symbol, d })
    }
}

/// Kernel evaluator selection for `solve_epd`.
#[derive(Debug, Clone)]
pub enum EpdRoute {
    /// Closed Bessel form (default).
    Bessel,
    /// Erdélyi-Kober quadrature of the wave kernel.
    ErdelyiKober,
    /// Beta-subordination Monte Carlo of the wave kernel with shared draws.
    BetaMc { n: usize, rng: RngStream },
    /// cos(t√m): the pure wave evolution (λ → 0 comparison mode).
    Wave,
}

impl EpdRoute {
    fn route_tag(&self) -> Route {
        match self {
            EpdRoute::Bessel | EpdRoute::Wave => Route::EpdBessel,
            EpdRoute::ErdelyiKober => Route::EpdEk,
            EpdRoute::BetaMc { .. } => Route::EpdBeta,
        }
    }
}

/// Solve the EPD Cauchy problem on `grid` at time `t` by the selected route.
pub fn solve_epd(
    params: &EpdParams,
    f: &InitialCondition,
    grid: &[f64],
    t: f64,
    route: EpdRoute,
) -> Result<SolutionField> {
    f.validate()?;
    if grid.len() < 2 || !grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(CoreError::InvalidConfig(
            "solve grid must be strictly increasing with at least 2 points".to_string(),
        ));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(CoreError::Domain(format!("time must be >= 0, got {t}")));
    }
    let d = params.d;
    if t == 0.0 {
        let values: Vec<f64> = grid
            .iter()
            .map(|&x| f.eval_radial(x.abs(), d))
            .collect::<Result<_>>()?;
        return SolutionField::new(d, grid.to_vec(), values, t, route.route_tag());
    }

    // the kernel in frequency: û₀(t, m), per selected evaluator
    let lambda = params.lambda_epd;
    let route_tag = route.route_tag();
    let beta_draws: Option<Vec<f64>> = match &route {
        EpdRoute::BetaMc { n, rng } => Some(crate::epd::mc::beta_draws(lambda, *n, rng)?),
        _ => None,
    };
    let kernel_of_m = move |m: f64, t: f64| -> Result<f64> {
        match &route {
            EpdRoute::Bessel => epd_hat_bessel(lambda, m, t),
            EpdRoute::ErdelyiKober => epd_hat_ek(lambda, m, t),
            EpdRoute::Wave => Ok(wave_hat(m, t)),
            EpdRoute::BetaMc { .. } => Ok(beta_mixed_kernel(
                beta_draws.as_ref().expect("draws prepared"),
                m,
                t,
            )),
        }
    };

    let fhat: Option<Box<dyn Fn(f64) -> Result<f64> + Sync>> = match f {
        InitialCondition::Delta => None,
        InitialCondition::Gaussian { center, width } if *center == 0.0 => {
            let w2 = width * width;
            Some(Box::new(move |r: f64| Ok((-0.5 * w2 * r * r).exp())))
        }
        InitialCondition::Indicator { a, b } if d == 1 && *a == -*b && *b > 0.0 => {
            let b = *b;
            Some(Box::new(move |r: f64| {
                Ok(if r < 1e-12 { 2.0 * b } else { 2.0 * (r * b).sin() / r })
            }))
        }
        _ => {
            return Err(CoreError::Unsupported(
                "EPD solve supports delta, centered gaussian, or symmetric indicator data"
                    .to_string(),
            ))
        }
    };

    let exact = |r: f64| {
        let k = kernel_of_m(evaluate_symbol(&params.symbol, r)?, t)?;
        match &fhat {
            Some(g) => Ok(k * g(r)?),
            None => Ok(k),
        }
    };
    let table = crate::analytic::SampledKernel::build(&exact, crate::analytic::kernel_range(grid), t)?;
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&x| hankel_inverse(d, &|r| table.eval(r), x.abs(), HANKEL_TOL))
        .collect::<Result<_>>()?;
    SolutionField::new(d, grid.to_vec(), values, t, route_tag)
}

/// Discrete spectrum {x_k, φ_k} with the data coefficients ⟨f, φ_k⟩.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSystem {
    /// strictly increasing positive eigenvalues of A
    pub eigenvalues: Vec<f64>,
    /// coefficients ⟨f, φ_k⟩
    pub coefficients: Vec<f64>,
    pub basis: EigenBasis,
}

/// Orthonormal eigenbases with closed-form eigenfunctions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenBasis {
    /// φ_k(x) = √(2/π) sin(kx) on (0, π) (Dirichlet Laplacian, x_k = k²).
    SineZeroPi,
}

impl EigenSystem {
    pub fn validate(&self) -> Result<()> {
        if self.eigenvalues.is_empty() || self.eigenvalues.len() != self.coefficients.len() {
            return Err(CoreError::InvalidConfig(
                "eigen system needs matching nonempty eigenvalues/coefficients".to_string(),
            ));
        }
        if !self
            .eigenvalues
            .windows(2)
            .all(|w| w[0] < w[1] && w[0] > 0.0)
            || self.eigenvalues[0] <= 0.0
        {
            return Err(CoreError::InvalidConfig(
                "eigenvalues must be positive and strictly increasing".to_string(),
            ));
        }
        if !self.coefficients.iter().all(|c| c.is_finite()) {
            return Err(CoreError::InvalidConfig(
                "coefficients must be finite".to_string(),
            ));
        }
        Ok(())
    }

    pub fn basis_fn(&self, k: usize, x: f64) -> f64 {
        match self.basis {
            EigenBasis::SineZeroPi => {
                (2.0 / std::f64::consts::PI).sqrt() * ((k as f64 + 1.0) * x).sin()
            }
        }
    }
}

/// Eigen-series EPD solution Σ_k ⟨f,φ_k⟩ û₀(t; x_k) φ_k(x); `wave_mode`
/// swaps the EPD kernel for cos(t√x_k).
pub fn solve_epd_series(
    sys: &EigenSystem,
    lambda_epd: f64,
    t: f64,
    xgrid: &[f64],
    wave_mode: bool,
) -> Result<SolutionField> {
    sys.validate()?;
    if xgrid.len() < 2 || !xgrid.windows(2).all(|w| w[0] < w[1]) {
        return Err(CoreError::InvalidConfig(
            "series grid must be strictly increasing with at least 2 points".to_string(),
        ));
    }
    let k_max = sys.eigenvalues.len();
    let kernels: Vec<f64> = sys
        .eigenvalues
        .iter()
        .map(|&xk| {
            if wave_mode {
                Ok(wave_hat(xk, t))
            } else {
                epd_hat_bessel(lambda_epd, xk, t)
            }
        })
        .collect::<Result<_>>()?;
    let values: Vec<f64> = xgrid
        .iter()
        .map(|&x| {
            (0..k_max)
                .map(|k| sys.coefficients[k] * kernels[k] * sys.basis_fn(k, x))
                .sum()
        })
        .collect();
    let mut field = SolutionField::new(1, xgrid.to_vec(), values, t, Route::EpdSeries)?;
    let tail = sys.coefficients.last().copied().unwrap_or(0.0).abs();
    if k_max > 1 && tail > 1e-8 {
        field.diagnostics.push(format!(
            "series truncation: last retained coefficient {tail:.3e} exceeds 1e-8"
        ));
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
        let h = (b - a) / (n - 1) as f64;
        (0..n).map(|i| a + i as f64 * h).collect()
    }

    #[test]
    fn initial_time_reproduces_data() {
        let params = EpdParams::new(0.7, SpectralSymbol::laplacian(), 1).unwrap();
        let f = InitialCondition::Gaussian { center: 0.0, width: 1.0 };
        let g = grid(-3.0, 3.0, 31);
        let field = solve_epd(&params, &f, &g, 0.0, EpdRoute::Bessel).unwrap();
        for (x, v) in field.grid.iter().zip(field.values.iter()) {
            assert_eq!(*v, f.eval_1d(*x).unwrap());
        }
    }

    #[test]
    fn small_lambda_approaches_dalembert_wave() {
        // λ → 0+: the EPD solution tends to the even wave evolution of f
        let params = EpdParams::new(0.01, SpectralSymbol::laplacian(), 1).unwrap();
        let f = InitialCondition::Gaussian { center: 0.0, width: 1.0 };
        let g = grid(-6.0, 6.0, 25);
        let t = 0.8;
        let epd = solve_epd(&params, &f, &g, t, EpdRoute::Bessel).unwrap();
        let wave = solve_epd(&params, &f, &g, t, EpdRoute::Wave).unwrap();
        // d'Alembert oracle for the wave mode
        for ((x, v_epd), v_wave) in epd.grid.iter().zip(epd.values.iter()).zip(wave.values.iter())
        {
            let dal = 0.5 * (f.eval_1d(x + t).unwrap() + f.eval_1d(x - t).unwrap());
            assert!(
                (v_wave - dal).abs() < 1e-7,
                "wave route vs d'Alembert at {x}: {v_wave} vs {dal}"
            );
            assert!(
                (v_epd - dal).abs() < 0.02,
                "EPD λ→0 at {x}: {v_epd} vs {dal}"
            );
        }
    }

    #[test]
    fn single_mode_series_is_exact() {
        // f = sin x on (0, π): coefficient √(π/2) on φ_1, eigenvalue 1
        let sys = EigenSystem {
            eigenvalues: vec![1.0],
            coefficients: vec![(std::f64::consts::PI / 2.0).sqrt()],
            basis: EigenBasis::SineZeroPi,
        };
        let g = grid(0.1, 3.0, 30);
        for &(l, t) in &[(0.7, 0.5), (1.3, 2.0)] {
            let field = solve_epd_series(&sys, l, t, &g, false).unwrap();
            let kernel = epd_hat_bessel(l, 1.0, t).unwrap();
            for (x, v) in field.grid.iter().zip(field.values.iter()) {
                let want = kernel * x.sin();
                assert!((v - want).abs() < 1e-10, "l={l} t={t} x={x}");
            }
            assert!(field.diagnostics.is_empty());
        }
    }

    #[test]
    fn truncation_diagnostic_fires() {
        let sys = EigenSystem {
            eigenvalues: vec![1.0, 4.0, 9.0],
            coefficients: vec![1.0, 0.1, 0.05],
            basis: EigenBasis::SineZeroPi,
        };
        let field = solve_epd_series(&sys, 0.7, 1.0, &grid(0.1, 3.0, 5), false).unwrap();
        assert_eq!(field.diagnostics.len(), 1);
    }

    #[test]
    fn eigen_system_validation() {
        let bad = EigenSystem {
            eigenvalues: vec![1.0, 1.0],
            coefficients: vec![1.0, 1.0],
            basis: EigenBasis::SineZeroPi,
        };
        assert!(bad.validate().is_err());
    }
}
