//! Euler-Poisson-Darboux solver: spectral wave solution, Bessel closed
//! form, Poisson-integral and Erdélyi-Kober quadrature routes,
//! Beta-subordination Monte Carlo, eigen-series solver, and the
//! inhomogeneous-telegraph heuristic.

mod kernels;
mod mc;
mod solve;

pub use kernels::{epd_hat_bessel, epd_hat_ek, epd_hat_poisson, erdelyi_kober, wave_hat};
pub use mc::{beta_draws, beta_mixed_kernel, epd_beta_mc, epd_inhomogeneous_telegraph_mc};
pub use solve::{solve_epd, solve_epd_series, EigenBasis, EigenSystem, EpdParams, EpdRoute};
