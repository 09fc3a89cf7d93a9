//! Solvers for the time-fractional telegraph equation
//!
//! ```text
//! [(D_t^α)² + 2λ D_t^α + A] u = 0,   u(0) = f,
//! ```
//!
//! and the abstract Euler-Poisson-Darboux equation
//!
//! ```text
//! [∂_t² + (2λ/t) ∂_t + A] u = 0,   u(0) = f,  ∂_t u(0) = 0,
//! ```
//!
//! where `A` is a positive isotropic Fourier multiplier (Laplacian,
//! fractional Laplacian, Bessel-Riesz or relativistic operator).
//!
//! Each equation is solved by independent routes that must agree:
//!
//! * `analytic` — Mittag-Leffler frequency kernels and Hankel inversion,
//! * `numlab`   — forward/inverse Laplace transforms used as cross-checks,
//! * `stochastic` — exact samplers for the associated Lévy processes and
//!   inverse subordinator clocks, assembled into Monte Carlo estimators,
//! * `epd`      — Bessel, Poisson-integral, Erdélyi-Kober and
//!   Beta-subordination representations of the EPD solution.

pub mod analytic;
pub mod epd;
pub mod error;
pub mod field;
pub mod numlab;
pub mod selftest;
pub mod specfun;
pub mod stochastic;
pub mod symbols;

#[doc(hidden)]
pub mod dd;
mod quad;

pub use error::{CoreError, Result};
pub use field::{InitialCondition, Route, SolutionField};
pub use symbols::{FracParams, SpectralSymbol};
