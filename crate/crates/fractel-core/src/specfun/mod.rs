//! Special functions behind the analytic solution formulas: Γ and lnΓ,
//! the error function, Bessel J_ν / I_0 / I_1, and the two-parameter
//! Mittag-Leffler function on complex arguments.
//!
//! Everything here is pure and deterministic; NaN inputs are rejected
//! eagerly by the Result-returning operations.

mod bessel;
mod erf;
mod gamma;
mod ml;

pub use bessel::{bessel_i0, bessel_i0_scaled, bessel_i1, bessel_i1_scaled, bessel_j};
pub(crate) use bessel::normalized_bessel_j;
pub use erf::{erf, erfc};
pub use gamma::{gamma_fn, ln_gamma};
pub use ml::{mittag_leffler, MLQuery};
