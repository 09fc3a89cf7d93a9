//! Analytic route for the fractional telegraph equation: frequency-domain
//! kernel, Laplace-domain rational form, Hankel spatial inversion, grid
//! convolution, and the α = 1/2 and α = 1 closed forms.

mod hankel;
mod phi;
mod solve;
mod telegraph;

pub use hankel::{
    bessel_zero, hankel_inverse, hankel_inverse_reduced_1d, hankel_inverse_reduced_3d,
};
pub(crate) use solve::{kernel_range, SampledKernel};
pub use phi::{char_roots, g_kernel_half, phi_hat, phi_hat_laplace, CharRoots};
pub use solve::solve_telegraph;
pub use telegraph::{telegraph_density, telegraph_halftime_density, HalftimeCdf};
