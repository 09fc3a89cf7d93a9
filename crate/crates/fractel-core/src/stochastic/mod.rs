//! Random samplers and the Monte Carlo solution harness: one-sided stable
//! subordinators, the inverse clock of their weighted sum, subordinated
//! Brownian families, telegraph motions, and deterministic estimator
//! assembly on splittable streams.

mod bessel_riesz;
mod harness;
mod histogram;
mod inverse_clock;
mod processes;
mod rng;
mod stable;

pub use bessel_riesz::BesselRieszSampler;
pub use harness::{
    collect_block_draws, mc_field_estimate, mc_solve_halftime, mc_solve_telegraph,
    mc_telegraph_histogram, sample_halftime_law, HalftimeDraw, McField, MC_BLOCKS,
};
pub use histogram::{ks_critical_1pct, ks_distance, Histogram};
pub use inverse_clock::{sample_inverse_clock, sample_inverse_clock_from};
pub use processes::{
    sample_process, sample_telegraph, sample_telegraph_inhomogeneous, ProcessKind, ProcessSampler,
};
pub use rng::RngStream;
pub use stable::{sample_stable_subordinator, sample_standard_stable};
