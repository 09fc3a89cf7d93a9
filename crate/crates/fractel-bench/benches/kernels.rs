//! Microbenchmarks of the numerical kernels: Mittag-Leffler in both
//! regimes, the frequency kernel, Hankel inversion, Talbot, the EPD
//! kernels, and the stochastic samplers.

use criterion::{criterion_group, criterion_main, Criterion};
use fractel_core::analytic::{hankel_inverse, phi_hat};
use fractel_core::epd::{epd_hat_bessel, epd_hat_poisson};
use fractel_core::numlab::talbot_invert;
use fractel_core::specfun::{bessel_j, mittag_leffler, MLQuery};
use fractel_core::stochastic::{
    sample_inverse_clock, sample_stable_subordinator, sample_telegraph, RngStream,
};
use fractel_core::symbols::evaluate_symbol;
use fractel_core::{FracParams, SpectralSymbol};
use num_complex::Complex64;
use std::hint::black_box;

fn bench_mittag_leffler(c: &mut Criterion) {
    let series = MLQuery::new(0.7, 1.0, Complex64::new(-3.0, 1.0)).unwrap();
    c.bench_function("mittag_leffler_series", |b| {
        b.iter(|| mittag_leffler(black_box(&series)).unwrap())
    });
    let contour = MLQuery::new(0.7, 1.0, Complex64::new(-30.0, 8.0)).unwrap();
    c.bench_function("mittag_leffler_contour", |b| {
        b.iter(|| mittag_leffler(black_box(&contour)).unwrap())
    });
}

fn bench_phi_hat(c: &mut Criterion) {
    let p = FracParams::new(0.4, 1.0).unwrap();
    c.bench_function("phi_hat_alpha04", |b| {
        b.iter(|| phi_hat(black_box(&p), black_box(7.5), black_box(1.0)).unwrap())
    });
}

fn bench_bessel(c: &mut Criterion) {
    c.bench_function("bessel_j_small", |b| {
        b.iter(|| bessel_j(black_box(0.25), black_box(3.0)).unwrap())
    });
    c.bench_function("bessel_j_large", |b| {
        b.iter(|| bessel_j(black_box(0.25), black_box(250.0)).unwrap())
    });
}

fn bench_hankel(c: &mut Criterion) {
    let p = FracParams::new(0.5, 1.0).unwrap();
    let sym = SpectralSymbol::fractional_laplacian(1.5).unwrap();
    c.bench_function("hankel_inverse_d1", |b| {
        b.iter(|| {
            let kernel = |r: f64| phi_hat(&p, evaluate_symbol(&sym, r)?, 1.0);
            hankel_inverse(1, &kernel, black_box(1.0), 1e-9).unwrap()
        })
    });
}

fn bench_talbot(c: &mut Criterion) {
    let image = |s: Complex64| {
        (s.powf(-0.2) + 2.0 * s.powf(-0.6)) / (s.powf(0.8) + 2.0 * s.powf(0.4) + 1.0)
    };
    c.bench_function("talbot_invert_rational", |b| {
        b.iter(|| talbot_invert(&image, black_box(1.0), 16).unwrap())
    });
}

fn bench_epd_kernels(c: &mut Criterion) {
    c.bench_function("epd_hat_bessel", |b| {
        b.iter(|| epd_hat_bessel(black_box(0.7), black_box(3.0), black_box(2.0)).unwrap())
    });
    c.bench_function("epd_hat_poisson", |b| {
        b.iter(|| epd_hat_poisson(black_box(0.7), black_box(3.0), black_box(2.0)).unwrap())
    });
}

fn bench_samplers(c: &mut Criterion) {
    let p = FracParams::new(0.4, 1.0).unwrap();
    c.bench_function("stable_subordinator_draw", |b| {
        let mut rng = RngStream::new(1, 0);
        b.iter(|| sample_stable_subordinator(black_box(0.6), 1.0, &mut rng).unwrap())
    });
    c.bench_function("inverse_clock_draw", |b| {
        let mut rng = RngStream::new(2, 0);
        b.iter(|| sample_inverse_clock(&p, black_box(1.0), &mut rng, 1e-4).unwrap())
    });
    c.bench_function("telegraph_draw", |b| {
        let mut rng = RngStream::new(3, 0);
        b.iter(|| sample_telegraph(black_box(1.0), 1.0, &mut rng))
    });
}

criterion_group!(
    benches,
    bench_mittag_leffler,
    bench_phi_hat,
    bench_bessel,
    bench_hankel,
    bench_talbot,
    bench_epd_kernels,
    bench_samplers
);
criterion_main!(benches);
