//! Built-in validation suites runnable from the CLI (`fractel selftest`).
//!
//! Each check returns a pass/fail record with the measured discrepancy and
//! the tolerance it was held to; suites mirror the crate's acceptance
//! matrix so a deployed binary can re-certify itself.

use crate::analytic::{
    hankel_inverse, hankel_inverse_reduced_1d, hankel_inverse_reduced_3d, phi_hat,
    phi_hat_laplace, HalftimeCdf,
};
use crate::epd::{epd_beta_mc, epd_hat_bessel, epd_hat_ek, epd_hat_poisson};
use crate::error::Result;
use crate::numlab::{numeric_laplace, talbot_invert};
use crate::specfun::{erf, mittag_leffler, MLQuery};
use crate::stochastic::{
    ks_critical_1pct, ks_distance, mc_solve_telegraph, sample_halftime_law, sample_inverse_clock,
    RngStream,
};
use crate::symbols::{evaluate_symbol, FracParams, SpectralSymbol};
use num_complex::Complex64;
use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
    pub seconds: f64,
}

impl CheckResult {
    fn evaluate(
        id: &str,
        name: &str,
        tolerance: f64,
        started: Instant,
        outcome: Result<f64>,
    ) -> CheckResult {
        let (passed, measured, detail) = match outcome {
            Ok(m) => (m <= tolerance, m, String::new()),
            Err(e) => (false, f64::NAN, e.to_string()),
        };
        CheckResult {
            id: id.to_string(),
            name: name.to_string(),
            passed,
            measured,
            tolerance,
            detail,
            seconds: started.elapsed().as_secs_f64(),
        }
    }
}

/// Suite selector for `fractel selftest`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Specfun,
    Analytic,
    Epd,
    Stochastic,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "specfun" => Suite::Specfun,
            "analytic" => Suite::Analytic,
            "epd" => Suite::Epd,
            "stochastic" => Suite::Stochastic,
            "all" => Suite::All,
            _ => return None,
        })
    }
}

pub fn run_suite(suite: Suite) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Specfun | Suite::All) {
        out.extend(specfun_suite());
    }
    if matches!(suite, Suite::Analytic | Suite::All) {
        out.extend(analytic_suite());
    }
    if matches!(suite, Suite::Epd | Suite::All) {
        out.extend(epd_suite());
    }
    if matches!(suite, Suite::Stochastic | Suite::All) {
        out.extend(stochastic_suite());
    }
    out
}

fn specfun_suite() -> Vec<CheckResult> {
    let mut checks = Vec::new();

    let t0 = Instant::now();
    let ml_identity = (|| {
        let mut worst = 0.0f64;
        for i in 0..=600 {
            let x = -3.0 + i as f64 * 0.01;
            let got = mittag_leffler(&MLQuery::new(0.5, 1.0, Complex64::new(x, 0.0))?)?;
            let want = (x * x).exp() * (1.0 + erf(x));
            worst = worst.max((got.re - want).abs());
        }
        Ok(worst)
    })();
    checks.push(CheckResult::evaluate(
        "specfun.ml_half_erf",
        "E_{1/2,1}(x) = e^{x^2}(1+erf x) on [-3,3], 601 points",
        1e-8,
        t0,
        ml_identity,
    ));

    let t0 = Instant::now();
    let exp_grid = (|| {
        let mut worst = 0.0f64;
        for i in 0..100 {
            let th = 2.0 * std::f64::consts::PI * i as f64 / 100.0;
            let z = Complex64::from_polar(10.0 * (i as f64 + 1.0) / 100.0, th);
            let got = mittag_leffler(&MLQuery::new(1.0, 1.0, z)?)?;
            worst = worst.max((got - z.exp()).norm());
        }
        Ok(worst)
    })();
    checks.push(CheckResult::evaluate(
        "specfun.exp_reduction",
        "E_{1,1} = exp on a complex grid |z| <= 10",
        1e-10,
        t0,
        exp_grid,
    ));

    let t0 = Instant::now();
    let recurrence = (|| {
        let mut worst = 0.0f64;
        for &alpha in &[0.3, 0.5, 0.8] {
            for &(re, im) in &[(-3.0, 0.0), (-1.0, 1.0), (-8.0, 2.0), (-0.5, 4.0)] {
                let z = Complex64::new(re, im);
                let a = mittag_leffler(&MLQuery::new(alpha, alpha + 1.0, z)?)?;
                let b = (mittag_leffler(&MLQuery::new(alpha, 1.0, z)?)? - 1.0) / z;
                worst = worst.max((a - b).norm() / (1.0 + b.norm()));
            }
        }
        Ok(worst)
    })();
    checks.push(CheckResult::evaluate(
        "specfun.ml_recurrence",
        "E_{a,a+1}(z) = (E_{a,1}(z)-1)/z",
        1e-8,
        t0,
        recurrence,
    ));

    let t0 = Instant::now();
    let half_forms = (|| {
        let mut worst = 0.0f64;
        let mut x = 0.05f64;
        while x <= 50.0 {
            let c = (2.0 / (std::f64::consts::PI * x)).sqrt();
            let jm = crate::specfun::bessel_j(-0.5, x)?;
            let jp = crate::specfun::bessel_j(0.5, x)?;
            worst = worst.max((jm - c * x.cos()).abs()).max((jp - c * x.sin()).abs());
            x *= 1.1;
        }
        Ok(worst)
    })();
    checks.push(CheckResult::evaluate(
        "specfun.bessel_half_forms",
        "J_{±1/2} closed forms on (0, 50]",
        1e-10,
        t0,
        half_forms,
    ));

    checks
}

fn analytic_suite() -> Vec<CheckResult> {
    let mut checks = Vec::new();

    let t0 = Instant::now();
    let laplace = (|| {
        let mut worst = 0.0f64;
        for &alpha in &[0.3, 0.5, 0.7, 1.0] {
            for &lambda in &[0.5, 2.0] {
                let p = FracParams::new(alpha, lambda)?;
                for &m in &[0.25, 1.0, 9.0] {
                    for &s in &[1.0, 2.0, 5.0] {
                        let f = |t: f64| phi_hat(&p, m, t);
                        let num = numeric_laplace(&f, s, 1e-9)?;
                        let form = phi_hat_laplace(&p, m, s)?;
                        worst = worst.max(((num - form) / form).abs());
                    }
                }
            }
        }
        Ok(worst)
    })();
    checks.push(CheckResult::evaluate(
        "analytic.laplace_consistency",
        "numeric Laplace of phi_hat vs rational form (72 combos)",
        1e-6,
        t0,
        laplace,
    ));

    let t0 = Instant::now();
    let alpha_one = (|| {
        let mut worst = 0.0f64;
        for &lambda in &[0.5, 1.0, 2.0] {
            let p = FracParams::new(1.0, lambda)?;
            for &m in &[0.0, 0.25, 1.0, 5.0, 30.0] {
                for &t in &[0.2, 0.7, 2.0] {
                    let a = phi_hat(&p, m, t)?;
                    let b = crate::analytic::g_kernel_half(lambda, m, t)?;
                    worst = worst.max((a - b).abs());
                }
            }
        }
        Ok(worst)
    })();
    checks.push(CheckResult::evaluate(
        "analytic.alpha_one_exponential",
        "phi_hat at alpha = 1 vs explicit exponential form",
        1e-10,
        t0,
        alpha_one,
    ));

    let t0 = Instant::now();
    let hankel = (|| {
        let p = FracParams::new(0.5, 1.0)?;
        let sym = SpectralSymbol::fractional_laplacian(1.5)?;
        let kernel = |r: f64| phi_hat(&p, evaluate_symbol(&sym, r)?, 1.0);
        let mut worst = 0.0f64;
        for &x in &[0.5, 1.0, 2.0] {
            let g1 = hankel_inverse(1, &kernel, x, 1e-10)?;
            let r1 = hankel_inverse_reduced_1d(&kernel, x, 1e-10)?;
            worst = worst.max((g1 - r1).abs());
            let g3 = hankel_inverse(3, &kernel, x, 1e-10)?;
            let r3 = hankel_inverse_reduced_3d(&kernel, x, 1e-10)?;
            worst = worst.max((g3 - r3).abs());
        }
        Ok(worst)
    })();
    checks.push(CheckResult::evaluate(
        "analytic.hankel_reductions",
        "d=1 cosine and d=3 sine reductions vs general evaluator",
        1e-9,
        t0,
        hankel,
    ));

    let t0 = Instant::now();
    let degenerate = (|| {
        let mut worst = 0.0f64;
        for &alpha in &[0.4, 1.0] {
            let p = FracParams::new(alpha, 1.0)?;
            let mut t = 0.0;
            while t <= 5.0 {
                let hi = phi_hat(&p, 1.0 + 1e-4, t)?;
                let lo = phi_hat(&p, 1.0 - 1e-4, t)?;
                worst = worst.max((hi - lo).abs());
                t += 0.25;
            }
        }
        Ok(worst)
    })();
    checks.push(CheckResult::evaluate(
        "analytic.degenerate_root",
        "phi_hat continuity across m = lambda^2 (1 ± 1e-4)",
        1e-3,
        t0,
        degenerate,
    ));

    checks
}

fn epd_suite() -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let grid: Vec<(f64, f64, f64)> = {
        let mut g = Vec::new();
        for &l in &[0.3, 0.7, 1.0, 2.0] {
            for &m in &[0.5, 3.0] {
                for &t in &[0.5, 2.0, 5.0] {
                    g.push((l, m, t));
                }
            }
        }
        g
    };

    let t0 = Instant::now();
    let poisson = (|| {
        let mut worst = 0.0f64;
        for &(l, m, t) in &grid {
            worst = worst.max((epd_hat_bessel(l, m, t)? - epd_hat_poisson(l, m, t)?).abs());
        }
        Ok(worst)
    })();
    checks.push(CheckResult::evaluate(
        "epd.poisson_route",
        "Bessel vs Poisson-integral kernel on the parameter grid",
        1e-8,
        t0,
        poisson,
    ));

    let t0 = Instant::now();
    let ek = (|| {
        let mut worst = 0.0f64;
        for &(l, m, t) in &grid {
            worst = worst.max((epd_hat_bessel(l, m, t)? - epd_hat_ek(l, m, t)?).abs());
        }
        Ok(worst)
    })();
    checks.push(CheckResult::evaluate(
        "epd.erdelyi_kober_route",
        "Bessel vs Erdélyi-Kober kernel on the parameter grid",
        1e-6,
        t0,
        ek,
    ));

    let t0 = Instant::now();
    let beta_mc = (|| {
        let mut worst = 0.0f64;
        for &(l, m, t) in &[(0.7f64, 3.0f64, 2.0f64), (0.3, 0.5, 0.5), (2.0, 3.0, 5.0)] {
            let est = epd_beta_mc(
                l,
                |w| Ok(vec![(w * m.sqrt()).cos()]),
                vec![0.0],
                t,
                100_000,
                &RngStream::new(1_234, 9),
            )?;
            let want = epd_hat_bessel(l, m, t)?;
            worst = worst.max((est.mean[0] - want).abs() / est.stderr[0].max(1e-12) / 3.0);
        }
        Ok(worst)
    })();
    checks.push(CheckResult::evaluate(
        "epd.beta_mc_route",
        "Beta-subordination MC vs Bessel kernel (normalized to 3 SE)",
        1.0,
        t0,
        beta_mc,
    ));

    let t0 = Instant::now();
    let sinc = (|| {
        let mut worst = 0.0f64;
        for &(m, t) in &[(1.0, 1.0), (3.0, 2.0), (0.5, 5.0)] {
            let z = t * (m as f64).sqrt();
            worst = worst.max((epd_hat_bessel(1.0, m, t)? - z.sin() / z).abs());
        }
        Ok(worst)
    })();
    checks.push(CheckResult::evaluate(
        "epd.lambda_one_sinc",
        "lambda = 1 closed form sin(z)/z",
        1e-10,
        t0,
        sinc,
    ));

    checks
}

fn stochastic_suite() -> Vec<CheckResult> {
    let mut checks = Vec::new();

    let t0 = Instant::now();
    let clock = (|| {
        let (alpha, lambda, m, t) = (0.4, 1.0, 1.0, 1.0);
        let p = FracParams::new(alpha, lambda)?;
        let rng = RngStream::new(2_024, 0);
        let n = 100_000;
        let draws = crate::stochastic::collect_block_draws(n, &rng, |stream| {
            Ok((-m * sample_inverse_clock(&p, t, stream, 1e-4)?).exp())
        })?;
        let mean: f64 = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n as f64 - 1.0);
        let se = (var / n as f64).sqrt();
        let image = |s: Complex64| {
            (s.powf(2.0 * alpha - 1.0) + 2.0 * lambda * s.powf(alpha - 1.0))
                / (s.powf(2.0 * alpha) + 2.0 * lambda * s.powf(alpha) + m)
        };
        let target = talbot_invert(&image, t, 16)?;
        Ok((mean - target).abs() / (3.0 * se))
    })();
    checks.push(CheckResult::evaluate(
        "stochastic.inverse_clock_laplace",
        "E[e^{-m L(t)}] vs Talbot-inverted rational form (normalized to 3 SE)",
        1.0,
        t0,
        clock,
    ));

    let t0 = Instant::now();
    let route = (|| {
        let p = FracParams::new(0.4, 1.0)?;
        let sym = SpectralSymbol::laplacian();
        let f = crate::field::InitialCondition::Gaussian { center: 0.0, width: 1.0 };
        let xs = [0.0, 0.5, 1.0, 2.0];
        let est = mc_solve_telegraph(&p, &sym, &f, &xs, 1, 1.0, 100_000, &RngStream::new(7, 3), 1e-4)?;
        let mut worst = 0.0f64;
        for (i, &x) in xs.iter().enumerate() {
            let kernel = |r: f64| Ok(phi_hat(&p, r * r, 1.0)? * (-0.5 * r * r).exp());
            let want = hankel_inverse(1, &kernel, x, 1e-9)?;
            worst = worst.max((est.mean[i] - want).abs() / (3.0 * est.stderr[i]));
        }
        Ok(worst)
    })();
    checks.push(CheckResult::evaluate(
        "stochastic.telegraph_route",
        "MC telegraph route vs analytic field (normalized to 3 SE)",
        1.0,
        t0,
        route,
    ));

    let t0 = Instant::now();
    let halftime = (|| {
        let (lambda, t) = (1.0, 1.0);
        let n = 100_000;
        let draws = sample_halftime_law(lambda, t, n, &RngStream::new(99, 1))?;
        let mut xs: Vec<f64> = draws.iter().map(|d| d.position).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let span = xs.last().unwrap().abs().max(xs[0].abs()) + 1.0;
        let cdf = HalftimeCdf::build(lambda, t, span, 2_400)?;
        let cdf_vals: Vec<f64> = xs.iter().map(|&x| cdf.eval(x)).collect();
        let d = ks_distance(&xs, &cdf_vals);
        Ok(d / ks_critical_1pct(n))
    })();
    checks.push(CheckResult::evaluate(
        "stochastic.halftime_ks",
        "KS distance of T(|B(1)|) draws vs integrated density (normalized to the 1% critical value)",
        1.0,
        t0,
        halftime,
    ));

    let t0 = Instant::now();
    let atom = (|| {
        let (lambda, t) = (1.0f64, 1.0f64);
        let n = 100_000;
        let draws = sample_halftime_law(lambda, t, n, &RngStream::new(99, 1))?;
        let frac = draws.iter().filter(|d| d.at_boundary).count() as f64 / n as f64;
        let p = (lambda * lambda * t).exp() * crate::specfun::erfc(lambda * t.sqrt());
        let se = (p * (1.0 - p) / n as f64).sqrt();
        Ok((frac - p).abs() / (3.0 * se))
    })();
    checks.push(CheckResult::evaluate(
        "stochastic.halftime_atom_mass",
        "boundary-atom mass vs e^{l^2 t} erfc(l sqrt t) (normalized to 3 SE)",
        1.0,
        t0,
        atom,
    ));

    let t0 = Instant::now();
    let tele = (|| {
        let (lambda, t) = (1.0, 1.0);
        let n = 100_000;
        let rng = RngStream::new(5, 5);
        let draws = crate::stochastic::collect_block_draws(n, &rng, |stream| {
            Ok(crate::stochastic::sample_telegraph(lambda, t, stream))
        })?;
        if draws.iter().any(|x| x.abs() > t + 1e-12) {
            return Ok(f64::INFINITY);
        }
        let hits = draws.iter().filter(|x| x.abs() >= t - 1e-12).count() as f64 / n as f64;
        let p = (-lambda * t as f64).exp();
        let se = (p * (1.0 - p) / n as f64).sqrt();
        Ok((hits - p).abs() / (3.0 * se))
    })();
    checks.push(CheckResult::evaluate(
        "stochastic.telegraph_support_atoms",
        "telegraph draws: |T| <= t hard, P(|T| = t) = e^{-lt} (normalized to 3 SE)",
        1.0,
        t0,
        tele,
    ));

    checks
}

/// One pass/fail line per check, plus the totals line; returns overall pass.
pub fn render_report(results: &[CheckResult], out: &mut String) -> bool {
    let mut all = true;
    for r in results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        all &= r.passed;
        out.push_str(&format!(
            "{status} {} measured={:.3e} tol={:.3e} ({:.2}s){}\n",
            r.id,
            r.measured,
            r.tolerance,
            r.seconds,
            if r.detail.is_empty() {
                String::new()
            } else {
                format!(" [{}]", r.detail)
            }
        ));
    }
    out.push_str(&format!(
        "{} of {} checks passed\n",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    ));
    all
}
