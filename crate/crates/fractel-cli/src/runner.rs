//! Subcommand implementations: route dispatch, output writing, manifests.

use crate::config::{Equation, McSettings, RunConfig};
use crate::csvio;
use fractel_core::analytic::{hankel_inverse, solve_telegraph};
use fractel_core::epd::{solve_epd, solve_epd_series, EpdRoute};
use fractel_core::field::{fmt_g17, InitialCondition, Route, SolutionField};
use fractel_core::numlab::talbot_invert;
use fractel_core::selftest::{render_report, run_suite, Suite};
use fractel_core::stochastic::{mc_solve_telegraph, mc_telegraph_histogram, McField, RngStream};
use fractel_core::symbols::evaluate_symbol;
use fractel_core::{CoreError, Result};
use num_complex::Complex64;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

pub fn cmd_solve(cfg: &RunConfig, out: &Path, verbosity: &str) -> Result<()> {
    std::fs::create_dir_all(out)
        .map_err(|e| CoreError::InvalidConfig(format!("cannot create {}: {e}", out.display())))?;
    let grid = cfg.grid.materialize()?;
    let routes = resolve_routes(cfg)?;
    let mut outputs = Vec::new();
    let mut diagnostics = global_diagnostics(cfg);
    for (ti, &t) in cfg.times.iter().enumerate() {
        for route in &routes {
            if !verbosity.is_empty() {
                eprintln!("[fractel] solving t={t} route={route:?}");
            }
            let field = solve_one(cfg, &grid, t, *route)?;
            diagnostics.extend(field.diagnostics.iter().cloned());
            let name = format!("{}_{}_t{}.csv", equation_name(cfg), field.route.as_str(), ti);
            let path = out.join(&name);
            let params = params_string(cfg);
            std::fs::write(
                &path,
                field.to_csv(equation_name(cfg), &params, &cfg.symbol.describe()),
            )
            .map_err(|e| CoreError::InvalidConfig(format!("cannot write {name}: {e}")))?;
            outputs.push(name);
        }
    }
    write_manifest(
        out,
        json!({
            "command": "solve",
            "config": cfg,
            "outputs": outputs,
            "tolerances": solver_tolerances(),
            "diagnostics": diagnostics,
        }),
    )
}

fn solve_one(cfg: &RunConfig, grid: &[f64], t: f64, route: Route) -> Result<SolutionField> {
    match (cfg.equation, route) {
        (Equation::Telegraph, Route::Analytic) => {
            let p = cfg.frac_params()?.expect("validated");
            solve_telegraph(&p, &cfg.symbol, &cfg.initial, cfg.dimension, grid, t)
        }
        (Equation::Telegraph, Route::LaplaceCheck) => {
            let p = cfg.frac_params()?.expect("validated");
            solve_telegraph_laplace_check(cfg, &p, grid, t)
        }
        (Equation::Epd, Route::EpdBessel) => {
            solve_epd(&cfg.epd_params()?, &cfg.initial, grid, t, EpdRoute::Bessel)
        }
        (Equation::Epd, Route::EpdEk) => solve_epd(
            &cfg.epd_params()?,
            &cfg.initial,
            grid,
            t,
            EpdRoute::ErdelyiKober,
        ),
        (Equation::Epd, Route::EpdBeta) => {
            let mc = cfg.mc.ok_or_else(|| {
                CoreError::InvalidConfig("route epd-beta requires mc settings".to_string())
            })?;
            solve_epd(
                &cfg.epd_params()?,
                &cfg.initial,
                grid,
                t,
                EpdRoute::BetaMc {
                    n: mc.n,
                    rng: RngStream::new(mc.seed, mc.stream_id),
                },
            )
        }
        (Equation::Epd, Route::EpdSeries) => {
            let sys = cfg.eigen.as_ref().ok_or_else(|| {
                CoreError::InvalidConfig("route epd-series requires `eigen`".to_string())
            })?;
            let lam = cfg.epd_params()?.lambda_epd;
            solve_epd_series(sys, lam, t, grid, false)
        }
        (eq, r) => Err(CoreError::InvalidConfig(format!(
            "route {:?} is not valid for the {:?} equation",
            r, eq
        ))),
    }
}

/// Independent Laplace-domain route: the frequency kernel is recovered by
/// Talbot inversion of the rational form instead of the Mittag-Leffler
/// assembly, then inverted spatially as usual.
fn solve_telegraph_laplace_check(
    cfg: &RunConfig,
    p: &fractel_core::FracParams,
    grid: &[f64],
    t: f64,
) -> Result<SolutionField> {
    if t == 0.0 {
        let mut f = solve_telegraph(p, &cfg.symbol, &cfg.initial, cfg.dimension, grid, t)?;
        f.route = Route::LaplaceCheck;
        return Ok(f);
    }
    let fhat: Box<dyn Fn(f64) -> Result<f64> + Sync> = match &cfg.initial {
        InitialCondition::Delta => Box::new(|_| Ok(1.0)),
        InitialCondition::Gaussian { center, width } if *center == 0.0 => {
            let w2 = width * width;
            Box::new(move |r: f64| Ok((-0.5 * w2 * r * r).exp()))
        }
        _ => {
            return Err(CoreError::Unsupported(
                "laplace-check route supports delta or centered gaussian data".to_string(),
            ))
        }
    };
    let p = *p;
    let sym = cfg.symbol;
    use rayon::prelude::*;
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&x| {
            let kernel = |r: f64| {
                let m = evaluate_symbol(&sym, r)?;
                let image = |s: Complex64| {
                    (s.powf(2.0 * p.alpha - 1.0) + 2.0 * p.lambda * s.powf(p.alpha - 1.0))
                        / (s.powf(2.0 * p.alpha) + 2.0 * p.lambda * s.powf(p.alpha) + m)
                };
                Ok(talbot_invert(&image, t, 16)? * fhat(r)?)
            };
            hankel_inverse(cfg.dimension, &kernel, x.abs(), 1e-8)
        })
        .collect::<Result<_>>()?;
    SolutionField::new(cfg.dimension, grid.to_vec(), values, t, Route::LaplaceCheck)
}

pub fn cmd_simulate(
    cfg: &RunConfig,
    out: &Path,
    seed: Option<u64>,
    n: Option<usize>,
    workers: Option<usize>,
    verbosity: &str,
) -> Result<()> {
    std::fs::create_dir_all(out)
        .map_err(|e| CoreError::InvalidConfig(format!("cannot create {}: {e}", out.display())))?;
    let mc = merged_mc(cfg, seed, n, workers)?;
    let grid = cfg.grid.materialize()?;
    let rng = RngStream::new(mc.seed, mc.stream_id);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(mc.workers)
        .build()
        .map_err(|e| CoreError::InvalidConfig(format!("thread pool: {e}")))?;

    let mut outputs = Vec::new();
    let mut diagnostics = global_diagnostics(cfg);
    for (ti, &t) in cfg.times.iter().enumerate() {
        if !verbosity.is_empty() {
            eprintln!("[fractel] simulating t={t} n={} seed={}", mc.n, mc.seed);
        }
        match cfg.equation {
            Equation::Telegraph => {
                let p = cfg.frac_params()?.expect("validated");
                if !p.stochastic_regime() {
                    return Err(CoreError::InvalidConfig(format!(
                        "monte-carlo telegraph route requires alpha <= 1/2 (got alpha = {})",
                        p.alpha
                    )));
                }
                if matches!(cfg.initial, InitialCondition::Delta) {
                    let hist = pool.install(|| {
                        mc_telegraph_histogram(&p, &cfg.symbol, t, mc.n, &rng, mc.tol_l)
                    })?;
                    let name = format!("telegraph_monte-carlo_hist_t{ti}.csv");
                    let meta = format!(
                        "route=monte-carlo,histogram,t={},n={},seed={},stream={},atoms_pos={},atoms_neg={}",
                        fmt_g17(t), hist.n, mc.seed, mc.stream_id, hist.atom_positive, hist.atom_negative
                    );
                    std::fs::write(out.join(&name), csvio::histogram_to_csv(&hist, &meta))
                        .map_err(|e| CoreError::InvalidConfig(format!("write {name}: {e}")))?;
                    outputs.push(name);
                } else {
                    let est = pool.install(|| {
                        mc_solve_telegraph(
                            &p,
                            &cfg.symbol,
                            &cfg.initial,
                            &grid,
                            cfg.dimension,
                            t,
                            mc.n,
                            &rng,
                            mc.tol_l,
                        )
                    })?;
                    outputs.push(write_estimate(cfg, out, &est, t, ti, &mc)?);
                }
            }
            Equation::Epd => {
                let est = pool.install(|| simulate_epd(cfg, &grid, t, &mc, &rng, &mut diagnostics))?;
                outputs.push(write_estimate(cfg, out, &est, t, ti, &mc)?);
            }
        }
    }
    write_manifest(
        out,
        json!({
            "command": "simulate",
            "config": cfg,
            "outputs": outputs,
            "n": mc.n,
            "seed": mc.seed,
            "stream_layout": {
                "master_stream": mc.stream_id,
                "blocks": fractel_core::stochastic::MC_BLOCKS,
                "scheme": "splitmix-derived child stream per block, merged in block order",
            },
            "workers": mc.workers,
            "tolerances": { "tol_l": mc.tol_l },
            "diagnostics": diagnostics,
        }),
    )
}

/// EPD Monte Carlo: Beta-subordinated wave evaluation. The wave field is
/// exact per sample for the 1-D Laplacian (d'Alembert); for other symbols it
/// is evaluated on a quantile grid of the subordinated times and
/// interpolated (noted in the manifest).
fn simulate_epd(
    cfg: &RunConfig,
    grid: &[f64],
    t: f64,
    mc: &McSettings,
    rng: &RngStream,
    diagnostics: &mut Vec<String>,
) -> Result<McField> {
    let params = cfg.epd_params()?;
    if matches!(cfg.initial, InitialCondition::Delta) {
        return Err(CoreError::InvalidConfig(
            "EPD simulate needs pointwise-evaluable initial data (the wave solution of a \
             delta is not a function); use `solve` with route epd-beta instead"
                .to_string(),
        ));
    }
    let lambda = params.lambda_epd;
    if cfg.dimension == 1 && matches!(cfg.symbol, fractel_core::SpectralSymbol::Laplacian) {
        // d'Alembert evolution is exact and cheap per sample
        let f = cfg.initial.clone();
        let grid_owned = grid.to_vec();
        return fractel_core::epd::epd_beta_mc(
            lambda,
            move |w| {
                grid_owned
                    .iter()
                    .map(|&x| Ok(0.5 * (f.eval_1d(x + w)? + f.eval_1d(x - w)?)))
                    .collect()
            },
            grid.to_vec(),
            t,
            mc.n,
            rng,
        );
    }
    // general symbol: precompute wave fields on quantile knots of w = t√X
    const KNOTS: usize = 96;
    diagnostics.push(format!(
        "epd simulate: wave field interpolated over {KNOTS} time knots"
    ));
    let wave_field = |w: f64| -> Result<Vec<f64>> {
        let field = solve_epd(&params, &cfg.initial, grid, w, EpdRoute::Wave)?;
        Ok(field.values)
    };
    // Beta(1/2, λ) quantile knots via its draws' range: use the analytic
    // quantiles of √X: w = t·sin of ... simpler: uniform knots on [0, t]
    let knots: Vec<f64> = (0..KNOTS).map(|i| t * i as f64 / (KNOTS - 1) as f64).collect();
    let fields: Vec<Vec<f64>> = knots
        .iter()
        .map(|&w| wave_field(w))
        .collect::<Result<_>>()?;
    let grid_len = grid.len();
    fractel_core::epd::epd_beta_mc(
        lambda,
        move |w| {
            let pos = (w / t).clamp(0.0, 1.0) * (KNOTS - 1) as f64;
            let i = (pos.floor() as usize).min(KNOTS - 2);
            let frac = pos - i as f64;
            Ok((0..grid_len)
                .map(|g| fields[i][g] * (1.0 - frac) + fields[i + 1][g] * frac)
                .collect())
        },
        grid.to_vec(),
        t,
        mc.n,
        rng,
    )
}

fn write_estimate(
    cfg: &RunConfig,
    out: &Path,
    est: &McField,
    t: f64,
    ti: usize,
    mc: &McSettings,
) -> Result<String> {
    let name = format!("{}_monte-carlo_t{ti}.csv", equation_name(cfg));
    let meta = format!(
        "route=monte-carlo,d={},t={},{},symbol={},n={},seed={},stream={},blocks={}",
        cfg.dimension,
        fmt_g17(t),
        params_string(cfg),
        cfg.symbol.describe(),
        est.n,
        mc.seed,
        mc.stream_id,
        est.blocks
    );
    std::fs::write(out.join(&name), csvio::estimate_to_csv(est, &meta))
        .map_err(|e| CoreError::InvalidConfig(format!("write {name}: {e}")))?;
    Ok(name)
}

pub fn cmd_compare(file_a: &Path, file_b: &Path, mode: &str, threshold: f64) -> ExitCode {
    match compare_inner(file_a, file_b, mode, threshold) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn compare_inner(file_a: &Path, file_b: &Path, mode: &str, threshold: f64) -> Result<bool> {
    let a = csvio::read_field(file_a)?;
    let b = csvio::read_field(file_b)?;
    if a.x.len() != b.x.len()
        || a.x
            .iter()
            .zip(b.x.iter())
            .any(|(p, q)| (p - q).abs() > 1e-12 * (1.0 + p.abs()))
    {
        return Err(CoreError::InvalidConfig(
            "grids of the two files do not match".to_string(),
        ));
    }
    let mut max_d = 0.0f64;
    let mut sum_d = 0.0f64;
    for i in 0..a.x.len() {
        let d = match mode {
            "abs" => (a.value[i] - b.value[i]).abs(),
            "rel" => {
                let scale = a.value[i].abs().max(b.value[i].abs()).max(1e-300);
                (a.value[i] - b.value[i]).abs() / scale
            }
            "sigma" => {
                let sa = a.stderr.as_ref().map_or(0.0, |s| s[i]);
                let sb = b.stderr.as_ref().map_or(0.0, |s| s[i]);
                let sigma = (sa * sa + sb * sb).sqrt();
                if sigma == 0.0 {
                    return Err(CoreError::InvalidConfig(
                        "sigma mode needs stderr columns in at least one file".to_string(),
                    ));
                }
                (a.value[i] - b.value[i]).abs() / sigma
            }
            other => {
                return Err(CoreError::InvalidConfig(format!(
                    "unknown compare mode '{other}' (abs, rel, sigma)"
                )))
            }
        };
        max_d = max_d.max(d);
        sum_d += d;
    }
    let mean_d = sum_d / a.x.len() as f64;
    println!(
        "compare mode={mode}: max={max_d:.6e} mean={mean_d:.6e} threshold={threshold:.6e}"
    );
    Ok(max_d <= threshold)
}

pub fn cmd_selftest(suite: &str, json_path: Option<&Path>) -> ExitCode {
    let Some(suite) = Suite::parse(suite) else {
        eprintln!("error: unknown suite '{suite}' (specfun, analytic, epd, stochastic, all)");
        return ExitCode::from(2);
    };
    let results = run_suite(suite);
    let mut report = String::new();
    let all_passed = render_report(&results, &mut report);
    print!("{report}");
    if let Some(path) = json_path {
        let doc = json!({
            "suite": format!("{suite:?}").to_lowercase(),
            "passed": all_passed,
            "checks": results,
        });
        if let Err(e) = std::fs::write(path, serde_json::to_string_pretty(&doc).unwrap()) {
            eprintln!("error: cannot write report: {e}");
            return ExitCode::from(2);
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn resolve_routes(cfg: &RunConfig) -> Result<Vec<Route>> {
    let all: Vec<Route> = match cfg.equation {
        Equation::Telegraph => vec![Route::Analytic, Route::LaplaceCheck],
        Equation::Epd => vec![Route::EpdBessel, Route::EpdEk, Route::EpdBeta],
    };
    if cfg.routes.is_empty() {
        return Ok(vec![all[0]]);
    }
    let mut out = Vec::new();
    for r in &cfg.routes {
        if r == "all" {
            out.extend(all.iter().copied());
            continue;
        }
        let route = Route::parse(r)?;
        let valid = matches!(
            (cfg.equation, route),
            (Equation::Telegraph, Route::Analytic | Route::LaplaceCheck)
                | (Equation::Epd, Route::EpdBessel | Route::EpdEk | Route::EpdBeta | Route::EpdSeries)
        );
        if !valid {
            return Err(CoreError::InvalidConfig(format!(
                "route '{r}' is not valid for the {:?} equation (monte-carlo runs live under \
                 `simulate`)",
                cfg.equation
            )));
        }
        out.push(route);
    }
    Ok(out)
}

fn merged_mc(
    cfg: &RunConfig,
    seed: Option<u64>,
    n: Option<usize>,
    workers: Option<usize>,
) -> Result<McSettings> {
    let base = cfg.mc;
    let seed = seed.or(base.map(|m| m.seed)).ok_or_else(|| {
        CoreError::InvalidConfig(
            "simulate requires an explicit seed (config mc.seed or --seed)".to_string(),
        )
    })?;
    let n = n.or(base.map(|m| m.n)).ok_or_else(|| {
        CoreError::InvalidConfig("simulate requires a sample count (mc.n or --n)".to_string())
    })?;
    if n < 100 {
        return Err(CoreError::InvalidConfig("n must be at least 100".to_string()));
    }
    Ok(McSettings {
        n,
        seed,
        stream_id: base.map_or(0, |m| m.stream_id),
        workers: workers.or(base.map(|m| m.workers)).unwrap_or(1).max(1),
        tol_l: base.map_or(1e-4, |m| m.tol_l),
    })
}

fn equation_name(cfg: &RunConfig) -> &'static str {
    match cfg.equation {
        Equation::Telegraph => "telegraph",
        Equation::Epd => "epd",
    }
}

fn params_string(cfg: &RunConfig) -> String {
    match cfg.equation {
        Equation::Telegraph => {
            let f = cfg.frac.expect("validated");
            format!("alpha={},lambda={}", f.alpha, f.lambda)
        }
        Equation::Epd => format!("lambda_epd={}", cfg.lambda_epd.expect("validated")),
    }
}

fn global_diagnostics(cfg: &RunConfig) -> Vec<String> {
    let mut d = Vec::new();
    if cfg.symbol.outside_proposition_range() {
        d.push(
            "relativistic nu > 1: outside the stated range of the stochastic representation \
             proposition; analytic formulas remain valid"
                .to_string(),
        );
    }
    d
}

fn solver_tolerances() -> serde_json::Value {
    json!({
        "hankel_tail": 1e-9,
        "mittag_leffler_certification": 1e-9,
        "talbot_stabilization": 1e-8,
        "poisson_kernel_agreement": 1e-8,
        "erdelyi_kober_agreement": 1e-6,
    })
}

fn write_manifest(out: &Path, doc: serde_json::Value) -> Result<()> {
    let path: PathBuf = out.join("manifest.json");
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap())
        .map_err(|e| CoreError::InvalidConfig(format!("cannot write manifest: {e}")))
}
