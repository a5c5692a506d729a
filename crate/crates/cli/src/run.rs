use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use centroaffine::billiards::{
    absolute_time, far_field_curve, far_field_error, outer_billiard_step, ConvexTable,
};
use centroaffine::duality::{bs_bound_polygon, bs_product_polygon, dual_polygon};
use centroaffine::functionals::search::COUNTEREXAMPLE_THRESHOLD;
use centroaffine::functionals::{
    average_schwarzian, chord_average, conjecture_search, cot_ratio, criticality_residual, curve_from_diffeo,
    f_n_alpha, hessian_mode_numeric, i_alpha, luko_average, petty_product, positivity_scan, DiffeoCurve,
    SearchOptions,
};
use centroaffine::planar::{StarPolygon, Vec2};
use centroaffine::polygon_space::{cross_products, f_n_lower_bound, minimize_f_n, InitialPoint, MinimizeOptions};
use centroaffine::random::{random_convex_polygon, random_diffeo, random_star_polygon, random_unit_speed_curve};
use centroaffine::tolerance::EPS_OPT;

use crate::config::{Cli, Command, Format, PolygonKind};
use crate::io::{load_curve, load_polygon, parse_harmonics, parse_point, resolve_table};
use crate::report::{Report, SweepRow};
use crate::{CliError, CliResult};

/// Slack for the bound checks of sampled inequalities.
const BOUND_SLACK: f64 = 1e-8;

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn require<T: Copy>(value: Option<T>, flag: &str, command: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Config(format!("{command} needs --{flag}")))
}

fn points_json(v: &[Vec2<f64>]) -> Vec<[f64; 2]> {
    v.iter().map(|p| [p.x, p.y]).collect()
}

fn curve_arg(cli: &Cli) -> CliResult<Option<DiffeoCurve<f64>>> {
    match (&cli.input, &cli.harmonics) {
        (Some(path), _) => Ok(Some(load_curve(path, cli.grid())?)),
        (None, Some(text)) => Ok(Some(DiffeoCurve::new(parse_harmonics(text)?, cli.grid())?)),
        (None, None) => Ok(None),
    }
}

fn harmonics_json(d: &DiffeoCurve<f64>) -> Vec<(u32, f64, f64)> {
    d.harmonics().iter().map(|&(n, z)| (n, z.re, z.im)).collect()
}

fn table_arg(cli: &Cli, command: &str) -> CliResult<ConvexTable> {
    match (&cli.table, &cli.input) {
        (Some(spec), _) => resolve_table(spec, cli.grid()),
        (None, Some(path)) => crate::io::load_table(path),
        (None, None) => Err(CliError::Config(format!("{command} needs --table or --in"))),
    }
}

fn table_name(cli: &Cli) -> Option<String> {
    cli.table.clone().or_else(|| cli.input.as_ref().map(|p| p.display().to_string()))
}

/// Runs the configured experiment.
pub fn execute(cli: &Cli) -> CliResult<Report> {
    let start = Instant::now();
    let mut report = match cli.command {
        Command::PolygonMin => polygon_min(cli),
        Command::BsCheck => bs_check(cli),
        Command::IalphaSweep => ialpha_sweep(cli),
        Command::HessianScan => hessian_scan(cli),
        Command::SchwarzianCheck => schwarzian_check(cli),
        Command::Criticality => criticality(cli),
        Command::ConjectureSearch => search(cli),
        Command::BilliardOrbit => billiard_orbit(cli),
        Command::FarfieldError => farfield(cli),
        Command::Abstime => abstime(cli),
        Command::ChordCheck => chord_check(cli),
    }?;
    if cli.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

/// Runs the experiment and writes the report to `--out` or standard output.
pub fn run(cli: &Cli) -> CliResult<Report> {
    let report = execute(cli)?;
    if cli.format == Format::Csv && report.sweep.is_none() {
        return Err(CliError::Config(format!("csv output is only available for alpha sweeps, not {}", report.command)));
    }
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            report.write(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            report.write(cli.format, &mut w)?;
        }
    }
    Ok(report)
}

fn polygon_min(cli: &Cli) -> CliResult<Report> {
    let mut report = Report::new("polygon-min");
    let starts: Vec<StarPolygon<f64>> = match &cli.input {
        Some(path) => vec![load_polygon(path)?],
        None => {
            let n = require(cli.n, "n", "polygon-min")?;
            if n < 3 {
                return Err(CliError::Config(format!("polygon-min needs n >= 3, got {n}")));
            }
            let trials = cli.trials.unwrap_or(1).max(1);
            report.input("seed", cli.seed).input("trials", trials);
            (0..trials).map(|t| random_star_polygon(n, 0.3, &mut trial_rng(cli.seed, t))).collect()
        }
    };
    let n = starts[0].n();
    report.input("n", n);
    let bound = f_n_lower_bound(n);
    let mut runs = Vec::new();
    let mut best: Option<(f64, StarPolygon<f64>, bool, f64, usize)> = None;
    for p in starts {
        let r = minimize_f_n(n, &InitialPoint::Polygon(p), &MinimizeOptions::default())?;
        runs.push(json!({"value": r.value, "converged": r.converged, "iterations": r.iterations}));
        if best.as_ref().is_none_or(|b| r.value < b.0) {
            best = Some((r.value, r.polygon, r.converged, r.gradient_norm, r.iterations));
        }
    }
    let all_converged = runs.iter().all(|r| r["converged"] == json!(true));
    let (value, polygon, converged, gradient_norm, iterations) = best.expect("at least one start");
    report
        .result("value", value)
        .result("converged", converged)
        .result("all_converged", all_converged)
        .result("gradient_norm", gradient_norm)
        .result("iterations", iterations)
        .result("cross_products", cross_products(&polygon).values())
        .result("vertices", points_json(polygon.vertices()))
        .result("runs", runs)
        .inequality(bound, value >= bound - EPS_OPT);
    report.violation |= !all_converged;
    Ok(report)
}

fn bs_check(cli: &Cli) -> CliResult<Report> {
    let mut report = Report::new("bs-check");
    let polygons: Vec<StarPolygon<f64>> = if let Some(path) = &cli.input {
        vec![load_polygon(path)?]
    } else {
        let n = require(cli.n, "n", "bs-check")?;
        if n < 3 {
            return Err(CliError::Config(format!("bs-check needs n >= 3, got {n}")));
        }
        match cli.polygon.unwrap_or(PolygonKind::Regular) {
            PolygonKind::Regular => {
                report.input("polygon", "regular");
                let r = (PI / n as f64).sin().recip().sqrt();
                vec![StarPolygon::new((0..n).map(|i| Vec2::polar(i as f64 * PI / n as f64) * r).collect())?]
            }
            PolygonKind::Random => {
                let trials = cli.trials.unwrap_or(100).max(1);
                report.input("polygon", "random").input("seed", cli.seed).input("trials", trials);
                (0..trials).map(|t| random_star_polygon(n, 0.05, &mut trial_rng(cli.seed, t))).collect()
            }
        }
    };
    let n = polygons[0].n();
    report.input("n", n);
    let bound = bs_bound_polygon(n);
    let worst = polygons
        .iter()
        .max_by(|a, b| bs_product_polygon(*a).total_cmp(&bs_product_polygon(*b)))
        .expect("at least one polygon");
    let product = bs_product_polygon(worst);
    report
        .result("product", product)
        .result("area", product / dual_polygon(worst).area())
        .result("dual_area", dual_polygon(worst).area())
        .result("cross_products", cross_products(worst).values())
        .inequality(bound, product <= bound + BOUND_SLACK);
    Ok(report)
}

fn ialpha_sweep(cli: &Cli) -> CliResult<Report> {
    let d = curve_arg(cli)?.ok_or_else(|| CliError::Config("ialpha-sweep needs --in or --harmonics".into()))?;
    let curve = curve_from_diffeo(&d)?;
    let alphas: Vec<f64> = match cli.alpha {
        Some(a) => vec![a],
        None => {
            let g = cli.alpha_grid.unwrap_or(64).max(1);
            (1..=g).map(|k| k as f64 * PI / (g + 1) as f64).collect()
        }
    };
    let mut rows = Vec::with_capacity(alphas.len());
    for a in alphas {
        rows.push(SweepRow { alpha: a, value: i_alpha(&curve, a)?, bound: a.sin() });
    }
    let min_deficit = rows.iter().fold(f64::INFINITY, |m, r| m.min(r.value - r.bound));
    let mut report = Report::new("ialpha-sweep");
    report
        .input("harmonics", harmonics_json(&d))
        .input("grid", d.grid())
        .result("min_deficit", min_deficit)
        .inequality(0.0, min_deficit >= COUNTEREXAMPLE_THRESHOLD);
    report.sweep = Some(rows);
    Ok(report)
}

fn hessian_scan(cli: &Cli) -> CliResult<Report> {
    let n_max = cli.n.unwrap_or(64) as u32;
    let points = cli.alpha_grid.unwrap_or(400);
    let scan = positivity_scan(n_max, points)?;
    let alpha = cli.alpha.unwrap_or(PI / 3.0);
    let mut modes = Vec::new();
    for n in (4..=n_max.min(8)).step_by(2) {
        let numeric = hessian_mode_numeric(n, alpha, 1e-3)?;
        modes.push(json!({"n": n, "numeric": numeric, "f_n": f_n_alpha(n, alpha), "ratio": numeric / f_n_alpha(n, alpha)}));
    }
    let rows: Vec<_> = scan
        .rows
        .iter()
        .map(|r| json!({"n": r.n, "min_value": r.min_value, "argmin": r.argmin, "ratio": r.ratio}))
        .collect();
    let mut report = Report::new("hessian-scan");
    report
        .input("n_max", n_max)
        .input("alpha_grid", points)
        .input("alpha", alpha)
        .result("rows", rows)
        .result("ratios_increasing", scan.ratios_increasing())
        .result("cot_ratio_n4", cot_ratio(4))
        .result("modes", modes)
        .inequality(0.0, scan.all_positive());
    Ok(report)
}

fn schwarzian_check(cli: &Cli) -> CliResult<Report> {
    let mut report = Report::new("schwarzian-check");
    let curves: Vec<DiffeoCurve<f64>> = match curve_arg(cli)? {
        Some(d) => {
            report.input("harmonics", harmonics_json(&d));
            vec![d]
        }
        None => {
            let trials = cli.trials.unwrap_or(200).max(1);
            let cutoff = cli.cutoff.unwrap_or(4);
            report.input("seed", cli.seed).input("trials", trials).input("cutoff", cutoff);
            (0..trials)
                .map(|t| random_diffeo(cutoff, 0.3, cli.grid(), &mut trial_rng(cli.seed, t)))
                .collect::<Result<_, _>>()?
        }
    };
    report.input("grid", cli.grid());
    let (mut max_s, mut max_petty) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for d in &curves {
        max_s = max_s.max(average_schwarzian(d)?);
        max_petty = max_petty.max(petty_product(&curve_from_diffeo(d)?)?);
    }
    report
        .result("max_average_schwarzian", max_s)
        .result("max_petty_product", max_petty)
        .result("petty_bound", PI * PI)
        .result("petty_satisfied", max_petty <= PI * PI + 1e-7)
        .inequality(PI, max_s <= PI + 1e-7);
    report.violation |= max_petty > PI * PI + 1e-7;
    Ok(report)
}

fn criticality(cli: &Cli) -> CliResult<Report> {
    let d = curve_arg(cli)?.ok_or_else(|| CliError::Config("criticality needs --in or --harmonics".into()))?;
    let alpha = cli.alpha.unwrap_or(PI / 3.0);
    let residual = criticality_residual(&curve_from_diffeo(&d)?, alpha)?;
    let max = residual.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let mut report = Report::new("criticality");
    report
        .input("harmonics", harmonics_json(&d))
        .input("alpha", alpha)
        .input("grid", d.grid())
        .result("max_residual", max)
        .result("critical", max < 1e-8);
    report.residuals = Some(residual);
    Ok(report)
}

fn search(cli: &Cli) -> CliResult<Report> {
    let opts = SearchOptions {
        cutoff: cli.cutoff.unwrap_or(4),
        trials: cli.trials.unwrap_or(50),
        alpha_grid: cli.alpha_grid.unwrap_or(64),
        seed: cli.seed,
        grid: cli.grid.unwrap_or(256),
        ..Default::default()
    };
    let r = conjecture_search(&opts)?;
    let trials: Vec<_> = r
        .trials
        .iter()
        .map(|t| {
            json!({
                "trial": t.trial,
                "start_deficit": t.start_deficit,
                "best_deficit": t.best_deficit,
                "best_alpha": t.best_alpha,
                "iterations": t.iterations,
                "rejected_starts": t.rejected_starts,
                "harmonics": t.harmonics,
            })
        })
        .collect();
    let mut report = Report::new("conjecture-search");
    report
        .input("cutoff", opts.cutoff)
        .input("trials", opts.trials)
        .input("alpha_grid", opts.alpha_grid)
        .input("seed", opts.seed)
        .input("grid", opts.grid)
        .input("amplitude", opts.amplitude)
        .result("best_deficit", r.best_deficit)
        .result("best_trial", r.best_trial)
        .result("counterexample", r.counterexample())
        .result("threshold", COUNTEREXAMPLE_THRESHOLD)
        .result("trials", trials)
        .inequality(0.0, !r.counterexample());
    Ok(report)
}

fn billiard_orbit(cli: &Cli) -> CliResult<Report> {
    let table = table_arg(cli, "billiard-orbit")?;
    let start = parse_point(cli.start.as_deref().ok_or_else(|| CliError::Config("billiard-orbit needs --start x,y".into()))?)?;
    let steps = cli.steps.unwrap_or(100);
    let mut orbit = vec![start];
    let mut diagnostic = None;
    let mut x = start;
    for i in 0..steps {
        match outer_billiard_step(&table, x) {
            Ok(y) => {
                orbit.push(y);
                x = y;
            }
            Err(e) => {
                diagnostic = Some(format!("step {i}: {e}"));
                break;
            }
        }
    }
    let mut report = Report::new("billiard-orbit");
    report
        .input("table", table_name(cli))
        .input("start", [start.x, start.y])
        .input("steps", steps)
        .result("orbit", points_json(&orbit))
        .result("diagnostic", diagnostic);
    Ok(report)
}

fn farfield(cli: &Cli) -> CliResult<Report> {
    let table = table_arg(cli, "farfield-error")?;
    let radius = cli.radius.unwrap_or(1e3);
    let revolutions = cli.revolutions.unwrap_or(1.0);
    let e = far_field_error(&table, radius, revolutions)?;
    let mut report = Report::new("farfield-error");
    report
        .input("table", table_name(cli))
        .input("radius", radius)
        .input("revolutions", revolutions)
        .result("error", e.error)
        .result("iterations", e.iterations)
        .result("revolutions", e.revolutions)
        .result("diagnostics", e.diagnostics);
    Ok(report)
}

fn abstime(cli: &Cli) -> CliResult<Report> {
    let table = table_arg(cli, "abstime")?;
    let r = absolute_time(&table)?;
    let kepler = far_field_curve(&table)?.kepler_residual();
    let tol = 1e-8;
    let mut report = Report::new("abstime");
    report
        .input("table", table_name(cli))
        .result("t_abs", r.t_abs)
        .result("t_raw", r.t_raw)
        .result("area_table_sym", r.area_table_sym)
        .result("area_gamma", r.area_gamma)
        .result("lower_bound", r.lower_bound)
        .result("upper_bound", r.upper_bound)
        .result("polygon_bound", r.polygon_bound)
        .result("lower_equality", r.lower_equality(tol))
        .result("upper_equality", r.upper_equality(tol))
        .result("kepler_residual", kepler)
        .inequality(r.polygon_bound.unwrap_or(r.upper_bound).min(r.upper_bound), r.within_bounds(1e-6));
    Ok(report)
}

fn chord_check(cli: &Cli) -> CliResult<Report> {
    let trials = cli.trials.unwrap_or(100);
    let fs: [(&str, fn(f64) -> f64); 2] = [("identity", |x| x), ("sqrt", f64::sqrt)];
    let mut report = Report::new("chord-check");
    report.input("seed", cli.seed).input("trials", trials);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut extremal = Vec::new();
    let bound;
    if let Some(k) = cli.k {
        let n = require(cli.n, "n", "chord-check with --k")?;
        report.input("n", n).input("k", k);
        let regular: Vec<Vec2<f64>> = (0..n).map(|j| Vec2::polar(2.0 * PI * j as f64 / n as f64)).collect();
        for (name, f) in fs {
            let r = luko_average(&regular, k, f)?;
            extremal.push(json!({"f": name, "value": r.value, "bound": r.bound}));
        }
        bound = luko_average(&regular, k, |x| x)?.bound;
        for t in 0..trials {
            let p = random_convex_polygon(n, &mut trial_rng(cli.seed, t))?;
            for (_, f) in fs {
                let r = luko_average(p.vertices(), k, f)?;
                worst_excess = worst_excess.max(r.value - r.bound);
            }
        }
    } else {
        let c = cli.alpha.unwrap_or(PI / 2.0);
        let grid = cli.grid.unwrap_or(256);
        report.input("c", c).input("grid", grid);
        let circle: Vec<Vec2<f64>> = (0..grid).map(|j| Vec2::polar(2.0 * PI * j as f64 / grid as f64)).collect();
        for (name, f) in fs {
            let r = chord_average(&circle, c, f)?;
            extremal.push(json!({"f": name, "value": r.value, "bound": r.bound}));
        }
        bound = chord_average(&circle, c, |x| x)?.bound;
        for t in 0..trials {
            let curve = random_unit_speed_curve(grid, 4, 0.3, &mut trial_rng(cli.seed, t));
            for (_, f) in fs {
                let r = chord_average(&curve, c, f)?;
                worst_excess = worst_excess.max(r.value - r.bound);
            }
        }
    }
    report
        .result("extremal", extremal)
        .result("max_excess", if trials == 0 { None } else { Some(worst_excess) })
        .inequality(bound, trials == 0 || worst_excess <= 0.0);
    Ok(report)
}
