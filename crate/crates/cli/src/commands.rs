//! Subcommand drivers. Each writes its CSV tables and `manifest.txt` into the
//! configured output directory.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use gjfr_core::fr1d::{project_initial, rhs, total_integral};
use gjfr_core::turbulence::{cutoff_wavenumber, ensemble_run, resonance};
use gjfr_core::vonneumann::{cfl_limit, convergence_rate, dispersion_dissipation};
use gjfr_core::{FluxModel, Mesh1D, ModeTag, SchemeParams};

use crate::config::{fmt_f64, Model, RunConfig, Sweep};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::Subcommand)]
pub enum Command {
    /// Correction functions and their derivatives on a uniform grid.
    Corrections,
    /// Grid convergence rate of the semi-discrete error.
    VnConverge,
    /// Largest stable time step at unit width and speed.
    VnCfl,
    /// Numerical dispersion and dissipation against k̂.
    VnDispersion,
    /// Solve advection or viscous Burgers from u = sin(x).
    Solve,
    /// Burgers turbulence ensemble with spectral diagnostics.
    BurgersEnsemble,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Corrections => "corrections",
            Command::VnConverge => "vn-converge",
            Command::VnCfl => "vn-cfl",
            Command::VnDispersion => "vn-dispersion",
            Command::Solve => "solve",
            Command::BurgersEnsemble => "burgers-ensemble",
        }
    }
}

/// Run one subcommand and return the files written.
pub fn run(command: Command, cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(&cfg.out).map_err(|source| CliError::Io { path: cfg.out.clone(), source })?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Config { key: "jobs".into(), message: e.to_string() })?;
    let mut files = pool.install(|| match command {
        Command::Corrections => corrections(cfg),
        Command::VnConverge => vn_converge(cfg),
        Command::VnCfl => vn_cfl(cfg),
        Command::VnDispersion => vn_dispersion(cfg),
        Command::Solve => solve(cfg),
        Command::BurgersEnsemble => burgers_ensemble(cfg),
    })?;
    let manifest = cfg.out.join("manifest.txt");
    std::fs::write(&manifest, cfg.manifest(command.name()))
        .map_err(|source| CliError::Io { path: manifest.clone(), source })?;
    files.push(manifest);
    Ok(files)
}

type Row = Vec<String>;

fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Row>) -> Result<PathBuf, CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush().map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    Ok(path.to_owned())
}

fn num(x: f64) -> String {
    fmt_f64(x)
}

/// −0.99 … −min, 0, min … 0.5 with logarithmic spacing on each side.
pub fn sweep_grid(points: usize, min: f64) -> Vec<f64> {
    let t = |i: usize| if points == 1 { 0.0 } else { i as f64 / (points - 1) as f64 };
    let (lo, m, hi) = (0.99f64.log10(), min.log10(), 0.5f64.log10());
    let mut grid: Vec<f64> = (0..points).map(|i| -(10f64.powf(lo + (m - lo) * t(i)))).collect();
    grid.push(0.0);
    grid.extend((0..points).map(|i| 10f64.powf(m + (hi - m) * t(i))));
    grid
}

fn sweep_points(cfg: &RunConfig) -> Vec<(f64, f64)> {
    let (a, b) = (cfg.params.alpha, cfg.params.beta);
    match cfg.sweep {
        Sweep::None => vec![(a, b)],
        Sweep::Diagonal => sweep_grid(cfg.sweep_points, cfg.sweep_min).into_iter().map(|g| (g, g)).collect(),
        Sweep::Beta => sweep_grid(cfg.sweep_points, cfg.sweep_min).into_iter().map(|g| (a, g)).collect(),
    }
}

/// One row per sweep point: alpha, beta, iota, value, status.
fn sweep_table(
    cfg: &RunConfig,
    file: &str,
    column: &str,
    eval: impl Fn(&SchemeParams) -> Result<f64, CliError> + Sync,
) -> Result<Vec<PathBuf>, CliError> {
    let rows: Vec<Row> = sweep_points(cfg)
        .into_par_iter()
        .map(|(a, b)| {
            let outcome = cfg.params_at(a, b).and_then(|params| Ok((params.iota, eval(&params)?)));
            match outcome {
                Ok((iota, v)) => vec![num(a), num(b), num(iota), num(v), "ok".into()],
                Err(e) => vec![num(a), num(b), String::new(), String::new(), e.to_string()],
            }
        })
        .collect();
    Ok(vec![write_csv(&cfg.out.join(file), &["alpha", "beta", "iota", column, "status"], rows)?])
}

fn corrections(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let pair = cfg.scheme.build(&cfg.params)?;
    let (dl, dr) = (pair.h_left.derivative(1), pair.h_right.derivative(1));
    let n = cfg.samples;
    let rows = (0..n).map(|i| {
        let z = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
        vec![num(z), num(pair.h_left.eval(z)), num(pair.h_right.eval(z)), num(dl.eval(z)), num(dr.eval(z))]
    });
    Ok(vec![write_csv(&cfg.out.join("corrections.csv"), &["zeta", "h_left", "h_right", "dh_left", "dh_right"], rows)?])
}

fn vn_converge(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    sweep_table(cfg, "convergence.csv", "rate", |params| {
        let ops = cfg.operators(params)?;
        Ok(convergence_rate(&ops, cfg.theta, cfg.k, cfg.periods, cfg.j1, cfg.j2)?)
    })
}

fn vn_cfl(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    sweep_table(cfg, "cfl.csv", "cfl", |params| {
        let ops = cfg.operators(params)?;
        Ok(cfl_limit(&ops, cfg.rk, cfg.theta)?)
    })
}

fn vn_dispersion(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let ops = cfg.operators(&cfg.params)?;
    let k_hat: Vec<f64> = (1..=cfg.k_points).map(|i| PI * i as f64 / cfg.k_points as f64).collect();
    let points = dispersion_dissipation(&ops, cfg.theta, &k_hat)?;
    let rows = points.into_iter().map(|d| {
        let mode = match d.mode {
            ModeTag::Primary => "primary",
            ModeTag::Secondary => "secondary",
        };
        vec![num(d.k_hat), num(d.omega_hat.re), num(d.omega_hat.im), mode.into(), d.ambiguous.to_string()]
    });
    Ok(vec![write_csv(
        &cfg.out.join("dispersion.csv"),
        &["k_hat", "re_omega_hat", "im_omega_hat", "mode", "ambiguous"],
        rows,
    )?])
}

fn solve(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let ops = cfg.operators(&cfg.params)?;
    let mesh = Mesh1D::uniform(0.0, 2.0 * PI, cfg.elements)?;
    let mut u = project_initial(f64::sin, &mesh, &ops);
    let (model, wave_speed) = match cfg.model {
        Model::Advection => (FluxModel::LinearAdvection { speed: cfg.speed }, cfg.speed.abs()),
        Model::Burgers => {
            (FluxModel::ViscousBurgers { mu: cfg.mu }, u.values.iter().fold(0.0, |m, v| f64::max(m, v.abs())))
        }
    };
    let width = 2.0 * PI / cfg.elements as f64;
    let raw = cfg.dt.unwrap_or(cfg.cfl * width / wave_speed.max(f64::MIN_POSITIVE));
    let steps = if cfg.t_end == 0.0 { 0 } else { (cfg.t_end / raw * (1.0 - 1e-12)).ceil().max(1.0) as usize };
    let dt = if steps == 0 { raw } else { cfg.t_end / steps as f64 };

    let before = total_integral(&u, &mesh, &ops);
    let mut f = |x: &[f64], out: &mut [f64]| rhs(x, &mesh, &ops, model, cfg.theta, out);
    for _ in 0..steps {
        cfg.rk.step(&mut f, &mut u.values, dt);
    }
    if !u.is_finite() {
        return Err(CliError::Core(gjfr_core::Error::Operators(format!(
            "solution is no longer finite at t = {}; reduce dt or cfl",
            cfg.t_end
        ))));
    }
    let after = total_integral(&u, &mesh, &ops);

    let np = ops.len();
    let mut rows = Vec::with_capacity(u.values.len());
    let mut err2 = 0.0;
    for n in 0..mesh.elements() {
        for i in 0..np {
            let x = mesh.map(n, ops.points[i]);
            let v = u.values[n * np + i];
            if cfg.model == Model::Advection {
                let e = v - (x - cfg.speed * cfg.t_end).sin();
                err2 += mesh.jacobian(n) * ops.weights[i] * e * e;
            }
            rows.push(vec![num(x), num(v)]);
        }
    }
    let l2 = match cfg.model {
        Model::Advection => num(err2.sqrt()),
        Model::Burgers => String::new(),
    };
    let solution = write_csv(&cfg.out.join("solution.csv"), &["x", "u"], rows)?;
    let summary = write_csv(
        &cfg.out.join("summary.csv"),
        &["t_end", "steps", "dt", "integral_initial", "integral_final", "l2_error"],
        [vec![num(cfg.t_end), steps.to_string(), num(dt), num(before), num(after), l2]],
    )?;
    Ok(vec![solution, summary])
}

fn burgers_ensemble(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let result = ensemble_run(&cfg.turbulence())?;
    let s = &result.spectrum;
    let spectrum = write_csv(
        &cfg.out.join("spectrum.csv"),
        &["k", "energy", "std_error"],
        s.k.iter().zip(&s.energy).zip(&result.std_error).map(|((k, e), se)| vec![k.to_string(), num(*e), num(*se)]),
    )?;
    let compensated = write_csv(
        &cfg.out.join("compensated.csv"),
        &["k", "k2_energy"],
        s.k.iter().zip(s.compensated()).map(|(k, c)| vec![k.to_string(), num(c)]),
    )?;

    let blank = || String::new();
    let (q, k_peak, k1, k2, res_status) = match resonance(s, cfg.k0) {
        Ok(r) => (num(r.q), r.k_peak.to_string(), num(r.k1), num(r.k2), "ok".into()),
        Err(e) => (blank(), blank(), blank(), blank(), e.to_string()),
    };
    let (cutoff, cut_status) = match cutoff_wavenumber(s, cfg.k0) {
        Ok(k) => (num(k), "ok".into()),
        Err(e) => (blank(), e.to_string()),
    };
    let slope = s.slope(25, 70).map(num).unwrap_or_default();
    let excluded: Vec<String> = result.excluded.iter().map(u64::to_string).collect();
    let summary = write_csv(
        &cfg.out.join("summary.csv"),
        &[
            "q",
            "k_peak",
            "k1",
            "k2",
            "k_cutoff",
            "slope_25_70",
            "members",
            "excluded_runs",
            "excluded_list",
            "dt",
            "steps",
            "resonance_status",
            "cutoff_status",
        ],
        [vec![
            q,
            k_peak,
            k1,
            k2,
            cutoff,
            slope,
            s.ensemble.to_string(),
            excluded.len().to_string(),
            excluded.join(" "),
            num(result.dt),
            result.steps.to_string(),
            res_status,
            cut_status,
        ]],
    )?;
    Ok(vec![spectrum, compensated, summary])
}
