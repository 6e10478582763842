use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use gjfr_cli::{run, CliError, Command, Settings};

/// Generalised Jacobi flux reconstruction experiments.
///
/// Settings come from an optional `key = value` file; flags and `--set`
/// override it.
#[derive(Parser, Debug)]
#[command(name = "gjfr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// dg, qdg, sd, osfr or gjfr.
    #[arg(long, global = true)]
    scheme: Option<String>,
    #[arg(long, global = true)]
    p: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    iota: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    c: Option<f64>,
    /// Interface blend: 1 upwind, 0 central.
    #[arg(long, global = true)]
    theta: Option<f64>,
    /// euler, rk33, rk44 or ls-rk45.
    #[arg(long, global = true)]
    rk: Option<String>,
    #[arg(long, global = true)]
    dof: Option<usize>,
    #[arg(long, global = true)]
    elements: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    ensemble: Option<usize>,
    #[arg(long = "t-end", global = true)]
    t_end: Option<f64>,
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Any other config key, e.g. `--set sweep=diagonal`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl Cli {
    fn settings(&self) -> Result<Settings, CliError> {
        let mut s = match &self.config {
            Some(path) => Settings::read(path)?,
            None => Settings::new(),
        };
        let mut flags = Settings::new();
        let pairs: [(&str, Option<String>); 15] = [
            ("scheme", self.scheme.clone()),
            ("p", self.p.map(|v| v.to_string())),
            ("alpha", self.alpha.map(|v| v.to_string())),
            ("beta", self.beta.map(|v| v.to_string())),
            ("iota", self.iota.map(|v| v.to_string())),
            ("c", self.c.map(|v| v.to_string())),
            ("theta", self.theta.map(|v| v.to_string())),
            ("rk", self.rk.clone()),
            ("dof", self.dof.map(|v| v.to_string())),
            ("elements", self.elements.map(|v| v.to_string())),
            ("seed", self.seed.map(|v| v.to_string())),
            ("ensemble", self.ensemble.map(|v| v.to_string())),
            ("t_end", self.t_end.map(|v| v.to_string())),
            ("out", self.out.as_ref().map(|v| v.display().to_string())),
            ("jobs", self.jobs.map(|v| v.to_string())),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                flags.set(key, &v)?;
            }
        }
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::Config { key: kv.clone(), message: "--set expects KEY=VALUE".into() })?;
            flags.set(k.trim(), v.trim())?;
        }
        s.merge(&flags);
        Ok(s)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = cli.settings().and_then(|s| s.resolve()).and_then(|cfg| run(cli.command, &cfg));
    match outcome {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("gjfr {}: {e}", cli.command.name());
            ExitCode::FAILURE
        }
    }
}
