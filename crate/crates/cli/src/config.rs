//! `key = value` run configuration with flag overrides.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use gjfr_core::corrections::{iota_crit, NamedScheme};
use gjfr_core::{FrOperators, PointRule, RkScheme, SchemeParams, TurbulenceConfig};

use crate::CliError;

/// Which (α, β) points a von Neumann subcommand visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    /// The configured scheme only.
    None,
    /// α = β over the sweep grid.
    Diagonal,
    /// Configured α, β over the sweep grid.
    Beta,
}

impl Sweep {
    pub fn name(&self) -> &'static str {
        match self {
            Sweep::None => "none",
            Sweep::Diagonal => "diagonal",
            Sweep::Beta => "beta",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [Sweep::None, Sweep::Diagonal, Sweep::Beta].into_iter().find(|v| v.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Advection,
    Burgers,
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Advection => "advection",
            Model::Burgers => "burgers",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [Model::Advection, Model::Burgers].into_iter().find(|v| v.name() == s)
    }
}

/// Fully resolved configuration shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scheme: NamedScheme,
    pub params: SchemeParams,
    /// Original-family parameter, set only for `osfr`.
    pub c: Option<f64>,
    pub point_rule: PointRule,
    pub theta: f64,
    pub rk: RkScheme,
    pub dof: usize,
    pub elements: usize,
    pub seed: u64,
    pub ensemble: usize,
    pub t_end: f64,
    pub out: PathBuf,
    pub jobs: usize,

    pub k: f64,
    pub periods: f64,
    pub j1: f64,
    pub j2: f64,
    pub sweep: Sweep,
    pub sweep_points: usize,
    pub sweep_min: f64,
    pub k_points: usize,
    pub samples: usize,

    pub model: Model,
    pub speed: f64,
    pub mu: f64,
    pub cfl: f64,
    pub dt: Option<f64>,

    pub mean_velocity: f64,
    pub k0: f64,
    pub kmax: usize,
    pub amplitude: f64,
}

/// Every key accepted in a config file or through `--set`.
pub const KEYS: [&str; 34] = [
    "scheme",
    "p",
    "alpha",
    "beta",
    "iota",
    "c",
    "point_rule",
    "theta",
    "rk",
    "dof",
    "elements",
    "seed",
    "ensemble",
    "t_end",
    "out",
    "jobs",
    "k",
    "periods",
    "j1",
    "j2",
    "sweep",
    "sweep_points",
    "sweep_min",
    "k_points",
    "samples",
    "model",
    "speed",
    "mu",
    "cfl",
    "dt",
    "mean_velocity",
    "k0",
    "kmax",
    "amplitude",
];

/// Raw settings in the order they were applied; later values win.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parse `key = value` lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut out = Self::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| CliError::Syntax {
                line: i + 1,
                message: format!("expected `key = value`, got `{}`", raw.trim()),
            })?;
            out.set(key.trim(), value.trim()).map_err(|e| match e {
                CliError::Config { key, message } => {
                    CliError::Syntax { line: i + 1, message: format!("{key}: {message}") }
                }
                other => other,
            })?;
        }
        Ok(out)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        if !KEYS.contains(&key) {
            return Err(CliError::Config { key: key.to_owned(), message: "unknown key".into() });
        }
        self.values.insert(key.to_owned(), value.to_owned());
        Ok(())
    }

    pub fn merge(&mut self, other: &Settings) {
        for (k, v) in &other.values {
            self.values.insert(k.clone(), v.clone());
        }
    }

    fn get<T: FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        Ok(self.get_opt(key)?.unwrap_or(default))
    }

    fn get_opt<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.values.get(key).map(|v| v.parse().map_err(|_| invalid(key, format!("cannot parse `{v}`")))).transpose()
    }

    fn get_named<T>(
        &self,
        key: &str,
        default: T,
        parse: impl Fn(&str) -> Option<T>,
        allowed: &str,
    ) -> Result<T, CliError> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => parse(v).ok_or_else(|| invalid(key, format!("`{v}` is not one of {allowed}"))),
        }
    }

    /// Resolve and validate.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let scheme = self.get_named("scheme", NamedScheme::Sd, NamedScheme::parse, "dg, qdg, sd, osfr, gjfr")?;
        let p: usize = self.get("p", 4)?;
        if p < 1 {
            return Err(invalid("p", format!("must be at least 1, got {p}")));
        }
        let alpha: Option<f64> = self.get_opt("alpha")?;
        let beta: Option<f64> = self.get_opt("beta")?;
        let iota: Option<f64> = self.get_opt("iota")?;
        let c: Option<f64> = self.get_opt("c")?;
        for (key, v) in [("alpha", alpha), ("beta", beta)] {
            if let Some(v) = v {
                if !(v > -1.0) || !v.is_finite() {
                    return Err(invalid(
                        key,
                        format!("must be finite and exceed -1 for an integrable weight, got {v}"),
                    ));
                }
            }
        }

        let fixed_ab = matches!(scheme, NamedScheme::Dg | NamedScheme::Osfr);
        if fixed_ab {
            for (key, v) in [("alpha", alpha), ("beta", beta)] {
                if v.is_some_and(|v| v != 0.0) {
                    return Err(invalid(key, format!("scheme {} fixes alpha = beta = 0", scheme.name())));
                }
            }
        }
        if scheme != NamedScheme::Osfr && c.is_some() {
            return Err(invalid("c", "only used with scheme osfr".into()));
        }
        let (a, b) = (alpha.unwrap_or(0.0), beta.unwrap_or(0.0));
        let crit = iota_crit(p, a, b);
        let free = match scheme {
            NamedScheme::Gjfr => iota.ok_or_else(|| invalid("iota", "required for scheme gjfr".into()))?,
            NamedScheme::Osfr => match (c, iota) {
                (Some(c), _) => c,
                (None, Some(i)) => 2.0 * i,
                (None, None) => return Err(invalid("c", "required for scheme osfr".into())),
            },
            _ => 0.0,
        };
        if matches!(scheme, NamedScheme::Gjfr | NamedScheme::Osfr) {
            let i = if scheme == NamedScheme::Osfr { 0.5 * free } else { free };
            if !(i > -crit) || !i.is_finite() {
                return Err(invalid(
                    if scheme == NamedScheme::Osfr { "c" } else { "iota" },
                    format!("iota = {i} must exceed -iota_crit = {:e} for a positive norm", -crit),
                ));
            }
        }
        let params = scheme.resolve(p, a, b, free)?;
        if let Some(i) = iota {
            if (i - params.iota).abs() > 1e-12 * (1.0 + params.iota.abs()) {
                return Err(invalid("iota", format!("scheme {} fixes iota = {}, got {i}", scheme.name(), params.iota)));
            }
        }

        let cfg = RunConfig {
            scheme,
            params,
            c: (scheme == NamedScheme::Osfr).then_some(free),
            point_rule: self.get_named(
                "point_rule",
                PointRule::GaussLegendre,
                PointRule::parse,
                "gauss-legendre, gauss-jacobi, gauss-lobatto",
            )?,
            theta: self.get("theta", 1.0)?,
            rk: self.get_named("rk", RkScheme::Rk44, RkScheme::parse, "euler, rk33, rk44, ls-rk45")?,
            dof: self.get("dof", 1200)?,
            elements: self.get("elements", 20)?,
            seed: self.get("seed", 0)?,
            ensemble: self.get("ensemble", 100)?,
            t_end: self.get("t_end", 0.1)?,
            out: self.get("out", PathBuf::from("out"))?,
            jobs: self.get("jobs", 1)?,
            k: self.get("k", std::f64::consts::FRAC_PI_2)?,
            periods: self.get("periods", 1000.0)?,
            j1: self.get("j1", 0.5)?,
            j2: self.get("j2", 0.25)?,
            sweep: self.get_named("sweep", Sweep::None, Sweep::parse, "none, diagonal, beta")?,
            sweep_points: self.get("sweep_points", 20)?,
            sweep_min: self.get("sweep_min", 1e-4)?,
            k_points: self.get("k_points", 64)?,
            samples: self.get("samples", 101)?,
            model: self.get_named("model", Model::Advection, Model::parse, "advection, burgers")?,
            speed: self.get("speed", 1.0)?,
            mu: self.get("mu", 2e-4)?,
            cfl: self.get("cfl", 0.057)?,
            dt: match self.values.get("dt").map(String::as_str) {
                None | Some("auto") => None,
                Some(_) => self.get_opt("dt")?,
            },
            mean_velocity: self.get("mean_velocity", 75.0)?,
            k0: self.get("k0", 10.0)?,
            kmax: self.get("kmax", 2048)?,
            amplitude: self.get("amplitude", 2.0 / (3.0 * std::f64::consts::PI.sqrt()))?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Shortest round-trip text for `x`, in exponent form when very small or large.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn invalid(key: &str, message: String) -> CliError {
    CliError::Config { key: key.to_owned(), message }
}

impl RunConfig {
    fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("t_end", self.t_end >= 0.0 && self.t_end.is_finite()),
            ("theta", (0.0..=1.0).contains(&self.theta)),
            ("dof", self.dof > 0),
            ("elements", self.elements > 0),
            ("ensemble", self.ensemble > 0),
            ("jobs", self.jobs > 0),
            ("k", self.k > 0.0 && self.k.is_finite()),
            ("periods", self.periods > 0.0 && self.periods.is_finite()),
            ("j2", self.j2 > 0.0 && self.j2 < self.j1),
            ("sweep_points", self.sweep_points > 0),
            ("sweep_min", self.sweep_min > 0.0 && self.sweep_min < 0.5),
            ("k_points", self.k_points > 0),
            ("samples", self.samples >= 2),
            ("speed", self.speed != 0.0 && self.speed.is_finite()),
            ("mu", self.mu >= 0.0 && self.mu.is_finite()),
            ("cfl", self.cfl > 0.0 && self.cfl.is_finite()),
            ("dt", self.dt.is_none_or(|d| d > 0.0 && d.is_finite())),
        ];
        let messages = [
            "must be finite and non-negative",
            "must lie in [0, 1]",
            "must be positive",
            "must be positive",
            "must be positive",
            "must be positive",
            "must be positive and finite",
            "must be positive and finite",
            "must satisfy 0 < j2 < j1",
            "must be positive",
            "must lie in (0, 0.5)",
            "must be positive",
            "must be at least 2",
            "must be non-zero and finite",
            "must be finite and non-negative",
            "must be positive and finite",
            "must be positive and finite, or auto",
        ];
        for ((key, ok), message) in positive.into_iter().zip(messages) {
            if !ok {
                return Err(invalid(key, message.into()));
            }
        }
        if !self.dof.is_multiple_of(self.params.p + 1) {
            return Err(invalid("dof", format!("{} is not a multiple of p+1 = {}", self.dof, self.params.p + 1)));
        }
        if self.sweep != Sweep::None && matches!(self.scheme, NamedScheme::Dg | NamedScheme::Osfr) {
            return Err(invalid("sweep", format!("scheme {} has fixed alpha and beta", self.scheme.name())));
        }
        self.turbulence().validate()?;
        Ok(())
    }

    pub fn operators(&self, params: &SchemeParams) -> Result<FrOperators, CliError> {
        let pair = self.scheme.build(params)?;
        let points = self.point_rule.points(params.p + 1, params.alpha, params.beta)?;
        Ok(FrOperators::from_pair(pair, points)?)
    }

    /// Resolve the configured named scheme at a different (α, β).
    pub fn params_at(&self, alpha: f64, beta: f64) -> Result<SchemeParams, CliError> {
        let free = self.c.unwrap_or(self.params.iota);
        Ok(self.scheme.resolve(self.params.p, alpha, beta, free)?)
    }

    pub fn turbulence(&self) -> TurbulenceConfig {
        TurbulenceConfig {
            k0: self.k0,
            amplitude: self.amplitude,
            kmax: self.kmax,
            mean_velocity: self.mean_velocity,
            mu: self.mu,
            dof: self.dof,
            scheme: self.params,
            point_rule: self.point_rule,
            rk: self.rk,
            cfl: self.cfl,
            dt: self.dt,
            t_end: self.t_end,
            ensemble: self.ensemble,
            seed: self.seed,
            jobs: self.jobs,
        }
    }

    /// Every resolved value as `key = value` lines. Parsing the result gives
    /// back an identical configuration.
    pub fn manifest(&self, command: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# gjfr {} {command}", env!("CARGO_PKG_VERSION"));
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("scheme", self.scheme.name().into());
        kv("p", self.params.p.to_string());
        kv("alpha", fmt_f64(self.params.alpha));
        kv("beta", fmt_f64(self.params.beta));
        match self.c {
            Some(c) => kv("c", fmt_f64(c)),
            None => kv("iota", fmt_f64(self.params.iota)),
        }
        kv("point_rule", self.point_rule.name().into());
        kv("theta", fmt_f64(self.theta));
        kv("rk", self.rk.name().into());
        kv("dof", self.dof.to_string());
        kv("elements", self.elements.to_string());
        kv("seed", self.seed.to_string());
        kv("ensemble", self.ensemble.to_string());
        kv("t_end", fmt_f64(self.t_end));
        kv("out", self.out.display().to_string());
        kv("jobs", self.jobs.to_string());
        kv("k", fmt_f64(self.k));
        kv("periods", fmt_f64(self.periods));
        kv("j1", fmt_f64(self.j1));
        kv("j2", fmt_f64(self.j2));
        kv("sweep", self.sweep.name().into());
        kv("sweep_points", self.sweep_points.to_string());
        kv("sweep_min", fmt_f64(self.sweep_min));
        kv("k_points", self.k_points.to_string());
        kv("samples", self.samples.to_string());
        kv("model", self.model.name().into());
        kv("speed", fmt_f64(self.speed));
        kv("mu", fmt_f64(self.mu));
        kv("cfl", fmt_f64(self.cfl));
        kv("dt", self.dt.map_or_else(|| "auto".into(), fmt_f64));
        kv("mean_velocity", fmt_f64(self.mean_velocity));
        kv("k0", fmt_f64(self.k0));
        kv("kmax", self.kmax.to_string());
        kv("amplitude", fmt_f64(self.amplitude));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gjfr_core::corrections::iota_of_sd;

    fn resolve(text: &str) -> Result<RunConfig, CliError> {
        Settings::parse(text)?.resolve()
    }

    #[test]
    fn sd_resolves_iota() {
        let cfg = resolve("scheme = sd\np = 4\nalpha = 0\nbeta = 0\n").unwrap();
        assert_eq!(cfg.params.iota, iota_of_sd(4, 0.0, 0.0));
    }

    #[test]
    fn defaults_match_turbulence_defaults() {
        let cfg = Settings::new().resolve().unwrap();
        assert_eq!(cfg.turbulence(), TurbulenceConfig::default());
    }

    #[test]
    fn rejects_iota_below_bound() {
        let crit = iota_crit(3, 0.0, 0.0);
        let err = resolve(&format!("scheme = gjfr\np = 3\niota = {}\n", -2.0 * crit)).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("iota") && msg.contains("-iota_crit"), "{msg}");
    }

    #[test]
    fn rejects_beta_minus_one() {
        let msg = resolve("scheme = qdg\nbeta = -1\n").unwrap_err().to_string();
        assert!(msg.starts_with("beta:"), "{msg}");
    }

    #[test]
    fn unknown_key_and_syntax_errors() {
        let msg = resolve("p = 3\nwobble = 2\n").unwrap_err().to_string();
        assert!(msg.contains("line 2") && msg.contains("wobble"), "{msg}");
        assert!(resolve("p 3\n").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let cfg = resolve("# header\n\np = 3   # trailing\n").unwrap();
        assert_eq!(cfg.params.p, 3);
    }

    #[test]
    fn named_scheme_consistency() {
        assert!(resolve("scheme = dg\nalpha = 0.3\n").is_err());
        assert!(resolve("scheme = sd\niota = 0.5\n").is_err());
        assert!(resolve("scheme = qdg\nc = 0.1\n").is_err());
        assert!(resolve("scheme = gjfr\n").is_err());
        let osfr = resolve("scheme = osfr\np = 3\nc = 0.01\n").unwrap();
        assert_eq!(osfr.params.iota, 0.005);
        assert_eq!(osfr.c, Some(0.01));
        let qdg = resolve("scheme = qdg\nalpha = 0.2\nbeta = -0.5\n").unwrap();
        assert_eq!((qdg.params.alpha, qdg.params.beta, qdg.params.iota), (0.2, -0.5, 0.0));
    }

    #[test]
    fn manifest_round_trip() {
        for text in [
            "",
            "scheme = osfr\np = 2\nc = 0.0123\ndt = 1e-5\nout = some/dir\n",
            "scheme = gjfr\np = 5\nalpha = 0.37\nbeta = -0.61\niota = 1.234e-7\nsweep = beta\njobs = 3\n",
            "scheme = sd\nalpha = 0.02\nbeta = 0.02\npoint_rule = gauss-lobatto\nrk = ls-rk45\nmodel = burgers\n",
        ] {
            let cfg = resolve(text).unwrap();
            let again = resolve(&cfg.manifest("test")).unwrap();
            assert_eq!(cfg, again);
        }
    }

    #[test]
    fn dof_must_divide() {
        let msg = resolve("p = 4\ndof = 1201\n").unwrap_err().to_string();
        assert!(msg.starts_with("dof:"), "{msg}");
    }
}
