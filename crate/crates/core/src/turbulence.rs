//! Decaying Burgers turbulence on [0, 2π]: random-phase initial fields,
//! ensemble solves, energy spectra and the diagnostics of the compensated
//! spectrum k²E(k).

use std::f64::consts::PI;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use rustfft::{num_complex::Complex64, FftPlanner};

use crate::corrections::SchemeParams;
use crate::error::{Error, Result};
use crate::fr1d::{project_initial, FrOperators, Mesh1D, PointRule, SolutionField, ViscousWorkspace};
use crate::timeint::RkScheme;

/// Ratio corresponding to −3 dB in power.
const HALF_POWER: f64 = 0.501_187_233_627_272_2;

#[derive(Debug, Clone, PartialEq)]
pub struct TurbulenceConfig {
    pub k0: f64,
    pub amplitude: f64,
    pub kmax: usize,
    pub mean_velocity: f64,
    pub mu: f64,
    pub dof: usize,
    pub scheme: SchemeParams,
    pub point_rule: PointRule,
    pub rk: RkScheme,
    pub cfl: f64,
    /// Explicit time step; when `None` it follows from `cfl`.
    pub dt: Option<f64>,
    pub t_end: f64,
    pub ensemble: usize,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for TurbulenceConfig {
    fn default() -> Self {
        Self {
            k0: 10.0,
            amplitude: 2.0 / (3.0 * PI.sqrt()),
            kmax: 2048,
            mean_velocity: 75.0,
            mu: 2e-4,
            dof: 1200,
            scheme: SchemeParams { p: 4, alpha: 0.0, beta: 0.0, iota: crate::corrections::iota_of_sd(4, 0.0, 0.0) },
            point_rule: PointRule::GaussLegendre,
            rk: RkScheme::Rk44,
            cfl: 0.057,
            dt: None,
            t_end: 0.1,
            ensemble: 100,
            seed: 0,
            jobs: 1,
        }
    }
}

impl TurbulenceConfig {
    pub fn validate(&self) -> Result<()> {
        let np = self.scheme.p + 1;
        let fail = |m: String| Err(Error::Turbulence(m));
        if self.dof == 0 || !self.dof.is_multiple_of(np) {
            return fail(format!("dof = {} is not a positive multiple of p+1 = {np}", self.dof));
        }
        if !(self.k0 > 0.0) || !(self.k0 < self.kmax as f64) {
            return fail(format!("need 0 < k0 < kmax, got k0 = {}, kmax = {}", self.k0, self.kmax));
        }
        if !(self.mu >= 0.0) {
            return fail(format!("mu must be non-negative, got {}", self.mu));
        }
        if self.ensemble == 0 {
            return fail("ensemble size must be at least 1".into());
        }
        if self.jobs == 0 {
            return fail("jobs must be at least 1".into());
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return fail(format!("t_end must be finite and non-negative, got {}", self.t_end));
        }
        if !(self.mean_velocity > 0.0) {
            return fail(format!("mean velocity must be positive, got {}", self.mean_velocity));
        }
        match self.dt {
            Some(dt) if !(dt > 0.0) => fail(format!("dt must be positive, got {dt}")),
            None if !(self.cfl > 0.0) => fail(format!("cfl must be positive, got {}", self.cfl)),
            _ => Ok(()),
        }
    }

    pub fn elements(&self) -> usize {
        self.dof / (self.scheme.p + 1)
    }

    /// E(k, 0) = A k⁴/k0⁵ exp(−(k/k0)²).
    pub fn initial_spectrum(&self, k: f64) -> f64 {
        self.amplitude * k.powi(4) / self.k0.powi(5) * (-(k / self.k0).powi(2)).exp()
    }

    /// (Δt, step count): Δt from the initial CFL with Δx the element width,
    /// shrunk so that the step count is an integer.
    pub fn time_step(&self) -> (f64, usize) {
        let raw = self.dt.unwrap_or_else(|| {
            let dx = 2.0 * PI / self.elements() as f64;
            self.cfl * dx / self.mean_velocity
        });
        if self.t_end == 0.0 {
            return (raw, 0);
        }
        let steps = (self.t_end / raw * (1.0 - 1e-12)).ceil().max(1.0) as usize;
        (self.t_end / steps as f64, steps)
    }
}

/// u(x) = ū + Σ_k √(2E(k,0)) cos(kx + 2πΦ(k)).
#[derive(Debug, Clone, PartialEq)]
pub struct InitialField {
    pub mean: f64,
    /// (k, amplitude, phase in radians), zero-amplitude terms dropped.
    pub modes: Vec<(f64, f64, f64)>,
}

impl InitialField {
    pub fn eval(&self, x: f64) -> f64 {
        self.mean + self.modes.iter().map(|&(k, a, ph)| a * (k * x + ph).cos()).sum::<f64>()
    }
}

/// Φ(k) ∈ (0, 1] for member `run`, from a ChaCha8 stream selected by the run
/// and positioned by k.
pub fn phase(seed: u64, run: u64, k: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(run);
    rng.set_word_pos(2 * k as u128);
    1.0 - (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn synthesize_initial(config: &TurbulenceConfig, run: u64) -> InitialField {
    let modes = (1..=config.kmax)
        .filter_map(|k| {
            let amp = (2.0 * config.initial_spectrum(k as f64)).sqrt();
            (amp > 0.0).then(|| (k as f64, amp, 2.0 * PI * phase(config.seed, run, k)))
        })
        .collect();
    InitialField { mean: config.mean_velocity, modes }
}

/// E(k) for integer k ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergySpectrum {
    pub k: Vec<usize>,
    pub energy: Vec<f64>,
    pub time: f64,
    pub ensemble: usize,
}

impl EnergySpectrum {
    pub fn compensated(&self) -> Vec<f64> {
        self.k.iter().zip(&self.energy).map(|(&k, e)| (k * k) as f64 * e).collect()
    }

    pub fn total(&self) -> f64 {
        self.energy.iter().sum()
    }

    /// Value at integer wavenumber k.
    pub fn at(&self, k: usize) -> Option<f64> {
        self.k.iter().position(|&x| x == k).map(|i| self.energy[i])
    }

    /// Least-squares slope of log E against log k over [lo, hi].
    pub fn slope(&self, lo: usize, hi: usize) -> Result<f64> {
        let pts: Vec<(f64, f64)> = self
            .k
            .iter()
            .zip(&self.energy)
            .filter(|(&k, &e)| k >= lo && k <= hi && e > 0.0)
            .map(|(&k, &e)| ((k as f64).ln(), e.ln()))
            .collect();
        if pts.len() < 2 {
            return Err(Error::Turbulence(format!("fewer than two positive bins in [{lo}, {hi}]")));
        }
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        Ok(sxy / sxx)
    }

    /// Integer k maximising E.
    pub fn argmax(&self) -> Option<usize> {
        self.energy.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).map(|(i, _)| self.k[i])
    }
}

/// Spectrum of S equispaced samples on [0, 2π): c_k = X_k/S and
/// E(k) = ½(|c_k|² + |c_{−k}|²), so that Σ E = ½ mean((u − ū)²).
pub fn spectrum_of_samples(samples: &[f64]) -> Vec<f64> {
    let s = samples.len();
    if s < 2 {
        return Vec::new();
    }
    let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(s).process(&mut buf);
    let scale = 1.0 / s as f64;
    let c: Vec<f64> = buf.iter().map(|z| (z * scale).norm_sqr()).collect();
    (1..=s / 2).map(|k| if 2 * k == s { 0.5 * c[k] } else { 0.5 * (c[k] + c[s - k]) }).collect()
}

/// Precomputed equispaced evaluation of the piecewise polynomial solution.
#[derive(Debug, Clone)]
pub struct SpectrumSampler {
    /// (element, Lagrange row) per sample.
    rows: Vec<(usize, Vec<f64>)>,
}

impl SpectrumSampler {
    /// S samples at x_s = x_0 + L s / S, each evaluated in the element that
    /// contains it (left-closed).
    pub fn new(mesh: &Mesh1D, ops: &FrOperators, samples: usize) -> Self {
        let x0 = mesh.boundaries[0];
        let len = mesh.length();
        let mut n = 0;
        let rows = (0..samples)
            .map(|s| {
                let x = x0 + len * s as f64 / samples as f64;
                while n + 1 < mesh.elements() && x >= mesh.boundaries[n + 1] {
                    n += 1;
                }
                let zeta = ((x - mesh.boundaries[n]) / mesh.jacobian(n) - 1.0).clamp(-1.0, 1.0);
                (n, ops.interpolation_row(zeta))
            })
            .collect();
        Self { rows }
    }

    pub fn sample(&self, state: &SolutionField) -> Vec<f64> {
        self.rows.iter().map(|(n, row)| row.iter().zip(state.element(*n)).map(|(l, u)| l * u).sum()).collect()
    }

    pub fn spectrum(&self, state: &SolutionField, time: f64) -> EnergySpectrum {
        let energy = spectrum_of_samples(&self.sample(state));
        EnergySpectrum { k: (1..=energy.len()).collect(), energy, time, ensemble: 1 }
    }
}

/// Spectrum of a solution on a periodic mesh of [0, 2π] sampled at S = dof
/// equispaced points.
pub fn compute_spectrum(state: &SolutionField, mesh: &Mesh1D, ops: &FrOperators, time: f64) -> EnergySpectrum {
    SpectrumSampler::new(mesh, ops, state.values.len()).spectrum(state, time)
}

fn crossing(c: &[f64], k: &[usize], from: usize, to: usize, level: f64) -> f64 {
    // c[from] ≥ level > c[to], adjacent bins.
    let t = (c[from].ln() - level.ln()) / (c[from].ln() - c[to].ln());
    k[from] as f64 + t * (k[to] as f64 - k[from] as f64)
}

/// Plateau level: median of k²E over [lo, hi], with the spread check.
pub fn plateau_level(spectrum: &EnergySpectrum, lo: usize, hi: usize) -> Result<f64> {
    let comp = spectrum.compensated();
    let mut band: Vec<f64> =
        spectrum.k.iter().zip(&comp).filter(|(&k, _)| k >= lo && k <= hi).map(|(_, &c)| c).collect();
    if band.is_empty() {
        return Err(Error::NoPlateau(format!("no bins in [{lo}, {hi}]")));
    }
    band.sort_by(f64::total_cmp);
    let (min, max) = (band[0], band[band.len() - 1]);
    if !(min > 0.0) || 10.0 * (max / min).log10() > 6.0 {
        return Err(Error::NoPlateau(format!(
            "k²E spread over [{lo}, {hi}] is {:.2} dB, above 6 dB",
            10.0 * (max / min).log10()
        )));
    }
    let m = band.len();
    Ok(if m % 2 == 1 { band[m / 2] } else { 0.5 * (band[m / 2 - 1] + band[m / 2]) })
}

/// Resonance parameters of the compensated spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub k_peak: usize,
    pub k1: f64,
    pub k2: f64,
    pub q: f64,
}

/// Q = k_peak/(k2 − k1) with the peak of k²E searched above `search_from`
/// and k1, k2 the −3 dB crossings around it. The peak must stand at least
/// 3 dB above the plateau over [2k0, 6k0].
pub fn resonance(spectrum: &EnergySpectrum, k0: f64) -> Result<Resonance> {
    let comp = spectrum.compensated();
    let ks = &spectrum.k;
    let from = (6.0 * k0).floor() as usize;
    let idx = (0..ks.len())
        .filter(|&i| ks[i] > from)
        .max_by(|&a, &b| comp[a].total_cmp(&comp[b]))
        .ok_or_else(|| Error::NoPeak(format!("no bins above k = {from}")))?;
    if idx + 1 == ks.len() || ks[idx] <= from + 1 {
        return Err(Error::NoPeak(format!("maximum of k²E at the search edge k = {}", ks[idx])));
    }
    let lo = (2.0 * k0).ceil() as usize;
    let plateau =
        plateau_level(spectrum, lo, from).map_err(|e| Error::NoPeak(format!("reference level unavailable: {e}")))?;
    let prominence = 10.0 * (comp[idx] / plateau).log10();
    if prominence < 3.0 {
        return Err(Error::NoPeak(format!("peak at k = {} is only {prominence:.2} dB above the plateau", ks[idx])));
    }
    let level = comp[idx] * HALF_POWER;
    let left = (1..=idx)
        .rev()
        .find(|&i| comp[i - 1] < level)
        .ok_or_else(|| Error::NoPeak("no lower half-power crossing".into()))?;
    let right = (idx..ks.len() - 1)
        .find(|&i| comp[i + 1] < level)
        .ok_or_else(|| Error::NoPeak("no upper half-power crossing".into()))?;
    let k1 = crossing(&comp, ks, left, left - 1, level);
    let k2 = crossing(&comp, ks, right, right + 1, level);
    Ok(Resonance { k_peak: ks[idx], k1, k2, q: ks[idx] as f64 / (k2 - k1) })
}

pub fn q_factor(spectrum: &EnergySpectrum, k0: f64) -> Result<f64> {
    resonance(spectrum, k0).map(|r| r.q)
}

/// Smallest k above the plateau band [2k0, 6k0] where k²E falls 3 dB below
/// the plateau median and stays below for 3 consecutive wavenumbers.
pub fn cutoff_wavenumber(spectrum: &EnergySpectrum, k0: f64) -> Result<f64> {
    let lo = (2.0 * k0).ceil() as usize;
    let hi = (6.0 * k0).floor() as usize;
    let plateau = plateau_level(spectrum, lo, hi)?;
    let level = plateau * HALF_POWER;
    let comp = spectrum.compensated();
    let ks = &spectrum.k;
    for i in 1..ks.len().saturating_sub(2) {
        if ks[i] <= hi {
            continue;
        }
        if comp[i] < level && comp[i + 1] < level && comp[i + 2] < level && comp[i - 1] >= level {
            return Ok(crossing(&comp, ks, i - 1, i, level));
        }
    }
    Err(Error::NoCrossing(format!("k²E never stays 3 dB below the plateau {plateau:e}")))
}

/// Outcome of an ensemble of independent solves.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleResult {
    /// Mean over the finite runs.
    pub spectrum: EnergySpectrum,
    /// Standard error of the mean per wavenumber.
    pub std_error: Vec<f64>,
    /// Run indices that produced non-finite values.
    pub excluded: Vec<u64>,
    pub dt: f64,
    pub steps: usize,
}

/// Solver pieces shared by every member of an ensemble.
pub struct EnsembleSetup {
    pub mesh: Mesh1D,
    pub ops: FrOperators,
    pub sampler: SpectrumSampler,
}

impl EnsembleSetup {
    pub fn new(config: &TurbulenceConfig) -> Result<Self> {
        config.validate()?;
        let mesh = Mesh1D::uniform(0.0, 2.0 * PI, config.elements())?;
        let ops = FrOperators::build(&config.scheme, config.point_rule)?;
        let sampler = SpectrumSampler::new(&mesh, &ops, config.dof);
        Ok(Self { mesh, ops, sampler })
    }

    pub fn initial_state(&self, config: &TurbulenceConfig, run: u64) -> SolutionField {
        let field = synthesize_initial(config, run);
        project_initial(|x| field.eval(x), &self.mesh, &self.ops)
    }

    /// Advance one member to `t_end`. `None` if the solution stops being finite.
    pub fn solve(&self, config: &TurbulenceConfig, run: u64) -> Option<SolutionField> {
        let mut state = self.initial_state(config, run);
        let (dt, steps) = config.time_step();
        let mut ws = ViscousWorkspace::new(self.mesh.elements(), self.ops.len());
        let mut rhs = |u: &[f64], out: &mut [f64]| ws.rhs(u, &self.mesh, &self.ops, config.mu, true, out);
        for step in 0..steps {
            config.rk.step(&mut rhs, &mut state.values, dt);
            if step % 64 == 63 && !state.is_finite() {
                return None;
            }
        }
        state.is_finite().then_some(state)
    }

    pub fn member_spectrum(&self, config: &TurbulenceConfig, run: u64) -> Option<EnergySpectrum> {
        self.solve(config, run).map(|s| self.sampler.spectrum(&s, config.t_end))
    }
}

/// Mean spectrum over `config.ensemble` runs. Members run on `config.jobs`
/// threads; the reduction is in run order, so the result does not depend on
/// the thread count.
pub fn ensemble_run(config: &TurbulenceConfig) -> Result<EnsembleResult> {
    let setup = EnsembleSetup::new(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Turbulence(format!("thread pool: {e}")))?;
    let members: Vec<Option<EnergySpectrum>> = pool.install(|| {
        (0..config.ensemble as u64).into_par_iter().map(|run| setup.member_spectrum(config, run)).collect()
    });

    let bins = config.dof / 2;
    let mut sum = vec![0.0; bins];
    let mut sum_sq = vec![0.0; bins];
    let mut used = 0usize;
    let mut excluded = Vec::new();
    for (run, m) in members.iter().enumerate() {
        match m {
            Some(s) => {
                used += 1;
                for (i, e) in s.energy.iter().enumerate() {
                    sum[i] += e;
                    sum_sq[i] += e * e;
                }
            }
            None => excluded.push(run as u64),
        }
    }
    if used == 0 {
        return Err(Error::Turbulence(format!("all {} runs diverged", config.ensemble)));
    }
    let n = used as f64;
    let energy: Vec<f64> = sum.iter().map(|s| s / n).collect();
    let std_error = sum_sq
        .iter()
        .zip(&energy)
        .map(|(sq, mean)| {
            if used < 2 {
                return 0.0;
            }
            let var = ((sq - n * mean * mean) / (n - 1.0)).max(0.0);
            (var / n).sqrt()
        })
        .collect();
    let (dt, steps) = config.time_step();
    Ok(EnsembleResult {
        spectrum: EnergySpectrum { k: (1..=bins).collect(), energy, time: config.t_end, ensemble: used },
        std_error,
        excluded,
        dt,
        steps,
    })
}
