//! Bloch-wave analysis of the linear advection operator u_t + u_x = 0.
//!
//! Substituting u_{j±1} = e^{±ikΔ} u_j into the element equations gives
//! du_j/dt = −Q(k) u_j with a (p+1)×(p+1) complex matrix. Eigenvalues are
//! reported as λ = μ/(ik) for eigenvalues μ of Q, so the exact dispersion
//! relation is λ = 1.

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fr1d::FrOperators;
use crate::timeint::RkScheme;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorQ {
    pub matrix: DMatrix<Complex64>,
    pub k: f64,
    pub theta: f64,
    pub delta: f64,
}

#[derive(Debug, Clone)]
pub struct OperatorSpectrum {
    /// λ_n with Q = ik W diag(λ) W⁻¹.
    pub eigenvalues: Vec<Complex64>,
    /// Unit-norm eigenvectors as columns.
    pub eigenvectors: DMatrix<Complex64>,
    /// W⁻¹ u_0.
    pub v0: DVector<Complex64>,
    /// ‖W‖_F ‖W⁻¹‖_F.
    pub condition: f64,
}

/// Q(k) for unit advection speed on elements of width `delta`, with
/// upwind fraction `theta` at both interfaces.
pub fn assemble_q(ops: &FrOperators, k: f64, theta: f64, delta: f64) -> OperatorQ {
    let np = ops.len();
    let jac = 0.5 * delta;
    let behind = (-I * k * delta).exp();
    let ahead = (I * k * delta).exp();
    let mut m = DMatrix::zeros(np, np);
    for i in 0..np {
        for j in 0..np {
            let (ll, lr) = (ops.ell_left[j], ops.ell_right[j]);
            let row_l = 0.5 * (behind * lr + ll) + 0.5 * theta * (behind * lr - ll);
            let row_r = 0.5 * (lr + ahead * ll) + 0.5 * theta * (lr - ahead * ll);
            let v = Complex64::new(ops.d[(i, j)], 0.0) + ops.g_left[i] * (row_l - ll) + ops.g_right[i] * (row_r - lr);
            m[(i, j)] = v / jac;
        }
    }
    OperatorQ { matrix: m, k, theta, delta }
}

/// As [`assemble_q`] with the range checks kΔ ∈ (0, π(p+1)] and θ ∈ [0, 1].
pub fn assemble_q_checked(ops: &FrOperators, k: f64, theta: f64, delta: f64) -> Result<OperatorQ> {
    let top = std::f64::consts::PI * ops.len() as f64;
    let kd = k * delta;
    if !(kd > 0.0 && kd <= top * (1.0 + 1e-12)) {
        return Err(Error::Spectral(format!("k*delta = {kd} outside (0, {top}]")));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::Spectral(format!("theta = {theta} outside [0, 1]")));
    }
    if !(delta > 0.0) {
        return Err(Error::Spectral(format!("element width must be positive, got {delta}")));
    }
    Ok(assemble_q(ops, k, theta, delta))
}

/// Nodal values of e^{ikx} on the element [0, Δ].
pub fn bloch_initial(ops: &FrOperators, k: f64, delta: f64) -> DVector<Complex64> {
    let jac = 0.5 * delta;
    DVector::from_iterator(ops.len(), ops.points.iter().map(|&z| (I * k * jac * (z + 1.0)).exp()))
}

fn schur(m: &DMatrix<Complex64>) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>)> {
    Schur::try_new(m.clone(), 1e-15, 10_000)
        .map(|s| s.unpack())
        .ok_or_else(|| Error::Spectral("Schur iteration did not converge".into()))
}

/// Eigenvalues of a dense complex matrix.
pub fn eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let (_, t) = schur(m)?;
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

/// Eigenvalues of −Q(k).
pub fn minus_q_eigenvalues(ops: &FrOperators, k: f64, theta: f64, delta: f64) -> Result<Vec<Complex64>> {
    let q = assemble_q(ops, k, theta, delta);
    Ok(eigenvalues(&q.matrix)?.into_iter().map(|v| -v).collect())
}

/// Eigenpairs (Schur form plus back-substitution) and the modal weights of
/// `u0`. Fails when the eigenvector matrix has condition above 1e10.
pub fn diagonalize(q: &OperatorQ, u0: &DVector<Complex64>) -> Result<OperatorSpectrum> {
    let n = q.matrix.nrows();
    let (z, t) = schur(&q.matrix)?;
    let scale = t.norm().max(f64::MIN_POSITIVE);
    let small = f64::EPSILON * scale;
    let mut y = DMatrix::zeros(n, n);
    for i in 0..n {
        let lam = t[(i, i)];
        y[(i, i)] = Complex64::new(1.0, 0.0);
        for j in (0..i).rev() {
            let s: Complex64 = (j + 1..=i).map(|l| t[(j, l)] * y[(l, i)]).sum();
            let mut den = t[(j, j)] - lam;
            if den.norm() < small {
                den = Complex64::new(small, 0.0);
            }
            y[(j, i)] = -s / den;
        }
    }
    let mut w = z * y;
    for mut col in w.column_iter_mut() {
        let nrm = col.norm();
        col /= Complex64::new(nrm, 0.0);
    }
    let lu = w.clone().lu();
    let w_inv = lu.try_inverse().ok_or_else(|| Error::Spectral("eigenvector matrix is singular".into()))?;
    let condition = w.norm() * w_inv.norm();
    if !(condition <= 1e10) {
        return Err(Error::Spectral(format!("near-defective operator (eigenvector condition {condition:e})")));
    }
    let v0 = &w_inv * u0;
    let ik = I * q.k;
    let eigenvalues = (0..n).map(|i| t[(i, i)] / ik).collect();
    Ok(OperatorSpectrum { eigenvalues, eigenvectors: w, v0, condition })
}

/// ‖e(t)‖₂ over the nodal components, with
/// e = W ((e^{−ikt(λ_n−1)} − 1) v_{0,n}) up to a unit-modulus factor.
pub fn semi_discrete_error(spec: &OperatorSpectrum, k: f64, t: f64) -> f64 {
    let amp = DVector::from_iterator(
        spec.v0.len(),
        spec.eigenvalues.iter().zip(spec.v0.iter()).map(|(&lam, &v)| ((-I * k * t * (lam - 1.0)).exp() - 1.0) * v),
    );
    (&spec.eigenvectors * amp).norm()
}

/// Spectrum at element width 2J, retrying once with k nudged by 1e-9
/// relative when the operator is near-defective.
fn spectrum_at(ops: &FrOperators, k: f64, theta: f64, jac: f64) -> Result<(OperatorSpectrum, f64)> {
    let delta = 2.0 * jac;
    let q = assemble_q_checked(ops, k, theta, delta)?;
    match diagonalize(&q, &bloch_initial(ops, k, delta)) {
        Ok(s) => Ok((s, k)),
        Err(_) => {
            let k2 = k * (1.0 + 1e-9);
            let q = assemble_q(ops, k2, theta, delta);
            diagonalize(&q, &bloch_initial(ops, k2, delta)).map(|s| (s, k2))
        }
    }
}

/// Error norm at time `periods`·2π/k for element Jacobian `jac`.
pub fn error_after_periods(ops: &FrOperators, theta: f64, k: f64, periods: f64, jac: f64) -> Result<f64> {
    let (spec, k_used) = spectrum_at(ops, k, theta, jac)?;
    let t = periods * 2.0 * std::f64::consts::PI / k;
    Ok(semi_discrete_error(&spec, k_used, t))
}

/// r_h = (log E(J1) − log E(J2)) / (log J1 − log J2) at fixed physical k and
/// t = periods · 2π/k.
pub fn convergence_rate(ops: &FrOperators, theta: f64, k: f64, periods: f64, j1: f64, j2: f64) -> Result<f64> {
    if !(j2 < j1) || !(j2 > 0.0) {
        return Err(Error::Spectral(format!("need 0 < J2 < J1, got J1 = {j1}, J2 = {j2}")));
    }
    let e1 = error_after_periods(ops, theta, k, periods, j1)?;
    let e2 = error_after_periods(ops, theta, k, periods, j2)?;
    for (name, e) in [("E(J1)", e1), ("E(J2)", e2)] {
        if !(e >= 1e-300) || !e.is_finite() {
            return Err(Error::RateUnavailable(format!("{name} = {e:e}")));
        }
    }
    Ok((e1.ln() - e2.ln()) / (j1.ln() - j2.ln()))
}

pub const CFL_SCAN: usize = 256;
const CFL_SLACK: f64 = 1e-10;
const CFL_TOL: f64 = 1e-6;

/// max_n |R(τ μ_n)| over a set of eigenvalues μ of −Q.
fn amplification(rk: RkScheme, tau: f64, mu: &[Complex64]) -> f64 {
    mu.iter().map(|&m| rk.stability_polynomial(m * tau).norm()).fold(0.0, f64::max)
}

/// Eigenvalues of −Q at unit element width for the scan kΔ = π(p+1)·m/256,
/// m = 1..=256.
pub fn cfl_scan_eigenvalues(ops: &FrOperators, theta: f64) -> Result<Vec<Complex64>> {
    let top = std::f64::consts::PI * ops.len() as f64;
    let per_k: Vec<Result<Vec<Complex64>>> = (1..=CFL_SCAN)
        .into_par_iter()
        .map(|m| minus_q_eigenvalues(ops, top * m as f64 / CFL_SCAN as f64, theta, 1.0))
        .collect();
    let mut all = Vec::with_capacity(CFL_SCAN * ops.len());
    for v in per_k {
        all.extend(v?);
    }
    Ok(all)
}

/// Largest τ (unit speed, unit width) with spectral radius of R(−τQ) at most
/// 1 + 1e-10 over the scan; 0 when already unstable at τ = 1e-8.
pub fn cfl_limit(ops: &FrOperators, rk: RkScheme, theta: f64) -> Result<f64> {
    let mu = cfl_scan_eigenvalues(ops, theta)?;
    Ok(cfl_from_eigenvalues(rk, &mu))
}

pub fn cfl_from_eigenvalues(rk: RkScheme, mu: &[Complex64]) -> f64 {
    let stable = |tau: f64| amplification(rk, tau, mu) <= 1.0 + CFL_SLACK;
    let mut lo = 1e-8;
    if !stable(lo) {
        return 0.0;
    }
    let mut hi = 2.0 * lo;
    while stable(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e6 {
            return f64::INFINITY;
        }
    }
    while hi - lo > CFL_TOL * lo.min(1.0) {
        let mid = 0.5 * (lo + hi);
        if stable(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeTag {
    Primary,
    /// Second-largest projection, reported for central interfaces.
    Secondary,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPoint {
    /// kΔ/(p+1).
    pub k_hat: f64,
    /// ωΔ/(p+1) with ω = kλ.
    pub omega_hat: Complex64,
    pub mode: ModeTag,
    /// Projection within 1e-8 of the next mode.
    pub ambiguous: bool,
}

/// Numerical frequencies along a grid of k̂ = kΔ/(p+1) at unit width.
pub fn dispersion_dissipation(ops: &FrOperators, theta: f64, k_hat: &[f64]) -> Result<Vec<DispersionPoint>> {
    let np = ops.len() as f64;
    let rows: Vec<Result<Vec<DispersionPoint>>> = k_hat
        .par_iter()
        .map(|&kh| {
            let k = kh * np;
            let q = assemble_q_checked(ops, k, theta, 1.0)?;
            let spec = diagonalize(&q, &bloch_initial(ops, k, 1.0))?;
            let mut weight: Vec<(usize, f64)> = (0..spec.eigenvalues.len())
                .map(|n| (n, spec.v0[n].norm() * spec.eigenvectors.column(n).norm()))
                .collect();
            weight.sort_by(|a, b| b.1.total_cmp(&a.1));
            let ambiguous = weight.len() > 1 && (weight[0].1 - weight[1].1).abs() < 1e-8;
            let take = if theta == 0.0 || ambiguous { 2.min(weight.len()) } else { 1 };
            Ok(weight[..take]
                .iter()
                .enumerate()
                .map(|(rank, &(n, _))| DispersionPoint {
                    k_hat: kh,
                    omega_hat: k * spec.eigenvalues[n] / np,
                    mode: if rank == 0 { ModeTag::Primary } else { ModeTag::Secondary },
                    ambiguous,
                })
                .collect())
        })
        .collect();
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}
