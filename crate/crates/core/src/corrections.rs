//! Correction functions h_L, h_R for flux reconstruction.
//!
//! The weighted family is parameterised by the Jacobi weight exponents
//! (α, β) and a scalar ι that multiplies the p-th derivative term of the
//! weighted Sobolev norm
//!
//! ```text
//! ‖u‖² = ∫ (u² + ι (∂^p u)²) (1−ζ)^α (1+ζ)^β dζ.
//! ```
//!
//! Every member is stored modally in its own (α, β) basis and only has
//! terms of degree p−1, p and p+1. Special members:
//!
//! - ι = 0: quasi-DG, nodal DG at α = β = 0;
//! - ι = ι_SD = ι_crit · p/(p+1): the Jacobi spectral difference scheme with
//!   interior zeros at the Gauss–Jacobi(α, β) nodes;
//! - α = β = 0, ι = c/2: the original one-parameter energy-stable family.

use crate::error::{Error, Result};
use crate::jacobi::{JacobiBasis, ModalSeries};
use crate::specfun::pochhammer;

/// (p, α, β, ι) identifying one correction scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    pub p: usize,
    pub alpha: f64,
    pub beta: f64,
    pub iota: f64,
}

impl SchemeParams {
    pub fn new(p: usize, alpha: f64, beta: f64, iota: f64) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidScheme(format!("p must be at least 1, got {p}")));
        }
        if !(alpha > -1.0) || !(beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidScheme(format!("alpha and beta must exceed -1, got ({alpha}, {beta})")));
        }
        if !iota.is_finite() {
            return Err(Error::InvalidScheme(format!("iota must be finite, got {iota}")));
        }
        let crit = iota_crit(p, alpha, beta);
        if !(iota > -crit) {
            return Err(Error::InvalidScheme(format!(
                "iota = {iota} violates the norm positivity bound iota > -iota_crit = {:e}",
                -crit
            )));
        }
        Ok(Self { p, alpha, beta, iota })
    }

    pub fn basis(&self) -> JacobiBasis {
        JacobiBasis { alpha: self.alpha, beta: self.beta }
    }
}

/// Named members of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedScheme {
    /// Nodal DG: (α, β, ι) = (0, 0, 0).
    Dg,
    /// Quasi-DG: ι = 0.
    Qdg,
    /// Jacobi spectral difference: ι = ι_SD.
    Sd,
    /// Original stable family: (α, β) = (0, 0), ι = c/2.
    Osfr,
    /// Explicit (α, β, ι).
    Gjfr,
}

impl NamedScheme {
    pub const ALL: [NamedScheme; 5] =
        [NamedScheme::Dg, NamedScheme::Qdg, NamedScheme::Sd, NamedScheme::Osfr, NamedScheme::Gjfr];

    pub fn name(&self) -> &'static str {
        match self {
            NamedScheme::Dg => "dg",
            NamedScheme::Qdg => "qdg",
            NamedScheme::Sd => "sd",
            NamedScheme::Osfr => "osfr",
            NamedScheme::Gjfr => "gjfr",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Resolve to concrete parameters. `free` is ι for `Gjfr`, c for `Osfr`
    /// and ignored otherwise.
    pub fn resolve(&self, p: usize, alpha: f64, beta: f64, free: f64) -> Result<SchemeParams> {
        match self {
            NamedScheme::Dg => SchemeParams::new(p, 0.0, 0.0, 0.0),
            NamedScheme::Qdg => SchemeParams::new(p, alpha, beta, 0.0),
            NamedScheme::Sd => {
                SchemeParams::new(p, alpha, beta, 0.0)?;
                SchemeParams::new(p, alpha, beta, iota_of_sd(p, alpha, beta))
            }
            NamedScheme::Osfr => SchemeParams::new(p, 0.0, 0.0, 0.5 * free),
            NamedScheme::Gjfr => SchemeParams::new(p, alpha, beta, free),
        }
    }

    /// Build the correction pair for resolved parameters. SD uses its own
    /// closed-form construction.
    pub fn build(&self, params: &SchemeParams) -> Result<CorrectionPair> {
        match self {
            NamedScheme::Sd => build_sd(params.p, params.alpha, params.beta),
            NamedScheme::Osfr => build_osfr(params.p, 2.0 * params.iota),
            _ => build_gjfr(params),
        }
    }
}

/// Left and right correction functions, degree p+1, in the (α, β) basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionPair {
    pub h_left: ModalSeries,
    pub h_right: ModalSeries,
    pub params: SchemeParams,
}

impl CorrectionPair {
    /// The unique linear pair h_L = (1−ζ)/2, h_R = (1+ζ)/2 used by a
    /// one-point (first-order finite volume) element. `params.p` is 0.
    pub fn first_order() -> Self {
        let basis = JacobiBasis::legendre();
        Self {
            h_left: ModalSeries::new(basis, vec![0.5, -0.5]),
            h_right: ModalSeries::new(basis, vec![0.5, 0.5]),
            params: SchemeParams { p: 0, alpha: 0.0, beta: 0.0, iota: 0.0 },
        }
    }

    /// |h_L(−1)−1|, |h_L(1)|, |h_R(−1)|, |h_R(1)−1|.
    pub fn boundary_errors(&self) -> [f64; 4] {
        [
            (self.h_left.eval(-1.0) - 1.0).abs(),
            self.h_left.eval(1.0).abs(),
            self.h_right.eval(-1.0).abs(),
            (self.h_right.eval(1.0) - 1.0).abs(),
        ]
    }

    /// ι recovered from the modal coefficients of h_L: A_p · h̃_{p−1} / h̃_{p+1}.
    pub fn extracted_iota(&self) -> f64 {
        let p = self.params.p;
        let c = &self.h_left.coeffs;
        coefficient_a(p, self.params.alpha, self.params.beta) * c[p - 1] / c[p + 1]
    }
}

/// Positivity limit of the weighted norm: ι > −ι_crit with
/// ι_crit = q_p / (b_p² q_0).
pub fn iota_crit(p: usize, alpha: f64, beta: f64) -> f64 {
    let basis = JacobiBasis { alpha, beta };
    basis.orthogonality_q(p) / (basis.leading_derivative_b(p).powi(2) * basis.orthogonality_q(0))
}

/// A_p relating ι to the ratio h̃_{p−1}/h̃_{p+1}.
pub fn coefficient_a(p: usize, alpha: f64, beta: f64) -> f64 {
    let basis = JacobiBasis { alpha, beta };
    let s = p as f64 + alpha + beta;
    (s + 1.0) * pochhammer(s + 2.0, p - 1) * basis.orthogonality_q(p - 1)
        / (2.0
            * pochhammer(s, p - 1)
            * basis.leading_derivative_b(p)
            * basis.leading_derivative_b(p + 1)
            * basis.orthogonality_q(0))
}

/// ι of the Jacobi SD scheme, ι_crit · p/(p+1).
pub fn iota_of_sd(p: usize, alpha: f64, beta: f64) -> f64 {
    iota_crit(p, alpha, beta) * p as f64 / (p as f64 + 1.0)
}

/// Weighted-family correction pair.
pub fn build_gjfr(params: &SchemeParams) -> Result<CorrectionPair> {
    let SchemeParams { p, alpha, beta, iota } = *params;
    let pf = p as f64;
    let a_p = coefficient_a(p, alpha, beta);
    let basis = params.basis();

    // The right function is the left one with the roles of α and β swapped:
    // the stability condition fixes h̃_{p−1} = ι h̃_{p+1} / A_p for both, and
    // the endpoint conditions fix the remaining two coefficients.
    let den = |w: f64| iota * pf * (pf + 1.0) + (pf + w) * (pf + w + 1.0) * a_p;
    let (den_l, den_r) = (den(alpha), den(beta));
    for (name, d) in [("left", den_l), ("right", den_r)] {
        if d == 0.0 || !d.is_finite() {
            return Err(Error::Singular(format!("{name} denominator iota p(p+1) + ... A_p = {d}")));
        }
    }

    let kappa_l = pochhammer(beta + 1.0, p) / pochhammer(1.0, p) * ((pf + alpha) / (pf + beta) * den_r / den_l + 1.0);
    let kappa_r = pochhammer(alpha + 1.0, p) / pochhammer(1.0, p) * ((pf + beta) / (pf + alpha) * den_l / den_r + 1.0);
    if kappa_l == 0.0 || kappa_r == 0.0 {
        return Err(Error::Singular("kappa_p vanishes".into()));
    }

    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
    let mut left = vec![0.0; p + 2];
    let lp = sign / kappa_l;
    left[p] = lp;
    left[p - 1] = -lp * iota * (pf + 1.0) * (pf + alpha) / den_l;
    left[p + 1] = -lp * (pf + 1.0) * (pf + alpha) * a_p / den_l;

    let mut right = vec![0.0; p + 2];
    let rp = 1.0 / kappa_r;
    right[p] = rp;
    right[p - 1] = rp * iota * (pf + 1.0) * (pf + beta) / den_r;
    right[p + 1] = rp * (pf + 1.0) * (pf + beta) * a_p / den_r;

    Ok(CorrectionPair {
        h_left: ModalSeries::new(basis, left),
        h_right: ModalSeries::new(basis, right),
        params: *params,
    })
}

/// Original one-parameter stable family in the Legendre basis.
pub fn build_osfr(p: usize, c: f64) -> Result<CorrectionPair> {
    if p < 1 {
        return Err(Error::InvalidScheme(format!("p must be at least 1, got {p}")));
    }
    let a_p = pochhammer(1.0, 2 * p) / (2f64.powi(p as i32) * pochhammer(1.0, p).powi(2));
    let ap_fact = a_p * pochhammer(1.0, p);
    let pf = p as f64;
    let c_min = -2.0 / ((2.0 * pf + 1.0) * ap_fact * ap_fact);
    if !(c > c_min) || !c.is_finite() {
        return Err(Error::InvalidScheme(format!("c = {c} outside the stable range c > {c_min:e}")));
    }
    let eta = c * (2.0 * pf + 1.0) * ap_fact * ap_fact / 2.0;
    let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut left = vec![0.0; p + 2];
    let mut right = vec![0.0; p + 2];
    left[p] = 0.5 * sign;
    left[p - 1] = -0.5 * sign * eta / (1.0 + eta);
    left[p + 1] = -0.5 * sign / (1.0 + eta);
    right[p] = 0.5;
    right[p - 1] = 0.5 * eta / (1.0 + eta);
    right[p + 1] = 0.5 / (1.0 + eta);
    let basis = JacobiBasis::legendre();
    Ok(CorrectionPair {
        h_left: ModalSeries::new(basis, left),
        h_right: ModalSeries::new(basis, right),
        params: SchemeParams::new(p, 0.0, 0.0, c / 2.0)?,
    })
}

/// Jacobi spectral difference pair
/// h_L = (1−ζ)/2 · J_p(ζ)/J_p(−1), h_R = (1+ζ)/2 · J_p(ζ)/J_p(1),
/// expanded with the three-term recurrence.
pub fn build_sd(p: usize, alpha: f64, beta: f64) -> Result<CorrectionPair> {
    let params = SchemeParams::new(p, alpha, beta, iota_of_sd(p, alpha, beta))?;
    let basis = params.basis();
    let pf = p as f64;
    let s = 2.0 * pf + alpha + beta;
    let lower = (pf + alpha) * (pf + beta) / ((s + 1.0) * s);
    let skew = (alpha * alpha - beta * beta) / ((s + 2.0) * s);
    let upper = (pf + 1.0) * (pf + 1.0 + alpha + beta) / ((s + 1.0) * (s + 2.0));
    // 1/J_p(−1) and 1/J_p(1).
    let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    let norm_l = sign * pochhammer(1.0, p) / pochhammer(beta + 1.0, p);
    let norm_r = pochhammer(1.0, p) / pochhammer(alpha + 1.0, p);

    let mut left = vec![0.0; p + 2];
    left[p - 1] = -lower * norm_l;
    left[p] = 0.5 * (1.0 + skew) * norm_l;
    left[p + 1] = -upper * norm_l;
    let mut right = vec![0.0; p + 2];
    right[p - 1] = lower * norm_r;
    right[p] = 0.5 * (1.0 - skew) * norm_r;
    right[p + 1] = upper * norm_r;

    Ok(CorrectionPair { h_left: ModalSeries::new(basis, left), h_right: ModalSeries::new(basis, right), params })
}

/// Largest absolute residual of the two weighted stability conditions
///
/// ```text
/// ∫ h ∂_ζ u w dζ − ι ∂^p u · ∂^{p+1} h · ∫ w dζ = 0
/// ```
///
/// evaluated at u = J_p (lower-degree content of u drops out by
/// orthogonality), with a 2(p+2)-point Gauss–Jacobi rule.
pub fn stability_residual(pair: &CorrectionPair) -> f64 {
    let SchemeParams { p, iota, .. } = pair.params;
    let basis = pair.h_left.basis;
    let rule = basis.gauss_jacobi(2 * (p + 2)).expect("small Gauss-Jacobi rule");
    let du = basis.derivative_expansion(p, 1);
    let dp_u = basis.leading_derivative_b(p);
    let q0 = basis.orthogonality_q(0);
    [&pair.h_left, &pair.h_right]
        .into_iter()
        .map(|h| {
            let integral = rule.integrate(|z| h.eval(z) * du.eval(z));
            let top = h.derivative(p + 1).coeffs.first().copied().unwrap_or(0.0);
            (integral - iota * dp_u * top * q0).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn factorial(n: usize) -> f64 {
        pochhammer(1.0, n)
    }

    fn max_coeff_diff(a: &ModalSeries, b: &ModalSeries) -> f64 {
        a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn params_validation() {
        assert!(SchemeParams::new(0, 0.0, 0.0, 0.0).is_err());
        assert!(SchemeParams::new(3, -1.0, 0.0, 0.0).is_err());
        let crit = iota_crit(3, 0.2, 0.1);
        assert!(SchemeParams::new(3, 0.2, 0.1, -crit).is_err());
        assert!(SchemeParams::new(3, 0.2, 0.1, -2.0 * crit).is_err());
        assert!(SchemeParams::new(3, 0.2, 0.1, -0.999 * crit).is_ok());
    }

    #[test]
    fn iota_crit_legendre() {
        assert_relative_eq!(iota_crit(1, 0.0, 0.0), 1.0 / 3.0, epsilon = 1e-15);
        for p in 1..=6 {
            // c_crit/2 of the original family: (p!)²/(2p+1) · (2^p/(2p)!)²
            let want = factorial(p).powi(2) / (2 * p + 1) as f64 * (2f64.powi(p as i32) / factorial(2 * p)).powi(2);
            assert_relative_eq!(iota_crit(p, 0.0, 0.0), want, max_relative = 1e-12);
        }
    }

    #[test]
    fn iota_crit_from_jacobi_pieces() {
        let b = JacobiBasis::new(0.5, 0.5).unwrap();
        let want = b.orthogonality_q(4) / (b.leading_derivative_b(4).powi(2) * b.orthogonality_q(0));
        assert_relative_eq!(iota_crit(4, 0.5, 0.5), want, max_relative = 1e-12);
        assert!(iota_crit(6, -0.9, 2.0) > 0.0);
    }

    #[test]
    fn sd_iota_ratio() {
        for p in 1..=6 {
            let r = iota_of_sd(p, 0.3, -0.4) / iota_crit(p, 0.3, -0.4);
            assert_relative_eq!(r, p as f64 / (p as f64 + 1.0), max_relative = 1e-15);
        }
        assert_relative_eq!(iota_of_sd(4, 0.0, 0.0), 0.8 * iota_crit(4, 0.0, 0.0), max_relative = 1e-15);
    }

    /// Independent route to A_p: solve the integral stability condition for
    /// the ratio ι/(h̃_{p−1}/h̃_{p+1}) with quadrature and explicit
    /// derivatives of the shifted basis.
    fn a_by_quadrature(p: usize, alpha: f64, beta: f64) -> f64 {
        let basis = JacobiBasis::new(alpha, beta).unwrap();
        let shifted = JacobiBasis::new(alpha + 1.0, beta + 1.0).unwrap();
        let rule = basis.gauss_jacobi(2 * p + 4).unwrap();
        let s = p as f64 + alpha + beta;
        let du = |z: f64| 0.5 * (s + 1.0) * shifted.eval(p - 1, z);
        let integral = rule.integrate(|z| basis.eval(p - 1, z) * du(z));
        let b_p = p_fold_derivative(basis, p);
        let b_p1 = p_fold_derivative(basis, p + 1);
        integral / (b_p * b_p1 * rule.weights.iter().sum::<f64>())
    }

    // d^n J_n/dζ^n by repeated use of the shifted-parameter identity.
    fn p_fold_derivative(basis: JacobiBasis, n: usize) -> f64 {
        (0..n).map(|k| 0.5 * ((n - k) as f64 + basis.alpha + basis.beta + 2.0 * k as f64 + 1.0)).product()
    }

    #[test]
    fn coefficient_a_matches_quadrature() {
        for (p, a, b) in [(2, 0.0, 0.0), (1, 1.0, 1.0), (4, 0.3, -0.2), (6, -0.9, 2.0)] {
            let got = coefficient_a(p, a, b);
            assert!(got > 0.0 && got.is_finite());
            assert_relative_eq!(got, a_by_quadrature(p, a, b), max_relative = 1e-10);
        }
    }

    #[test]
    fn gjfr_dg_is_radau() {
        for p in 1..=6 {
            let g = build_gjfr(&SchemeParams::new(p, 0.0, 0.0, 0.0).unwrap()).unwrap();
            let o = build_osfr(p, 0.0).unwrap();
            assert!(max_coeff_diff(&g.h_left, &o.h_left) < 1e-12);
            assert!(max_coeff_diff(&g.h_right, &o.h_right) < 1e-12);
            // right Radau polynomial: (−1)^p/2 (L_p − L_{p+1})
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            assert_relative_eq!(g.h_left.coeffs[p], 0.5 * sign, epsilon = 1e-13);
            assert_relative_eq!(g.h_left.coeffs[p + 1], -0.5 * sign, epsilon = 1e-13);
        }
    }

    #[test]
    fn osfr_p1_radau() {
        let o = build_osfr(1, 0.0).unwrap();
        assert_eq!(o.h_right.coeffs, vec![0.0, 0.5, 0.5]);
        assert_eq!(o.h_left.eval(1.0), 0.0);
        assert!(build_osfr(2, -1.0).is_err());
        assert!(stability_residual(&build_osfr(4, 0.01).unwrap()) < 1e-10);
    }

    #[test]
    fn boundary_conditions_hold() {
        for p in 1..=6 {
            for (a, b) in [(0.0, 0.0), (0.3, -0.2), (-0.9, 2.0), (2.0, -0.5)] {
                for iota in [0.0, iota_of_sd(p, a, b), 3.0] {
                    let pair = build_gjfr(&SchemeParams::new(p, a, b, iota).unwrap()).unwrap();
                    for e in pair.boundary_errors() {
                        assert!(e < 1e-10, "p={p} ({a},{b}) iota={iota}: {e}");
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_weights_give_mirrored_pair() {
        for p in 1..=6 {
            for a in [-0.5, 0.0, 0.7] {
                let pair = build_gjfr(&SchemeParams::new(p, a, a, 0.01).unwrap()).unwrap();
                for z in (0..20).map(|i| -1.0 + 2.0 * i as f64 / 19.0) {
                    assert!((pair.h_left.eval(-z) - pair.h_right.eval(z)).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn stability_residual_examples() {
        let g = build_gjfr(&SchemeParams::new(4, 0.3, -0.2, 0.01).unwrap()).unwrap();
        assert!(stability_residual(&g) < 1e-9);
        assert!(stability_residual(&build_sd(4, 0.0, 0.0).unwrap()) < 1e-9);
        let mut bad = g.clone();
        bad.h_left.coeffs[3] += 0.1;
        assert!(stability_residual(&bad) > 1e-3);
    }

    #[test]
    fn sd_zeros_and_shape() {
        for (p, a, b) in [(4, 0.3, 0.3), (4, 1.0, -0.5), (3, -0.9, -0.9), (6, 2.0, 0.0)] {
            let sd = build_sd(p, a, b).unwrap();
            for &x in &sd.h_left.basis.gauss_jacobi(p).unwrap().nodes {
                assert!(sd.h_left.eval(x).abs() < 1e-10);
                assert!(sd.h_right.eval(x).abs() < 1e-10);
            }
        }
        let sd = build_sd(2, 0.0, 0.0).unwrap();
        let leg = JacobiBasis::legendre();
        for z in (0..20).map(|i| -1.0 + 2.0 * i as f64 / 19.0) {
            let want = (1.0 - z) * leg.eval(2, z) / (2.0 * leg.eval(2, -1.0));
            assert_relative_eq!(sd.h_left.eval(z), want, epsilon = 1e-14);
        }
        let skew = build_sd(4, 1.0, -0.5).unwrap();
        let asym = (0..20)
            .map(|i| -1.0 + 2.0 * i as f64 / 19.0)
            .map(|z| (skew.h_left.eval(-z) - skew.h_right.eval(z)).abs())
            .fold(0.0, f64::max);
        assert!(asym > 1e-3);
    }

    #[test]
    fn sd_is_family_member() {
        let grid = [-0.5, 0.0, 0.5, 2.0];
        for p in 1..=6 {
            for &a in &grid {
                for &b in &grid {
                    let sd = build_sd(p, a, b).unwrap();
                    let g = build_gjfr(&SchemeParams::new(p, a, b, iota_of_sd(p, a, b)).unwrap()).unwrap();
                    assert!(max_coeff_diff(&sd.h_left, &g.h_left) < 1e-9, "p={p} ({a},{b})");
                    assert!(max_coeff_diff(&sd.h_right, &g.h_right) < 1e-9, "p={p} ({a},{b})");
                    assert_relative_eq!(sd.extracted_iota(), iota_of_sd(p, a, b), max_relative = 1e-10);
                }
            }
        }
    }

    #[test]
    fn gjfr_at_sd_iota_vanishes_on_gauss_jacobi_nodes() {
        let params = SchemeParams::new(4, 0.3, 0.3, iota_of_sd(4, 0.3, 0.3)).unwrap();
        let g = build_gjfr(&params).unwrap();
        for &x in &params.basis().gauss_jacobi(4).unwrap().nodes {
            assert!(g.h_left.eval(x).abs() < 1e-10);
        }
    }

    #[test]
    fn norm_positive_just_above_bound() {
        for (p, a, b) in [(1, 0.0, 0.0), (4, 0.5, -0.5), (6, 2.0, 2.0), (3, -0.9, -0.9)] {
            let basis = JacobiBasis::new(a, b).unwrap();
            let iota = -iota_crit(p, a, b) + 1e-6;
            let bp = basis.leading_derivative_b(p);
            for unit in 0..=p {
                let form = if unit < p {
                    basis.orthogonality_q(unit)
                } else {
                    basis.orthogonality_q(p) + iota * bp * bp * basis.orthogonality_q(0)
                };
                assert!(form > 0.0, "p={p} ({a},{b}) unit {unit}: {form}");
            }
        }
    }

    #[test]
    fn qdg_members_are_valid() {
        for p in 1..=6 {
            for (a, b) in [(-0.9, -0.9), (0.0, -0.75), (2.0, 0.5)] {
                let pair = build_gjfr(&SchemeParams::new(p, a, b, 0.0).unwrap()).unwrap();
                assert!(pair.boundary_errors().iter().all(|&e| e < 1e-10));
                assert!(stability_residual(&pair) < 1e-9);
            }
        }
    }

    #[test]
    fn named_scheme_resolution() {
        let sd = NamedScheme::Sd.resolve(4, 0.0, 0.0, 123.0).unwrap();
        assert_eq!(sd.iota, iota_of_sd(4, 0.0, 0.0));
        let dg = NamedScheme::Dg.resolve(3, 0.7, 0.2, 5.0).unwrap();
        assert_eq!((dg.alpha, dg.beta, dg.iota), (0.0, 0.0, 0.0));
        let osfr = NamedScheme::Osfr.resolve(3, 0.7, 0.2, 0.1).unwrap();
        assert_eq!((osfr.alpha, osfr.beta, osfr.iota), (0.0, 0.0, 0.05));
        assert!(NamedScheme::Gjfr.resolve(3, 0.0, 0.0, -2.0 * iota_crit(3, 0.0, 0.0)).is_err());
        assert_eq!(NamedScheme::parse("qdg"), Some(NamedScheme::Qdg));
        assert_eq!(NamedScheme::parse("lcl"), None);
    }
}
