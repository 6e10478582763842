//! One-dimensional flux reconstruction on periodic meshes.
//!
//! Each element maps to the reference interval by x = x_n + J_n (ζ + 1).
//! The discontinuous flux is collocated at the solution points and corrected
//! with the derivatives of h_L, h_R so that it takes the common interface
//! value at both faces.

use nalgebra::DMatrix;

use crate::corrections::{build_gjfr, CorrectionPair, SchemeParams};
use crate::error::{Error, Result};
use crate::jacobi::{gauss_legendre, gauss_lobatto, JacobiBasis};

/// Periodic mesh of `boundaries.len() − 1` elements.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    pub boundaries: Vec<f64>,
}

impl Mesh1D {
    pub fn uniform(x0: f64, x1: f64, elements: usize) -> Result<Self> {
        if elements == 0 {
            return Err(Error::Operators("mesh needs at least one element".into()));
        }
        let h = (x1 - x0) / elements as f64;
        let mut boundaries: Vec<f64> = (0..elements).map(|n| x0 + h * n as f64).collect();
        boundaries.push(x1);
        Self::from_boundaries(boundaries)
    }

    pub fn from_boundaries(boundaries: Vec<f64>) -> Result<Self> {
        if boundaries.len() < 2 {
            return Err(Error::Operators("mesh needs at least two boundaries".into()));
        }
        if boundaries.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(Error::Operators("mesh boundaries must be finite and strictly increasing".into()));
        }
        Ok(Self { boundaries })
    }

    pub fn elements(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn length(&self) -> f64 {
        self.boundaries[self.elements()] - self.boundaries[0]
    }

    pub fn jacobian(&self, n: usize) -> f64 {
        0.5 * (self.boundaries[n + 1] - self.boundaries[n])
    }

    /// Physical coordinate of reference point ζ in element n.
    pub fn map(&self, n: usize, zeta: f64) -> f64 {
        self.boundaries[n] + self.jacobian(n) * (zeta + 1.0)
    }
}

/// Solution point family. `GaussJacobi` uses the scheme's (α, β).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PointRule {
    #[default]
    GaussLegendre,
    GaussJacobi,
    GaussLobatto,
}

impl PointRule {
    pub fn name(&self) -> &'static str {
        match self {
            PointRule::GaussLegendre => "gauss-legendre",
            PointRule::GaussJacobi => "gauss-jacobi",
            PointRule::GaussLobatto => "gauss-lobatto",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [PointRule::GaussLegendre, PointRule::GaussJacobi, PointRule::GaussLobatto].into_iter().find(|r| r.name() == s)
    }

    pub fn points(&self, count: usize, alpha: f64, beta: f64) -> Result<Vec<f64>> {
        if count == 1 {
            return Ok(vec![0.0]);
        }
        Ok(match self {
            PointRule::GaussLegendre => gauss_legendre(count)?.nodes,
            PointRule::GaussJacobi => JacobiBasis::new(alpha, beta)?.gauss_jacobi(count)?.nodes,
            PointRule::GaussLobatto => gauss_lobatto(count)?.nodes,
        })
    }
}

/// Element-local operators shared by every element.
#[derive(Debug, Clone)]
pub struct FrOperators {
    pub points: Vec<f64>,
    /// ∫ l_i dζ over [−1, 1].
    pub weights: Vec<f64>,
    /// D[(i, j)] = l_j'(ζ_i).
    pub d: DMatrix<f64>,
    pub ell_left: Vec<f64>,
    pub ell_right: Vec<f64>,
    pub g_left: Vec<f64>,
    pub g_right: Vec<f64>,
    pub pair: CorrectionPair,
    bary: Vec<f64>,
    /// Nodal values to modal coefficients in the scheme's own basis.
    to_modal: DMatrix<f64>,
}

impl FrOperators {
    /// Operators for the weighted family member `params`.
    pub fn build(params: &SchemeParams, rule: PointRule) -> Result<Self> {
        let points = rule.points(params.p + 1, params.alpha, params.beta)?;
        Self::from_pair(build_gjfr(params)?, points)
    }

    /// Operators for an explicit correction pair and explicit points.
    pub fn from_pair(pair: CorrectionPair, points: Vec<f64>) -> Result<Self> {
        let np = pair.params.p + 1;
        if points.len() != np {
            return Err(Error::Operators(format!("expected {np} solution points, got {}", points.len())));
        }
        if points.iter().any(|z| !(-1.0..=1.0).contains(z)) {
            return Err(Error::Operators("solution points must lie in [-1, 1]".into()));
        }
        for i in 0..np {
            for j in 0..i {
                if (points[i] - points[j]).abs() < 1e-14 {
                    return Err(Error::Operators(format!("duplicate solution point {}", points[i])));
                }
            }
        }
        let bary: Vec<f64> = (0..np)
            .map(|j| {
                let prod: f64 = (0..np).filter(|&m| m != j).map(|m| points[j] - points[m]).product();
                1.0 / prod
            })
            .collect();

        let mut d = DMatrix::zeros(np, np);
        for i in 0..np {
            let mut diag = 0.0;
            for j in 0..np {
                if i != j {
                    let v = bary[j] / bary[i] / (points[i] - points[j]);
                    d[(i, j)] = v;
                    diag -= v;
                }
            }
            d[(i, i)] = diag;
        }

        let ell_left = lagrange_row(&points, &bary, -1.0);
        let ell_right = lagrange_row(&points, &bary, 1.0);
        let dh_left = pair.h_left.derivative(1);
        let dh_right = pair.h_right.derivative(1);
        let g_left = points.iter().map(|&z| dh_left.eval(z)).collect();
        let g_right = points.iter().map(|&z| dh_right.eval(z)).collect();

        let legendre_rule = gauss_legendre(np)?;
        let weights = (0..np).map(|j| legendre_rule.integrate(|z| lagrange_row(&points, &bary, z)[j])).collect();

        let basis = pair.h_left.basis;
        let vandermonde = DMatrix::from_fn(np, np, |i, j| basis.eval(j, points[i]));
        let to_modal =
            vandermonde.try_inverse().ok_or_else(|| Error::Operators("singular Vandermonde matrix".into()))?;

        Ok(Self { points, weights, d, ell_left, ell_right, g_left, g_right, pair, bary, to_modal })
    }

    /// One-point elements with the linear correction pair; the scheme is the
    /// first-order finite volume method.
    pub fn first_order() -> Self {
        Self::from_pair(CorrectionPair::first_order(), vec![0.0]).expect("single point")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Lagrange basis values l_j(ζ).
    pub fn interpolation_row(&self, zeta: f64) -> Vec<f64> {
        lagrange_row(&self.points, &self.bary, zeta)
    }

    /// Modal coefficients of the nodal polynomial in the scheme's (α, β) basis.
    pub fn modal(&self, nodal: &[f64]) -> Vec<f64> {
        let np = self.len();
        (0..np).map(|i| (0..np).map(|j| self.to_modal[(i, j)] * nodal[j]).sum()).collect()
    }

    fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }
}

fn lagrange_row(points: &[f64], bary: &[f64], z: f64) -> Vec<f64> {
    if let Some(hit) = points.iter().position(|&x| x == z) {
        let mut row = vec![0.0; points.len()];
        row[hit] = 1.0;
        return row;
    }
    let terms: Vec<f64> = points.iter().zip(bary).map(|(&x, &w)| w / (z - x)).collect();
    let total: f64 = terms.iter().sum();
    terms.iter().map(|t| t / total).collect()
}

/// Nodal values, element-major: element n occupies `values[n*np..(n+1)*np]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub values: Vec<f64>,
    pub points_per_element: usize,
}

impl SolutionField {
    pub fn zeros(elements: usize, points_per_element: usize) -> Self {
        Self { values: vec![0.0; elements * points_per_element], points_per_element }
    }

    pub fn elements(&self) -> usize {
        self.values.len() / self.points_per_element
    }

    pub fn element(&self, n: usize) -> &[f64] {
        let np = self.points_per_element;
        &self.values[n * np..(n + 1) * np]
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FluxModel {
    LinearAdvection { speed: f64 },
    ViscousBurgers { mu: f64 },
}

/// u_{n,i} = f(x at ζ_i in element n).
pub fn project_initial(f: impl Fn(f64) -> f64, mesh: &Mesh1D, ops: &FrOperators) -> SolutionField {
    let np = ops.len();
    let mut field = SolutionField::zeros(mesh.elements(), np);
    for n in 0..mesh.elements() {
        for (i, &z) in ops.points.iter().enumerate() {
            field.values[n * np + i] = f(mesh.map(n, z));
        }
    }
    field
}

/// Σ_n J_n Σ_i w_i u_{n,i}.
pub fn total_integral(state: &SolutionField, mesh: &Mesh1D, ops: &FrOperators) -> f64 {
    (0..mesh.elements()).map(|n| mesh.jacobian(n) * FrOperators::dot(&ops.weights, state.element(n))).sum()
}

/// Broken weighted Sobolev norm Σ_n J_n ∫ (u² + ι (∂_ζ^p u)²) w dζ, square-rooted.
pub fn sobolev_norm(state: &SolutionField, mesh: &Mesh1D, ops: &FrOperators) -> f64 {
    let SchemeParams { p, iota, .. } = ops.pair.params;
    let basis = ops.pair.h_left.basis;
    let q: Vec<f64> = (0..=p).map(|i| basis.orthogonality_q(i)).collect();
    let bp = basis.leading_derivative_b(p);
    let total: f64 = (0..mesh.elements())
        .map(|n| {
            let c = ops.modal(state.element(n));
            let l2: f64 = c.iter().zip(&q).map(|(c, q)| c * c * q).sum();
            mesh.jacobian(n) * (l2 + iota * (c[p] * bp).powi(2) * q[0])
        })
        .sum();
    total.sqrt()
}

fn traces(state: &[f64], ops: &FrOperators, left: &mut [f64], right: &mut [f64]) {
    let np = ops.len();
    for (n, u) in state.chunks_exact(np).enumerate() {
        left[n] = FrOperators::dot(&ops.ell_left, u);
        right[n] = FrOperators::dot(&ops.ell_right, u);
    }
}

/// out = −(1/J_n)[D f + (F_L − f_L) gL + (F_R − f_R) gR] element by element,
/// where `face[n]` is the common flux on the left face of element n.
fn corrected_divergence(flux: &[f64], face: &[f64], mesh: &Mesh1D, ops: &FrOperators, scale: f64, out: &mut [f64]) {
    let np = ops.len();
    let elements = mesh.elements();
    for n in 0..elements {
        let f = &flux[n * np..(n + 1) * np];
        let jump_l = face[n] - FrOperators::dot(&ops.ell_left, f);
        let jump_r = face[(n + 1) % elements] - FrOperators::dot(&ops.ell_right, f);
        let factor = scale / mesh.jacobian(n);
        for i in 0..np {
            let mut div = 0.0;
            for j in 0..np {
                div += ops.d[(i, j)] * f[j];
            }
            out[n * np + i] = factor * (div + jump_l * ops.g_left[i] + jump_r * ops.g_right[i]);
        }
    }
}

/// du/dt for u_t + a u_x = 0. Interface value
/// u^I = ½(u⁻ + u⁺) + θ/2 (u⁻ − u⁺) with u⁻ the upwind trace.
pub fn rhs_advection(state: &SolutionField, mesh: &Mesh1D, ops: &FrOperators, speed: f64, theta: f64) -> SolutionField {
    let mut out = SolutionField::zeros(mesh.elements(), ops.len());
    rhs_advection_into(&state.values, mesh, ops, speed, theta, &mut out.values);
    out
}

pub fn rhs_advection_into(state: &[f64], mesh: &Mesh1D, ops: &FrOperators, speed: f64, theta: f64, out: &mut [f64]) {
    let elements = mesh.elements();
    let mut left = vec![0.0; elements];
    let mut right = vec![0.0; elements];
    traces(state, ops, &mut left, &mut right);
    let face: Vec<f64> = (0..elements)
        .map(|n| {
            let behind = right[(n + elements - 1) % elements];
            let ahead = left[n];
            let (up, down) = if speed >= 0.0 { (behind, ahead) } else { (ahead, behind) };
            speed * (0.5 * (up + down) + 0.5 * theta * (up - down))
        })
        .collect();
    let flux: Vec<f64> = state.iter().map(|u| speed * u).collect();
    corrected_divergence(&flux, &face, mesh, ops, -1.0, out);
}

/// du/dt for u_t + (u²/2)_x = μ u_xx with BR1 gradients and a Rusanov
/// convective flux.
pub fn rhs_burgers(state: &SolutionField, mesh: &Mesh1D, ops: &FrOperators, mu: f64) -> SolutionField {
    let mut out = SolutionField::zeros(mesh.elements(), ops.len());
    rhs_viscous_into(&state.values, mesh, ops, mu, true, &mut out.values);
    out
}

/// Shared two-pass kernel. With `convective == false` only the diffusive
/// part μ u_xx remains.
pub fn rhs_viscous_into(state: &[f64], mesh: &Mesh1D, ops: &FrOperators, mu: f64, convective: bool, out: &mut [f64]) {
    ViscousWorkspace::new(mesh.elements(), ops.len()).rhs(state, mesh, ops, mu, convective, out);
}

/// Scratch buffers for repeated viscous right-hand sides on one mesh.
#[derive(Debug, Clone)]
pub struct ViscousWorkspace {
    left: Vec<f64>,
    right: Vec<f64>,
    q: Vec<f64>,
    q_left: Vec<f64>,
    q_right: Vec<f64>,
    flux: Vec<f64>,
    face: Vec<f64>,
}

impl ViscousWorkspace {
    pub fn new(elements: usize, points_per_element: usize) -> Self {
        let e = vec![0.0; elements];
        let v = vec![0.0; elements * points_per_element];
        Self {
            left: e.clone(),
            right: e.clone(),
            q: v.clone(),
            q_left: e.clone(),
            q_right: e.clone(),
            flux: v,
            face: e,
        }
    }

    pub fn rhs(&mut self, state: &[f64], mesh: &Mesh1D, ops: &FrOperators, mu: f64, convective: bool, out: &mut [f64]) {
        let elements = mesh.elements();
        traces(state, ops, &mut self.left, &mut self.right);

        if mu != 0.0 {
            for n in 0..elements {
                self.face[n] = 0.5 * (self.right[(n + elements - 1) % elements] + self.left[n]);
            }
            corrected_divergence(state, &self.face, mesh, ops, 1.0, &mut self.q);
        } else {
            self.q.iter_mut().for_each(|v| *v = 0.0);
        }
        traces(&self.q, ops, &mut self.q_left, &mut self.q_right);

        let c = if convective { 1.0 } else { 0.0 };
        for ((f, u), g) in self.flux.iter_mut().zip(state).zip(&self.q) {
            *f = c * 0.5 * u * u - mu * g;
        }
        for n in 0..elements {
            let prev = (n + elements - 1) % elements;
            let (um, up) = (self.right[prev], self.left[n]);
            let speed = um.abs().max(up.abs());
            let convect = 0.25 * (um * um + up * up) - 0.5 * speed * (up - um);
            self.face[n] = c * convect - mu * 0.5 * (self.q_right[prev] + self.q_left[n]);
        }
        corrected_divergence(&self.flux, &self.face, mesh, ops, -1.0, out);
    }
}

pub fn rhs(state: &[f64], mesh: &Mesh1D, ops: &FrOperators, model: FluxModel, theta: f64, out: &mut [f64]) {
    match model {
        FluxModel::LinearAdvection { speed } => rhs_advection_into(state, mesh, ops, speed, theta, out),
        FluxModel::ViscousBurgers { mu } => rhs_viscous_into(state, mesh, ops, mu, true, out),
    }
}
