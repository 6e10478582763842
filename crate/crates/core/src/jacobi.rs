//! Jacobi polynomials J_n^{(α,β)} on [−1, 1] with the classical normalisation
//! J_n(1) = ⟨α+1⟩_n / n!, their derivative re-expansion in the same basis and
//! Gauss-type quadrature rules.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::specfun::{hyp3f2_terminating, ln_gamma, pochhammer};

/// Weight exponents of w(ζ) = (1−ζ)^α (1+ζ)^β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiBasis {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiBasis {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Basis(format!(
                "weight exponents must satisfy alpha > -1 and beta > -1, got ({alpha}, {beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub const fn legendre() -> Self {
        Self { alpha: 0.0, beta: 0.0 }
    }

    pub fn weight(&self, zeta: f64) -> f64 {
        (1.0 - zeta).powf(self.alpha) * (1.0 + zeta).powf(self.beta)
    }

    /// J_n(ζ) by the three-term recurrence.
    pub fn eval(&self, n: usize, zeta: f64) -> f64 {
        let mut out = 0.0;
        self.eval_each(n, zeta, |i, v| {
            if i == n {
                out = v;
            }
        });
        out
    }

    /// All of J_0(ζ) … J_n(ζ).
    pub fn eval_all(&self, n: usize, zeta: f64) -> Vec<f64> {
        let mut out = vec![0.0; n + 1];
        self.eval_each(n, zeta, |i, v| out[i] = v);
        out
    }

    fn eval_each(&self, n: usize, x: f64, mut sink: impl FnMut(usize, f64)) {
        let (a, b) = (self.alpha, self.beta);
        let mut prev = 1.0;
        sink(0, prev);
        if n == 0 {
            return;
        }
        let mut cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
        sink(1, cur);
        for k in 2..=n {
            let k = k as f64;
            let s = 2.0 * k + a + b;
            let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
            let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
            let c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
            let next = (c2 * cur - c3 * prev) / c1;
            prev = cur;
            cur = next;
            sink(k as usize, cur);
        }
    }

    /// J_n(1) = ⟨α+1⟩_n / n!.
    pub fn value_at_right(&self, n: usize) -> f64 {
        pochhammer(self.alpha + 1.0, n) / pochhammer(1.0, n)
    }

    /// J_n(−1) = (−1)^n ⟨β+1⟩_n / n!.
    pub fn value_at_left(&self, n: usize) -> f64 {
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * pochhammer(self.beta + 1.0, n) / pochhammer(1.0, n)
    }

    /// q_n = ∫ J_n² w dζ.
    pub fn orthogonality_q(&self, n: usize) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        let nf = n as f64;
        // Written with Γ(n+α+β+2) so the n = 0, α+β = −1 case stays finite.
        let ln = (a + b + 1.0) * std::f64::consts::LN_2 + lg(nf + a + 1.0) + lg(nf + b + 1.0)
            - lg(nf + 1.0)
            - lg(nf + a + b + 2.0);
        let ratio = if n == 0 { 1.0 } else { (nf + a + b + 1.0) / (2.0 * nf + a + b + 1.0) };
        ratio * ln.exp()
    }

    /// b_p = d^p J_p / dζ^p = 2^{−p} ⟨p+α+β+1⟩_p.
    pub fn leading_derivative_b(&self, p: usize) -> f64 {
        pochhammer(p as f64 + self.alpha + self.beta + 1.0, p) * 0.5f64.powi(p as i32)
    }

    /// Coefficients of d^m J_n / dζ^m in this basis (length n − m + 1).
    /// Empty when m > n.
    pub fn derivative_expansion(&self, n: usize, m: usize) -> ModalSeries {
        if m > n {
            return ModalSeries::new(*self, Vec::new());
        }
        if m == 0 {
            let mut coeffs = vec![0.0; n + 1];
            coeffs[n] = 1.0;
            return ModalSeries::new(*self, coeffs);
        }
        // d^m J_n = 2^{−m} ⟨n+α+β+1⟩_m J_{n−m}^{(α+m,β+m)}, projected onto this
        // basis with a rule that is exact at degree 2(n−m)+1.
        let (a, b) = (self.alpha, self.beta);
        let scale = 0.5f64.powi(m as i32) * pochhammer(n as f64 + a + b + 1.0, m);
        let mf = m as f64;
        let shifted = JacobiBasis { alpha: a + mf, beta: b + mf };
        let top = n - m;
        let rule = self.gauss_jacobi(top + 1).expect("Gauss-Jacobi rule");
        let mut num = vec![0.0; top + 1];
        let mut den = vec![0.0; top + 1];
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let f = w * scale * shifted.eval(top, x);
            for (i, v) in self.eval_all(top, x).into_iter().enumerate() {
                num[i] += f * v;
                den[i] += w * v * v;
            }
        }
        let coeffs = num.iter().zip(&den).map(|(n, d)| n / d).collect();
        ModalSeries::new(*self, coeffs)
    }

    /// n-point Gauss–Jacobi rule via the Golub–Welsch eigenproblem.
    pub fn gauss_jacobi(&self, n: usize) -> Result<QuadratureRule> {
        if n == 0 {
            return Err(Error::Basis("quadrature needs at least one point".into()));
        }
        let (a, b) = (self.alpha, self.beta);
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            let k = i as f64;
            let s = 2.0 * k + a + b;
            jac[(i, i)] = if i == 0 { (b - a) / (a + b + 2.0) } else { (b * b - a * a) / (s * (s + 2.0)) };
            if i + 1 < n {
                let k1 = k + 1.0;
                let s1 = 2.0 * k1 + a + b;
                let off2 = if i == 0 {
                    4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
                } else {
                    4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + a + b) / (s1 * s1 * (s1 + 1.0) * (s1 - 1.0))
                };
                let off = off2.sqrt();
                jac[(i, i + 1)] = off;
                jac[(i + 1, i)] = off;
            }
        }
        let eig = SymmetricEigen::try_new(jac, f64::EPSILON, 10_000).ok_or(Error::Convergence { n })?;
        let mu0 = self.orthogonality_q(0);
        let mut pairs: Vec<(f64, f64)> =
            (0..n).map(|j| (eig.eigenvalues[j], mu0 * eig.eigenvectors[(0, j)].powi(2))).collect();
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        Ok(QuadratureRule { nodes, weights })
    }
}

fn lg(x: f64) -> f64 {
    ln_gamma(x).expect("positive gamma argument")
}

/// Connection coefficient D_{j,i}(γ, δ, α, β) expanding J_j^{(γ,δ)} in the
/// J_i^{(α,β)} basis (Doha).
pub fn doha_d(j: usize, i: usize, gamma: f64, delta: f64, alpha: f64, beta: f64) -> Result<f64> {
    if i > j {
        return Err(Error::Domain(format!("doha_d requires i <= j, got i = {i}, j = {j}")));
    }
    let (jf, fi) = (j as f64, i as f64);
    // Γ(i+α+β+1)/Γ(2i+α+β+1) = 1/⟨i+α+β+1⟩_i.
    let prefactor = pochhammer(jf + gamma + delta + 1.0, i) * pochhammer(fi + gamma + 1.0, j - i)
        / (pochhammer(1.0, j - i) * pochhammer(fi + alpha + beta + 1.0, i));
    let hyp = hyp3f2_terminating(
        fi - jf,
        jf + fi + gamma + delta + 1.0,
        fi + alpha + 1.0,
        fi + gamma + 1.0,
        2.0 * fi + alpha + beta + 2.0,
    )?;
    Ok(prefactor * hyp)
}

/// Σ c_i J_i^{(α,β)}.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalSeries {
    pub basis: JacobiBasis,
    pub coeffs: Vec<f64>,
}

impl ModalSeries {
    pub fn new(basis: JacobiBasis, coeffs: Vec<f64>) -> Self {
        Self { basis, coeffs }
    }

    /// Index of the last nonzero coefficient, `None` for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    pub fn eval(&self, zeta: f64) -> f64 {
        if self.coeffs.is_empty() {
            return 0.0;
        }
        let vals = self.basis.eval_all(self.coeffs.len() - 1, zeta);
        self.coeffs.iter().zip(&vals).map(|(c, v)| c * v).sum()
    }

    /// m-th derivative, re-expanded in the same basis.
    pub fn derivative(&self, m: usize) -> ModalSeries {
        let len = self.coeffs.len().saturating_sub(m);
        let mut out = vec![0.0; len];
        for (n, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 || n < m {
                continue;
            }
            let d = self.basis.derivative_expansion(n, m);
            for (o, dc) in out.iter_mut().zip(&d.coeffs) {
                *o += c * dc;
            }
        }
        ModalSeries::new(self.basis, out)
    }
}

/// Nodes and positive weights of a quadrature rule on [−1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// n-point Gauss–Legendre rule.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    JacobiBasis::legendre().gauss_jacobi(n)
}

/// n-point Gauss–Lobatto–Legendre rule (n ≥ 2), endpoints included.
pub fn gauss_lobatto(n: usize) -> Result<QuadratureRule> {
    if n < 2 {
        return Err(Error::Basis("Gauss-Lobatto needs at least two points".into()));
    }
    let mut nodes = vec![-1.0];
    if n > 2 {
        nodes.extend(JacobiBasis { alpha: 1.0, beta: 1.0 }.gauss_jacobi(n - 2)?.nodes);
    }
    nodes.push(1.0);
    let legendre = JacobiBasis::legendre();
    let nf = n as f64;
    let weights = nodes.iter().map(|&x| 2.0 / (nf * (nf - 1.0) * legendre.eval(n - 1, x).powi(2))).collect();
    Ok(QuadratureRule { nodes, weights })
}
