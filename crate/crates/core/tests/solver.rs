use std::f64::consts::PI;

use gjfr_core::corrections::{iota_crit, iota_of_sd};
use gjfr_core::fr1d::{project_initial, rhs, sobolev_norm, total_integral};
use gjfr_core::vonneumann::cfl_limit;
use gjfr_core::{FluxModel, FrOperators, Mesh1D, PointRule, RkScheme, SchemeParams};

fn ops(p: usize, alpha: f64, beta: f64, iota: f64, rule: PointRule) -> FrOperators {
    FrOperators::build(&SchemeParams::new(p, alpha, beta, iota).unwrap(), rule).unwrap()
}

fn advance(model: FluxModel, theta: f64, mesh: &Mesh1D, ops: &FrOperators, u: &mut [f64], dt: f64, steps: usize) {
    let mut f = |x: &[f64], out: &mut [f64]| rhs(x, mesh, ops, model, theta, out);
    for _ in 0..steps {
        RkScheme::Rk44.step(&mut f, u, dt);
    }
}

#[test]
fn total_integral_is_conserved() {
    let mesh = Mesh1D::from_boundaries(vec![0.0, 0.7, 1.1, 2.5, 3.0, 4.4, 2.0 * PI]).unwrap();
    let init = |x: f64| 1.0 + 0.5 * x.sin() + 0.2 * (3.0 * x).cos();
    for rule in [PointRule::GaussLegendre, PointRule::GaussLobatto, PointRule::GaussJacobi] {
        for (a, b) in [(0.0, 0.0), (0.3, -0.4), (-0.5, 0.5)] {
            let o = ops(3, a, b, iota_of_sd(3, a, b), rule);
            for (model, theta) in [
                (FluxModel::LinearAdvection { speed: 1.3 }, 1.0),
                (FluxModel::LinearAdvection { speed: -0.8 }, 0.0),
                (FluxModel::ViscousBurgers { mu: 0.01 }, 1.0),
            ] {
                let mut u = project_initial(init, &mesh, &o);
                let before = total_integral(&u, &mesh, &o);
                advance(model, theta, &mesh, &o, &mut u.values, 2e-3, 50);
                let after = total_integral(&u, &mesh, &o);
                assert!((after - before).abs() < 1e-11, "{rule:?} ({a}, {b}) {model:?}: {before} -> {after}");
            }
        }
    }
}

#[test]
fn upwind_energy_does_not_grow() {
    let mesh = Mesh1D::uniform(0.0, 2.0 * PI, 12).unwrap();
    let init = |x: f64| (-(x - PI).powi(2) * 4.0).exp() + 0.3 * (5.0 * x).sin();
    for p in [2usize, 3, 4] {
        for iota in [0.0, iota_of_sd(p, 0.0, 0.0), iota_crit(p, 0.0, 0.0)] {
            let o = ops(p, 0.0, 0.0, iota, PointRule::GaussLegendre);
            let dt = 0.25 * cfl_limit(&o, RkScheme::Rk44, 1.0).unwrap() * mesh.jacobian(0) * 2.0;
            let mut u = project_initial(init, &mesh, &o);
            let mut last = sobolev_norm(&u, &mesh, &o);
            for _ in 0..40 {
                advance(FluxModel::LinearAdvection { speed: 1.0 }, 1.0, &mesh, &o, &mut u.values, dt, 5);
                let now = sobolev_norm(&u, &mesh, &o);
                assert!(now <= last * (1.0 + 1e-12), "p={p} iota={iota}: {last} -> {now}");
                last = now;
            }
        }
    }
}

#[test]
fn central_energy_is_nearly_constant() {
    let mesh = Mesh1D::uniform(0.0, 2.0 * PI, 10).unwrap();
    let o = ops(3, 0.0, 0.0, iota_of_sd(3, 0.0, 0.0), PointRule::GaussLegendre);
    let mut u = project_initial(|x| x.sin() + 0.4 * (2.0 * x).cos(), &mesh, &o);
    let start = sobolev_norm(&u, &mesh, &o);
    advance(FluxModel::LinearAdvection { speed: 1.0 }, 0.0, &mesh, &o, &mut u.values, 1e-3, 2000);
    let end = sobolev_norm(&u, &mesh, &o);
    assert!((end / start - 1.0).abs() < 1e-6, "{start} -> {end}");
}

#[test]
fn p1_upwind_order_is_two() {
    let o = ops(1, 0.0, 0.0, 0.0, PointRule::GaussLegendre);
    let error = |n: usize| {
        let mesh = Mesh1D::uniform(0.0, 2.0 * PI, n).unwrap();
        let steps = 20 * n;
        let mut u = project_initial(f64::sin, &mesh, &o);
        advance(FluxModel::LinearAdvection { speed: 1.0 }, 1.0, &mesh, &o, &mut u.values, 1.0 / steps as f64, steps);
        let mut sum = 0.0;
        for e in 0..n {
            for i in 0..o.len() {
                let d = u.values[e * o.len() + i] - (mesh.map(e, o.points[i]) - 1.0).sin();
                sum += mesh.jacobian(e) * o.weights[i] * d * d;
            }
        }
        sum.sqrt()
    };
    let order = (error(32) / error(64)).log2();
    assert!((order - 2.0).abs() < 0.2, "{order}");
}
