//! Explicit Runge–Kutta integrators for autonomous systems u' = f(u).

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RkScheme {
    Euler,
    /// Three-stage third-order SSP scheme of Shu and Osher.
    Rk33,
    /// Classical fourth-order scheme.
    Rk44,
    /// Five-stage fourth-order 2N-storage scheme of Carpenter and Kennedy.
    LsRk45,
}

/// Stage coefficients in either Butcher or 2N low-storage form.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficients {
    Butcher { a: Vec<Vec<f64>>, b: Vec<f64>, c: Vec<f64> },
    LowStorage { a: Vec<f64>, b: Vec<f64>, c: Vec<f64> },
}

const LS45_A: [f64; 5] = [
    0.0,
    -567_301_805_773.0 / 1_357_537_059_087.0,
    -2_404_267_990_393.0 / 2_016_746_695_238.0,
    -3_550_918_686_646.0 / 2_091_501_179_385.0,
    -1_275_806_237_668.0 / 842_570_457_699.0,
];
const LS45_B: [f64; 5] = [
    1_432_997_174_477.0 / 9_575_080_441_755.0,
    5_161_836_677_717.0 / 13_612_068_292_357.0,
    1_720_146_321_549.0 / 2_090_206_949_498.0,
    3_134_564_353_537.0 / 4_481_467_310_338.0,
    2_277_821_191_437.0 / 14_882_151_754_819.0,
];
const LS45_C: [f64; 5] = [
    0.0,
    1_432_997_174_477.0 / 9_575_080_441_755.0,
    2_526_269_341_429.0 / 6_820_363_962_896.0,
    2_006_345_519_317.0 / 3_224_310_063_776.0,
    2_802_321_613_138.0 / 2_924_317_926_251.0,
];

impl RkScheme {
    pub const ALL: [RkScheme; 4] = [RkScheme::Euler, RkScheme::Rk33, RkScheme::Rk44, RkScheme::LsRk45];

    pub fn name(&self) -> &'static str {
        match self {
            RkScheme::Euler => "euler",
            RkScheme::Rk33 => "rk33",
            RkScheme::Rk44 => "rk44",
            RkScheme::LsRk45 => "ls-rk45",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn order(&self) -> usize {
        match self {
            RkScheme::Euler => 1,
            RkScheme::Rk33 => 3,
            RkScheme::Rk44 | RkScheme::LsRk45 => 4,
        }
    }

    pub fn coefficients(&self) -> Coefficients {
        match self {
            RkScheme::Euler => Coefficients::Butcher { a: vec![vec![]], b: vec![1.0], c: vec![0.0] },
            RkScheme::Rk33 => Coefficients::Butcher {
                a: vec![vec![], vec![1.0], vec![0.25, 0.25]],
                b: vec![1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0],
                c: vec![0.0, 1.0, 0.5],
            },
            RkScheme::Rk44 => Coefficients::Butcher {
                a: vec![vec![], vec![0.5], vec![0.0, 0.5], vec![0.0, 0.0, 1.0]],
                b: vec![1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0],
                c: vec![0.0, 0.5, 0.5, 1.0],
            },
            RkScheme::LsRk45 => Coefficients::LowStorage { a: LS45_A.to_vec(), b: LS45_B.to_vec(), c: LS45_C.to_vec() },
        }
    }

    /// Advance `state` by one step of size `dt`. `rhs(u, out)` writes f(u).
    pub fn step(&self, rhs: &mut impl FnMut(&[f64], &mut [f64]), state: &mut [f64], dt: f64) {
        let n = state.len();
        match self.coefficients() {
            Coefficients::Butcher { a, b, .. } => {
                let mut stages: Vec<Vec<f64>> = Vec::with_capacity(b.len());
                let mut arg = vec![0.0; n];
                for row in &a {
                    arg.copy_from_slice(state);
                    for (aij, k) in row.iter().zip(&stages) {
                        if *aij != 0.0 {
                            for (x, kv) in arg.iter_mut().zip(k) {
                                *x += dt * aij * kv;
                            }
                        }
                    }
                    let mut k = vec![0.0; n];
                    rhs(&arg, &mut k);
                    stages.push(k);
                }
                for (bi, k) in b.iter().zip(&stages) {
                    for (x, kv) in state.iter_mut().zip(k) {
                        *x += dt * bi * kv;
                    }
                }
            }
            Coefficients::LowStorage { a, b, .. } => {
                let mut du = vec![0.0; n];
                let mut k = vec![0.0; n];
                for (ai, bi) in a.iter().zip(&b) {
                    rhs(state, &mut k);
                    for ((d, kv), x) in du.iter_mut().zip(&k).zip(state.iter_mut()) {
                        *d = ai * *d + dt * kv;
                        *x += bi * *d;
                    }
                }
            }
        }
    }

    /// Linear stability function R(z): one step of u' = λu with z = λ dt.
    pub fn stability_polynomial(&self, z: Complex64) -> Complex64 {
        match self.coefficients() {
            Coefficients::Butcher { a, b, .. } => {
                let mut stages: Vec<Complex64> = Vec::with_capacity(b.len());
                for row in &a {
                    let arg =
                        Complex64::new(1.0, 0.0) + row.iter().zip(&stages).map(|(aij, k)| k * *aij).sum::<Complex64>();
                    stages.push(z * arg);
                }
                Complex64::new(1.0, 0.0) + b.iter().zip(&stages).map(|(bi, k)| k * *bi).sum::<Complex64>()
            }
            Coefficients::LowStorage { a, b, .. } => {
                let mut u = Complex64::new(1.0, 0.0);
                let mut du = Complex64::new(0.0, 0.0);
                for (ai, bi) in a.iter().zip(&b) {
                    du = du * *ai + z * u;
                    u += du * *bi;
                }
                u
            }
        }
    }
}

impl std::fmt::Display for RkScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
