//! Log-gamma, rising Pochhammer symbol and the terminating ₃F₂ sum at unit
//! argument.

use crate::error::{Error, Result};

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_741_780_329_736_406;

// Lanczos coefficients for g = 607/128 (Godfrey).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_091_82,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    if x < 0.5 {
        // Γ(x) = Γ(x + 1) / x keeps the series argument away from its pole.
        return Ok(lanczos_ln_gamma(x + 1.0) - x.ln());
    }
    Ok(lanczos_ln_gamma(x))
}

fn lanczos_ln_gamma(x: f64) -> f64 {
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + sum.ln()
}

/// Gamma function for `x > 0`.
pub fn gamma(x: f64) -> Result<f64> {
    ln_gamma(x).map(f64::exp)
}

/// Rising factorial x(x+1)…(x+n−1) as a direct product, so that factors
/// equal to zero give an exact zero.
pub fn pochhammer(x: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (x + i as f64))
}

/// Terminating ₃F₂(a1, a2, a3; b1, b2; 1) with `a1 = −m`, `m ≥ 0`.
pub fn hyp3f2_terminating(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64) -> Result<f64> {
    if a1 > 0.0 || a1.fract() != 0.0 || !a1.is_finite() {
        return Err(Error::Domain(format!(
            "hyp3f2_terminating needs a non-positive integer first parameter, got {a1}"
        )));
    }
    let terms = (-a1) as usize;
    let mut term = 1.0;
    let mut sum = 1.0;
    for i in 0..terms {
        let fi = i as f64;
        let den = (b1 + fi) * (b2 + fi) * (fi + 1.0);
        if den == 0.0 {
            return Err(Error::Domain(format!(
                "hyp3f2_terminating: zero lower parameter at term {i} (b1 = {b1}, b2 = {b2})"
            )));
        }
        term *= (a1 + fi) * (a2 + fi) * (a3 + fi) / den;
        sum += term;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    // Reference values from a 30-digit evaluation.
    const REFERENCE: [(f64, f64); 9] = [
        (0.5, 0.572_364_942_924_700_087_071_713_7),
        (0.1, 2.252_712_651_734_205_902_006_238),
        (1.5, -0.120_782_237_635_245_222_345_518_4),
        (3.7, 1.428_072_326_665_388_129_200_498),
        (10.0, 12.801_827_480_081_469_611_207_72),
        (25.25, 55.585_686_044_869_429_707_988_67),
        (100.0, 359.134_205_369_575_398_776_044),
        (199.5, 855.286_389_273_452_573_793_834_4),
        (1e-3, 6.907_178_885_383_853_661_683_681),
    ];

    #[test]
    fn ln_gamma_matches_reference() {
        for (x, want) in REFERENCE {
            let got = ln_gamma(x).unwrap();
            assert_relative_eq!(got, want, max_relative = 1e-13);
        }
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert_relative_eq!(ln_gamma(5.0).unwrap(), 24f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(ln_gamma(0.5).unwrap(), std::f64::consts::PI.sqrt().ln(), max_relative = 1e-14);
    }

    #[test]
    fn ln_gamma_factorials() {
        let mut fact = 1.0f64;
        for n in 1..30 {
            fact *= n as f64;
            assert_relative_eq!(ln_gamma(n as f64 + 1.0).unwrap(), fact.ln(), max_relative = 1e-13);
        }
    }

    #[test]
    fn ln_gamma_rejects_non_positive() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-2.5).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn pochhammer_edge_cases() {
        assert_eq!(pochhammer(3.5, 0), 1.0);
        assert_eq!(pochhammer(1.0, 4), 24.0);
        assert_eq!(pochhammer(0.0, 3), 0.0);
        assert_eq!(pochhammer(-2.0, 3), 0.0);
        assert_eq!(pochhammer(-2.0, 2), 2.0);
    }

    #[test]
    fn hyp3f2_hand_sums() {
        assert_eq!(hyp3f2_terminating(0.0, 2.3, -0.7, 1.1, 4.0).unwrap(), 1.0);
        assert_relative_eq!(hyp3f2_terminating(-1.0, 2.0, 3.0, 4.0, 5.0).unwrap(), 0.7, epsilon = 1e-15);
        assert_relative_eq!(hyp3f2_terminating(-2.0, 1.0, 1.0, 1.0, 1.0).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn hyp3f2_errors() {
        assert!(hyp3f2_terminating(-1.5, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(hyp3f2_terminating(2.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(hyp3f2_terminating(-3.0, 1.0, 1.0, -1.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn pochhammer_is_gamma_ratio(x in 0.1f64..10.0, n in 0usize..=20) {
            let direct = pochhammer(x, n);
            let ratio = (ln_gamma(x + n as f64).unwrap() - ln_gamma(x).unwrap()).exp();
            prop_assert!((direct - ratio).abs() <= 1e-12 * direct.abs());
        }

        #[test]
        fn hyp3f2_trivial_when_a1_zero(a2 in -5.0f64..5.0, a3 in -5.0f64..5.0, b1 in 0.1f64..5.0, b2 in 0.1f64..5.0) {
            prop_assert_eq!(hyp3f2_terminating(0.0, a2, a3, b1, b2).unwrap(), 1.0);
        }
    }
}
