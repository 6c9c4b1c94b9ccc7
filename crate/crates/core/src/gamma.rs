//! Complex log-gamma and friends.
//!
//! `log_gamma` uses the g = 7, n = 9 Lanczos approximation on `Re(w) ≥ 1/2`
//! and the reflection formula to the left of it. Series code works with
//! log-gammas and their differences only; [`gamma`] is a convenience wrapper.
//!
//! Log-gamma values are returned modulo `2πi`. Every consumer exponentiates
//! them, so the branch is irrelevant.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::bicomplex::Bicomplex;
use crate::error::{Error, Result};

/// Distance to a nonpositive integer below which an argument is a pole.
pub const POLE_TOL: f64 = 1e-12;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaConfig {
    pub lanczos_g: f64,
    pub coefficients: &'static [f64],
    pub reflection_threshold: f64,
}

const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

impl Default for GammaConfig {
    fn default() -> Self {
        GammaConfig {
            lanczos_g: 7.0,
            coefficients: &LANCZOS_COEFFS,
            reflection_threshold: 0.5,
        }
    }
}

const CONFIG: GammaConfig = GammaConfig {
    lanczos_g: 7.0,
    coefficients: &LANCZOS_COEFFS,
    reflection_threshold: 0.5,
};

/// True when `w` lies within [`POLE_TOL`] of `0, −1, −2, …`.
pub fn is_pole(w: Complex64) -> bool {
    if w.re > POLE_TOL {
        return false;
    }
    let n = w.re.round();
    n <= 0.0 && (w - Complex64::new(n, 0.0)).norm() < POLE_TOL
}

fn lanczos_sum(w: Complex64) -> Complex64 {
    // A_g(w) with the series written in terms of w − 1.
    let x = w - 1.0;
    let c = CONFIG.coefficients;
    let mut sum = Complex64::new(c[0], 0.0);
    for (i, ci) in c.iter().enumerate().skip(1) {
        sum += ci / (x + i as f64);
    }
    sum
}

fn log_gamma_right(w: Complex64) -> Complex64 {
    let t = w + (CONFIG.lanczos_g - 0.5);
    LN_SQRT_2PI + (w - 0.5) * t.ln() - t + lanczos_sum(w).ln()
}

/// `ln sin(πw)`, stable for large `|Im w|`.
fn ln_sin_pi(w: Complex64) -> Complex64 {
    if w.im.abs() < 20.0 {
        return (w * PI).sin().ln();
    }
    if w.im < 0.0 {
        return ln_sin_pi(w.conj()).conj();
    }
    // sin(πw) = (i/2)·e^{−iπw}·(1 − e^{2iπw}); |e^{2iπw}| = e^{−2π Im w} is tiny.
    let i = Complex64::i();
    let small = (i * 2.0 * PI * w).exp();
    -i * PI * w + ln_1p(-small) + Complex64::new(-LN_2, PI / 2.0)
}

/// `ln(1 + u)` accurate for small `|u|`.
pub(crate) fn ln_1p(u: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * u.re + u.norm_sqr()).ln_1p();
    let im = u.im.atan2(1.0 + u.re);
    Complex64::new(re, im)
}

/// Principal-sheet `ln Γ(w)` (modulo `2πi`).
pub fn log_gamma(w: Complex64) -> Result<Complex64> {
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::Validation(format!("log_gamma argument {w} is not finite")));
    }
    if is_pole(w) {
        return Err(Error::Pole {
            at: w,
            component: None,
        });
    }
    if w.re >= CONFIG.reflection_threshold {
        Ok(log_gamma_right(w))
    } else {
        let one_minus = Complex64::new(1.0, 0.0) - w;
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(w) - log_gamma_right(one_minus))
    }
}

/// `ln |Γ(x)|` for real `x`; `−∞`-free: poles are errors.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    log_gamma(Complex64::new(x, 0.0)).map(|l| l.re)
}

/// `ln(1/Γ(w))`, with `None` at the poles of Γ where `1/Γ` vanishes.
pub fn log_recip_gamma(w: Complex64) -> Result<Option<Complex64>> {
    if is_pole(w) {
        return Ok(None);
    }
    log_gamma(w).map(|l| Some(-l))
}

pub fn gamma(w: Complex64) -> Result<Complex64> {
    log_gamma(w).map(|l| {
        let g = l.exp();
        // Real arguments give real gamma values; drop the rounding residue
        // in the imaginary part that the reflection branch leaves behind.
        if w.im == 0.0 {
            Complex64::new(g.re, 0.0)
        } else {
            g
        }
    })
}

/// `Γ_b(W) = Γ(w1)·e1 + Γ(w2)·e2`.
pub fn gamma_bicomplex(w: Bicomplex) -> Result<Bicomplex> {
    w.try_map(gamma)
}

/// `(a)_E = Γ(a + E)/Γ(a)`.
pub fn pochhammer(a: Complex64, e: f64) -> Result<Complex64> {
    if e == 0.0 {
        if is_pole(a) {
            return Err(Error::Pole {
                at: a,
                component: None,
            });
        }
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok((log_gamma(a + e)? - log_gamma(a)?).exp())
}

/// `ln[Γ(w + h)/Γ(w)]` for `h > 0`.
///
/// On the Lanczos half plane the difference is assembled term by term so
/// that the leading `w ln w` parts cancel analytically.
pub fn log_gamma_step(w: Complex64, h: f64) -> Result<Complex64> {
    let next = w + h;
    if is_pole(w) {
        return Err(Error::Pole {
            at: w,
            component: None,
        });
    }
    if is_pole(next) {
        return Err(Error::Pole {
            at: next,
            component: None,
        });
    }
    if w.re < CONFIG.reflection_threshold {
        return Ok(log_gamma(next)? - log_gamma(w)?);
    }
    let t = w + (CONFIG.lanczos_g - 0.5);
    let ratio = ln_1p(Complex64::new(h, 0.0) / t);
    let head = (w - 0.5) * ratio + h * (t + h).ln() - h;
    Ok(head + (lanczos_sum(next) / lanczos_sum(w)).ln())
}

/// `ln[Γ(a + (k+1)A)/Γ(a + kA)]`, the per-term step of a Fox–Wright series.
pub fn log_gamma_ratio(a: Complex64, scale: f64, k: usize) -> Result<Complex64> {
    log_gamma_step(a + scale * k as f64, scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn integer_and_half_values() {
        assert!((log_gamma(c(5.0, 0.0)).unwrap() - c(24f64.ln(), 0.0)).norm() < 1e-14);
        let root_pi = PI.sqrt().ln();
        assert!((log_gamma(c(0.5, 0.0)).unwrap() - c(root_pi, 0.0)).norm() < 1e-14);
        assert!(rel(gamma(c(-0.5, 0.0)).unwrap(), c(-2.0 * PI.sqrt(), 0.0)) < 1e-14);
    }

    #[test]
    fn log_gamma_one_plus_i_matches_high_precision() {
        // mpmath.loggamma(1+1j) at 40 digits
        let expected = c(-0.650_923_199_301_856_3, -0.301_640_320_467_533_2);
        assert!((log_gamma(c(1.0, 1.0)).unwrap() - expected).norm() < 1e-14);
    }

    #[test]
    fn poles_are_rejected() {
        for n in 0..5 {
            let w = c(-(n as f64), 0.0);
            assert!(matches!(log_gamma(w), Err(Error::Pole { .. })));
        }
        assert!(log_gamma(c(-1.0 + 1e-9, 0.0)).is_ok());
        assert_eq!(log_recip_gamma(c(-3.0, 0.0)).unwrap(), None);
    }

    #[test]
    fn bicomplex_gamma() {
        let g = gamma_bicomplex(Bicomplex::compose(c(2.0, 0.0), c(3.0, 0.0))).unwrap();
        assert!((g.z1() - c(1.0, 0.0)).norm() < 1e-14);
        assert!((g.z2() - c(2.0, 0.0)).norm() < 1e-14);
        let g = gamma_bicomplex(Bicomplex::from_real(0.5)).unwrap();
        assert_eq!(g.z1(), g.z2());
        assert!((g.z1().re - PI.sqrt()).abs() < 1e-14);
        let err = gamma_bicomplex(Bicomplex::compose(c(-1.0, 0.0), c(2.0, 0.0))).unwrap_err();
        assert!(matches!(err, Error::Pole { component: Some(1), .. }));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c(2.3, 0.1), 0.0).unwrap(), c(1.0, 0.0));
        for (k, fact) in [(1, 1.0), (4, 24.0), (7, 5040.0)] {
            assert!(rel(pochhammer(c(1.0, 0.0), k as f64).unwrap(), c(fact, 0.0)) < 1e-13);
        }
        assert!(rel(pochhammer(c(0.5, 0.0), 2.0).unwrap(), c(0.75, 0.0)) < 1e-14);
    }

    #[test]
    fn ratio_examples() {
        for k in [0usize, 1, 10, 1000] {
            let r = log_gamma_ratio(c(1.0, 0.0), 1.0, k).unwrap();
            assert!((r - c(((k + 1) as f64).ln(), 0.0)).norm() < 1e-13 * (1.0 + r.norm()));
        }
        let r = log_gamma_ratio(c(1.0, 0.0), 2.0, 0).unwrap();
        assert!((r.re - LN_2).abs() < 1e-15);
        let a = c(0.5, 0.0);
        let direct = log_gamma(a + 6.0).unwrap() - log_gamma(a + 4.5).unwrap();
        let r = log_gamma_ratio(a, 1.5, 3).unwrap();
        assert!((r - direct).norm() < 1e-13 * direct.norm());
    }

    #[test]
    fn ratio_at_large_k_keeps_relative_accuracy() {
        // Γ(x+1)/Γ(x) = x exactly.
        let x = 1.0e6 + 0.25;
        let r = log_gamma_step(c(x, 0.0), 1.0).unwrap();
        assert!((r.re - x.ln()).abs() < 1e-13 * x.ln());
    }

    #[test]
    fn large_imaginary_reflection_is_finite() {
        let w = c(-3.3, 400.0);
        let lhs = log_gamma(w).unwrap();
        let rhs = log_gamma(w + 1.0).unwrap() - w.ln();
        let d = lhs - rhs;
        // equal modulo 2πi
        let wrapped = c(d.re, d.im - (d.im / (2.0 * PI)).round() * 2.0 * PI);
        assert!(wrapped.norm() < 1e-10, "{d}");
    }
}
