//! One-dimensional quadrature on finite intervals.
//!
//! Two unrelated schemes are provided so that each can serve as the other's
//! oracle: globally adaptive 7/15-point Gauss–Kronrod and level-doubling
//! tanh-sinh.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values a quadrature rule can accumulate.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

fn kronrod15<T: QuadValue>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> Segment<T> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod = kronrod + sum * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + sum * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).magnitude();
    Segment { a, b, value, error }
}

/// Globally adaptive Gauss–Kronrod (G7/K15) on `[a, b]`.
///
/// Bisects the segment with the largest error estimate until the summed
/// estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn gauss_kronrod<T: QuadValue>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<Estimate<T>> {
    gauss_kronrod_on(&mut f, &[a, b], rel_tol, abs_tol, max_subdivisions)
}

/// [`gauss_kronrod`] with an initial partition given by `breaks`
/// (increasing, at least two points).
pub fn gauss_kronrod_on<T: QuadValue>(
    f: &mut impl FnMut(f64) -> T,
    breaks: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<Estimate<T>> {
    if breaks.len() < 2 || breaks.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::QuadratureFailure(format!(
            "invalid integration breakpoints {breaks:?}"
        )));
    }
    let mut segments: Vec<Segment<T>> = breaks
        .windows(2)
        .map(|w| kronrod15(f, w[0], w[1]))
        .collect();
    let mut evaluations = 15 * segments.len();
    loop {
        let value = segments.iter().fold(T::zero(), |acc, s| acc + s.value);
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let target = abs_tol.max(rel_tol * value.magnitude());
        if error <= target {
            return Ok(Estimate {
                value,
                error,
                evaluations,
            });
        }
        if segments.len() >= max_subdivisions {
            return Err(Error::QuadratureFailure(format!(
                "Gauss-Kronrod budget of {max_subdivisions} segments exhausted \
                 (error estimate {error:e}, target {target:e})"
            )));
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("at least one segment");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if !(mid > seg.a && mid < seg.b) {
            return Err(Error::QuadratureFailure(
                "segment width reached machine resolution".into(),
            ));
        }
        segments.push(kronrod15(f, seg.a, mid));
        segments.push(kronrod15(f, mid, seg.b));
        evaluations += 30;
    }
}

/// Tanh-sinh quadrature on `[a, b]` with step halving until two successive
/// levels agree to `rel_tol` (or `abs_tol`).
pub fn tanh_sinh<T: QuadValue>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_levels: usize,
) -> Result<Estimate<T>> {
    if !(b > a) {
        return Err(Error::QuadratureFailure(format!("invalid interval [{a}, {b}]")));
    }
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let pi_2 = std::f64::consts::FRAC_PI_2;
    // Abscissae beyond |t| = T_MAX sit within rounding of the endpoints.
    const T_MAX: f64 = 3.2;

    // Contribution of node t (and its mirror −t); endpoints are never sampled.
    let pair = |t: f64, f: &mut dyn FnMut(f64) -> T| -> Option<T> {
        let s = pi_2 * t.sinh();
        let cosh_s = s.cosh();
        // 1 − tanh(s) computed without cancellation
        let one_minus = 1.0 / (s.exp() * cosh_s);
        let w = pi_2 * t.cosh() / (cosh_s * cosh_s);
        let dx = half * one_minus;
        if dx <= 0.0 || w == 0.0 {
            return None;
        }
        let hi = b - dx;
        let lo = a + dx;
        if !(hi > a && lo < b) {
            return None;
        }
        Some((f(lo) + f(hi)) * w)
    };

    let mut h = 1.0;
    let mut sum = f(center) * pi_2;
    let mut evaluations = 1;
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        if let Some(v) = pair(k as f64 * h, &mut f) {
            sum = sum + v;
            evaluations += 2;
        }
        k += 1;
    }
    let mut previous = sum * (h * half);
    for _ in 0..max_levels {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            if let Some(v) = pair(k as f64 * h, &mut f) {
                sum = sum + v;
                evaluations += 2;
            }
            k += 2;
        }
        let current = sum * (h * half);
        let diff = (current - previous).magnitude();
        if diff <= abs_tol.max(rel_tol * current.magnitude()) {
            return Ok(Estimate {
                value: current,
                error: diff,
                evaluations,
            });
        }
        previous = current;
    }
    Err(Error::QuadratureFailure(format!(
        "tanh-sinh did not converge within {max_levels} levels"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_exponential() {
        let gk = gauss_kronrod(|x: f64| x * x, 0.0, 3.0, 1e-14, 0.0, 50).unwrap();
        assert!((gk.value - 9.0).abs() < 1e-13);
        let ts = tanh_sinh(|x: f64| x.exp(), 0.0, 1.0, 1e-14, 0.0, 12).unwrap();
        assert!((ts.value - (1f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫₀¹ ln x dx = −1
        let ts = tanh_sinh(|x: f64| x.ln(), 0.0, 1.0, 1e-12, 0.0, 12).unwrap();
        assert!((ts.value + 1.0).abs() < 1e-11);
        let gk = gauss_kronrod(|x: f64| x.ln(), 0.0, 1.0, 1e-10, 0.0, 500).unwrap();
        assert!((gk.value + 1.0).abs() < 1e-9);
    }

    #[test]
    fn complex_integrand() {
        // ∫₀^π e^{ix} dx = 2i
        let gk = gauss_kronrod(
            |x: f64| Complex64::new(0.0, x).exp(),
            0.0,
            std::f64::consts::PI,
            1e-13,
            0.0,
            100,
        )
        .unwrap();
        assert!((gk.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = gauss_kronrod(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, 1e-15, 0.0, 4);
        assert!(matches!(r, Err(Error::QuadratureFailure(_))));
    }
}
