//! Reference values for special cases of `pψq`, computed from their own
//! series definitions without going through [`FwParams::eval`](super::FwParams::eval).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::{gamma, is_pole, log_gamma};

const MAX_TERMS: usize = 100_000;
const TOL: f64 = 1e-17;

fn sum_until_settled(mut term: impl FnMut(usize) -> Result<Complex64>) -> Result<Complex64> {
    let mut sum = super::NeumaierSum::default();
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let t = term(k)?;
        sum.add(t);
        if t.norm() <= TOL * sum.value().norm() {
            small += 1;
            if small >= 3 {
                return Ok(sum.value());
            }
        } else {
            small = 0;
        }
    }
    Err(Error::MaxTermsExceeded {
        max_terms: MAX_TERMS,
    })
}

/// Generalized hypergeometric `pFq(upper; lower; z)` by its Pochhammer
/// recurrence. Requires `p ≤ q`, or `p = q + 1` with `|z| < 1`.
pub fn pfq(upper: &[Complex64], lower: &[Complex64], z: Complex64) -> Result<Complex64> {
    if lower.iter().any(|&b| is_pole(b)) {
        return Err(Error::Validation("pFq lower parameter is a pole".into()));
    }
    let (p, q) = (upper.len(), lower.len());
    if z != Complex64::default() && (p > q + 1 || (p == q + 1 && z.norm() >= 1.0)) {
        return Err(Error::DomainViolation {
            modulus: z.norm(),
            radius: if p == q + 1 { 1.0 } else { 0.0 },
            component: None,
        });
    }
    let mut term = Complex64::new(1.0, 0.0);
    sum_until_settled(|k| {
        if k > 0 {
            let kf = (k - 1) as f64;
            let num: Complex64 = upper.iter().map(|a| a + kf).product();
            let den: Complex64 = lower.iter().map(|b| b + kf).product();
            term = term * num / den * z / k as f64;
        }
        Ok(term)
    })
}

/// Two-parameter Mittag-Leffler function `E_{α,β}(z) = Σ z^k / Γ(αk + β)`.
pub fn mittag_leffler(alpha: f64, beta: Complex64, z: Complex64) -> Result<Complex64> {
    if !(alpha > 0.0) {
        return Err(Error::Validation("Mittag-Leffler needs alpha > 0".into()));
    }
    let ln_z = if z == Complex64::default() {
        None
    } else {
        Some(z.ln())
    };
    sum_until_settled(|k| {
        let w = beta + alpha * k as f64;
        if is_pole(w) {
            return Ok(Complex64::default());
        }
        let lg = log_gamma(w)?;
        match (k, ln_z) {
            (0, _) => Ok((-lg).exp()),
            (_, None) => Ok(Complex64::default()),
            (_, Some(l)) => Ok((l * k as f64 - lg).exp()),
        }
    })
}

/// Bessel function of the first kind `J_ν(y)` from its power series.
pub fn bessel_j(nu: f64, y: f64) -> Result<f64> {
    if y < 0.0 {
        return Err(Error::Validation("bessel_j oracle takes y >= 0".into()));
    }
    let lead = gamma(Complex64::new(nu + 1.0, 0.0))?.re;
    let x = -y * y / 4.0;
    let mut term = 1.0 / lead;
    let series = sum_until_settled(|k| {
        if k > 0 {
            term *= x / (k as f64 * (nu + k as f64));
        }
        Ok(Complex64::new(term, 0.0))
    })?;
    Ok((y / 2.0).powf(nu) * series.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn pfq_closed_forms() {
        // 1F1(1; 2; z) = (e^z − 1)/z
        let v = pfq(&[c(1.0)], &[c(2.0)], c(1.5)).unwrap();
        assert!((v.re - (1.5f64.exp() - 1.0) / 1.5).abs() < 1e-14);
        // 2F1(1, 1; 2; z) = −ln(1 − z)/z
        let v = pfq(&[c(1.0), c(1.0)], &[c(2.0)], c(0.5)).unwrap();
        assert!((v.re - 2.0 * 2f64.ln()).abs() < 1e-14);
        assert!(pfq(&[c(1.0), c(1.0)], &[c(2.0)], c(1.0)).is_err());
    }

    #[test]
    fn mittag_leffler_closed_forms() {
        let v = mittag_leffler(1.0, c(1.0), c(2.0)).unwrap();
        assert!((v.re - 2f64.exp()).abs() < 1e-14 * 2f64.exp());
        // E_{2,1}(z²) = cosh z
        let v = mittag_leffler(2.0, c(1.0), c(4.0)).unwrap();
        assert!((v.re - 2f64.cosh()).abs() < 1e-14 * 2f64.cosh());
    }

    #[test]
    fn bessel_values() {
        // scipy.special.jv / mpmath.besselj
        assert!((bessel_j(0.0, 1.0).unwrap() - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j(1.0, 3.7).unwrap() - 0.053_833_987_745_461_79).abs() < 1e-14);
    }
}
