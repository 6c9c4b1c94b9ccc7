//! Continuous-spectrum limit: `ρ̃(E)`, the ν-function
//! `ν(ζ) = ∫₀^∞ ζ^E / ρ̃(E) dE`, continuous-state overlaps and densities.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bicomplex::Hyperbolic;
use crate::coherent::{BcCoherentModel, CoherentModel};
use crate::error::{Error, Result};
use crate::gamma::ln_gamma_real;
use crate::quadrature::{gauss_kronrod_on, tanh_sinh, Estimate, QuadValue};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// The upper limit is placed where the log-integrand has fallen this far
    /// below its peak.
    pub e_max_drop: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rel_tol: 1e-11,
            abs_tol: 1e-300,
            max_subdivisions: 2000,
            e_max_drop: 40.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    #[default]
    #[serde(rename = "gk")]
    GaussKronrod,
    #[serde(rename = "ts")]
    TanhSinh,
}

impl Scheme {
    pub fn other(self) -> Scheme {
        match self {
            Scheme::GaussKronrod => Scheme::TanhSinh,
            Scheme::TanhSinh => Scheme::GaussKronrod,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::GaussKronrod => "gk",
            Scheme::TanhSinh => "ts",
        })
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gk" => Ok(Scheme::GaussKronrod),
            "ts" => Ok(Scheme::TanhSinh),
            _ => Err(Error::Validation(format!("unknown quadrature scheme {s:?} (gk or ts)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NuResult {
    pub value: f64,
    pub err_est: f64,
    pub scheme: Scheme,
}

/// Maximum number of tanh-sinh level halvings.
const TS_LEVELS: usize = 14;

/// `ln ρ̃(E)`.
pub fn log_rho_tilde(model: &CoherentModel, e: f64) -> Result<f64> {
    if !(e >= 0.0 && e.is_finite()) {
        return Err(Error::Validation(format!("rho_tilde needs E ≥ 0, got {e}")));
    }
    Ok(ln_gamma_real(e + 1.0)? + model.log_rho_core(e))
}

pub fn rho_tilde(model: &CoherentModel, e: f64) -> Result<f64> {
    let l = log_rho_tilde(model, e)?;
    if l > f64::MAX.ln() {
        return Err(Error::Overflow(format!("rho_tilde({e}) = exp({l}) is not representable")));
    }
    Ok(l.exp())
}

/// Location of the peak of `E ln ζ − ln ρ̃(E)` and the point beyond it where
/// the log-integrand has dropped `drop` below the peak.
fn integration_window(model: &CoherentModel, log_zeta: f64, drop: f64) -> Result<(f64, f64)> {
    let g = |e: f64| e * log_zeta - log_rho_tilde(model, e).expect("E ≥ 0");
    const STEP: f64 = 0.5;
    const MAX_STEPS: usize = 2_000_000;
    let mut peak = (0.0, g(0.0));
    for i in 1..MAX_STEPS {
        let e = i as f64 * STEP;
        let v = g(e);
        if v > peak.1 {
            peak = (e, v);
        } else if v < peak.1 - drop {
            return Ok((peak.0, e));
        }
    }
    Err(Error::QuadratureFailure(
        "integrand did not decay; upper limit not found".into(),
    ))
}

fn integrate<T: QuadValue>(
    mut f: impl FnMut(f64) -> T,
    peak: f64,
    e_max: f64,
    cfg: &QuadConfig,
    scheme: Scheme,
) -> Result<Estimate<T>> {
    match scheme {
        Scheme::GaussKronrod => {
            let breaks: Vec<f64> = if peak > 0.0 && peak < e_max {
                vec![0.0, peak, e_max]
            } else {
                vec![0.0, e_max]
            };
            gauss_kronrod_on(&mut f, &breaks, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions)
        }
        Scheme::TanhSinh => tanh_sinh(f, 0.0, e_max, cfg.rel_tol, cfg.abs_tol, TS_LEVELS),
    }
}

fn validate_cfg(cfg: &QuadConfig) -> Result<()> {
    if !(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0 && cfg.e_max_drop > 0.0 && cfg.max_subdivisions > 0) {
        return Err(Error::Validation(format!("quadrature tolerances must be positive: {cfg:?}")));
    }
    Ok(())
}

/// `ν(ζ)` with the default scheme.
pub fn nu(model: &CoherentModel, zeta: f64, cfg: &QuadConfig) -> Result<f64> {
    nu_with(model, zeta, cfg, Scheme::GaussKronrod).map(|r| r.value)
}

pub fn nu_with(model: &CoherentModel, zeta: f64, cfg: &QuadConfig, scheme: Scheme) -> Result<NuResult> {
    validate_cfg(cfg)?;
    if !(zeta >= 0.0 && zeta.is_finite()) {
        return Err(Error::Validation(format!("nu needs ζ ≥ 0, got {zeta}")));
    }
    if zeta == 0.0 {
        return Ok(NuResult {
            value: 0.0,
            err_est: 0.0,
            scheme,
        });
    }
    let lz = zeta.ln();
    let (peak, e_max) = integration_window(model, lz, cfg.e_max_drop)?;
    let est = integrate(
        |e| (e * lz - log_rho_tilde(model, e).expect("E ≥ 0")).exp(),
        peak,
        e_max,
        cfg,
        scheme,
    )?;
    Ok(NuResult {
        value: est.value,
        err_est: est.error,
        scheme,
    })
}

/// `ν` per idempotent component of a nonnegative hyperbolic argument.
pub fn nu_bicomplex(
    model: &BcCoherentModel,
    w: Hyperbolic,
    cfg: &QuadConfig,
    scheme: Scheme,
) -> Result<Hyperbolic> {
    if !w.is_nonnegative() {
        return Err(Error::Validation(format!("nu_bicomplex needs W in D+, got {w:?}")));
    }
    let mut out = [0.0; 2];
    for (i, p) in [1u8, 2].into_iter().enumerate() {
        out[i] = nu_with(model.component(p), w.component(p), cfg, scheme)
            .map_err(|e| e.in_component(p))?
            .value;
    }
    Ok(Hyperbolic::new(out[0], out[1]))
}

/// `∫₀^∞ exp(E(ln r + iφ)) / ρ̃(E) dE`.
fn nu_complex(model: &CoherentModel, log_r: f64, phase: f64, cfg: &QuadConfig, scheme: Scheme) -> Result<Complex64> {
    let (peak, e_max) = integration_window(model, log_r, cfg.e_max_drop)?;
    let w = Complex64::new(log_r, phase);
    let est = integrate(
        |e| (w * e - log_rho_tilde(model, e).expect("E ≥ 0")).exp(),
        peak,
        e_max,
        cfg,
        scheme,
    )?;
    Ok(est.value)
}

/// Overlap of continuous-spectrum states,
/// `ν(z̄z′)/√(ν(|z|²)ν(|z′|²))`.
///
/// The complex argument enters as `(z̄z′)^E = |zz′|^E e^{iE(arg z′ − arg z)}`
/// with principal arguments of `z` and `z′` separately; this is the inner
/// product of the two state densities.
pub fn overlap_tilde(
    model: &CoherentModel,
    z: Complex64,
    zp: Complex64,
    cfg: &QuadConfig,
    scheme: Scheme,
) -> Result<Complex64> {
    validate_cfg(cfg)?;
    if z.norm() == 0.0 || zp.norm() == 0.0 {
        return Err(Error::Validation("overlap_tilde needs nonzero state labels".into()));
    }
    let num = nu_complex(model, (z.norm() * zp.norm()).ln(), zp.arg() - z.arg(), cfg, scheme)?;
    let n1 = nu_with(model, z.norm_sqr(), cfg, scheme)?.value;
    let n2 = nu_with(model, zp.norm_sqr(), cfg, scheme)?.value;
    Ok(num / (n1 * n2).sqrt())
}

/// `z^E / (√ρ̃(E) √ν(|z|²))`, principal branch.
pub fn state_density(model: &CoherentModel, z: Complex64, e: f64, cfg: &QuadConfig) -> Result<Complex64> {
    let norm = nu(model, z.norm_sqr(), cfg)?;
    density_with_norm(model, z, e, norm)
}

fn density_with_norm(model: &CoherentModel, z: Complex64, e: f64, norm: f64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Err(Error::Validation("continuous states need a nonzero label".into()));
    }
    let log = z.ln() * e - 0.5 * (log_rho_tilde(model, e)? + norm.ln());
    Ok(log.exp())
}

/// `∫₀^∞ |⟨E|z̃⟩|² dE`, by quadrature of the squared density.
pub fn density_norm(model: &CoherentModel, z: Complex64, cfg: &QuadConfig, scheme: Scheme) -> Result<f64> {
    validate_cfg(cfg)?;
    let norm = nu_with(model, z.norm_sqr(), cfg, scheme)?.value;
    let (peak, e_max) = integration_window(model, z.norm_sqr().ln(), cfg.e_max_drop)?;
    let est = integrate(
        |e| density_with_norm(model, z, e, norm).expect("validated").norm_sqr(),
        peak,
        e_max,
        cfg,
        scheme,
    )?;
    Ok(est.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foxwright::{FwParams, GammaPair};

    fn canon() -> CoherentModel {
        CoherentModel::new(FwParams::default()).unwrap()
    }

    fn model() -> CoherentModel {
        CoherentModel::new(FwParams {
            upper: vec![GammaPair::real(1.5, 0.7)],
            lower: vec![GammaPair::real(2.0, 1.3)],
        })
        .unwrap()
    }

    #[test]
    fn rho_tilde_examples() {
        assert!((rho_tilde(&model(), 0.0).unwrap() - 1.0).abs() < 1e-15);
        // Γ(3.5), mpmath
        assert!((rho_tilde(&canon(), 2.5).unwrap() - 3.323_350_970_447_842_6).abs() < 1e-14);
        let m = model();
        for k in 0..=50 {
            let (a, b) = (rho_tilde(&m, k as f64).unwrap(), m.rho(k).unwrap());
            assert!((a - b).abs() <= 1e-12 * b, "k = {k}");
        }
    }

    #[test]
    fn classical_nu_values() {
        // mpmath.quad(lambda E: z**E/gamma(E+1), [0, inf]) at 30 digits
        let cfg = QuadConfig::default();
        for (zeta, expected) in [
            (1.0, 2.266_534_507_699_848_8),
            (2.0, 6.997_579_629_175_669),
            (4.0, 54.261_333_229_427_885),
        ] {
            for scheme in [Scheme::GaussKronrod, Scheme::TanhSinh] {
                let v = nu_with(&canon(), zeta, &cfg, scheme).unwrap().value;
                assert!((v - expected).abs() < 1e-10 * expected, "{scheme} ζ = {zeta}: {v}");
            }
        }
        let v = nu(&model(), 3.0, &cfg).unwrap();
        assert!((v - 2.907_098_416_699_815_7).abs() < 1e-10 * v, "{v}");
    }

    #[test]
    fn nu_zero_and_monotone() {
        let cfg = QuadConfig::default();
        assert_eq!(nu(&model(), 0.0, &cfg).unwrap(), 0.0);
        assert!(nu(&model(), 1.0, &cfg).unwrap() < nu(&model(), 2.0, &cfg).unwrap());
        assert!(nu(&model(), -1.0, &cfg).is_err());
    }

    #[test]
    fn overlaps() {
        let cfg = QuadConfig::default();
        let z = Complex64::new(0.8, 0.6);
        let o = overlap_tilde(&model(), z, z, &cfg, Scheme::GaussKronrod).unwrap();
        assert!((o - Complex64::new(1.0, 0.0)).norm() < 10.0 * cfg.rel_tol);
        let o = overlap_tilde(&model(), z, Complex64::new(-1.0, 0.4), &cfg, Scheme::GaussKronrod).unwrap();
        assert!(o.norm() <= 1.0 + 10.0 * cfg.rel_tol);
        let one = Complex64::new(1.0, 0.0);
        let two = Complex64::new(2.0, 0.0);
        let gk = overlap_tilde(&canon(), one, two, &cfg, Scheme::GaussKronrod).unwrap();
        let ts = overlap_tilde(&canon(), one, two, &cfg, Scheme::TanhSinh).unwrap();
        let expected = 6.997_579_629_175_669 / (2.266_534_507_699_848_8f64 * 54.261_333_229_427_885).sqrt();
        assert!((gk.re - expected).abs() < 1e-9 && (gk - ts).norm() < 1e-7);
    }

    #[test]
    fn densities() {
        let cfg = QuadConfig::default();
        let m = model();
        let z = Complex64::new(1.5, 0.0);
        let d0 = state_density(&m, z, 0.0, &cfg).unwrap();
        assert!((d0.re - 1.0 / nu(&m, 2.25, &cfg).unwrap().sqrt()).abs() < 1e-14);
        for e in [0.3, 1.0, 4.7] {
            let d = state_density(&m, z, e, &cfg).unwrap();
            assert!(d.re > 0.0 && d.im == 0.0);
        }
        for r in [0.5, 1.0, 2.0] {
            let n = density_norm(&m, Complex64::from_polar(r, 0.4), &cfg, Scheme::GaussKronrod).unwrap();
            assert!((n - 1.0).abs() < 10.0 * cfg.rel_tol, "{r}: {n}");
        }
    }

    #[test]
    fn bicomplex_components() {
        let cfg = QuadConfig::default();
        let emb = BcCoherentModel::from_complex(&model());
        let v = nu_bicomplex(&emb, Hyperbolic::splat(2.0), &cfg, Scheme::GaussKronrod).unwrap();
        let single = nu(&model(), 2.0, &cfg).unwrap();
        assert_eq!((v.c1, v.c2), (single, single));
        let v = nu_bicomplex(&emb, Hyperbolic::new(0.0, 2.0), &cfg, Scheme::GaussKronrod).unwrap();
        assert_eq!((v.c1, v.c2), (0.0, single));
        assert!(nu_bicomplex(&emb, Hyperbolic::new(-1.0, 2.0), &cfg, Scheme::GaussKronrod).is_err());
    }
}
