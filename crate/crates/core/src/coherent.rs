//! Fox–Wright coherent states for a discrete spectrum.
//!
//! A model fixes the parameter function
//!
//! ```text
//! ρ(k) = Γ(k+1) · ∏Γ(a)/∏Γ(b) · ∏Γ(b + kB)/∏Γ(a + kA)
//! ```
//!
//! and the state `|z⟩ = 𝒩(|z|²)^{-1/2} Σ z^k/√ρ(k) |k⟩` with normalization
//! `𝒩(ζ) = Σ ζ^k/ρ(k) = (∏Γ(b)/∏Γ(a)) · pψq(ζ)`. The ladder factor `f(s)`
//! satisfies `ρ(k+1) = ρ(k) f(k)²`.
//!
//! Bicomplex models apply all of this per idempotent component.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bcfw::BcfwParams;
use crate::bicomplex::{Bicomplex, Hyperbolic};
use crate::error::{Error, Result};
use crate::foxwright::{EvalOptions, FwParams, Sign};
use crate::gamma::{ln_gamma_real, log_gamma_ratio};

pub const DEFAULT_TRUNCATION: usize = 32;
pub const MAX_TRUNCATION: usize = 1 << 16;
/// Tail mass at which the automatic truncation stops growing.
pub const TAIL_TARGET: f64 = 1e-12;
/// Bound on `f(K)·√tail`, the annihilation residual of the truncated state,
/// at which the automatic truncation stops growing.
pub const RESIDUAL_TARGET: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelRepr", into = "ModelRepr")]
pub struct CoherentModel {
    params: FwParams,
    truncation: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelRepr {
    #[serde(default)]
    upper: Vec<crate::foxwright::GammaPair>,
    #[serde(default)]
    lower: Vec<crate::foxwright::GammaPair>,
    #[serde(default)]
    truncation: Option<usize>,
}

impl TryFrom<ModelRepr> for CoherentModel {
    type Error = Error;
    fn try_from(r: ModelRepr) -> Result<Self> {
        CoherentModel::with_truncation(
            FwParams {
                upper: r.upper,
                lower: r.lower,
            },
            r.truncation.unwrap_or(DEFAULT_TRUNCATION),
        )
    }
}

impl From<CoherentModel> for ModelRepr {
    fn from(m: CoherentModel) -> Self {
        ModelRepr {
            upper: m.params.upper,
            lower: m.params.lower,
            truncation: Some(m.truncation),
        }
    }
}

/// Truncated coefficient vector of a coherent state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateVector {
    #[serde(with = "crate::serde_util::complex_pair")]
    pub z: Complex64,
    #[serde(serialize_with = "serialize_coeffs")]
    pub coeffs: Vec<Complex64>,
    /// `1/√𝒩(|z|²)`.
    pub norm_prefactor: f64,
    /// `Σ_{k>K} |c_k|²`, summed from the series.
    pub tail_mass: f64,
}

fn serialize_coeffs<S: serde::Serializer>(c: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(c.len()))?;
    for z in c {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl StateVector {
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `|c_k|²` for `k = 0..=K`.
    pub fn photon_distribution(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }
}

/// Diagonal and off-diagonal ladder matrix elements at Fock index `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderElements {
    /// `f(k−1)`, zero at `k = 0`.
    pub f_down: f64,
    /// `f(k)`.
    pub f_up: f64,
    /// `⟨k|A₋A₊|k⟩ = f(k)²`.
    pub aa_dag: f64,
    /// `⟨k|A₊A₋|k⟩ = f(k−1)²`.
    pub adag_a: f64,
}

impl CoherentModel {
    pub fn new(params: FwParams) -> Result<Self> {
        Self::with_truncation(params, DEFAULT_TRUNCATION)
    }

    /// Requires real positive shifts and a positive convergence margin, so
    /// that `𝒩` is entire.
    pub fn with_truncation(params: FwParams, truncation: usize) -> Result<Self> {
        params.validate()?;
        for (name, list) in [("upper", &params.upper), ("lower", &params.lower)] {
            for (i, pair) in list.iter().enumerate() {
                if pair.shift.im != 0.0 || !(pair.shift.re > 0.0) {
                    return Err(Error::Validation(format!(
                        "{name}[{i}]: coherent-state parameters must be real and > 0, got {}",
                        pair.shift
                    )));
                }
            }
        }
        if params.margin_sign() != Sign::Positive {
            return Err(Error::Validation(format!(
                "coherent-state model needs margin 1 + ΣB − ΣA > 0, got {}",
                params.margin()
            )));
        }
        if truncation == 0 || truncation > MAX_TRUNCATION {
            return Err(Error::Validation(format!(
                "truncation must lie in 1..={MAX_TRUNCATION}, got {truncation}"
            )));
        }
        Ok(CoherentModel { params, truncation })
    }

    pub fn params(&self) -> &FwParams {
        &self.params
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    fn shifts(&self) -> (impl Iterator<Item = (f64, f64)> + '_, impl Iterator<Item = (f64, f64)> + '_) {
        (
            self.params.upper.iter().map(|p| (p.shift.re, p.scale)),
            self.params.lower.iter().map(|p| (p.shift.re, p.scale)),
        )
    }

    /// `ln[∏Γ(a)/∏Γ(b)]`.
    pub(crate) fn log_prefactor(&self) -> f64 {
        let (up, low) = self.shifts();
        let a: f64 = up.map(|(a, _)| ln_gamma_real(a).expect("validated")).sum();
        let b: f64 = low.map(|(b, _)| ln_gamma_real(b).expect("validated")).sum();
        a - b
    }

    /// `ln[∏Γ(b + EB)/∏Γ(a + EA)] + ln[∏Γ(a)/∏Γ(b)]`, without the `Γ(E+1)`.
    pub(crate) fn log_rho_core(&self, e: f64) -> f64 {
        let (up, low) = self.shifts();
        let a: f64 = up.map(|(a, s)| ln_gamma_real(a + e * s).expect("positive")).sum();
        let b: f64 = low.map(|(b, s)| ln_gamma_real(b + e * s).expect("positive")).sum();
        b - a + self.log_prefactor()
    }

    /// `ln ρ(k)`; finite for every `k`.
    pub fn log_rho(&self, k: usize) -> f64 {
        ln_factorial(k) + self.log_rho_core(k as f64)
    }

    pub fn rho(&self, k: usize) -> Result<f64> {
        let l = self.log_rho(k);
        if l > f64::MAX.ln() {
            return Err(Error::Overflow(format!("rho({k}) = exp({l}) is not representable")));
        }
        Ok(l.exp())
    }

    /// `ln f(s)`, from the gamma step ratios.
    pub fn log_f(&self, s: usize) -> f64 {
        let mut acc = ((s + 1) as f64).ln();
        for p in &self.params.upper {
            acc -= log_gamma_ratio(p.shift, p.scale, s).expect("positive").re;
        }
        for p in &self.params.lower {
            acc += log_gamma_ratio(p.shift, p.scale, s).expect("positive").re;
        }
        0.5 * acc
    }

    /// Ladder factor `f(s) = √(ρ(s+1)/ρ(s))`.
    pub fn f_factor(&self, s: usize) -> f64 {
        self.log_f(s).exp()
    }

    pub fn ladder_elements(&self, k: usize) -> LadderElements {
        let f_up = self.f_factor(k);
        let f_down = if k == 0 { 0.0 } else { self.f_factor(k - 1) };
        LadderElements {
            f_down,
            f_up,
            aa_dag: f_up * f_up,
            adag_a: f_down * f_down,
        }
    }

    /// `𝒩(ζ)` through the Fox–Wright series, for complex `ζ`.
    pub fn normalization_complex(&self, zeta: Complex64) -> Result<Complex64> {
        let psi = self.params.eval(zeta, &EvalOptions::default())?;
        Ok(psi.value * (-self.log_prefactor()).exp())
    }

    /// `𝒩(ζ)` for `ζ ≥ 0`.
    pub fn normalization(&self, zeta: f64) -> Result<f64> {
        if !(zeta >= 0.0 && zeta.is_finite()) {
            return Err(Error::Validation(format!("normalization needs ζ ≥ 0, got {zeta}")));
        }
        Ok(self.normalization_complex(Complex64::new(zeta, 0.0))?.re)
    }

    /// `Σ_{k≤K} ζ^k/ρ(k)` summed directly.
    pub fn normalization_partial(&self, zeta: f64, k_max: usize) -> f64 {
        if zeta == 0.0 {
            return 1.0;
        }
        let lz = zeta.ln();
        (0..=k_max).map(|k| (k as f64 * lz - self.log_rho(k)).exp()).sum()
    }

    /// `Σ_{k>K} |z|^{2k}/(ρ(k)𝒩)`, continued until the terms are negligible
    /// and decreasing.
    fn tail_mass(&self, log_r2: f64, log_norm: f64, k_max: usize) -> f64 {
        if log_r2 == f64::NEG_INFINITY {
            return 0.0;
        }
        let mut tail = 0.0;
        let mut prev = f64::INFINITY;
        let limit = 4 * MAX_TRUNCATION;
        for k in k_max + 1..limit {
            let t = (k as f64 * log_r2 - self.log_rho(k) - log_norm).exp();
            tail += t;
            if t < 1e-18 * tail.max(1e-300) && t <= prev || t == 0.0 && t <= prev {
                break;
            }
            prev = t;
        }
        tail
    }

    /// Builds `|z⟩` with the truncation grown by doubling from the model's
    /// `K` until the tail mass is at most [`TAIL_TARGET`] and the residual
    /// bound at most [`RESIDUAL_TARGET`].
    pub fn make_state(&self, z: Complex64) -> Result<StateVector> {
        let k = self.auto_truncation(z)?;
        self.make_state_with_k(z, k)
    }

    /// The truncation [`make_state`](Self::make_state) would pick for `z`.
    pub fn auto_truncation(&self, z: Complex64) -> Result<usize> {
        let (log_r2, log_norm) = self.log_scales(z)?;
        let mut k = self.truncation;
        loop {
            let tail = self.tail_mass(log_r2, log_norm, k);
            if tail <= TAIL_TARGET && self.f_factor(k) * tail.sqrt() <= RESIDUAL_TARGET {
                return Ok(k);
            }
            if k >= MAX_TRUNCATION {
                return Err(Error::Truncation {
                    k_max: k,
                    tail_mass: tail,
                });
            }
            k = (2 * k).min(MAX_TRUNCATION);
        }
    }

    fn log_scales(&self, z: Complex64) -> Result<(f64, f64)> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Validation(format!("state label {z} is not finite")));
        }
        let r2 = z.norm_sqr();
        Ok((r2.ln(), self.normalization(r2)?.ln()))
    }

    /// Builds `|z⟩` truncated at a fixed `K`.
    pub fn make_state_with_k(&self, z: Complex64, k_max: usize) -> Result<StateVector> {
        let (log_r2, log_norm) = self.log_scales(z)?;
        let log_z = if z == Complex64::default() {
            None
        } else {
            Some(z.ln())
        };
        let coeffs = (0..=k_max)
            .map(|k| match (k, log_z) {
                (0, _) => Complex64::new((-0.5 * log_norm).exp(), 0.0),
                (_, None) => Complex64::default(),
                (_, Some(l)) => (l * k as f64 - 0.5 * (self.log_rho(k) + log_norm)).exp(),
            })
            .collect();
        Ok(StateVector {
            z,
            coeffs,
            norm_prefactor: (-0.5 * log_norm).exp(),
            tail_mass: self.tail_mass(log_r2, log_norm, k_max),
        })
    }

    /// `⟨z|z′⟩ = 𝒩(z̄z′)/√(𝒩(|z|²)𝒩(|z′|²))`.
    pub fn overlap(&self, z: Complex64, zp: Complex64) -> Result<Complex64> {
        let num = self.normalization_complex(z.conj() * zp)?;
        let den = self.normalization(z.norm_sqr())?.sqrt() * self.normalization(zp.norm_sqr())?.sqrt();
        Ok(num / den)
    }

    /// `‖A₋ψ − zψ‖₂` on the truncated vector, with `(A₋ψ)_k = f(k)ψ_{k+1}`
    /// and `ψ_{K+1} = 0`.
    pub fn annihilation_residual(&self, state: &StateVector) -> f64 {
        let c = &state.coeffs;
        let k_max = c.len() - 1;
        let mut sum = 0.0;
        for k in 0..=k_max {
            let next = if k < k_max {
                c[k + 1] * self.f_factor(k)
            } else {
                Complex64::default()
            };
            sum += (next - state.z * c[k]).norm_sqr();
        }
        sum.sqrt()
    }

    /// Bound on [`annihilation_residual`](Self::annihilation_residual) in
    /// terms of the tail mass: `f(K)·√tail` plus rounding.
    pub fn residual_bound(&self, state: &StateVector) -> f64 {
        let k = state.truncation();
        self.f_factor(k) * state.tail_mass.sqrt() + 64.0 * f64::EPSILON * (1.0 + state.z.norm())
    }
}

/// `ln k!`, summed exactly up to 170 and by the gamma function beyond.
pub(crate) fn ln_factorial(k: usize) -> f64 {
    if k <= 170 {
        (2..=k).map(|j| (j as f64).ln()).sum()
    } else {
        ln_gamma_real(k as f64 + 1.0).expect("positive")
    }
}

/// Bicomplex coherent-state model; each idempotent component is a
/// [`CoherentModel`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BcModelRepr", into = "BcModelRepr")]
pub struct BcCoherentModel {
    params: BcfwParams,
    components: [CoherentModel; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BcModelRepr {
    #[serde(default)]
    upper: Vec<crate::bcfw::BicomplexPair>,
    #[serde(default)]
    lower: Vec<crate::bcfw::BicomplexPair>,
    #[serde(default)]
    truncation: Option<usize>,
}

impl TryFrom<BcModelRepr> for BcCoherentModel {
    type Error = Error;
    fn try_from(r: BcModelRepr) -> Result<Self> {
        BcCoherentModel::with_truncation(
            BcfwParams {
                upper: r.upper,
                lower: r.lower,
            },
            r.truncation.unwrap_or(DEFAULT_TRUNCATION),
        )
    }
}

impl From<BcCoherentModel> for BcModelRepr {
    fn from(m: BcCoherentModel) -> Self {
        BcModelRepr {
            truncation: Some(m.components[0].truncation),
            upper: m.params.upper,
            lower: m.params.lower,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BcStateVector {
    pub z: Bicomplex,
    /// Idempotent components, sharing one truncation `K`.
    pub components: [StateVector; 2],
}

impl BcStateVector {
    pub fn tail_mass(&self) -> Hyperbolic {
        Hyperbolic::new(self.components[0].tail_mass, self.components[1].tail_mass)
    }

    pub fn coeff(&self, k: usize) -> Bicomplex {
        Bicomplex::compose(self.components[0].coeffs[k], self.components[1].coeffs[k])
    }
}

impl BcCoherentModel {
    pub fn new(params: BcfwParams) -> Result<Self> {
        Self::with_truncation(params, DEFAULT_TRUNCATION)
    }

    pub fn with_truncation(params: BcfwParams, truncation: usize) -> Result<Self> {
        params.validate()?;
        let make = |p: u8| {
            CoherentModel::with_truncation(params.component(p), truncation).map_err(|e| e.in_component(p))
        };
        let components = [make(1)?, make(2)?];
        Ok(BcCoherentModel { params, components })
    }

    /// Real-embedded model with the same complex model in both components.
    pub fn from_complex(model: &CoherentModel) -> Self {
        BcCoherentModel {
            params: BcfwParams::from_complex(model.params()),
            components: [model.clone(), model.clone()],
        }
    }

    pub fn params(&self) -> &BcfwParams {
        &self.params
    }

    /// Component model `p` (1 or 2).
    pub fn component(&self, p: u8) -> &CoherentModel {
        &self.components[usize::from(p - 1)]
    }

    fn both<T>(&self, mut f: impl FnMut(u8, &CoherentModel) -> Result<T>) -> Result<[T; 2]> {
        let a = f(1, &self.components[0]).map_err(|e| e.in_component(1))?;
        let b = f(2, &self.components[1]).map_err(|e| e.in_component(2))?;
        Ok([a, b])
    }

    pub fn log_rho_b(&self, k: usize) -> Hyperbolic {
        Hyperbolic::new(self.components[0].log_rho(k), self.components[1].log_rho(k))
    }

    pub fn rho_b(&self, k: usize) -> Result<Hyperbolic> {
        let [a, b] = self.both(|_, m| m.rho(k))?;
        Ok(Hyperbolic::new(a, b))
    }

    pub fn f_b(&self, s: usize) -> Hyperbolic {
        Hyperbolic::new(self.components[0].f_factor(s), self.components[1].f_factor(s))
    }

    pub fn normalization_b(&self, zeta: Hyperbolic) -> Result<Hyperbolic> {
        let [a, b] = self.both(|p, m| m.normalization(zeta.component(p)))?;
        Ok(Hyperbolic::new(a, b))
    }

    pub fn normalization_b_complex(&self, zeta: Bicomplex) -> Result<Bicomplex> {
        let [a, b] = self.both(|p, m| m.normalization_complex(zeta.component(p)))?;
        Ok(Bicomplex::compose(a, b))
    }

    /// `|Z⟩` with one truncation, the larger of the two components' automatic
    /// choices.
    pub fn make_state_b(&self, z: Bicomplex) -> Result<BcStateVector> {
        z.validate()?;
        let [k1, k2] = self.both(|p, m| m.auto_truncation(z.component(p)))?;
        self.make_state_b_with_k(z, k1.max(k2))
    }

    pub fn make_state_b_with_k(&self, z: Bicomplex, k_max: usize) -> Result<BcStateVector> {
        let components = self.both(|p, m| m.make_state_with_k(z.component(p), k_max))?;
        Ok(BcStateVector { z, components })
    }

    /// `⟨Z|Z′⟩` with conjugation per idempotent component.
    pub fn overlap_b(&self, z: Bicomplex, zp: Bicomplex) -> Result<Bicomplex> {
        let [a, b] = self.both(|p, m| m.overlap(z.component(p), zp.component(p)))?;
        Ok(Bicomplex::compose(a, b))
    }

    pub fn annihilation_residual_b(&self, state: &BcStateVector) -> Hyperbolic {
        Hyperbolic::new(
            self.components[0].annihilation_residual(&state.components[0]),
            self.components[1].annihilation_residual(&state.components[1]),
        )
    }
}
