//! The complex Fox–Wright function
//!
//! ```text
//! pψq[(a,A); (b,B); z] = Σ_k ∏Γ(a_l + kA_l) / ∏Γ(b_r + kB_r) · z^k / k!
//! ```
//!
//! together with its convergence margin `Δ = 1 + ΣB − ΣA`, radius of
//! convergence, and independent reduction oracles used for conformance.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gamma::{is_pole, log_gamma, log_gamma_ratio, log_recip_gamma};

pub mod oracle;

/// Tolerance used to decide the sign of the convergence margin.
pub const MARGIN_TOL: f64 = 1e-12;

/// Relative distance to the circle of convergence inside which a point is
/// treated as lying on it.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// One `(shift, scale)` parameter pair, e.g. `(a_l, A_l)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPair {
    pub shift: Complex64,
    pub scale: f64,
}

impl GammaPair {
    pub fn new(shift: Complex64, scale: f64) -> Self {
        GammaPair { shift, scale }
    }

    pub fn real(shift: f64, scale: f64) -> Self {
        GammaPair::new(Complex64::new(shift, 0.0), scale)
    }

    /// `shift + k·scale`
    pub fn at(&self, k: f64) -> Complex64 {
        self.shift + self.scale * k
    }
}

impl Serialize for GammaPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.shift.re, self.shift.im, self.scale].serialize(s)
    }
}

impl<'de> Deserialize<'de> for GammaPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        match v.as_slice() {
            [re, im, scale] => Ok(GammaPair::new(Complex64::new(*re, *im), *scale)),
            _ => Err(D::Error::custom(format!(
                "parameter pair must be [re, im, scale], got {} numbers",
                v.len()
            ))),
        }
    }
}

/// Parameter lists of a Fox–Wright series.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FwParams {
    #[serde(default)]
    pub upper: Vec<GammaPair>,
    #[serde(default)]
    pub lower: Vec<GammaPair>,
}

/// Sign of a quantity compared against zero with a tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: f64, tol: f64) -> Sign {
        if x > tol {
            Sign::Positive
        } else if x < -tol {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub tol: f64,
    pub max_terms: usize,
    /// Evaluate on the circle `|z| = radius` when the boundary condition
    /// `Re λ > 1/2` holds.
    pub allow_boundary: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            tol: 1e-14,
            max_terms: 10_000,
            allow_boundary: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    #[serde(with = "crate::serde_util::complex_pair")]
    pub value: Complex64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// Reduction of an all-unit-scale series to `prefactor · pFq(upper; lower; z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PfqReduction {
    pub prefactor: Complex64,
    pub upper: Vec<Complex64>,
    pub lower: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Region {
    Interior,
    /// On the circle of convergence; terms decay like `k^{-exponent}`.
    Boundary { exponent: f64 },
}

impl FwParams {
    pub fn new(upper: Vec<GammaPair>, lower: Vec<GammaPair>) -> Result<Self> {
        let p = FwParams { upper, lower };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, list) in [("upper", &self.upper), ("lower", &self.lower)] {
            for (i, pair) in list.iter().enumerate() {
                if !(pair.shift.re.is_finite() && pair.shift.im.is_finite()) {
                    return Err(Error::Validation(format!("{name}[{i}]: shift is not finite")));
                }
                if !(pair.scale.is_finite() && pair.scale > 0.0) {
                    return Err(Error::Validation(format!(
                        "{name}[{i}]: scale must be finite and > 0, got {}",
                        pair.scale
                    )));
                }
                if is_pole(pair.shift) {
                    return Err(Error::Validation(format!(
                        "{name}[{i}]: shift {} is a pole of the gamma function",
                        pair.shift
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// `Δ = 1 + ΣB_r − ΣA_l`.
    pub fn margin(&self) -> f64 {
        let sum_b: f64 = self.lower.iter().map(|p| p.scale).sum();
        let sum_a: f64 = self.upper.iter().map(|p| p.scale).sum();
        1.0 + sum_b - sum_a
    }

    pub fn margin_sign(&self) -> Sign {
        Sign::of(self.margin(), MARGIN_TOL)
    }

    /// `∏B^B · ∏A^{−A}`, the radius when the margin vanishes.
    pub fn critical_radius(&self) -> f64 {
        let log_v: f64 = self.lower.iter().map(|p| p.scale * p.scale.ln()).sum::<f64>()
            - self.upper.iter().map(|p| p.scale * p.scale.ln()).sum::<f64>();
        log_v.exp()
    }

    /// Radius of convergence: `∞`, the critical radius, or `0` according to
    /// the sign of the margin.
    pub fn radius(&self) -> f64 {
        match self.margin_sign() {
            Sign::Positive => f64::INFINITY,
            Sign::Zero => self.critical_radius(),
            Sign::Negative => 0.0,
        }
    }

    /// `λ = Σb − Σa − (q − p)/2`, the exponent governing boundary decay.
    pub fn lambda(&self) -> Complex64 {
        let sb: Complex64 = self.lower.iter().map(|p| p.shift).sum();
        let sa: Complex64 = self.upper.iter().map(|p| p.shift).sum();
        sb - sa - (self.q() as f64 - self.p() as f64) / 2.0
    }

    /// Boundary absolute convergence on `|z| = radius`: `Re λ > 1/2`.
    pub fn boundary_convergent(&self) -> bool {
        self.lambda().re > 0.5
    }

    /// `ln c_k` of the coefficient `c_k = ∏Γ(a+kA)/∏Γ(b+kB)/k!`, computed
    /// directly; `None` when a lower gamma has a pole and `c_k = 0`.
    pub fn log_coefficient(&self, k: usize) -> Result<Option<Complex64>> {
        let kf = k as f64;
        let mut acc = -log_gamma(Complex64::new(kf + 1.0, 0.0))?;
        for pair in &self.upper {
            acc += log_gamma(pair.at(kf))?;
        }
        for pair in &self.lower {
            match log_recip_gamma(pair.at(kf))? {
                Some(l) => acc += l,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    /// Advances `ln c_{k-1}` to `ln c_k` with the log-gamma step recurrence.
    fn step_log_coefficient(&self, k: usize, prev: Option<Complex64>) -> Result<Option<Complex64>> {
        let Some(prev) = prev else {
            return self.log_coefficient(k);
        };
        if k == 0 {
            return self.log_coefficient(0);
        }
        let kf = k as f64;
        if self.lower.iter().any(|pair| is_pole(pair.at(kf))) {
            return Ok(None);
        }
        let mut acc = prev - (kf).ln();
        for pair in &self.upper {
            acc += log_gamma_ratio(pair.shift, pair.scale, k - 1)?;
        }
        for pair in &self.lower {
            acc -= log_gamma_ratio(pair.shift, pair.scale, k - 1)?;
        }
        Ok(Some(acc))
    }

    fn region(&self, z: Complex64, opts: &EvalOptions) -> Result<Region> {
        if z == Complex64::default() {
            return Ok(Region::Interior);
        }
        let radius = self.radius();
        let modulus = z.norm();
        if radius.is_infinite() || modulus < radius * (1.0 - BOUNDARY_TOL) {
            return Ok(Region::Interior);
        }
        let on_circle = radius > 0.0 && (modulus - radius).abs() <= BOUNDARY_TOL * radius;
        if on_circle && opts.allow_boundary && self.boundary_convergent() {
            return Ok(Region::Boundary {
                exponent: self.lambda().re + 0.5,
            });
        }
        Err(Error::DomainViolation {
            modulus,
            radius,
            component: None,
        })
    }

    /// Sums the series at `z`.
    ///
    /// Terms are generated in log form and the sum stops once three
    /// consecutive nonzero terms satisfy `|t_k| ≤ tol·|S_k|`. Terms that
    /// vanish because a lower gamma sits on a pole are neutral for the stop
    /// rule.
    pub fn eval(&self, z: Complex64, opts: &EvalOptions) -> Result<EvalResult> {
        let region = self.region(z, opts)?;
        if z == Complex64::default() {
            let value = match self.log_coefficient(0)? {
                Some(l) => l.exp(),
                None => Complex64::default(),
            };
            return Ok(EvalResult {
                value,
                terms_used: 1,
                tail_bound: 0.0,
            });
        }

        let ln_z = z.ln();
        let asymptotic_ratio = match self.radius() {
            r if r.is_infinite() => 0.0,
            r => z.norm() / r,
        };
        let mut sum = NeumaierSum::default();
        let mut abs_sum = 0.0;
        let mut log_c: Option<Complex64> = None;
        let mut last: Option<(usize, f64)> = None;
        let mut ratio = f64::INFINITY;
        let mut small_run = 0;

        for k in 0..opts.max_terms {
            log_c = self.step_log_coefficient(k, log_c)?;
            let Some(lc) = log_c else { continue };
            let term = (lc + ln_z * k as f64).exp();
            if !(term.re.is_finite() && term.im.is_finite()) {
                return Err(Error::Overflow(format!("term {k} of the series overflowed")));
            }
            sum.add(term);
            let mag = term.norm();
            abs_sum += mag;
            if let Some((k_prev, mag_prev)) = last {
                ratio = if mag_prev > 0.0 {
                    (mag / mag_prev).powf(1.0 / (k - k_prev) as f64)
                } else {
                    0.0
                };
            }
            last = Some((k, mag));

            if mag <= opts.tol * sum.value().norm() {
                small_run += 1;
            } else {
                small_run = 0;
            }
            let r = ratio.max(asymptotic_ratio);
            if small_run >= 3 && r < 1.0 {
                let geometric = if region == Region::Interior {
                    mag * r / (1.0 - r)
                } else {
                    majorant_tail(mag, k, region)
                };
                return Ok(EvalResult {
                    value: sum.value(),
                    terms_used: k + 1,
                    tail_bound: geometric + f64::EPSILON * abs_sum,
                });
            }
        }

        match (region, last) {
            (Region::Boundary { .. }, Some((k, mag))) => Ok(EvalResult {
                value: sum.value(),
                terms_used: opts.max_terms,
                tail_bound: majorant_tail(mag, k, region) + f64::EPSILON * abs_sum,
            }),
            _ => Err(Error::MaxTermsExceeded {
                max_terms: opts.max_terms,
            }),
        }
    }

    /// The partial sum `Σ_{k<n} t_k` with no domain check or stop rule.
    pub fn partial_sum(&self, z: Complex64, n: usize) -> Result<Complex64> {
        let mut sum = NeumaierSum::default();
        if z == Complex64::default() {
            return Ok(match self.log_coefficient(0)? {
                Some(l) if n > 0 => l.exp(),
                _ => Complex64::default(),
            });
        }
        let ln_z = z.ln();
        let mut log_c = None;
        for k in 0..n {
            log_c = self.step_log_coefficient(k, log_c)?;
            if let Some(lc) = log_c {
                sum.add((lc + ln_z * k as f64).exp());
            }
        }
        Ok(sum.value())
    }

    /// `Some` when every scale equals one, in which case
    /// `pψq(z) = prefactor · pFq(a; b; z)` with `prefactor = ∏Γ(a)/∏Γ(b)`.
    pub fn as_pfq(&self) -> Result<Option<PfqReduction>> {
        let unit = self
            .upper
            .iter()
            .chain(&self.lower)
            .all(|pair| pair.scale == 1.0);
        if !unit {
            return Ok(None);
        }
        let log_pref = self.log_coefficient(0)?;
        Ok(Some(PfqReduction {
            prefactor: log_pref.map_or(Complex64::default(), |l| l.exp()),
            upper: self.upper.iter().map(|p| p.shift).collect(),
            lower: self.lower.iter().map(|p| p.shift).collect(),
        }))
    }
}

/// Tail of `Σ_{j>k} C j^{-s}` from the last term magnitude `C k^{-s}`.
fn majorant_tail(last: f64, k: usize, region: Region) -> f64 {
    match region {
        Region::Boundary { exponent } if exponent > 1.0 => {
            let k = k.max(1) as f64;
            last * k / (exponent - 1.0)
        }
        Region::Boundary { .. } => f64::INFINITY,
        Region::Interior => 0.0,
    }
}

/// Compensated (Kahan–Babuška–Neumaier) complex summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct NeumaierSum {
    sum: Complex64,
    compensation: Complex64,
}

impl NeumaierSum {
    pub(crate) fn add(&mut self, x: Complex64) {
        let re = two_sum(self.sum.re, x.re);
        let im = two_sum(self.sum.im, x.im);
        self.sum = Complex64::new(re.0, im.0);
        self.compensation += Complex64::new(re.1, im.1);
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum + self.compensation
    }
}

fn two_sum(s: f64, x: f64) -> (f64, f64) {
    let t = s + x;
    let err = if s.abs() >= x.abs() {
        (s - t) + x
    } else {
        (x - t) + s
    };
    (t, err)
}
