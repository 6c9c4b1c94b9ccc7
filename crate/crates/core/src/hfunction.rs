//! Mellin–Barnes evaluation of the weight H-function
//!
//! ```text
//! H(x) = H^{q+1,0}_{p,q+1}[x | (α, A); (β, B)]
//!      = (1/2πi) ∫_{c−i∞}^{c+i∞} ∏Γ(β + sB) / ∏Γ(α + sA) · x^{−s} ds
//! ```
//!
//! whose Mellin transform is the gamma ratio itself. For a coherent-state
//! model `α = a − A`, `β = (0, b − B)` with scales `(1, B)`, and the moment
//! identity `∫ x^k W(x)/𝒩(x) dx = ρ(k)` is the scalar form of the resolution
//! of unity.
//!
//! The vertical line is folded onto `t ≥ 0` (the integrand is conjugate
//! symmetric) and summed by the trapezoid rule with node doubling.

use num_complex::Complex64;
use serde::Serialize;

use crate::bicomplex::Hyperbolic;
use crate::coherent::{BcCoherentModel, CoherentModel};
use crate::continuous::QuadConfig;
use crate::error::{Error, Result};
use crate::foxwright::EvalOptions;
use crate::gamma::{is_pole, log_gamma, log_recip_gamma};
use crate::quadrature::gauss_kronrod_on;

/// `ln(10^18)`: the contour is cut where the gamma ratio has decayed by this
/// much from its value on the real axis.
const CONTOUR_DROP: f64 = 41.4;
/// `ln(10^16)`: outer moment integrals are cut at this drop below the peak.
const OUTER_DROP: f64 = 37.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HWeightParams {
    /// `(α_l, A_l)`
    pub upper: Vec<(f64, f64)>,
    /// `(β_j, B_j)`
    pub lower: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourConfig {
    /// Distance of the default abscissa right of the rightmost pole.
    pub c_offset: f64,
    /// Fixed truncation of the contour; `None` picks it from the decay.
    pub t_max: Option<f64>,
    /// Initial trapezoid node count on `[0, t_max]`.
    pub n_nodes: usize,
    pub rel_tol: f64,
    pub max_levels: usize,
    /// Move the abscissa right to the saddle of `|F(c)| x^{−c}` when that
    /// lies beyond the default.
    pub saddle: bool,
}

impl Default for ContourConfig {
    fn default() -> Self {
        ContourConfig {
            c_offset: 0.5,
            t_max: None,
            n_nodes: 16,
            rel_tol: 1e-10,
            max_levels: 14,
            saddle: true,
        }
    }
}

/// A contour evaluation with its convergence trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HEval {
    pub value: f64,
    pub abscissa: f64,
    pub t_max: f64,
    pub nodes: usize,
    /// `|S_{n+1} − S_n|` for each node doubling.
    pub level_diffs: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentCheck {
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
}

impl HWeightParams {
    pub fn new(upper: Vec<(f64, f64)>, lower: Vec<(f64, f64)>) -> Result<Self> {
        for (name, list) in [("upper", &upper), ("lower", &lower)] {
            for (i, &(shift, scale)) in list.iter().enumerate() {
                if !(shift.is_finite() && scale.is_finite() && scale > 0.0) {
                    return Err(Error::Validation(format!(
                        "{name}[{i}] = ({shift}, {scale}): need finite shift and scale > 0"
                    )));
                }
            }
        }
        let hp = HWeightParams { upper, lower };
        if !(hp.decay_rate() > 0.0) {
            return Err(Error::Validation(format!(
                "contour integrand does not decay: ΣB − ΣA = {}",
                hp.decay_rate()
            )));
        }
        Ok(hp)
    }

    /// Upper `(a − A, A)`, lower `(0, 1), (b − B, B)`.
    pub fn from_model(model: &CoherentModel) -> Self {
        let p = model.params();
        let upper = p.upper.iter().map(|g| (g.shift.re - g.scale, g.scale)).collect();
        let lower = std::iter::once((0.0, 1.0))
            .chain(p.lower.iter().map(|g| (g.shift.re - g.scale, g.scale)))
            .collect();
        HWeightParams { upper, lower }
    }

    /// `ΣB − ΣA`; the integrand decays like `exp(−(π/2)·rate·|t|)`.
    pub fn decay_rate(&self) -> f64 {
        self.lower.iter().map(|p| p.1).sum::<f64>() - self.upper.iter().map(|p| p.1).sum::<f64>()
    }

    /// Rightmost pole `max(−β/B)` of the numerator gammas.
    pub fn rightmost_pole(&self) -> f64 {
        self.lower
            .iter()
            .map(|&(b, s)| -b / s)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn default_abscissa(&self, cc: &ContourConfig) -> f64 {
        self.rightmost_pole().max(0.0) + cc.c_offset
    }

    /// `ln F(s)`; `None` where a denominator gamma has a pole and `F = 0`.
    pub fn log_mellin(&self, s: Complex64) -> Result<Option<Complex64>> {
        let mut acc = Complex64::default();
        for &(b, scale) in &self.lower {
            acc += log_gamma(b + s * scale)?;
        }
        for &(a, scale) in &self.upper {
            match log_recip_gamma(a + s * scale)? {
                Some(l) => acc += l,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    /// The Mellin transform `F(s) = ∫₀^∞ x^{s−1} H(x) dx` at real `s`.
    pub fn mellin(&self, s: f64) -> Result<f64> {
        Ok(self
            .log_mellin(Complex64::new(s, 0.0))?
            .map_or(0.0, |l| l.exp().re))
    }

    fn phi(&self, c: f64, ln_x: f64) -> f64 {
        match self.log_mellin(Complex64::new(c, 0.0)) {
            Ok(Some(l)) => l.re - c * ln_x,
            _ => f64::INFINITY,
        }
    }

    /// Abscissa minimizing `ln F(c) − c ln x`, searched where every gamma
    /// argument on the real axis is positive.
    fn saddle(&self, ln_x: f64, c_default: f64) -> f64 {
        let lo = self
            .upper
            .iter()
            .map(|&(a, s)| -a / s + 0.5)
            .fold(c_default, f64::max);
        let phi = |c: f64| self.phi(c, ln_x);
        // bracket by doubling steps
        let mut step = 0.5;
        let (mut a, mut b) = (lo, lo + step);
        let (fa, mut fb) = (phi(a), phi(b));
        if fb >= fa {
            return if phi(c_default) <= fa { c_default } else { lo };
        }
        let mut c = b + 2.0 * step;
        let mut fc = phi(c);
        while fc < fb && c < lo + 1e6 {
            step *= 2.0;
            a = b;
            b = c;
            fb = fc;
            c = b + 2.0 * step;
            fc = phi(c);
        }
        // golden-section refinement on [a, c]
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let (mut lo_x, mut hi_x) = (a, c);
        let mut x1 = hi_x - g * (hi_x - lo_x);
        let mut x2 = lo_x + g * (hi_x - lo_x);
        let (mut f1, mut f2) = (phi(x1), phi(x2));
        for _ in 0..40 {
            if f1 < f2 {
                hi_x = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi_x - g * (hi_x - lo_x);
                f1 = phi(x1);
            } else {
                lo_x = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo_x + g * (hi_x - lo_x);
                f2 = phi(x2);
            }
        }
        let best = 0.5 * (lo_x + hi_x);
        if phi(c_default) <= phi(best) {
            c_default
        } else {
            best
        }
    }

    /// `lim_{x→0} H(x)`: finite when the only rightmost pole is the simple
    /// pole of `Γ(s)` at the origin, infinite otherwise.
    pub fn value_at_zero(&self) -> Result<f64> {
        let mut unit_seen = false;
        let mut acc = 0.0;
        for &(b, s) in &self.lower {
            if !unit_seen && b == 0.0 && s == 1.0 {
                unit_seen = true;
                continue;
            }
            if b <= 0.0 {
                return Ok(f64::INFINITY);
            }
            acc += log_gamma(Complex64::new(b, 0.0))?.re;
        }
        if !unit_seen {
            return Err(Error::Validation(
                "value at zero needs the (0, 1) lower pair".into(),
            ));
        }
        let mut sign = 1.0;
        for &(a, _) in &self.upper {
            let w = Complex64::new(a, 0.0);
            if is_pole(w) {
                return Ok(0.0);
            }
            let l = log_gamma(w)?;
            acc -= l.re;
            if l.im.abs() > 1.0 {
                sign = -sign;
            }
        }
        Ok(sign * acc.exp())
    }

    pub fn eval(&self, x: f64, cc: &ContourConfig) -> Result<f64> {
        if x == 0.0 {
            return self.value_at_zero();
        }
        self.eval_traced(x, cc).map(|e| e.value)
    }

    /// Contour evaluation at `x > 0` with the node-doubling trace.
    pub fn eval_traced(&self, x: f64, cc: &ContourConfig) -> Result<HEval> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::Domain(format!("H-function needs x > 0, got {x}")));
        }
        let ln_x = x.ln();
        let c_default = self.default_abscissa(cc);
        let c = if cc.saddle {
            self.saddle(ln_x, c_default)
        } else {
            c_default
        };
        let log_f = |t: f64| self.log_mellin(Complex64::new(c, t));
        let integrand = |t: f64| -> Result<f64> {
            Ok(match log_f(t)? {
                Some(l) => (l - Complex64::new(c, t) * ln_x).exp().re,
                None => 0.0,
            })
        };

        let t_max = match cc.t_max {
            Some(t) => t,
            None => {
                let modulus = |t: f64| -> Result<f64> { Ok(log_f(t)?.map_or(f64::NEG_INFINITY, |l| l.re)) };
                let mut reference = modulus(0.0)?;
                let mut t = 1.0;
                loop {
                    let m = modulus(t)?;
                    reference = reference.max(m);
                    if m < reference - CONTOUR_DROP {
                        break t;
                    }
                    t *= 2.0;
                    if t > 1e7 {
                        return Err(Error::ContourFailure(
                            "integrand does not decay along the contour".into(),
                        ));
                    }
                }
            }
        };

        let mut n = cc.n_nodes.max(2);
        let mut h = t_max / n as f64;
        let g0 = integrand(0.0)?;
        let mut sum = 0.5 * g0;
        let mut abs_sum = 0.5 * g0.abs();
        for j in 1..=n {
            let g = integrand(j as f64 * h)?;
            sum += g;
            abs_sum += g.abs();
        }
        let mut value = h * sum / std::f64::consts::PI;
        let mut diffs = Vec::new();
        for level in 1..=cc.max_levels {
            h *= 0.5;
            for j in 0..n {
                let g = integrand((2 * j + 1) as f64 * h)?;
                sum += g;
                abs_sum += g.abs();
            }
            n *= 2;
            let next = h * sum / std::f64::consts::PI;
            let diff = (next - value).abs();
            diffs.push(diff);
            value = next;
            let floor = 64.0 * f64::EPSILON * h * abs_sum / std::f64::consts::PI;
            if level >= 2 && diff <= (cc.rel_tol * value.abs()).max(floor) {
                return Ok(HEval {
                    value,
                    abscissa: c,
                    t_max,
                    nodes: n + 1,
                    level_diffs: diffs,
                });
            }
        }
        Err(Error::ContourFailure(format!(
            "trapezoid sums did not settle after {} doublings at x = {x} (last change {:e})",
            cc.max_levels,
            diffs.last().copied().unwrap_or(f64::NAN)
        )))
    }

    /// `∫₀^∞ x^{s−1} H(x) dx` by quadrature in `u = ln x` over the
    /// contour-evaluated `H`.
    pub fn mellin_numeric(&self, s: f64, cfg: &QuadConfig, cc: &ContourConfig) -> Result<f64> {
        integrate_log_axis(|x| self.eval(x, cc), s, cfg)
    }
}

/// `∫₀^∞ x^{s−1} f(x) dx = ∫ e^{su} f(e^u) du`, with limits found by walking
/// out from `u = 0` until the integrand is [`OUTER_DROP`] below its peak.
fn integrate_log_axis(f: impl Fn(f64) -> Result<f64>, s: f64, cfg: &QuadConfig) -> Result<f64> {
    let log_integrand = |u: f64| -> Result<f64> {
        let v = f(u.exp())?;
        Ok(if v > 0.0 { s * u + v.ln() } else { f64::NEG_INFINITY })
    };
    const STEP: f64 = 0.5;
    const MAX_STEPS: usize = 600;
    let mut peak = (0.0, log_integrand(0.0)?);
    let mut limits = [0.0; 2];
    for (slot, dir) in [(0usize, -1.0), (1, 1.0)] {
        let mut found = false;
        for i in 1..=MAX_STEPS {
            let u = dir * STEP * i as f64;
            let l = log_integrand(u)?;
            if l > peak.1 {
                peak = (u, l);
            } else if l < peak.1 - OUTER_DROP {
                limits[slot] = u;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::QuadratureFailure(format!(
                "moment integrand has not decayed at |ln x| = {}",
                STEP * MAX_STEPS as f64
            )));
        }
    }
    let mut breaks = vec![limits[0]];
    if peak.0 > limits[0] && peak.0 < limits[1] {
        breaks.push(peak.0);
    }
    breaks.push(limits[1]);
    let mut err = None;
    let mut integrand = |u: f64| match f(u.exp()) {
        Ok(v) => (s * u).exp() * v,
        Err(e) => {
            err.get_or_insert(e);
            0.0
        }
    };
    let est = gauss_kronrod_on(&mut integrand, &breaks, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions)?;
    match err {
        Some(e) => Err(e),
        None => Ok(est.value),
    }
}

pub fn eval_h(hp: &HWeightParams, x: f64, cc: &ContourConfig) -> Result<f64> {
    hp.eval(x, cc)
}

/// `W(x) = pψq(x) · H(x)`.
pub fn weight(model: &CoherentModel, x: f64, cc: &ContourConfig) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("weight needs x ≥ 0, got {x}")));
    }
    let psi = model.params().eval(Complex64::new(x, 0.0), &EvalOptions::default())?;
    Ok(psi.value.re * HWeightParams::from_model(model).eval(x, cc)?)
}

/// Radial density of the measure, `W(x)`, with the angular factor
/// integrated out.
pub fn measure_density(model: &CoherentModel, x: f64, cc: &ContourConfig) -> Result<f64> {
    weight(model, x, cc)
}

pub fn measure_density_b(model: &BcCoherentModel, x: Hyperbolic, cc: &ContourConfig) -> Result<Hyperbolic> {
    let d1 = measure_density(model.component(1), x.c1, cc).map_err(|e| e.in_component(1))?;
    let d2 = measure_density(model.component(2), x.c2, cc).map_err(|e| e.in_component(2))?;
    Ok(Hyperbolic::new(d1, d2))
}

/// `W(x)/𝒩(x) = (∏Γ(a)/∏Γ(b)) · H(x)`.
pub fn normalized_density(model: &CoherentModel, x: f64, cc: &ContourConfig) -> Result<f64> {
    let pref = model.log_prefactor().exp();
    Ok(pref * HWeightParams::from_model(model).eval(x, cc)?)
}

/// Checks `∫₀^∞ x^k W(x)/𝒩(x) dx = ρ(k)`.
pub fn moment_check(model: &CoherentModel, k: usize, cfg: &QuadConfig) -> Result<MomentCheck> {
    moment_check_with(model, k, cfg, &ContourConfig::default())
}

pub fn moment_check_with(
    model: &CoherentModel,
    k: usize,
    cfg: &QuadConfig,
    cc: &ContourConfig,
) -> Result<MomentCheck> {
    let lhs = integrate_log_axis(|x| normalized_density(model, x, cc), k as f64 + 1.0, cfg)?;
    let rhs = model.rho(k)?;
    Ok(MomentCheck {
        k,
        lhs,
        rhs,
        rel_err: (lhs - rhs).abs() / rhs.abs(),
    })
}

/// Moment checks for both idempotent components.
pub fn moment_check_b(model: &BcCoherentModel, k: usize, cfg: &QuadConfig) -> Result<[MomentCheck; 2]> {
    let m1 = moment_check(model.component(1), k, cfg).map_err(|e| e.in_component(1))?;
    let m2 = moment_check(model.component(2), k, cfg).map_err(|e| e.in_component(2))?;
    Ok([m1, m2])
}
