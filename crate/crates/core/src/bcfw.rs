//! Bicomplex Fox–Wright series
//!
//! ```text
//! mΨn[(μ,M); (ν,N); Z] = Σ_k ∏Γ_b(μ_i + kM_i) / ∏Γ_b(ν_j + kN_j) · Z^k / k!
//! ```
//!
//! with bicomplex shifts and hyperbolic scales. In idempotent coordinates the
//! series splits into two complex Fox–Wright series, one per component, and
//! the convergence region is the product of their disks. The classifier
//! reports which of the nine sign patterns of `(Υ₁ + 1, Υ₂ + 1)` applies.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Hyperbolic};
use crate::error::{Error, Result};
use crate::foxwright::{EvalOptions, FwParams, GammaPair, Sign, BOUNDARY_TOL};
use crate::gamma::gamma_bicomplex;
use crate::serde_util::{complex_pair2, extended_hyperbolic};

/// `(shift, scale)` with a bicomplex shift and a hyperbolic scale.
/// Encoded in JSON as `[{"z1":…,"z2":…}, {"c1":…,"c2":…}]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(Bicomplex, Hyperbolic)", into = "(Bicomplex, Hyperbolic)")]
pub struct BicomplexPair {
    pub shift: Bicomplex,
    pub scale: Hyperbolic,
}

impl From<(Bicomplex, Hyperbolic)> for BicomplexPair {
    fn from((shift, scale): (Bicomplex, Hyperbolic)) -> Self {
        BicomplexPair { shift, scale }
    }
}

impl From<BicomplexPair> for (Bicomplex, Hyperbolic) {
    fn from(p: BicomplexPair) -> Self {
        (p.shift, p.scale)
    }
}

impl BicomplexPair {
    pub fn new(shift: Bicomplex, scale: Hyperbolic) -> Self {
        BicomplexPair { shift, scale }
    }

    fn component(&self, p: u8) -> GammaPair {
        GammaPair::new(self.shift.component(p), self.scale.component(p))
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BcfwParams {
    #[serde(default)]
    pub upper: Vec<BicomplexPair>,
    #[serde(default)]
    pub lower: Vec<BicomplexPair>,
}

/// The nine convergence regions, by the signs of `(Υ₁ + 1, Υ₂ + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    /// `(>, >)`: the whole bicomplex space.
    EntireBC,
    /// `(=, >)`: `|z1| < V1`, `z2` free.
    #[serde(rename = "Disk1xPlane2")]
    Disk1Plane2,
    /// `(>, =)`: `z1` free, `|z2| < V2`.
    #[serde(rename = "Plane1xDisk2")]
    Plane1Disk2,
    /// `(=, <)`: `|z1| < V1`, `z2 = 0`.
    #[serde(rename = "Disk1xZero2")]
    Disk1Zero2,
    /// `(<, =)`: `z1 = 0`, `|z2| < V2`.
    #[serde(rename = "Zero1xDisk2")]
    Zero1Disk2,
    /// `(>, <)`: `z1` free, `z2 = 0`.
    #[serde(rename = "Plane1xZero2")]
    Plane1Zero2,
    /// `(<, >)`: `z1 = 0`, `z2` free.
    #[serde(rename = "Zero1xPlane2")]
    Zero1Plane2,
    /// `(=, =)`: the hyperbolic ball `|z1| < V1`, `|z2| < V2`.
    HyperbolicBall,
    /// `(<, <)`: only `Z = 0`.
    DivergentEverywhere,
}

impl Domain {
    pub const ALL: [Domain; 9] = [
        Domain::EntireBC,
        Domain::Disk1Plane2,
        Domain::Plane1Disk2,
        Domain::Disk1Zero2,
        Domain::Zero1Disk2,
        Domain::Plane1Zero2,
        Domain::Zero1Plane2,
        Domain::HyperbolicBall,
        Domain::DivergentEverywhere,
    ];

    pub fn from_signs(s1: Sign, s2: Sign) -> Domain {
        use Sign::*;
        match (s1, s2) {
            (Positive, Positive) => Domain::EntireBC,
            (Zero, Positive) => Domain::Disk1Plane2,
            (Positive, Zero) => Domain::Plane1Disk2,
            (Zero, Negative) => Domain::Disk1Zero2,
            (Negative, Zero) => Domain::Zero1Disk2,
            (Positive, Negative) => Domain::Plane1Zero2,
            (Negative, Positive) => Domain::Zero1Plane2,
            (Zero, Zero) => Domain::HyperbolicBall,
            (Negative, Negative) => Domain::DivergentEverywhere,
        }
    }

    /// Roman-numeral case label, `"i"` through `"ix"`.
    pub fn case_label(self) -> &'static str {
        match self {
            Domain::EntireBC => "i",
            Domain::Disk1Plane2 => "ii",
            Domain::Plane1Disk2 => "iii",
            Domain::Disk1Zero2 => "iv",
            Domain::Zero1Disk2 => "v",
            Domain::Plane1Zero2 => "vi",
            Domain::Zero1Plane2 => "vii",
            Domain::HyperbolicBall => "viii",
            Domain::DivergentEverywhere => "ix",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Domain::EntireBC => "EntireBC",
            Domain::Disk1Plane2 => "Disk1xPlane2",
            Domain::Plane1Disk2 => "Plane1xDisk2",
            Domain::Disk1Zero2 => "Disk1xZero2",
            Domain::Zero1Disk2 => "Zero1xDisk2",
            Domain::Plane1Zero2 => "Plane1xZero2",
            Domain::Zero1Plane2 => "Zero1xPlane2",
            Domain::HyperbolicBall => "HyperbolicBall",
            Domain::DivergentEverywhere => "DivergentEverywhere",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (case {})", self.name(), self.case_label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// `Υ = ΣN − ΣM`.
    pub upsilon: Hyperbolic,
    /// `𝒱 = ∏N^N ∏M^{−M}` per component.
    pub v: Hyperbolic,
    /// Radius of convergence per component: `∞`, `𝒱ₚ` or `0`.
    #[serde(with = "extended_hyperbolic")]
    pub radius: Hyperbolic,
    /// `(λ₁, λ₂)`, idempotent components of `Λ = Σν − Σμ − (n − m)/2`.
    #[serde(with = "complex_pair2")]
    pub lambda_idem: (Complex64, Complex64),
    /// `(Λ₁, Λ₂)` with `Λ = Λ₁ + jΛ₂`.
    #[serde(with = "complex_pair2")]
    pub lambda_cart: (Complex64, Complex64),
    pub domain: Domain,
    pub case: &'static str,
    /// `Re λ₁ > 1/2` and `Re λ₂ > 1/2`. Only meaningful for the ball.
    pub boundary_abs_convergent: bool,
    pub sign_tolerance: f64,
}

/// Boundary condition in cartesian form, `Re Λ₁ − 1/2 > |Im Λ₂|`.
pub fn boundary_condition_cartesian(lambda1: Complex64, lambda2: Complex64) -> bool {
    lambda1.re - 0.5 > lambda2.im.abs()
}

/// Boundary condition in idempotent form, `Re λ₁ > 1/2 ∧ Re λ₂ > 1/2`.
pub fn boundary_condition_idempotent(l1: Complex64, l2: Complex64) -> bool {
    l1.re > 0.5 && l2.re > 0.5
}

impl ConvergenceReport {
    /// Membership of a point with the given component moduli, using strict
    /// inequality on finite positive radii.
    pub fn contains_moduli(&self, z1_abs: f64, z2_abs: f64) -> bool {
        inside(z1_abs, self.radius.c1) && inside(z2_abs, self.radius.c2)
    }
}

fn inside(modulus: f64, radius: f64) -> bool {
    radius.is_infinite() || modulus == 0.0 || modulus < radius
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcEvalResult {
    pub value: Bicomplex,
    pub terms_used: [usize; 2],
    pub tail_bound: Hyperbolic,
}

/// Rectangular grid of component moduli `[0, extent_p]` with `steps + 1`
/// samples per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionGrid {
    pub extent: Hyperbolic,
    pub steps: usize,
}

impl RegionGrid {
    /// Extent of 1.5 radii on finite positive axes, else the other axis's
    /// extent, else 1.
    pub fn auto(report: &ConvergenceReport, steps: usize) -> Self {
        let pick = |r: f64| (r.is_finite() && r > 0.0).then_some(1.5 * r);
        let (e1, e2) = (pick(report.radius.c1), pick(report.radius.c2));
        let fallback = e1.or(e2).unwrap_or(1.0);
        RegionGrid {
            extent: Hyperbolic::new(e1.unwrap_or(fallback), e2.unwrap_or(fallback)),
            steps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionPoint {
    pub z1_abs: f64,
    pub z2_abs: f64,
    pub inside: bool,
}

impl BcfwParams {
    pub fn new(upper: Vec<BicomplexPair>, lower: Vec<BicomplexPair>) -> Result<Self> {
        let p = BcfwParams { upper, lower };
        p.validate()?;
        Ok(p)
    }

    /// Embeds complex parameters in both components.
    pub fn from_complex(params: &FwParams) -> Self {
        let lift = |g: &GammaPair| {
            BicomplexPair::new(Bicomplex::from_complex(g.shift), Hyperbolic::splat(g.scale))
        };
        BcfwParams {
            upper: params.upper.iter().map(lift).collect(),
            lower: params.lower.iter().map(lift).collect(),
        }
    }

    /// Assembles bicomplex parameters from two complex parameter sets with
    /// matching list lengths.
    pub fn from_components(p1: &FwParams, p2: &FwParams) -> Result<Self> {
        if p1.upper.len() != p2.upper.len() || p1.lower.len() != p2.lower.len() {
            return Err(Error::Validation(
                "component parameter lists must have equal lengths".into(),
            ));
        }
        let zip = |a: &[GammaPair], b: &[GammaPair]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| {
                    BicomplexPair::new(
                        Bicomplex::compose(x.shift, y.shift),
                        Hyperbolic::new(x.scale, y.scale),
                    )
                })
                .collect()
        };
        BcfwParams::new(zip(&p1.upper, &p2.upper), zip(&p1.lower, &p2.lower))
    }

    pub fn validate(&self) -> Result<()> {
        for (name, list) in [("upper", &self.upper), ("lower", &self.lower)] {
            for (i, pair) in list.iter().enumerate() {
                pair.shift.validate()?;
                pair.scale.validate()?;
                if !pair.scale.is_positive() {
                    return Err(Error::Validation(format!(
                        "{name}[{i}]: scale {:?} must have both components > 0",
                        pair.scale
                    )));
                }
            }
        }
        for p in [1, 2] {
            self.component(p).validate().map_err(|e| e.in_component(p))?;
        }
        Ok(())
    }

    /// Restriction to idempotent component `p` (1 or 2).
    pub fn component(&self, p: u8) -> FwParams {
        FwParams {
            upper: self.upper.iter().map(|g| g.component(p)).collect(),
            lower: self.lower.iter().map(|g| g.component(p)).collect(),
        }
    }

    pub fn upsilon(&self) -> Hyperbolic {
        let sum = |l: &[BicomplexPair]| l.iter().fold(Hyperbolic::ZERO, |acc, g| acc + g.scale);
        sum(&self.lower) - sum(&self.upper)
    }

    pub fn classify(&self) -> Result<ConvergenceReport> {
        self.validate()?;
        let (c1, c2) = (self.component(1), self.component(2));
        let domain = Domain::from_signs(c1.margin_sign(), c2.margin_sign());
        let (l1, l2) = (c1.lambda(), c2.lambda());
        let lambda = Bicomplex::compose(l1, l2).cartesian();
        Ok(ConvergenceReport {
            upsilon: self.upsilon(),
            v: Hyperbolic::new(c1.critical_radius(), c2.critical_radius()),
            radius: Hyperbolic::new(c1.radius(), c2.radius()),
            lambda_idem: (l1, l2),
            lambda_cart: lambda,
            domain,
            case: domain.case_label(),
            boundary_abs_convergent: boundary_condition_idempotent(l1, l2),
            sign_tolerance: crate::foxwright::MARGIN_TOL,
        })
    }

    /// Sums the series componentwise.
    ///
    /// Points with both components on the boundary of the hyperbolic ball
    /// are evaluated only when `opts.allow_boundary` is set and the boundary
    /// condition holds. Points with exactly one component on its circle are
    /// always rejected.
    pub fn eval(&self, z: Bicomplex, opts: &EvalOptions) -> Result<BcEvalResult> {
        z.validate()?;
        let report = self.classify()?;
        let on_circle = |p: u8| {
            let r = report.radius.component(p);
            let m = z.component(p).norm();
            r.is_finite() && r > 0.0 && (m - r).abs() <= BOUNDARY_TOL * r
        };
        let (on1, on2) = (on_circle(1), on_circle(2));
        let boundary_ok = report.domain == Domain::HyperbolicBall
            && on1
            && on2
            && opts.allow_boundary
            && report.boundary_abs_convergent;
        if !boundary_ok && (on1 || on2) {
            let p = if on1 { 1 } else { 2 };
            return Err(Error::DomainViolation {
                modulus: z.component(p).norm(),
                radius: report.radius.component(p),
                component: Some(p),
            });
        }
        let component_opts = EvalOptions {
            allow_boundary: boundary_ok,
            ..*opts
        };
        let r1 = self
            .component(1)
            .eval(z.z1(), &component_opts)
            .map_err(|e| e.in_component(1))?;
        let r2 = self
            .component(2)
            .eval(z.z2(), &component_opts)
            .map_err(|e| e.in_component(2))?;
        Ok(BcEvalResult {
            value: Bicomplex::compose(r1.value, r2.value),
            terms_used: [r1.terms_used, r2.terms_used],
            tail_bound: Hyperbolic::new(r1.tail_bound, r2.tail_bound),
        })
    }

    /// The partial sum `Σ_{k<n}` computed directly in bicomplex arithmetic
    /// with [`gamma_bicomplex`]; no idempotent splitting of the series.
    ///
    /// Gamma values are formed explicitly, so `n` must stay small enough
    /// that they do not overflow. Lower poles raise an error here.
    pub fn eval_direct(&self, z: Bicomplex, n: usize) -> Result<Bicomplex> {
        let mut sum = Bicomplex::ZERO;
        let mut power = Bicomplex::ONE;
        let mut factorial = 1.0;
        for k in 0..n {
            if k > 0 {
                power = power * z;
                factorial *= k as f64;
            }
            let kb = Bicomplex::from_real(k as f64);
            let mut coeff = Bicomplex::ONE;
            for g in &self.upper {
                coeff = coeff * gamma_bicomplex(g.shift + Bicomplex::from(g.scale) * kb)?;
            }
            for g in &self.lower {
                coeff = coeff * gamma_bicomplex(g.shift + Bicomplex::from(g.scale) * kb)?.inverse()?;
            }
            sum = sum + coeff * power / factorial;
        }
        Ok(sum)
    }

    /// `|a_k|_h · 𝒱^k`, the size of the `k`th term on the ball's boundary.
    pub fn boundary_term(&self, k: usize) -> Result<Hyperbolic> {
        let report = self.classify()?;
        let mut out = [0.0; 2];
        for (i, p) in [1u8, 2].into_iter().enumerate() {
            let params = self.component(p);
            out[i] = match params.log_coefficient(k).map_err(|e| e.in_component(p))? {
                Some(l) => (l.re + k as f64 * report.v.component(p).ln()).exp(),
                None => 0.0,
            };
        }
        Ok(Hyperbolic::new(out[0], out[1]))
    }

    /// Majorant bound on `Σ_{j>k} |a_j|_h 𝒱^j`, using decay `j^{−(Re λₚ + 1/2)}`.
    /// Infinite in a component where the exponent does not exceed one.
    pub fn boundary_tail(&self, k: usize) -> Result<Hyperbolic> {
        let report = self.classify()?;
        let term = self.boundary_term(k)?;
        let tail = |t: f64, lambda: Complex64| {
            let s = lambda.re + 0.5;
            if s > 1.0 {
                t * k.max(1) as f64 / (s - 1.0)
            } else {
                f64::INFINITY
            }
        };
        Ok(Hyperbolic::new(
            tail(term.c1, report.lambda_idem.0),
            tail(term.c2, report.lambda_idem.1),
        ))
    }

    /// Membership table over a grid of component moduli, row-major in `z1`.
    pub fn region_sample(&self, grid: &RegionGrid) -> Result<Vec<RegionPoint>> {
        let report = self.classify()?;
        let n = grid.steps.max(1);
        let axis = |extent: f64, i: usize| extent * i as f64 / n as f64;
        Ok((0..(n + 1) * (n + 1))
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / (n + 1), idx % (n + 1));
                let z1_abs = axis(grid.extent.c1, i);
                let z2_abs = axis(grid.extent.c2, j);
                RegionPoint {
                    z1_abs,
                    z2_abs,
                    inside: report.contains_moduli(z1_abs, z2_abs),
                }
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_pair(shift: f64, s1: f64, s2: f64) -> BicomplexPair {
        BicomplexPair::new(Bicomplex::from_real(shift), Hyperbolic::new(s1, s2))
    }

    fn params(upper: &[(f64, f64)], lower: &[(f64, f64)]) -> BcfwParams {
        BcfwParams::new(
            upper.iter().map(|&(a, b)| real_pair(1.0, a, b)).collect(),
            lower.iter().map(|&(a, b)| real_pair(1.0, a, b)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn classify_examples() {
        let r = params(&[(1.0, 1.0)], &[(1.0, 1.0)]).classify().unwrap();
        assert_eq!(r.upsilon, Hyperbolic::ZERO);
        assert_eq!(r.domain, Domain::EntireBC);

        let r = params(&[(2.0, 1.0)], &[(1.0, 1.0)]).classify().unwrap();
        assert_eq!(r.upsilon, Hyperbolic::new(-1.0, 0.0));
        assert_eq!(r.domain, Domain::Disk1Plane2);
        assert!((r.radius.c1 - 0.25).abs() < 1e-15);
        assert!(r.radius.c2.is_infinite());

        let r = params(&[(2.0, 2.0)], &[(1.0, 1.0)]).classify().unwrap();
        assert_eq!(r.domain, Domain::HyperbolicBall);
        assert!(r.v.approx_eq(Hyperbolic::new(0.25, 0.25)));

        let r = params(&[(3.0, 3.0)], &[]).classify().unwrap();
        assert_eq!(r.upsilon, Hyperbolic::new(-3.0, -3.0));
        assert_eq!(r.domain, Domain::DivergentEverywhere);
    }

    #[test]
    fn nine_sign_patterns() {
        // scales (M1, M2) against N = (1, 1): Υ + 1 = 2 − M
        let table = [
            ((1.0, 1.0), Domain::EntireBC),
            ((2.0, 1.0), Domain::Disk1Plane2),
            ((1.0, 2.0), Domain::Plane1Disk2),
            ((2.0, 3.0), Domain::Disk1Zero2),
            ((3.0, 2.0), Domain::Zero1Disk2),
            ((1.0, 3.0), Domain::Plane1Zero2),
            ((3.0, 1.0), Domain::Zero1Plane2),
            ((2.0, 2.0), Domain::HyperbolicBall),
            ((3.0, 3.0), Domain::DivergentEverywhere),
        ];
        for ((m1, m2), expected) in table {
            let r = params(&[(m1, m2)], &[(1.0, 1.0)]).classify().unwrap();
            assert_eq!(r.domain, expected, "M = ({m1}, {m2})");
        }
    }

    #[test]
    fn cartesian_lambda_is_consistent() {
        let p = BcfwParams::new(
            vec![BicomplexPair::new(
                Bicomplex::compose(c(0.3, 0.2), c(1.1, -0.4)),
                Hyperbolic::new(1.0, 1.0),
            )],
            vec![BicomplexPair::new(
                Bicomplex::compose(c(2.5, 0.0), c(3.0, 1.0)),
                Hyperbolic::new(1.0, 1.0),
            )],
        )
        .unwrap();
        let r = p.classify().unwrap();
        let (l1, l2) = r.lambda_idem;
        let (big1, big2) = r.lambda_cart;
        assert!((big1 - (l1 + l2) / 2.0).norm() < 1e-15);
        assert!((big2 - c(0.0, 1.0) * (l1 - l2) / 2.0).norm() < 1e-15);
        assert_eq!(
            boundary_condition_cartesian(big1, big2),
            boundary_condition_idempotent(l1, l2)
        );
    }

    #[test]
    fn mittag_leffler_components() {
        let p = BcfwParams::new(
            vec![real_pair(1.0, 1.0, 1.0)],
            vec![BicomplexPair::new(
                Bicomplex::compose(c(2.0, 0.0), c(3.0, 0.0)),
                Hyperbolic::ONE,
            )],
        )
        .unwrap();
        let r = p.eval(Bicomplex::ONE, &EvalOptions::default()).unwrap();
        let e = 1f64.exp();
        assert!((r.value.z1() - c(e - 1.0, 0.0)).norm() < 1e-14);
        assert!((r.value.z2() - c(e - 2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_argument() {
        let p = params(&[(2.0, 2.0)], &[(1.0, 1.0)]);
        let r = p.eval(Bicomplex::ZERO, &EvalOptions::default()).unwrap();
        assert!((r.value - Bicomplex::ONE).z1().norm() < 1e-15);
        // divergent everywhere still admits the origin
        let p = params(&[(3.0, 3.0)], &[]);
        assert!(p.eval(Bicomplex::ZERO, &EvalOptions::default()).is_ok());
        let err = p
            .eval(Bicomplex::compose(c(0.0, 0.0), c(1e-3, 0.0)), &EvalOptions::default())
            .unwrap_err();
        assert!(matches!(err, Error::DomainViolation { component: Some(2), .. }));
    }

    #[test]
    fn direct_sum_matches_components() {
        let p = BcfwParams::new(
            vec![BicomplexPair::new(
                Bicomplex::compose(c(1.5, 0.5), c(0.8, 0.0)),
                Hyperbolic::new(0.7, 1.2),
            )],
            vec![BicomplexPair::new(
                Bicomplex::compose(c(2.0, 0.0), c(1.3, -0.2)),
                Hyperbolic::new(1.1, 0.9),
            )],
        )
        .unwrap();
        let z = Bicomplex::compose(c(0.6, -0.3), c(-0.4, 0.2));
        let direct = p.eval_direct(z, 30).unwrap();
        let s1 = p.component(1).partial_sum(z.z1(), 30).unwrap();
        let s2 = p.component(2).partial_sum(z.z2(), 30).unwrap();
        assert!((direct.z1() - s1).norm() < 1e-13 * s1.norm());
        assert!((direct.z2() - s2).norm() < 1e-13 * s2.norm());
    }

    #[test]
    fn mixed_boundary_points_are_rejected() {
        // λ = 2 in both components so the boundary condition holds.
        let p = BcfwParams::new(
            vec![real_pair(1.0, 2.0, 2.0)],
            vec![real_pair(3.0, 1.0, 1.0)],
        )
        .unwrap();
        let r = p.classify().unwrap();
        assert!(r.boundary_abs_convergent);
        let opts = EvalOptions {
            allow_boundary: true,
            max_terms: 20_000,
            ..EvalOptions::default()
        };
        let mixed = Bicomplex::compose(c(0.25, 0.0), c(0.1, 0.0));
        assert!(matches!(
            p.eval(mixed, &opts),
            Err(Error::DomainViolation { component: Some(1), .. })
        ));
        let full = Bicomplex::compose(c(0.25, 0.0), c(0.0, 0.25));
        assert!(p.eval(full, &EvalOptions::default()).is_err());
        assert!(p.eval(full, &opts).is_ok());
    }

    #[test]
    fn boundary_majorant_tail() {
        let p = BcfwParams::new(
            vec![real_pair(1.0, 2.0, 2.0)],
            vec![real_pair(3.0, 1.0, 1.0)],
        )
        .unwrap();
        let tail = p.boundary_tail(100_000).unwrap();
        assert!(tail.c1 < 1e-6 && tail.c2 < 1e-6, "{tail:?}");
        let q = params(&[(2.0, 2.0)], &[(1.0, 1.0)]);
        assert!(q.boundary_tail(100).unwrap().c1.is_infinite());
    }

    #[test]
    fn region_examples() {
        let ball = params(&[(2.0, 2.0)], &[(1.0, 1.0)]).classify().unwrap();
        assert!(!ball.contains_moduli(0.2, 0.3));
        assert!(ball.contains_moduli(0.2, 0.2));
        assert!(!ball.contains_moduli(0.25, 0.2));

        let entire = params(&[(1.0, 1.0)], &[(1.0, 1.0)]);
        let rep = entire.classify().unwrap();
        let table = entire.region_sample(&RegionGrid::auto(&rep, 8)).unwrap();
        assert_eq!(table.len(), 81);
        assert!(table.iter().all(|p| p.inside));

        let zero2 = params(&[(2.0, 3.0)], &[(1.0, 1.0)]);
        let rep = zero2.classify().unwrap();
        let table = zero2.region_sample(&RegionGrid::auto(&rep, 4)).unwrap();
        assert!(table.iter().all(|p| p.inside == (p.z2_abs == 0.0 && p.z1_abs < rep.radius.c1)));
    }

    #[test]
    fn validation_and_json() {
        assert!(BcfwParams::new(vec![real_pair(1.0, 1.0, 0.0)], vec![]).is_err());
        let pole = BicomplexPair::new(Bicomplex::compose(c(1.0, 0.0), c(-2.0, 0.0)), Hyperbolic::ONE);
        let err = BcfwParams::new(vec![], vec![pole]).unwrap_err();
        assert!(format!("{err}").contains("component 2"));

        let json = r#"{"upper":[[{"z1":[1.0,0.0],"z2":[2.0,0.5]},{"c1":1.0,"c2":2.0}]],"lower":[]}"#;
        let p: BcfwParams = serde_json::from_str(json).unwrap();
        assert_eq!(p.upper[0].scale, Hyperbolic::new(1.0, 2.0));
        assert_eq!(serde_json::to_string(&p).unwrap(), json);

        let r = params(&[(2.0, 1.0)], &[(1.0, 1.0)]).classify().unwrap();
        let v = serde_json::to_value(r).unwrap();
        assert_eq!(v["radius"]["c2"], "inf");
        assert_eq!(v["domain"], "Disk1xPlane2");
        assert_eq!(v["case"], "ii");
    }
}
