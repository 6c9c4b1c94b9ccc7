//! Bicomplex and hyperbolic numbers.
//!
//! A bicomplex number is stored in its idempotent form `z1·e1 + z2·e2` with
//! `e1 = (1 + ij)/2` and `e2 = (1 − ij)/2`. Ring operations act on the two
//! complex components independently, so every operation below is a pair of
//! complex operations. The cartesian form `a + j·b` is available as a view.
//!
//! Hyperbolic numbers are the bicomplex numbers whose idempotent components
//! are both real. They carry the hyperbolic norm and the partial order used
//! to state convergence conditions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_util::complex_pair;

/// Absolute tolerance for hyperbolic equality tests.
pub const HYPERBOLIC_EQ_TOL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bicomplex {
    #[serde(with = "complex_pair")]
    z1: Complex64,
    #[serde(with = "complex_pair")]
    z2: Complex64,
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex::compose(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    pub const ONE: Bicomplex = Bicomplex::compose(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
    pub const E1: Bicomplex = Bicomplex::compose(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    pub const E2: Bicomplex = Bicomplex::compose(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));

    /// Builds `z1·e1 + z2·e2`.
    pub const fn compose(z1: Complex64, z2: Complex64) -> Self {
        Bicomplex { z1, z2 }
    }

    /// Like [`Bicomplex::compose`] but rejects non-finite components.
    pub fn try_compose(z1: Complex64, z2: Complex64) -> Result<Self> {
        let b = Bicomplex { z1, z2 };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if is_finite(self.z1) && is_finite(self.z2) {
            Ok(())
        } else {
            Err(Error::Validation(format!(
                "bicomplex components must be finite, got {:?}",
                self
            )))
        }
    }

    pub fn decompose(self) -> (Complex64, Complex64) {
        (self.z1, self.z2)
    }

    pub fn z1(self) -> Complex64 {
        self.z1
    }

    pub fn z2(self) -> Complex64 {
        self.z2
    }

    /// Component `p` (1 or 2).
    pub fn component(self, p: u8) -> Complex64 {
        match p {
            1 => self.z1,
            2 => self.z2,
            _ => panic!("idempotent component index must be 1 or 2, got {p}"),
        }
    }

    /// Embeds a complex number as `z·e1 + z·e2`.
    pub fn from_complex(z: Complex64) -> Self {
        Bicomplex { z1: z, z2: z }
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    /// Builds `a + j·b` from its cartesian coordinates.
    pub fn from_cartesian(a: Complex64, b: Complex64) -> Self {
        Bicomplex {
            z1: a - I * b,
            z2: a + I * b,
        }
    }

    /// Cartesian coordinates `(a, b)` with `Z = a + j·b`.
    pub fn cartesian(self) -> (Complex64, Complex64) {
        ((self.z1 + self.z2) * 0.5, I * (self.z1 - self.z2) * 0.5)
    }

    /// A nonzero element with exactly one vanishing component.
    pub fn is_zero_divisor(self) -> bool {
        let (a, b) = (self.z1 == Complex64::default(), self.z2 == Complex64::default());
        a ^ b
    }

    /// Not invertible: zero or a zero divisor.
    pub fn is_singular(self) -> bool {
        self.z1 == Complex64::default() || self.z2 == Complex64::default()
    }

    pub fn inverse(self) -> Result<Self> {
        if self.is_singular() {
            return Err(Error::SingularElement);
        }
        Ok(Bicomplex {
            z1: self.z1.inv(),
            z2: self.z2.inv(),
        })
    }

    /// Componentwise complex conjugate; `Z.conj() * Z == |Z|_h²`.
    pub fn conj(self) -> Self {
        Bicomplex {
            z1: self.z1.conj(),
            z2: self.z2.conj(),
        }
    }

    pub fn hyper_norm(self) -> Hyperbolic {
        Hyperbolic {
            c1: self.z1.norm(),
            c2: self.z2.norm(),
        }
    }

    pub fn powu(self, k: u32) -> Self {
        Bicomplex {
            z1: self.z1.powu(k),
            z2: self.z2.powu(k),
        }
    }

    /// Applies `f` to both idempotent components.
    pub fn map(self, mut f: impl FnMut(Complex64) -> Complex64) -> Self {
        Bicomplex {
            z1: f(self.z1),
            z2: f(self.z2),
        }
    }

    /// Applies a fallible `f` to both components, tagging errors with the
    /// component index.
    pub fn try_map(self, mut f: impl FnMut(Complex64) -> Result<Complex64>) -> Result<Self> {
        Ok(Bicomplex {
            z1: f(self.z1).map_err(|e| e.in_component(1))?,
            z2: f(self.z2).map_err(|e| e.in_component(2))?,
        })
    }
}

fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

impl fmt::Debug for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})e1 + ({})e2", self.z1, self.z2)
    }
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<Complex64> for Bicomplex {
    fn from(z: Complex64) -> Self {
        Bicomplex::from_complex(z)
    }
}

impl From<Hyperbolic> for Bicomplex {
    fn from(h: Hyperbolic) -> Self {
        Bicomplex::compose(Complex64::new(h.c1, 0.0), Complex64::new(h.c2, 0.0))
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::compose(self.z1 + rhs.z1, self.z2 + rhs.z2)
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::compose(self.z1 - rhs.z1, self.z2 - rhs.z2)
    }
}

impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::compose(self.z1 * rhs.z1, self.z2 * rhs.z2)
    }
}

impl Mul<f64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: f64) -> Bicomplex {
        Bicomplex::compose(self.z1 * rhs, self.z2 * rhs)
    }
}

impl Div<f64> for Bicomplex {
    type Output = Bicomplex;
    fn div(self, rhs: f64) -> Bicomplex {
        Bicomplex::compose(self.z1 / rhs, self.z2 / rhs)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        Bicomplex::compose(-self.z1, -self.z2)
    }
}

/// Hyperbolic number `c1·e1 + c2·e2` with real idempotent components.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperbolic {
    pub c1: f64,
    pub c2: f64,
}

impl Hyperbolic {
    pub const ZERO: Hyperbolic = Hyperbolic::new(0.0, 0.0);
    pub const ONE: Hyperbolic = Hyperbolic::new(1.0, 1.0);

    pub const fn new(c1: f64, c2: f64) -> Self {
        Hyperbolic { c1, c2 }
    }

    pub fn try_new(c1: f64, c2: f64) -> Result<Self> {
        let h = Hyperbolic { c1, c2 };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        if self.c1.is_finite() && self.c2.is_finite() {
            Ok(())
        } else {
            Err(Error::Validation(format!(
                "hyperbolic components must be finite, got {:?}",
                self
            )))
        }
    }

    pub fn splat(x: f64) -> Self {
        Hyperbolic { c1: x, c2: x }
    }

    /// Cartesian view `x1 + ij·x4`.
    pub fn from_cartesian(x1: f64, x4: f64) -> Self {
        Hyperbolic {
            c1: x1 + x4,
            c2: x1 - x4,
        }
    }

    pub fn cartesian(self) -> (f64, f64) {
        ((self.c1 + self.c2) * 0.5, (self.c1 - self.c2) * 0.5)
    }

    pub fn component(self, p: u8) -> f64 {
        match p {
            1 => self.c1,
            2 => self.c2,
            _ => panic!("idempotent component index must be 1 or 2, got {p}"),
        }
    }

    /// Member of 𝔻⁺.
    pub fn is_nonnegative(self) -> bool {
        self.c1 >= 0.0 && self.c2 >= 0.0
    }

    /// Member of 𝔻⁺ without the zero divisors and zero.
    pub fn is_positive(self) -> bool {
        self.c1 > 0.0 && self.c2 > 0.0
    }

    /// `self ≤_h other`, i.e. `other − self ∈ 𝔻⁺`.
    pub fn leq_h(self, other: Hyperbolic) -> bool {
        (other - self).is_nonnegative()
    }

    /// `self <_h other`, strict in both components.
    pub fn lt_h(self, other: Hyperbolic) -> bool {
        (other - self).is_positive()
    }

    /// Componentwise equality within [`HYPERBOLIC_EQ_TOL`].
    pub fn approx_eq(self, other: Hyperbolic) -> bool {
        (self.c1 - other.c1).abs() <= HYPERBOLIC_EQ_TOL
            && (self.c2 - other.c2).abs() <= HYPERBOLIC_EQ_TOL
    }

    /// Componentwise real power `(c1^t1, c2^t2)`; the base must lie in
    /// 𝔻⁺∖𝕆₂.
    pub fn pow_real(self, t: Hyperbolic) -> Result<Hyperbolic> {
        if !self.is_positive() {
            return Err(Error::Domain(format!(
                "hyperbolic power needs both base components > 0, got {:?}",
                self
            )));
        }
        Ok(Hyperbolic {
            c1: self.c1.powf(t.c1),
            c2: self.c2.powf(t.c2),
        })
    }

    pub fn map(self, mut f: impl FnMut(f64) -> f64) -> Hyperbolic {
        Hyperbolic {
            c1: f(self.c1),
            c2: f(self.c2),
        }
    }
}

impl fmt::Debug for Hyperbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})e1 + ({})e2", self.c1, self.c2)
    }
}

impl Add for Hyperbolic {
    type Output = Hyperbolic;
    fn add(self, rhs: Hyperbolic) -> Hyperbolic {
        Hyperbolic::new(self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl Sub for Hyperbolic {
    type Output = Hyperbolic;
    fn sub(self, rhs: Hyperbolic) -> Hyperbolic {
        Hyperbolic::new(self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl Mul for Hyperbolic {
    type Output = Hyperbolic;
    fn mul(self, rhs: Hyperbolic) -> Hyperbolic {
        Hyperbolic::new(self.c1 * rhs.c1, self.c2 * rhs.c2)
    }
}

impl Mul<f64> for Hyperbolic {
    type Output = Hyperbolic;
    fn mul(self, rhs: f64) -> Hyperbolic {
        Hyperbolic::new(self.c1 * rhs, self.c2 * rhs)
    }
}

impl Neg for Hyperbolic {
    type Output = Hyperbolic;
    fn neg(self) -> Hyperbolic {
        Hyperbolic::new(-self.c1, -self.c2)
    }
}
