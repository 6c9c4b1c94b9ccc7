//! Fox–Wright functions over the complex and bicomplex numbers, their
//! convergence domains, and the coherent states they normalize.
//!
//! The crate is organised bottom-up:
//!
//! * [`bicomplex`] – bicomplex and hyperbolic arithmetic in idempotent form.
//! * [`gamma`] – complex log-gamma, Pochhammer symbols, bicomplex gamma.
//! * [`foxwright`] – the complex series `pψq`, its radius of convergence and
//!   reduction oracles (`pFq`, Mittag-Leffler, Bessel).
//! * [`bcfw`] – the bicomplex series `mΨn` and the nine-way classifier of its
//!   convergence domain.
//! * [`coherent`] – discrete-spectrum coherent states built on `pψq`.
//! * [`continuous`] – the continuous-spectrum limit and the ν-function.
//! * [`hfunction`] – Mellin–Barnes evaluation of the weight H-function and
//!   the moment form of the resolution of unity.
//! * [`selftest`] – the end-to-end acceptance checks, shared by the test
//!   suite and the CLI.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bcfw;
pub mod bicomplex;
pub mod coherent;
pub mod continuous;
pub mod error;
pub mod foxwright;
pub mod gamma;
pub mod hfunction;
pub mod quadrature;
pub mod selftest;
mod serde_util;

pub use num_complex::Complex64;

pub use bcfw::{BcfwParams, BicomplexPair, ConvergenceReport, Domain};
pub use bicomplex::{Bicomplex, Hyperbolic};
pub use coherent::{BcCoherentModel, BcStateVector, CoherentModel, StateVector};
pub use continuous::{QuadConfig, Scheme};
pub use error::{Error, Result};
pub use foxwright::{EvalOptions, EvalResult, FwParams, GammaPair};
pub use hfunction::{ContourConfig, HWeightParams, MomentCheck};
