use num_complex::Complex64;
use thiserror::Error;

/// Idempotent component index (1 or 2) attached to errors raised by
/// per-component bicomplex code; `None` for plain complex operations.
pub type Component = Option<u8>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("singular element: bicomplex value is a zero divisor or zero")]
    SingularElement,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("gamma pole at {at}{}", component_suffix(*.component))]
    Pole { at: Complex64, component: Component },

    #[error("|z| = {modulus} is outside the convergence region (radius {radius}){}", component_suffix(*.component))]
    DomainViolation {
        modulus: f64,
        radius: f64,
        component: Component,
    },

    #[error("series did not settle within {max_terms} terms")]
    MaxTermsExceeded { max_terms: usize },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("truncation target not reached at K = {k_max} (tail mass {tail_mass:e})")]
    Truncation { k_max: usize, tail_mass: f64 },

    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    #[error("contour integration failure: {0}")]
    ContourFailure(String),
}

fn component_suffix(c: Component) -> String {
    match c {
        Some(p) => format!(" in idempotent component {p}"),
        None => String::new(),
    }
}

impl Error {
    /// Tags an error with the idempotent component it came from.
    pub fn in_component(self, p: u8) -> Self {
        match self {
            Error::Pole { at, .. } => Error::Pole {
                at,
                component: Some(p),
            },
            Error::DomainViolation {
                modulus, radius, ..
            } => Error::DomainViolation {
                modulus,
                radius,
                component: Some(p),
            },
            Error::Validation(msg) => Error::Validation(format!("component {p}: {msg}")),
            Error::QuadratureFailure(msg) => {
                Error::QuadratureFailure(format!("component {p}: {msg}"))
            }
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
