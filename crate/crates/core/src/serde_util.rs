//! Serde helpers for the on-disk encodings.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Complex number as a two-element array `[re, im]`.
pub mod complex_pair {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// `f64` that may be `+inf`, written as the string `"inf"`.
pub mod extended_real {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_infinite() && *x > 0.0 {
            "inf".serialize(s)
        } else {
            x.serialize(s)
        }
    }
}

/// Hyperbolic number whose components may be `+inf`.
pub mod extended_hyperbolic {
    use super::*;
    use crate::bicomplex::Hyperbolic;

    #[derive(Serialize)]
    struct Repr {
        #[serde(with = "super::extended_real")]
        c1: f64,
        #[serde(with = "super::extended_real")]
        c2: f64,
    }

    pub fn serialize<S: Serializer>(h: &Hyperbolic, s: S) -> Result<S::Ok, S::Error> {
        Repr { c1: h.c1, c2: h.c2 }.serialize(s)
    }
}

/// Pair of complex numbers as `[[re, im], [re, im]]`.
pub mod complex_pair2 {
    use super::*;

    pub fn serialize<S: Serializer>(z: &(Complex64, Complex64), s: S) -> Result<S::Ok, S::Error> {
        [[z.0.re, z.0.im], [z.1.re, z.1.im]].serialize(s)
    }
}
