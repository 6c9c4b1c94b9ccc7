use std::fs;
use std::path::Path;

use foxwright_core::{BcCoherentModel, BcfwParams, Bicomplex, CoherentModel, Complex64, FwParams};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::Failure;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::BadInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::BadInput(format!("{}: {e}", path.display())))
}

pub fn fw_params(path: &Path) -> Result<FwParams, Failure> {
    let p: FwParams = read_json(path)?;
    p.validate().map_err(|e| Failure::BadInput(format!("{}: {e}", path.display())))?;
    Ok(p)
}

pub fn bcfw_params(path: &Path) -> Result<BcfwParams, Failure> {
    let p: BcfwParams = read_json(path)?;
    p.validate().map_err(|e| Failure::BadInput(format!("{}: {e}", path.display())))?;
    Ok(p)
}

pub enum Model {
    Complex(CoherentModel),
    Bicomplex(BcCoherentModel),
}

/// Bicomplex model files have `[{"z1":…,"z2":…}, {"c1":…,"c2":…}]` entries;
/// complex ones have `[re, im, scale]`. A file with no pairs is complex.
pub fn model(path: &Path) -> Result<Model, Failure> {
    let raw: Value = read_json(path)?;
    let is_bicomplex = ["upper", "lower"].iter().any(|key| {
        raw.get(key)
            .and_then(Value::as_array)
            .and_then(|list| list.first())
            .and_then(|pair| pair.get(0))
            .is_some_and(Value::is_object)
    });
    let bad = |e: serde_json::Error| Failure::BadInput(format!("{}: {e}", path.display()));
    if is_bicomplex {
        serde_json::from_value(raw).map(Model::Bicomplex).map_err(bad)
    } else {
        serde_json::from_value(raw).map(Model::Complex).map_err(bad)
    }
}

pub fn numbers(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Failure::BadInput(format!("'{s}' is not a finite number")))
        })
        .collect()
}

pub enum Point {
    Complex(Complex64),
    Bicomplex(Bicomplex),
}

/// `re,im` or `z1re,z1im,z2re,z2im`.
pub fn point(text: &str) -> Result<Point, Failure> {
    match numbers(text)?[..] {
        [re, im] => Ok(Point::Complex(Complex64::new(re, im))),
        [a, b, c, d] => Ok(Point::Bicomplex(Bicomplex::compose(Complex64::new(a, b), Complex64::new(c, d)))),
        _ => Err(Failure::BadInput(format!(
            "'{text}' must be re,im or z1re,z1im,z2re,z2im"
        ))),
    }
}

pub fn complex(text: &str) -> Result<Complex64, Failure> {
    match point(text)? {
        Point::Complex(z) => Ok(z),
        Point::Bicomplex(_) => Err(Failure::BadInput(format!("'{text}' must be re,im"))),
    }
}

pub fn bicomplex(text: &str) -> Result<Bicomplex, Failure> {
    match point(text)? {
        Point::Bicomplex(z) => Ok(z),
        Point::Complex(_) => Err(Failure::BadInput(format!("'{text}' must be z1re,z1im,z2re,z2im"))),
    }
}

/// `k`, `a..b` (inclusive) or a comma list.
pub fn index_range(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::BadInput(format!("'{text}' is not an index, a range a..b, or a list"));
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}
