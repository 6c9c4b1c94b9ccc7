//! Invariant suite behind `cs verify`.

use foxwright_core::{BcCoherentModel, Bicomplex, CoherentModel, Complex64};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Row {
    pub model: String,
    pub check: &'static str,
    pub worst: f64,
    pub limit: f64,
    pub pass: bool,
    pub note: String,
}

fn grid() -> Vec<Complex64> {
    let axis = [-1.0, -0.5, 0.0, 0.5, 1.0];
    axis.iter()
        .flat_map(|&re| axis.iter().map(move |&im| Complex64::new(re, im)))
        .collect()
}

struct Acc {
    worst: f64,
    note: String,
}

impl Acc {
    fn new() -> Self {
        Acc {
            worst: 0.0,
            note: String::new(),
        }
    }

    fn add(&mut self, v: f64, note: impl FnOnce() -> String) {
        if v > self.worst || v.is_nan() {
            self.worst = v;
            self.note = note();
        }
    }

    fn fail(&mut self, msg: String) {
        self.worst = f64::INFINITY;
        self.note = msg;
    }

    fn row(self, model: &str, check: &'static str, limit: f64) -> Row {
        Row {
            model: model.to_string(),
            check,
            pass: self.worst <= limit,
            worst: self.worst,
            limit,
            note: self.note,
        }
    }
}

pub fn complex_suite(name: &str, m: &CoherentModel) -> Vec<Row> {
    let mut rows = Vec::new();

    let mut acc = Acc::new();
    for k in 0..=100 {
        acc.add((m.log_rho(k + 1) - m.log_rho(k) - 2.0 * m.log_f(k)).abs(), || format!("k = {k}"));
    }
    rows.push(acc.row(name, "recurrence rho(k+1) = rho(k) f(k)^2", 1e-11));

    let mut acc = Acc::new();
    let mut log_prod = 0.0;
    for k in 1..=60 {
        log_prod += m.log_f(k - 1);
        acc.add((log_prod - 0.5 * m.log_rho(k)).abs(), || format!("k = {k}"));
    }
    rows.push(acc.row(name, "product of f(s), s < k, equals sqrt(rho(k))", 1e-10));

    let mut acc = Acc::new();
    let k = 50;
    let telescoped: f64 = (0..k)
        .map(|s| {
            let prev = if s == 0 { 0.0 } else { m.f_factor(s - 1).powi(2) };
            m.f_factor(s).powi(2) - prev
        })
        .sum();
    let last = m.f_factor(k - 1).powi(2);
    acc.add((telescoped - last).abs() / last, || format!("K = {k}"));
    rows.push(acc.row(name, "commutator telescoping", 1e-9));

    let (mut norm, mut overlap, mut residual, mut schwarz) = (Acc::new(), Acc::new(), Acc::new(), Acc::new());
    let points = grid();
    for &z in &points {
        match m.make_state(z) {
            Ok(st) => {
                let total: f64 = st.photon_distribution().iter().sum::<f64>() + st.tail_mass;
                norm.add((total - 1.0).abs(), || format!("z = {z}, K = {}", st.truncation()));
                residual.add(m.annihilation_residual(&st), || format!("z = {z}, K = {}", st.truncation()));
            }
            Err(e) => {
                norm.fail(format!("z = {z}: {e}"));
                residual.fail(format!("z = {z}: {e}"));
            }
        }
        match m.overlap(z, z) {
            Ok(o) => overlap.add((o - 1.0).norm(), || format!("z = {z}")),
            Err(e) => overlap.fail(format!("z = {z}: {e}")),
        }
        for &w in &points {
            match m.overlap(z, w) {
                Ok(o) => schwarz.add(o.norm() - 1.0, || format!("z = {z}, z' = {w}")),
                Err(e) => schwarz.fail(format!("z = {z}, z' = {w}: {e}")),
            }
        }
    }
    rows.push(norm.row(name, "sum |c_k|^2 + tail = 1", 1e-11));
    rows.push(overlap.row(name, "<z|z> = 1", 1e-10));
    rows.push(schwarz.row(name, "|<z|z'>| <= 1", 1e-10));
    rows.push(residual.row(name, "annihilation residual", 1e-8));
    rows
}

pub fn bicomplex_suite(name: &str, m: &BcCoherentModel) -> Vec<Row> {
    let mut rows = complex_suite(&format!("{name}/e1"), m.component(1));
    rows.extend(complex_suite(&format!("{name}/e2"), m.component(2)));
    let mut acc = Acc::new();
    let points = grid();
    for (&a, &b) in points.iter().zip(points.iter().rev()) {
        let z = Bicomplex::compose(a, b);
        match m.overlap_b(z, z) {
            Ok(o) => {
                let d = o - Bicomplex::ONE;
                acc.add(d.z1().norm().max(d.z2().norm()), || format!("Z = {z}"));
            }
            Err(e) => acc.fail(format!("Z = {z}: {e}")),
        }
    }
    rows.push(acc.row(name, "<Z|Z> = 1 (hyperbolic)", 1e-10));
    rows
}
