use std::f64::consts::PI;

use foxwright_core::bcfw::BcfwParams;
use foxwright_core::gamma::{gamma, log_gamma};
use foxwright_core::hfunction::{eval_h, HWeightParams};
use foxwright_core::selftest::models;
use foxwright_core::{
    Bicomplex, BicomplexPair, CoherentModel, ContourConfig, Domain, Error, EvalOptions, FwParams, GammaPair, Hyperbolic,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn gamma_recurrence_and_reflection() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let w = c(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
        let g = gamma(w).unwrap();
        let g1 = gamma(w + 1.0).unwrap();
        assert!((g1 - w * g).norm() <= 1e-12 * g1.norm(), "recurrence at {w}");
        let refl = g * gamma(1.0 - w).unwrap() * (w * PI).sin();
        assert!((refl - PI).norm() <= 1e-11 * PI, "reflection at {w}");
    }
    let lg = log_gamma(c(0.5, 0.0)).unwrap();
    assert!((lg.re - 0.5 * PI.ln()).abs() < 1e-14);
}

#[test]
fn gamma_poles_are_rejected() {
    for n in 0..5 {
        assert!(matches!(gamma(c(-(n as f64), 0.0)), Err(Error::Pole { .. })));
    }
}

#[test]
fn derivative_shifts_parameters() {
    // d/dz 1ψ1[(a, A); (b, B); z] = 1ψ1[(a + A, A); (b + B, B); z]
    let f = FwParams::new(vec![GammaPair::real(1.3, 0.7)], vec![GammaPair::real(2.1, 1.4)]).unwrap();
    let d = FwParams::new(vec![GammaPair::real(2.0, 0.7)], vec![GammaPair::real(3.5, 1.4)]).unwrap();
    let opts = EvalOptions::default();
    for z in [c(0.5, 0.0), c(-2.0, 1.0), c(3.0, -2.5)] {
        let h = 1e-4;
        let num = (f.eval(z + h, &opts).unwrap().value - f.eval(z - h, &opts).unwrap().value) / (2.0 * h);
        let exact = d.eval(z, &opts).unwrap().value;
        assert!((num - exact).norm() <= 1e-7 * exact.norm(), "{z}: {num} vs {exact}");
    }
}

#[test]
fn tail_bound_shrinks_with_tolerance() {
    let f = FwParams::new(vec![GammaPair::real(0.8, 1.2)], vec![GammaPair::real(1.5, 0.9)]).unwrap();
    let z = c(0.7, 0.4);
    let mut last = f64::INFINITY;
    let mut terms = 0;
    for tol in [1e-4, 1e-8, 1e-12, 1e-15] {
        let r = f.eval(z, &EvalOptions { tol, ..EvalOptions::default() }).unwrap();
        assert!(r.tail_bound <= last, "tail bound grew at tol {tol}");
        assert!(r.terms_used >= terms);
        last = r.tail_bound;
        terms = r.terms_used;
    }
}

#[test]
fn outside_disk_is_domain_violation() {
    let f = FwParams::new(vec![GammaPair::real(1.0, 1.0), GammaPair::real(1.0, 1.0)], vec![GammaPair::real(1.0, 1.0)])
        .unwrap();
    assert!(matches!(
        f.eval(c(1.5, 0.0), &EvalOptions::default()),
        Err(Error::DomainViolation { .. })
    ));
}

#[test]
fn cauchy_schwarz_for_overlaps() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let m = models::coherent_model(&mut rng);
        for _ in 0..10 {
            let z = c(rng.gen_range(-0.7..0.7), rng.gen_range(-0.7..0.7));
            let w = c(rng.gen_range(-0.7..0.7), rng.gen_range(-0.7..0.7));
            let o = m.overlap(z, w).unwrap_or_else(|e| panic!("{:?} {z} {w}: {e}", m.params()));
            assert!(o.norm() <= 1.0 + 1e-12, "{z} {w}: {o}");
            let back = m.overlap(w, z).unwrap();
            assert!((back - o.conj()).norm() <= 1e-12);
        }
    }
}

#[test]
fn weight_is_positive_on_safe_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let cc = ContourConfig::default();
    for i in 0..20 {
        let m = models::positive_weight_model(&mut rng);
        let hp = HWeightParams::from_model(&m);
        for j in 1..=40 {
            let x = 0.5 * j as f64;
            let h = eval_h(&hp, x, &cc).unwrap();
            assert!(h >= -1e-12, "model {i} {:?} at x = {x}: {h}", m.params());
        }
    }
}

#[test]
fn bicomplex_series_splits_into_components() {
    let p1 = FwParams::new(vec![GammaPair::new(c(1.2, 0.3), 0.8)], vec![GammaPair::real(2.0, 1.1)]).unwrap();
    let p2 = FwParams::new(vec![GammaPair::real(0.6, 1.3)], vec![GammaPair::new(c(1.4, -0.2), 0.9)]).unwrap();
    let bc = BcfwParams::from_components(&p1, &p2).unwrap();
    let z = Bicomplex::compose(c(1.0, -0.5), c(-2.0, 0.7));
    let opts = EvalOptions::default();
    let v = bc.eval(z, &opts).unwrap().value;
    assert_eq!(v.z1(), p1.eval(z.z1(), &opts).unwrap().value);
    assert_eq!(v.z2(), p2.eval(z.z2(), &opts).unwrap().value);
}

#[test]
fn generic_value_matches_oracle() {
    // mpmath direct summation, 40 digits
    let f = FwParams::new(
        vec![GammaPair::new(c(1.5, 0.5), 0.8)],
        vec![GammaPair::real(2.2, 1.1), GammaPair::real(0.7, 0.4)],
    )
    .unwrap();
    let v = f.eval(c(2.0, -1.0), &EvalOptions::default()).unwrap().value;
    let expected = c(2.175145456189321, -0.555066686153836);
    assert!((v - expected).norm() <= 1e-12 * expected.norm(), "{v}");
}

#[test]
fn canonical_model_is_glauber() {
    let m = CoherentModel::new(FwParams::default()).unwrap();
    let z = c(0.6, -1.1);
    let s = m.make_state(z).unwrap();
    let pref = (-0.5 * z.norm_sqr()).exp();
    let mut fact = 1.0;
    for (k, ck) in s.coeffs.iter().enumerate().take(20) {
        if k > 0 {
            fact *= k as f64;
        }
        let expected = pref * z.powu(k as u32) / fact.sqrt();
        assert!((ck - expected).norm() <= 1e-14, "k = {k}");
    }
}

#[test]
fn entire_case_evaluates_far_out() {
    // Υ = (2, 1.5) >_h −1
    let one = Bicomplex::from_real(1.0);
    let params = BcfwParams::new(
        vec![BicomplexPair::new(one, Hyperbolic::ONE)],
        vec![BicomplexPair::new(one, Hyperbolic::new(3.0, 2.5))],
    )
    .unwrap();
    assert_eq!(params.classify().unwrap().domain, Domain::EntireBC);
    for r in [1.0, 10.0, 100.0, 1000.0] {
        let z = Bicomplex::compose(c(r, 0.0), Complex64::from_polar(r, 2.0));
        let v = params.eval(z, &EvalOptions::default()).unwrap().value;
        assert!(v.z1().re.is_finite() && v.z2().norm().is_finite(), "|z| = {r}");
    }
}

#[test]
fn cauchy_schwarz_on_a_thousand_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let m = models::positive_weight_model(&mut rng);
        for _ in 0..100 {
            let z = Complex64::from_polar(3.0 * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI));
            let w = Complex64::from_polar(3.0 * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI));
            worst = worst.max(m.overlap(z, w).unwrap().norm());
        }
    }
    assert!(worst <= 1.0 + 1e-10, "{worst}");
}
