use foxwright_core::{Bicomplex, Hyperbolic};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn bicomplex() -> impl Strategy<Value = Bicomplex> {
    (complex(), complex()).prop_map(|(a, b)| Bicomplex::from_cartesian(a, b))
}

fn hyperbolic() -> impl Strategy<Value = Hyperbolic> {
    (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(a, b)| Hyperbolic::new(a, b))
}

fn close(x: Complex64, y: Complex64) -> bool {
    (x - y).norm() <= 1e-12 * (1.0 + y.norm())
}

proptest! {
    #[test]
    fn product_matches_cartesian_rule(z in bicomplex(), w in bicomplex()) {
        // (a + jb)(c + jd) = (ac − bd) + j(ad + bc)
        let (a, b) = z.cartesian();
        let (c, d) = w.cartesian();
        let (x, y) = (z * w).cartesian();
        prop_assert!(close(x, a * c - b * d));
        prop_assert!(close(y, a * d + b * c));
    }

    #[test]
    fn cartesian_round_trip(a in complex(), b in complex()) {
        let (x, y) = Bicomplex::from_cartesian(a, b).cartesian();
        prop_assert!(close(x, a) && close(y, b));
    }

    #[test]
    fn inverse_is_inverse(z in bicomplex()) {
        prop_assume!(!z.is_singular());
        let one = z * z.inverse().unwrap();
        prop_assert!(close(one.z1(), Complex64::new(1.0, 0.0)));
        prop_assert!(close(one.z2(), Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn hyperbolic_norm_is_multiplicative(z in bicomplex(), w in bicomplex()) {
        let lhs = (z * w).hyper_norm();
        let rhs = z.hyper_norm() * w.hyper_norm();
        prop_assert!((lhs.c1 - rhs.c1).abs() <= 1e-12 * (1.0 + rhs.c1));
        prop_assert!((lhs.c2 - rhs.c2).abs() <= 1e-12 * (1.0 + rhs.c2));
    }

    #[test]
    fn conj_times_self_is_squared_norm(z in bicomplex()) {
        let n = z.hyper_norm();
        let p = z.conj() * z;
        prop_assert!(close(p.z1(), Complex64::new(n.c1 * n.c1, 0.0)));
        prop_assert!(close(p.z2(), Complex64::new(n.c2 * n.c2, 0.0)));
    }

    #[test]
    fn hyperbolic_norm_triangle(z in bicomplex(), w in bicomplex()) {
        let slack = Hyperbolic::splat(1e-12);
        prop_assert!((z + w).hyper_norm().leq_h(z.hyper_norm() + w.hyper_norm() + slack));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn partial_order_axioms(a in hyperbolic(), b in hyperbolic(), c in hyperbolic()) {
        prop_assert!(a.leq_h(a));
        if a.leq_h(b) && b.leq_h(a) {
            prop_assert_eq!(a, b);
        }
        if a.leq_h(b) && b.leq_h(c) {
            prop_assert!(a.leq_h(c));
        }
        if a.leq_h(b) {
            prop_assert!((a + c).leq_h(b + c));
        }
        if a.lt_h(b) {
            prop_assert!(a.leq_h(b));
        }
    }
}
