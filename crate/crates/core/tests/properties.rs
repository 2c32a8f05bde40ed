mod common;

use common::random_gv;
use gw_asymptotics::arith::{bernoulli, factorial, rat, DirichletVector, Rational};
use gw_asymptotics::invariants::{abc_to_gw, dirichlet_relations_check, gv_to_abc, gv_to_gw, gw_to_gv};
use proptest::prelude::*;

fn vector(len: usize) -> impl Strategy<Value = DirichletVector> {
    prop::collection::vec((-20i64..=20, 1i64..=6), len)
        .prop_map(|v| DirichletVector::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

fn unit_led(len: usize) -> impl Strategy<Value = DirichletVector> {
    (1i64..=5, vector(len)).prop_map(|(lead, v)| {
        let mut c = v.coeffs().to_vec();
        c[0] = rat(lead, 1);
        DirichletVector::new(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gv_gw_round_trip(gv in random_gv(8, 6, 50)) {
        let gw = gv_to_gw(&gv, 6, 8).unwrap();
        let back = gw_to_gv(&gw).unwrap();
        prop_assert_eq!(back.nonzero_entries(), gv.nonzero_entries());
    }

    #[test]
    fn abc_route_agrees_and_is_integral(gv in random_gv(8, 6, 50)) {
        let abc = gv_to_abc(&gv, 8).unwrap();
        let gw = gv_to_gw(&gv, 7, 8).unwrap();
        for ((g, d), v) in gw.entries() {
            prop_assert_eq!(&abc_to_gw(&abc, *g, *d).unwrap(), v);
        }
    }

    #[test]
    fn dirichlet_relations_hold(gv in random_gv(6, 4, 30)) {
        let gw = gv_to_gw(&gv, 4, 6).unwrap();
        let report = dirichlet_relations_check(&gv, &gw, 4, 6).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failure);
    }

    #[test]
    fn dirichlet_product_is_associative_and_invertible(a in unit_led(12), b in unit_led(12), c in vector(12)) {
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(c.mul(&a).unwrap().div(&a).unwrap(), c.clone());
        let sum = (&a + &b).mul(&c).unwrap();
        prop_assert_eq!(sum, &a.mul(&c).unwrap() + &b.mul(&c).unwrap());
    }

    #[test]
    fn bernoulli_recurrence(n in 1u32..60) {
        // sum_{k<=n} C(n+1, k) B_k = 0
        let mut acc = Rational::new();
        for k in 0..=n {
            let c = factorial(n + 1) / (factorial(k) * factorial(n + 1 - k));
            acc += bernoulli(k) * c;
        }
        prop_assert_eq!(acc, Rational::new());
        if n % 2 == 1 && n > 1 {
            prop_assert_eq!(bernoulli(n), Rational::new());
        }
    }
}

#[test]
fn zeta_shift_inverts_mobius_style() {
    let z = DirichletVector::zeta_shift(30, 0);
    let unit = DirichletVector::unit(30);
    assert_eq!(unit.div(&z).unwrap().mul(&z).unwrap(), unit);
}
