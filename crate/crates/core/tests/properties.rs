mod common;

use std::collections::HashSet;

use hyperweyl::jz::{casimir_polynomial, JzAlgebra};
use hyperweyl::qfield::{BaseField, BiPoly, RatFunc, UniPoly};
use hyperweyl::repmod::{build_module, casimir_scalar, Module};
use hyperweyl::spectrum::{
    classify, eval_h_shift, eval_xi_shift, finite_family, highest_alpha, theta_on_point, theta_power_on_point,
    Branch, PointParams, PointType,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn poly(coeffs: &[i64]) -> UniPoly {
    UniPoly::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
}

/// Numerator with `q`-degree < 3 (plus an optional `v` term), denominator
/// monic in `q` of degree < 2.
fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (
        prop::collection::vec(-6i64..=6, 3),
        -2i64..=2,
        prop::option::of(-3i64..=3),
    )
        .prop_map(|(num, odd, den)| {
            let mut n = vec![0; 5];
            for (k, c) in num.iter().enumerate() {
                n[2 * k] = *c;
            }
            n[1] = odd;
            let d = match den {
                Some(c) => poly(&[c, 0, 1]),
                None => UniPoly::one(),
            };
            RatFunc::new(poly(&n), d).unwrap()
        })
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), ratfunc()), 0..4).prop_map(BiPoly::from_terms)
}

fn point() -> impl Strategy<Value = PointParams> {
    (ratfunc(), ratfunc())
        .prop_map(|(a, b)| PointParams::new(&BaseField::symbolic(), a, b))
        .prop_filter("beta is not the fixed weight", |p| {
            p.beta != hyperweyl::spectrum::special_beta(&p.field)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(a in ratfunc(), k in prop::collection::vec(-4i64..=4, 1..4)) {
        let again = RatFunc::new(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        let k = poly(&k);
        prop_assume!(!k.is_zero());
        let padded = RatFunc::new(a.numer() * &k, a.denom() * &k).unwrap();
        prop_assert_eq!(padded, a);
    }

    #[test]
    fn eval_is_a_ring_homomorphism(p in bipoly(), r in bipoly(), alpha in ratfunc(), beta in ratfunc()) {
        let at = |x: &BiPoly| x.eval(&alpha, &beta);
        prop_assert_eq!(at(&(&p * &r)), &at(&p) * &at(&r));
        prop_assert_eq!(at(&(&p + &r)), &at(&p) + &at(&r));
    }

    #[test]
    fn orbit_matches_closed_form(p in point(), n in -16i64..=16) {
        let stepped = theta_power_on_point(&p, n);
        prop_assert_eq!(&stepped.alpha, &eval_xi_shift(n, &p));
        prop_assert_eq!(&stepped.beta, &eval_h_shift(n, &p));
    }

    #[test]
    fn beta_orbits_are_injective(p in point()) {
        let mut seen = HashSet::new();
        for i in -16..=16 {
            prop_assert!(seen.insert(eval_h_shift(i, &p)), "repeat at {}", i);
        }
    }

    #[test]
    fn casimir_scales_geometrically_along_orbits(p in point()) {
        let c = casimir_polynomial(p.field.q());
        let next = theta_on_point(&p);
        prop_assert_eq!(c.eval(&next.alpha, &next.beta), &c.eval(&p.alpha, &p.beta) * p.field.q());
        prop_assert_eq!(casimir_scalar(&p, 1), &casimir_scalar(&p, 0) * p.field.q());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gwa_product_is_associative_and_distributive(seed in any::<u64>()) {
        let jz = JzAlgebra::symbolic();
        let gwa = jz.gwa();
        let mut rng = common::rng(seed);
        let a = common::gwa_element(&mut rng);
        let b = common::gwa_element(&mut rng);
        let c = common::gwa_element(&mut rng);
        prop_assert_eq!(gwa.mul(&gwa.mul(&a, &b), &c), gwa.mul(&a, &gwa.mul(&b, &c)));
        prop_assert_eq!(gwa.mul(&a, &b.add(&c)), gwa.mul(&a, &b).add(&gwa.mul(&a, &c)));
    }

    #[test]
    fn words_agree_between_normalizers(seed in any::<u64>()) {
        let jz = JzAlgebra::symbolic();
        let mut rng = common::rng(seed);
        let w = common::word(&mut rng, 6);
        prop_assert_eq!(jz.gwa_to_pbw(&jz.from_word(&w)), jz.pbw_normal_form(std::slice::from_ref(&w)));
    }

    /// Weight modules over random points: weights follow `w -> q w - 2`,
    /// never repeat, and the Casimir acts by the geometric scalar.
    #[test]
    fn weight_modules_follow_the_orbit(p in point(), highest in any::<bool>()) {
        let p = if highest {
            let alpha = highest_alpha(&p.field, &p.beta);
            PointParams::new(&p.field, alpha, p.beta.clone())
        } else {
            p
        };
        let class = classify(&p, 16).unwrap();
        let module = build_module(&p, &class, 4);
        prop_assume!(module.is_ok());
        let module = module.unwrap();
        if let Module::Weight(w) = &module {
            let q = p.field.q();
            for pair in w.weights().windows(2) {
                prop_assert_eq!(&pair[1], &(&(&pair[0] * q) - &RatFunc::from_int(2)));
            }
            let distinct: HashSet<_> = w.weights().iter().collect();
            prop_assert_eq!(distinct.len(), w.len());
        }
        prop_assert!(module.check_relations().pass);
        prop_assert!(module.casimir_report().unwrap().pass);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// The vanishing set of a finite-family point is exactly `{-1, 2s}`, and
    /// the certificate agrees with direct evaluation.
    #[test]
    fn finite_family_certificates(two_s in 1u32..=6, plus in any::<bool>()) {
        let field = BaseField::symbolic();
        let branch = if plus { Branch::Plus } else { Branch::Minus };
        let p = finite_family(&field, two_s, branch).unwrap();
        let class = classify(&p, 32).unwrap();
        prop_assert_eq!(class.point_type, PointType::T1n(two_s as u64));
        prop_assert_eq!(class.vanishing.shifts.iter().copied().collect::<Vec<_>>(), vec![-1, two_s as i64]);
        prop_assert!(class.certificate.scan_agrees);
        for n in -1..=two_s as i64 {
            prop_assert_eq!(eval_xi_shift(n, &p).is_zero(), n == -1 || n == two_s as i64);
        }
    }
}
