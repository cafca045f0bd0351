//! Seeded generators and the shared example points.

#![allow(dead_code)]

use hyperweyl::gwa::GwaElement;
use hyperweyl::jz::{FreeWord, Letter};
use hyperweyl::qfield::{BaseField, BiPoly, RatFunc, UniPoly};
use hyperweyl::spectrum::{finite_family, special_beta, special_point, theta_power_on_point, Branch, PointParams};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn small(rng: &mut StdRng, lo: i64, hi: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(rng.gen_range(lo..=hi)))
}

/// A polynomial in `q = v^2` of degree at most `deg`, occasionally with a `v` term.
pub fn q_poly(rng: &mut StdRng, deg: usize) -> UniPoly {
    let mut coeffs = vec![BigRational::from_integer(0.into()); 2 * deg + 1];
    for k in 0..=deg {
        coeffs[2 * k] = small(rng, -4, 4);
    }
    if rng.gen_bool(0.2) {
        coeffs[1] = small(rng, -2, 2);
    }
    UniPoly::from_coeffs(coeffs)
}

/// A small element of `Q(v)`: numerator of degree <= 2 in `q`, denominator 1 or `q + c`.
pub fn ratfunc(rng: &mut StdRng) -> RatFunc {
    let num = q_poly(rng, 2);
    let den = if rng.gen_bool(0.5) {
        UniPoly::one()
    } else {
        UniPoly::from_coeffs(vec![small(rng, -3, 3), BigRational::from_integer(0.into()), BigRational::from_integer(1.into())])
    };
    RatFunc::new(num, den).expect("denominator is nonzero")
}

pub fn nonzero_ratfunc(rng: &mut StdRng) -> RatFunc {
    loop {
        let r = ratfunc(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Total degree at most `deg` in `xi`, `h`.
pub fn bipoly(rng: &mut StdRng, deg: u32) -> BiPoly {
    let mut p = BiPoly::zero();
    for a in 0..=deg {
        for b in 0..=deg - a {
            if rng.gen_bool(0.5) {
                p.add_term((a, b), &ratfunc(rng));
            }
        }
    }
    p
}

/// Support in `[-3, 3]`, coefficients of degree at most 2.
pub fn gwa_element(rng: &mut StdRng) -> GwaElement {
    let mut a = GwaElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let d = rng.gen_range(-3..=3);
        a = a.add(&GwaElement::monomial(bipoly(rng, 2), d));
    }
    a
}

pub fn word(rng: &mut StdRng, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => Letter::E,
            1 => Letter::F,
            _ => Letter::H,
        })
        .collect();
    FreeWord::new(nonzero_ratfunc(rng), letters)
}

/// A random point with `beta != 2/(q - 1)`.
pub fn point(rng: &mut StdRng, field: &BaseField) -> PointParams {
    loop {
        let p = PointParams::new(field, ratfunc(rng), ratfunc(rng));
        if p.beta != special_beta(field) {
            return p;
        }
    }
}

pub fn pt(a: &str, b: &str) -> PointParams {
    PointParams::parse(&BaseField::symbolic(), a, b).unwrap()
}

/// Every named example point.
pub fn example_suite() -> Vec<(String, PointParams)> {
    let sym = BaseField::symbolic();
    let mut out = vec![
        ("special".to_string(), special_point(&sym)),
        ("trivial (0, 0)".into(), pt("0", "0")),
        ("highest (8 - 4q, 4)".into(), pt("8 - 4*q", "4")),
        ("lowest (0, 1)".into(), pt("0", "1")),
        ("dense (1, 0)".into(), pt("1", "0")),
        ("dense (q, 3)".into(), pt("q", "3")),
    ];
    for two_s in 1..=4 {
        for branch in [Branch::Minus, Branch::Plus] {
            out.push((
                format!("finite 2s={two_s} {branch:?}"),
                finite_family(&sym, two_s, branch).unwrap(),
            ));
        }
    }
    let f = finite_family(&sym, 2, Branch::Minus).unwrap();
    out.push(("shifted finite".into(), theta_power_on_point(&f, -2)));
    out
}
