//! Sparse polynomials in the commuting variables `xi`, `h` over `Q(v)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{RatFunc, UniPoly};

/// `(xi-degree, h-degree)`
pub type Exponent = (u32, u32);

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Exponent, RatFunc>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn xi() -> Self {
        Self::monomial(RatFunc::one(), 1, 0)
    }

    pub fn h() -> Self {
        Self::monomial(RatFunc::one(), 0, 1)
    }

    /// `c * xi^a * h^b`
    pub fn monomial(c: RatFunc, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        BiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, RatFunc)>>(iter: I) -> Self {
        let mut p = BiPoly::zero();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> RatFunc {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn add_term(&mut self, e: Exponent, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                let s = &*slot + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at `xi = alpha`, `h = beta`.
    pub fn eval(&self, alpha: &RatFunc, beta: &RatFunc) -> RatFunc {
        let mut alpha_pows = vec![RatFunc::one()];
        let mut beta_pows = vec![RatFunc::one()];
        let mut acc = RatFunc::zero();
        for (&(a, b), c) in &self.terms {
            while alpha_pows.len() <= a as usize {
                let next = alpha_pows.last().unwrap() * alpha;
                alpha_pows.push(next);
            }
            while beta_pows.len() <= b as usize {
                let next = beta_pows.last().unwrap() * beta;
                beta_pows.push(next);
            }
            let t = &(c * &alpha_pows[a as usize]) * &beta_pows[b as usize];
            acc = &acc + &t;
        }
        acc
    }

    /// `sum_i prod_j factors[i][j]`, reduced once at the end.
    pub fn sum_of_products(products: &[Vec<&BiPoly>]) -> BiPoly {
        let mut acc = Cleared::zero();
        for factors in products {
            let t = factors
                .iter()
                .fold(Cleared::one(), |t, f| t.mul(&Cleared::of(f)));
            acc.add_assign(t);
        }
        acc.finish()
    }

    /// Substitute `xi -> xi_img`, `h -> h_img`.
    pub fn substitute(&self, xi_img: &BiPoly, h_img: &BiPoly) -> BiPoly {
        let (xi_img, h_img) = (Cleared::of(xi_img), Cleared::of(h_img));
        let mut xi_pows = vec![Cleared::one()];
        let mut h_pows = vec![Cleared::one()];
        let mut acc = Cleared::zero();
        for (&(a, b), c) in &self.terms {
            while xi_pows.len() <= a as usize {
                let next = xi_pows.last().unwrap().mul(&xi_img);
                xi_pows.push(next);
            }
            while h_pows.len() <= b as usize {
                let next = h_pows.last().unwrap().mul(&h_img);
                h_pows.push(next);
            }
            let mut t = xi_pows[a as usize].mul(&h_pows[b as usize]);
            t.scale(c);
            acc.add_assign(t);
        }
        acc.finish()
    }
}

fn lcm(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a == b || b.is_one() {
        a.clone()
    } else if a.is_one() {
        b.clone()
    } else {
        a * &b.exact_div(&UniPoly::gcd(a, b))
    }
}

/// Polynomial coefficients over one shared denominator. Sums and products
/// stay gcd-free until `finish` reduces each coefficient once.
struct Cleared {
    den: UniPoly,
    terms: BTreeMap<Exponent, UniPoly>,
}

impl Cleared {
    fn zero() -> Self {
        Cleared {
            den: UniPoly::one(),
            terms: BTreeMap::new(),
        }
    }

    fn one() -> Self {
        let mut c = Self::zero();
        c.terms.insert((0, 0), UniPoly::one());
        c
    }

    fn of(p: &BiPoly) -> Self {
        let den = p.terms.values().fold(UniPoly::one(), |d, c| lcm(&d, c.denom()));
        let terms = p
            .terms
            .iter()
            .map(|(e, c)| {
                let num = if *c.denom() == den {
                    c.numer().clone()
                } else {
                    c.numer() * &den.exact_div(c.denom())
                };
                (*e, num)
            })
            .collect();
        Cleared { den, terms }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut terms: BTreeMap<Exponent, UniPoly> = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                let t = c1 * c2;
                let slot = terms.entry((a1 + a2, b1 + b2)).or_insert_with(UniPoly::zero);
                *slot = &*slot + &t;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Cleared {
            den: &self.den * &rhs.den,
            terms,
        }
    }

    fn scale(&mut self, c: &RatFunc) {
        for t in self.terms.values_mut() {
            *t = &*t * c.numer();
        }
        if !c.denom().is_one() {
            self.den = &self.den * c.denom();
        }
    }

    fn add_assign(&mut self, mut rhs: Self) {
        if self.den != rhs.den {
            let g = UniPoly::gcd(&self.den, &rhs.den);
            let to_self = rhs.den.exact_div(&g);
            let to_rhs = self.den.exact_div(&g);
            for t in self.terms.values_mut() {
                *t = &*t * &to_self;
            }
            for t in rhs.terms.values_mut() {
                *t = &*t * &to_rhs;
            }
            self.den = &self.den * &to_self;
        }
        for (e, c) in rhs.terms {
            let slot = self.terms.entry(e).or_insert_with(UniPoly::zero);
            *slot = &*slot + &c;
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    fn finish(self) -> BiPoly {
        let den = self.den;
        let terms = self
            .terms
            .into_iter()
            .map(|(e, num)| (e, RatFunc::new(num, den.clone()).expect("nonzero denominator")))
            .collect();
        BiPoly { terms }
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.len() <= 1 || rhs.len() <= 1 {
            let mut out = BiPoly::zero();
            for ((a1, b1), c1) in &self.terms {
                for ((a2, b2), c2) in &rhs.terms {
                    out.add_term((a1 + a2, b1 + b2), &(c1 * c2));
                }
            }
            return out;
        }
        Cleared::of(self).mul(&Cleared::of(rhs)).finish()
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

/// Coefficient text, parenthesized unless it is a single token.
pub(crate) fn fmt_coeff(c: &RatFunc) -> String {
    let s = c.to_string();
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

/// Join summands with ` + `, folding a leading minus into ` - `.
pub(crate) fn join_signed<I: IntoIterator<Item = String>>(parts: I) -> String {
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        match (i, p.strip_prefix('-')) {
            (0, _) => out.push_str(&p),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(&p);
            }
        }
    }
    out
}

impl fmt::Display for BiPoly {
    /// Terms in descending exponent order, e.g. `q*xi + (-1/4*q + 1/4)*h^2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts = self.terms.iter().rev().map(|(&(a, b), c)| {
            let mut factors = Vec::new();
            let coeff = fmt_coeff(c);
            if (a, b) == (0, 0) || !c.is_one() {
                factors.push(coeff);
            }
            match a {
                0 => {}
                1 => factors.push("xi".into()),
                a => factors.push(format!("xi^{a}")),
            }
            match b {
                0 => {}
                1 => factors.push("h".into()),
                b => factors.push(format!("h^{b}")),
            }
            factors.join("*")
        });
        write!(f, "{}", join_signed(parts))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_generator_of_point_ideal_vanishes() {
        let alpha = RatFunc::q();
        let beta = RatFunc::from_int(3);
        let gen = &BiPoly::xi() - &BiPoly::constant(alpha.clone());
        assert!(gen.eval(&alpha, &beta).is_zero());
    }

    #[test]
    fn eval_h_squared_at_special_beta() {
        let qm1 = &RatFunc::q() - &RatFunc::one();
        let beta = RatFunc::from_int(2).checked_div(&qm1).unwrap();
        let got = BiPoly::h().pow(2).eval(&RatFunc::zero(), &beta);
        let want = RatFunc::from_int(4).checked_div(&qm1.pow(2).unwrap()).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn substitute_then_eval_commutes() {
        let p = &(&BiPoly::xi() * &BiPoly::h()) + &BiPoly::h().pow(2);
        let xi_img = &BiPoly::h() + &BiPoly::one();
        let h_img = BiPoly::xi().scale(&RatFunc::q());
        let a = RatFunc::from_int(2);
        let b = RatFunc::v();
        let lhs = p.substitute(&xi_img, &h_img).eval(&a, &b);
        let rhs = p.eval(&xi_img.eval(&a, &b), &h_img.eval(&a, &b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = &BiPoly::xi() - &BiPoly::xi();
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }
}
