//! Hyperbolic algebras (generalized Weyl algebras) `R{theta, xi}` over
//! `R = Q(v)[xi, h]`.
//!
//! An element is stored in the canonical form
//!
//! ```text
//! sum_{d>0} a_d(xi,h) x^d  +  a_0(xi,h)  +  sum_{d>0} b_d(xi,h) y^d
//! ```
//!
//! with every coefficient on the left. Multiplication uses
//! `x a = theta(a) x`, `y a = theta^-1(a) y`, `x y = xi`, `y x = theta^-1(xi)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::qfield::{join_signed, BiPoly, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GwaError {
    #[error("inverse images do not invert theta on generator {generator}: composition gives {got}")]
    NotInverse { generator: &'static str, got: String },
}

/// An automorphism of `R`, given by the images of `xi`, `h` and of its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    image_xi: BiPoly,
    image_h: BiPoly,
    inv_image_xi: BiPoly,
    inv_image_h: BiPoly,
}

impl Automorphism {
    /// Checks both compositions on both generators before accepting.
    pub fn new(
        image_xi: BiPoly,
        image_h: BiPoly,
        inv_image_xi: BiPoly,
        inv_image_h: BiPoly,
    ) -> Result<Self, GwaError> {
        let sigma = Automorphism {
            image_xi,
            image_h,
            inv_image_xi,
            inv_image_h,
        };
        let checks = [
            ("xi", sigma.apply(&sigma.inv_image_xi), BiPoly::xi()),
            ("h", sigma.apply(&sigma.inv_image_h), BiPoly::h()),
            ("xi", sigma.apply_inverse(&sigma.image_xi), BiPoly::xi()),
            ("h", sigma.apply_inverse(&sigma.image_h), BiPoly::h()),
        ];
        for (generator, got, want) in checks {
            if got != want {
                return Err(GwaError::NotInverse {
                    generator,
                    got: got.to_string(),
                });
            }
        }
        Ok(sigma)
    }

    pub fn image_xi(&self) -> &BiPoly {
        &self.image_xi
    }

    pub fn image_h(&self) -> &BiPoly {
        &self.image_h
    }

    pub fn inv_image_xi(&self) -> &BiPoly {
        &self.inv_image_xi
    }

    pub fn inv_image_h(&self) -> &BiPoly {
        &self.inv_image_h
    }

    /// `theta(p)`
    pub fn apply(&self, p: &BiPoly) -> BiPoly {
        p.substitute(&self.image_xi, &self.image_h)
    }

    /// `theta^-1(p)`
    pub fn apply_inverse(&self, p: &BiPoly) -> BiPoly {
        p.substitute(&self.inv_image_xi, &self.inv_image_h)
    }
}

/// `theta^n(p)` by `|n|`-fold substitution.
pub fn apply_auto(sigma: &Automorphism, p: &BiPoly, n: i64) -> BiPoly {
    let mut out = p.clone();
    for _ in 0..n.unsigned_abs() {
        out = if n > 0 {
            sigma.apply(&out)
        } else {
            sigma.apply_inverse(&out)
        };
    }
    out
}

/// Images `(theta^n(xi), theta^n(h))` as a function of `n`.
pub type PowerImages = dyn Fn(i64) -> (BiPoly, BiPoly) + Send + Sync;

/// An element of `R{theta, xi}`: degree `d > 0` means `x^d`, `d < 0` means
/// `y^|d|`, coefficients on the left.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GwaElement {
    terms: BTreeMap<i64, BiPoly>,
}

impl GwaElement {
    pub fn zero() -> Self {
        GwaElement::default()
    }

    pub fn one() -> Self {
        Self::from_coeff(BiPoly::one())
    }

    pub fn from_coeff(r: BiPoly) -> Self {
        Self::monomial(r, 0)
    }

    pub fn x() -> Self {
        Self::monomial(BiPoly::one(), 1)
    }

    pub fn y() -> Self {
        Self::monomial(BiPoly::one(), -1)
    }

    pub fn xi() -> Self {
        Self::from_coeff(BiPoly::xi())
    }

    pub fn h() -> Self {
        Self::from_coeff(BiPoly::h())
    }

    /// `r * x^d` (`d > 0`), `r` (`d = 0`) or `r * y^-d` (`d < 0`).
    pub fn monomial(r: BiPoly, d: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(d, r);
        }
        GwaElement { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BiPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: i64) -> BiPoly {
        self.terms.get(&d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degrees carrying a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    fn add_term(&mut self, d: i64, r: &BiPoly) {
        if r.is_zero() {
            return;
        }
        let slot = self.terms.entry(d).or_default();
        *slot = &*slot + r;
        if slot.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, r) in &other.terms {
            out.add_term(*d, r);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, r) in &other.terms {
            out.add_term(*d, &-r);
        }
        out
    }

    pub fn neg(&self) -> Self {
        GwaElement {
            terms: self.terms.iter().map(|(d, r)| (*d, -r)).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GwaElement {
            terms: self.terms.iter().map(|(d, r)| (*d, r.scale(c))).collect(),
        }
    }

    /// `r * self` for `r` in `R`; no twisting since coefficients sit on the left.
    pub fn left_mul_coeff(&self, r: &BiPoly) -> Self {
        let mut out = Self::zero();
        for (d, a) in &self.terms {
            out.add_term(*d, &(r * a));
        }
        out
    }
}

impl fmt::Display for GwaElement {
    /// Descending degree, e.g. `(q*h - 2)*x + 3*y^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts = self.terms.iter().rev().map(|(d, r)| {
            let mono = match *d {
                0 => return r.to_string(),
                1 => "x".to_string(),
                -1 => "y".to_string(),
                d if d > 0 => format!("x^{d}"),
                d => format!("y^{}", -d),
            };
            let coeff = r.to_string();
            if coeff == "1" {
                mono
            } else if coeff.contains(' ') {
                format!("({coeff})*{mono}")
            } else {
                format!("{coeff}*{mono}")
            }
        });
        write!(f, "{}", join_signed(parts))
    }
}

impl fmt::Debug for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GwaElement({self})")
    }
}

/// The algebra `R{theta, xi}` with a memo table for powers of `theta`.
pub struct Gwa {
    theta: Automorphism,
    xi: BiPoly,
    closed_form: Option<Box<PowerImages>>,
    powers: Mutex<HashMap<i64, Arc<(BiPoly, BiPoly)>>>,
}

impl fmt::Debug for Gwa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gwa")
            .field("theta", &self.theta)
            .field("xi", &self.xi)
            .field("closed_form", &self.closed_form.is_some())
            .finish()
    }
}

impl Gwa {
    /// Powers of `theta` are computed by iterated substitution.
    pub fn new(theta: Automorphism, xi: BiPoly) -> Self {
        Gwa {
            theta,
            xi,
            closed_form: None,
            powers: Mutex::new(HashMap::new()),
        }
    }

    /// Powers of `theta` come from `images(n) = (theta^n(xi), theta^n(h))`.
    pub fn with_closed_form(theta: Automorphism, xi: BiPoly, images: Box<PowerImages>) -> Self {
        Gwa {
            closed_form: Some(images),
            ..Gwa::new(theta, xi)
        }
    }

    pub fn theta(&self) -> &Automorphism {
        &self.theta
    }

    pub fn xi(&self) -> &BiPoly {
        &self.xi
    }

    /// `(theta^n(xi), theta^n(h))`, memoized.
    pub fn power_images(&self, n: i64) -> Arc<(BiPoly, BiPoly)> {
        if let Some(hit) = self.powers.lock().unwrap().get(&n) {
            return Arc::clone(hit);
        }
        let images = match &self.closed_form {
            Some(f) => f(n),
            None if n == 0 => (BiPoly::xi(), BiPoly::h()),
            None => {
                // Step from the neighbour closer to zero.
                let prev = self.power_images(n - n.signum());
                let (sx, sh) = if n > 0 {
                    (self.theta.image_xi(), self.theta.image_h())
                } else {
                    (self.theta.inv_image_xi(), self.theta.inv_image_h())
                };
                (prev.0.substitute(sx, sh), prev.1.substitute(sx, sh))
            }
        };
        let images = Arc::new(images);
        self.powers
            .lock()
            .unwrap()
            .insert(n, Arc::clone(&images));
        images
    }

    /// `theta^n(p)`
    pub fn twist(&self, p: &BiPoly, n: i64) -> BiPoly {
        if n == 0 || p.is_zero() {
            return p.clone();
        }
        let images = self.power_images(n);
        p.substitute(&images.0, &images.1)
    }

    /// Coefficient `c` with `M_d1 * M_d2 = c * M_(d1+d2)`, where `M_d` is
    /// `x^d`, `1` or `y^-d`.
    ///
    /// Mixed products contract one pair at a time:
    /// `x^i y^j = theta^(i-1)(xi) x^(i-1) y^(j-1)` and
    /// `y^j x^i = theta^(-j)(xi) y^(j-1) x^(i-1)`.
    pub fn contraction(&self, d1: i64, d2: i64) -> BiPoly {
        if d1 > 0 && d2 < 0 {
            let (i, j) = (d1, -d2);
            let head = self.twist(&self.xi, i - 1);
            &head * &self.contraction(i - 1, -(j - 1))
        } else if d1 < 0 && d2 > 0 {
            let (j, i) = (-d1, d2);
            let head = self.twist(&self.xi, -j);
            &head * &self.contraction(-(j - 1), i - 1)
        } else {
            BiPoly::one()
        }
    }

    pub fn mul(&self, a: &GwaElement, b: &GwaElement) -> GwaElement {
        // r1 M_d1 r2 M_d2 = r1 theta^d1(r2) M_d1 M_d2
        let mut parts: BTreeMap<i64, Vec<[BiPoly; 3]>> = BTreeMap::new();
        for (&d1, r1) in &a.terms {
            for (&d2, r2) in &b.terms {
                let factors = [r1.clone(), self.twist(r2, d1), self.contraction(d1, d2)];
                parts.entry(d1 + d2).or_default().push(factors);
            }
        }
        let mut out = GwaElement::zero();
        for (d, summands) in parts {
            let products: Vec<Vec<&BiPoly>> = summands.iter().map(|f| f.iter().collect()).collect();
            out.add_term(d, &BiPoly::sum_of_products(&products));
        }
        out
    }

    pub fn pow(&self, a: &GwaElement, k: u32) -> GwaElement {
        let mut acc = GwaElement::one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Product of a list of factors, left to right.
    pub fn product<'a, I: IntoIterator<Item = &'a GwaElement>>(&self, factors: I) -> GwaElement {
        factors
            .into_iter()
            .fold(GwaElement::one(), |acc, f| self.mul(&acc, f))
    }

    /// `ab - ba`
    pub fn commutator(&self, a: &GwaElement, b: &GwaElement) -> GwaElement {
        self.mul(a, b).sub(&self.mul(b, a))
    }
}
