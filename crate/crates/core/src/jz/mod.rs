//! The deformation of `U(sl2)` generated by `e, f, h` with
//!
//! ```text
//! q h e - e h = 2 e,   h f - q f h = -2 f,   e f - q f e = h + (1 - q)/4 h^2,
//! ```
//!
//! presented as the hyperbolic algebra `R{theta, xi}` with `R = k[xi, h]`,
//! `xi = e f`, `x = e`, `y = f` and
//!
//! ```text
//! theta(h)  = q h - 2
//! theta(xi) = q xi + q^2 h + (q^2 - q^3)/4 h^2 - (q + 1)
//! ```

mod pbw;
mod verify;

use std::fmt;

use crate::gwa::{Automorphism, Gwa, GwaElement};
use crate::qfield::{big, BaseField, BiPoly, RatFunc};

pub use pbw::{PbwEngine, PbwForm, PbwMonomial};
pub use verify::{verify_identities, Identity, IdentityCheck, ThetaPowerCheck, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    E,
    F,
    H,
}

impl Letter {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'e' => Some(Letter::E),
            'f' => Some(Letter::F),
            'h' => Some(Letter::H),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::E => 'e',
            Letter::F => 'f',
            Letter::H => 'h',
        }
    }
}

/// A scalar multiple of a word in `e, f, h`.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeWord {
    coeff: RatFunc,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn new(coeff: RatFunc, letters: Vec<Letter>) -> Self {
        FreeWord { coeff, letters }
    }

    /// `"ehf"` style spelling with unit coefficient; `None` on a foreign letter.
    pub fn parse(spelling: &str) -> Option<Self> {
        let letters = spelling.chars().map(Letter::from_char).collect::<Option<_>>()?;
        Some(FreeWord::new(RatFunc::one(), letters))
    }

    pub fn coeff(&self) -> &RatFunc {
        &self.coeff
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn scaled(&self, c: &RatFunc) -> Self {
        FreeWord::new(&self.coeff * c, self.letters.clone())
    }

    /// Concatenation, multiplying the scalars.
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord::new(&self.coeff * &other.coeff, letters)
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.letters.iter().map(|l| l.as_char()).collect();
        write!(f, "({})*{}", self.coeff, if s.is_empty() { "1" } else { &s })
    }
}

/// A linear combination of words.
pub type WordSum = Vec<FreeWord>;

/// Product of two word sums, distributing.
pub fn words_mul(a: &[FreeWord], b: &[FreeWord]) -> WordSum {
    a.iter()
        .flat_map(|u| b.iter().map(move |w| u.concat(w)))
        .collect()
}

pub fn words_scale(a: &[FreeWord], c: &RatFunc) -> WordSum {
    a.iter().map(|w| w.scaled(c)).collect()
}

/// Rewrite `p(xi, h)` as words using `xi = e f`.
pub fn bipoly_to_words(p: &BiPoly) -> WordSum {
    p.terms()
        .map(|(&(a, b), c)| {
            let mut letters = Vec::new();
            for _ in 0..a {
                letters.extend([Letter::E, Letter::F]);
            }
            letters.extend(std::iter::repeat_n(Letter::H, b as usize));
            FreeWord::new(c.clone(), letters)
        })
        .collect()
}

/// Which generator of `R` (or the Casimir element) to push through `theta^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    H,
    Xi,
    Casimir,
}

/// The algebra over a chosen base field (symbolic `q` or a rational value).
#[derive(Debug)]
pub struct JzAlgebra {
    field: BaseField,
    casimir: BiPoly,
    gwa: Gwa,
    pbw: PbwEngine,
}

impl JzAlgebra {
    pub fn new(field: BaseField) -> Self {
        let theta = Self::automorphism(&field);
        let casimir = casimir_polynomial(field.q());
        let closed_field = field.clone();
        let gwa = Gwa::with_closed_form(
            theta,
            BiPoly::xi(),
            Box::new(move |n| {
                (
                    theta_n_closed(&closed_field, Generator::Xi, n),
                    theta_n_closed(&closed_field, Generator::H, n),
                )
            }),
        );
        let pbw = PbwEngine::new(field.q().clone());
        JzAlgebra {
            field,
            casimir,
            gwa,
            pbw,
        }
    }

    pub fn symbolic() -> Self {
        Self::new(BaseField::symbolic())
    }

    /// `theta` and its inverse
    ///
    /// ```text
    /// theta^-1(h)  = q^-1 h + 2 q^-1
    /// theta^-1(xi) = q^-1 xi - q^-1 h + (q - 1)/(4q) h^2
    /// ```
    pub fn automorphism(field: &BaseField) -> Automorphism {
        let q = field.q();
        let q_inv = q.inv().expect("q is nonzero");
        let quarter = big(4).recip();
        let k = |c: RatFunc| BiPoly::constant(c);
        let h = BiPoly::h();
        let xi = BiPoly::xi();
        let h2 = h.pow(2);

        let image_h = &h.scale(q) - &k(RatFunc::from_int(2));
        let q2 = q * q;
        let q3 = &q2 * q;
        let image_xi = &(&(&xi.scale(q) + &h.scale(&q2)) + &h2.scale(&(&q2 - &q3).scale(&quarter)))
            - &k(q + &RatFunc::one());
        let inv_h = &h.scale(&q_inv) + &k(q_inv.scale(&big(2)));
        let inv_xi = &(&xi.scale(&q_inv) - &h.scale(&q_inv))
            + &h2.scale(&(&(q - &RatFunc::one()) * &q_inv).scale(&quarter));
        Automorphism::new(image_xi, image_h, inv_xi, inv_h)
            .expect("theta and its stated inverse compose to the identity")
    }

    pub fn field(&self) -> &BaseField {
        &self.field
    }

    pub fn q(&self) -> &RatFunc {
        self.field.q()
    }

    pub fn theta(&self) -> &Automorphism {
        self.gwa.theta()
    }

    pub fn gwa(&self) -> &Gwa {
        &self.gwa
    }

    pub fn pbw(&self) -> &PbwEngine {
        &self.pbw
    }

    /// `C = 2 xi - h + (q/2) h^2` as an element of `R`.
    pub fn casimir(&self) -> &BiPoly {
        &self.casimir
    }

    pub fn theta_n_closed(&self, gen: Generator, n: i64) -> BiPoly {
        theta_n_closed(&self.field, gen, n)
    }

    /// Image of a word under `e -> x`, `f -> y`, `h -> h`.
    pub fn from_word(&self, w: &FreeWord) -> GwaElement {
        let factors: Vec<GwaElement> = w
            .letters()
            .iter()
            .map(|l| match l {
                Letter::E => GwaElement::x(),
                Letter::F => GwaElement::y(),
                Letter::H => GwaElement::h(),
            })
            .collect();
        self.gwa.product(&factors).scale(w.coeff())
    }

    pub fn from_words(&self, expr: &[FreeWord]) -> GwaElement {
        expr.iter()
            .fold(GwaElement::zero(), |acc, w| acc.add(&self.from_word(w)))
    }

    pub fn pbw_normal_form(&self, expr: &[FreeWord]) -> PbwForm {
        self.pbw.normalize(expr)
    }

    /// Map a canonical GWA element back to PBW form via `xi = e f`, `x = e`, `y = f`.
    pub fn gwa_to_pbw(&self, a: &GwaElement) -> PbwForm {
        let pbw = &self.pbw;
        let xi = pbw.normalize(&[FreeWord::parse("ef").unwrap()]);
        let h = PbwForm::monomial(RatFunc::one(), (0, 1, 0));
        let mut out = PbwForm::zero();
        for (&d, coeff) in a.terms() {
            let tail = if d >= 0 {
                PbwForm::monomial(RatFunc::one(), (0, 0, d as u32))
            } else {
                PbwForm::monomial(RatFunc::one(), ((-d) as u32, 0, 0))
            };
            for (&(i, j), c) in coeff.terms() {
                let head = pbw.mul(&pbw.pow(&xi, i), &pbw.pow(&h, j));
                out = out.add(&pbw.mul(&head, &tail).scale(c));
            }
        }
        out
    }

    /// The Casimir element as words, `C = 2 e f - h + (q/2) h^2`.
    pub fn casimir_words(&self) -> WordSum {
        bipoly_to_words(&self.casimir)
    }
}

/// `2 xi - h + (q/2) h^2`
pub fn casimir_polynomial(q: &RatFunc) -> BiPoly {
    let two = RatFunc::from_int(2);
    &(&BiPoly::xi().scale(&two) - &BiPoly::h()) + &BiPoly::h().pow(2).scale(&q.scale(&big(2).recip()))
}

/// Closed forms for powers of `theta`, valid for every integer `n`:
///
/// ```text
/// theta^n(h)  = q^n h - 2 (q^n - 1)/(q - 1)
/// theta^n(xi) = q^n xi + q^(n+1) (1 - q^n)/4 h^2 + q^(n+1) (q^n - 1)/(q - 1) h
///               - (q^n - 1)(q^(n+1) - 1)/(q - 1)^2
/// theta^n(C)  = q^n C
/// ```
pub fn theta_n_closed(field: &BaseField, gen: Generator, n: i64) -> BiPoly {
    let q = field.q();
    let one = RatFunc::one();
    let qn = field.q_pow(n);
    let qn1 = &qn * q;
    let qm1_inv = (q - &one).inv().expect("q != 1");
    let qn_m1 = &qn - &one;
    match gen {
        Generator::H => {
            let shift = (&qn_m1 * &qm1_inv).scale(&big(-2));
            &BiPoly::h().scale(&qn) + &BiPoly::constant(shift)
        }
        Generator::Xi => {
            let h2 = (&qn1 * &(&one - &qn)).scale(&big(4).recip());
            let h1 = &(&qn1 * &qn_m1) * &qm1_inv;
            let c0 = -(&(&(&qn_m1 * &(&qn1 - &one)) * &qm1_inv) * &qm1_inv);
            BiPoly::from_terms([
                ((1, 0), qn.clone()),
                ((0, 2), h2),
                ((0, 1), h1),
                ((0, 0), c0),
            ])
        }
        Generator::Casimir => casimir_polynomial(q).scale(&qn),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gwa::apply_auto;

    fn r(s: &str) -> RatFunc {
        BaseField::symbolic().parse(s).unwrap()
    }

    #[test]
    fn theta_of_h() {
        let jz = JzAlgebra::symbolic();
        let want = &BiPoly::h().scale(&RatFunc::q()) - &BiPoly::constant(RatFunc::from_int(2));
        assert_eq!(apply_auto(jz.theta(), &BiPoly::h(), 1), want);
        assert_eq!(apply_auto(jz.theta(), &BiPoly::h(), 0), BiPoly::h());
    }

    #[test]
    fn theta_inverse_of_xi() {
        let jz = JzAlgebra::symbolic();
        let want = BiPoly::from_terms([
            ((1, 0), r("q^(-1)")),
            ((0, 1), r("-q^(-1)")),
            ((0, 2), r("-(1-q)/(4*q)")),
        ]);
        assert_eq!(apply_auto(jz.theta(), &BiPoly::xi(), -1), want);
        assert_eq!(jz.theta_n_closed(Generator::Xi, -1), want);
    }

    #[test]
    fn closed_form_h_at_two() {
        let jz = JzAlgebra::symbolic();
        let want = BiPoly::from_terms([((0, 1), r("q^2")), ((0, 0), r("-2*(q+1)"))]);
        assert_eq!(jz.theta_n_closed(Generator::H, 2), want);
        assert_eq!(jz.theta_n_closed(Generator::H, 0), BiPoly::h());
    }

    #[test]
    fn theta_scales_casimir() {
        let jz = JzAlgebra::symbolic();
        let c = jz.casimir();
        assert_eq!(jz.theta().apply(c), c.scale(jz.q()));
        for n in [-3, 0, 2, 5] {
            assert_eq!(apply_auto(jz.theta(), c, n), jz.theta_n_closed(Generator::Casimir, n));
        }
    }

    #[test]
    fn words_embed() {
        let jz = JzAlgebra::symbolic();
        assert_eq!(jz.from_word(&FreeWord::parse("ef").unwrap()), GwaElement::xi());
        assert_eq!(jz.from_word(&FreeWord::parse("h").unwrap()), GwaElement::h());
        assert_eq!(
            jz.from_word(&FreeWord::parse("fe").unwrap()),
            GwaElement::from_coeff(jz.theta_n_closed(Generator::Xi, -1))
        );
        assert_eq!(jz.from_word(&FreeWord::parse("").unwrap()), GwaElement::one());
        assert!(FreeWord::parse("efx").is_none());
    }

    #[test]
    fn x_times_h_twists() {
        let jz = JzAlgebra::symbolic();
        let got = jz.gwa().mul(&GwaElement::x(), &GwaElement::h());
        let want = GwaElement::monomial(
            &BiPoly::h().scale(&RatFunc::q()) - &BiPoly::constant(RatFunc::from_int(2)),
            1,
        );
        assert_eq!(got, want);
        // x^2 y = theta(xi) x
        let x2y = jz.gwa().mul(&jz.gwa().pow(&GwaElement::x(), 2), &GwaElement::y());
        let assoc = jz.gwa().mul(&GwaElement::x(), &jz.gwa().mul(&GwaElement::x(), &GwaElement::y()));
        assert_eq!(x2y, assoc);
        assert_eq!(x2y, GwaElement::monomial(jz.theta().apply(&BiPoly::xi()), 1));
    }

    #[test]
    fn commutators() {
        let jz = JzAlgebra::symbolic();
        let g = jz.gwa();
        assert!(g.commutator(&GwaElement::h(), &GwaElement::xi()).is_zero());
        let a = GwaElement::x().add(&GwaElement::h());
        assert!(g.commutator(&a, &a).is_zero());
        let want = GwaElement::from_coeff(&BiPoly::xi() - &jz.theta_n_closed(Generator::Xi, -1));
        assert_eq!(g.commutator(&GwaElement::x(), &GwaElement::y()), want);
    }

    #[test]
    fn gwa_and_pbw_agree_on_short_words() {
        let jz = JzAlgebra::symbolic();
        for w in ["ef", "fe", "ehf", "ffe", "eefh", "hfe", "efef"] {
            let w = FreeWord::parse(w).unwrap();
            let via_gwa = jz.gwa_to_pbw(&jz.from_word(&w));
            assert_eq!(via_gwa, jz.pbw_normal_form(std::slice::from_ref(&w)), "{w:?}");
        }
    }

    #[test]
    fn numeric_field_algebra() {
        let field = BaseField::numeric(big(3)).unwrap();
        let jz = JzAlgebra::new(field);
        for n in -4..=4 {
            assert_eq!(
                apply_auto(jz.theta(), &BiPoly::xi(), n),
                jz.theta_n_closed(Generator::Xi, n)
            );
        }
    }
}
