//! Normal forms `sum c * f^a h^b e^c` by rewriting with the defining relations
//!
//! ```text
//! e h -> q h e - 2 e
//! h f -> q f h - 2 f
//! e f -> q f e + h + (1 - q)/4 h^2
//! ```
//!
//! This module never consults `theta`; it is the independent oracle for the
//! hyperbolic-algebra engine.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::qfield::{fmt_coeff, join_signed, RatFunc};

use super::{FreeWord, Letter};

/// Exponents `(a, b, c)` of `f^a h^b e^c`.
pub type PbwMonomial = (u32, u32, u32);

#[derive(Clone, PartialEq, Eq, Default)]
pub struct PbwForm {
    terms: BTreeMap<PbwMonomial, RatFunc>,
}

impl PbwForm {
    pub fn zero() -> Self {
        PbwForm::default()
    }

    pub fn one() -> Self {
        Self::monomial(RatFunc::one(), (0, 0, 0))
    }

    pub fn monomial(c: RatFunc, m: PbwMonomial) -> Self {
        let mut out = PbwForm::zero();
        out.add_term(m, &c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: PbwMonomial) -> RatFunc {
        self.terms.get(&m).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(RatFunc::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &RatFunc::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-RatFunc::one());
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = PbwForm::zero();
        out.add_assign_scaled(self, c);
        out
    }

    fn add_assign_scaled(&mut self, other: &Self, c: &RatFunc) {
        for (m, a) in &other.terms {
            self.add_term(*m, &(a * c));
        }
    }

    fn map_monomials(&self, f: impl Fn(PbwMonomial) -> PbwMonomial) -> Self {
        let mut out = PbwForm::zero();
        for (m, c) in &self.terms {
            out.add_term(f(*m), c);
        }
        out
    }
}

impl fmt::Display for PbwForm {
    /// e.g. `q*f*e + h + (-1/4*q + 1/4)*h^2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts = self.terms.iter().map(|(&(a, b, c), k)| {
            let mut factors = Vec::new();
            if (a, b, c) == (0, 0, 0) || !k.is_one() {
                factors.push(fmt_coeff(k));
            }
            for (name, e) in [("f", a), ("h", b), ("e", c)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            factors.join("*")
        });
        write!(f, "{}", join_signed(parts))
    }
}

impl fmt::Debug for PbwForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PbwForm({self})")
    }
}

/// Rewriting engine with memoized single-letter products.
pub struct PbwEngine {
    q: RatFunc,
    // (1 - q)/4
    quad: RatFunc,
    left_memo: RefCell<HashMap<(Letter, PbwMonomial), PbwForm>>,
    right_memo: RefCell<HashMap<(PbwMonomial, Letter), PbwForm>>,
}

impl fmt::Debug for PbwEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PbwEngine").field("q", &self.q).finish_non_exhaustive()
    }
}

impl PbwEngine {
    pub fn new(q: RatFunc) -> Self {
        let quad = (&RatFunc::one() - &q).scale(&crate::qfield::big(4).recip());
        PbwEngine {
            q,
            quad,
            left_memo: RefCell::new(HashMap::new()),
            right_memo: RefCell::new(HashMap::new()),
        }
    }

    /// `letter * f^a h^b e^c`, rewriting the leftmost inversion first.
    pub fn left_letter(&self, letter: Letter, m: PbwMonomial) -> PbwForm {
        if let Some(hit) = self.left_memo.borrow().get(&(letter, m)) {
            return hit.clone();
        }
        let (a, b, c) = m;
        let one = RatFunc::one();
        let out = match letter {
            Letter::F => PbwForm::monomial(one, (a + 1, b, c)),
            Letter::H if a == 0 => PbwForm::monomial(one, (0, b + 1, c)),
            Letter::H => {
                // h f -> q f h - 2 f
                let inner = self.left_letter(Letter::H, (a - 1, b, c));
                let shifted = inner.map_monomials(|(a, b, c)| (a + 1, b, c)).scale(&self.q);
                shifted.sub(&PbwForm::monomial(RatFunc::from_int(2), m))
            }
            Letter::E if a == 0 && b == 0 => PbwForm::monomial(one, (0, 0, c + 1)),
            Letter::E if a == 0 => {
                // e h -> q h e - 2 e; the tail has no f, so h on the left is a shift.
                let tail = self.left_letter(Letter::E, (0, b - 1, c));
                let with_h = tail.map_monomials(|(a, b, c)| (a, b + 1, c)).scale(&self.q);
                with_h.sub(&tail.scale(&RatFunc::from_int(2)))
            }
            Letter::E => {
                // e f -> q f e + h + (1-q)/4 h^2
                let rest = (a - 1, b, c);
                let fe = self
                    .left_letter(Letter::E, rest)
                    .map_monomials(|(a, b, c)| (a + 1, b, c))
                    .scale(&self.q);
                let h_rest = self.left_letter(Letter::H, rest);
                let hh_rest = self.left_mul_letter(Letter::H, &h_rest);
                fe.add(&h_rest).add(&hh_rest.scale(&self.quad))
            }
        };
        self.left_memo.borrow_mut().insert((letter, m), out.clone());
        out
    }

    /// `letter * form`
    pub fn left_mul_letter(&self, letter: Letter, form: &PbwForm) -> PbwForm {
        let mut out = PbwForm::zero();
        for (m, c) in form.terms() {
            out.add_assign_scaled(&self.left_letter(letter, *m), c);
        }
        out
    }

    /// `f^a h^b e^c * letter`, rewriting the rightmost inversion first.
    pub fn right_letter(&self, m: PbwMonomial, letter: Letter) -> PbwForm {
        if let Some(hit) = self.right_memo.borrow().get(&(m, letter)) {
            return hit.clone();
        }
        let (a, b, c) = m;
        let one = RatFunc::one();
        let out = match letter {
            Letter::E => PbwForm::monomial(one, (a, b, c + 1)),
            Letter::H if c == 0 => PbwForm::monomial(one, (a, b + 1, 0)),
            Letter::H => {
                // e h -> q h e - 2 e
                let inner = self.right_letter((a, b, c - 1), Letter::H);
                let shifted = inner.map_monomials(|(a, b, c)| (a, b, c + 1)).scale(&self.q);
                shifted.sub(&PbwForm::monomial(RatFunc::from_int(2), m))
            }
            Letter::F if c == 0 && b == 0 => PbwForm::monomial(one, (a + 1, 0, 0)),
            Letter::F if c == 0 => {
                // h f -> q f h - 2 f; the head has no e, so h on the right is a shift.
                let head = self.right_letter((a, b - 1, 0), Letter::F);
                let with_h = head.map_monomials(|(a, b, c)| (a, b + 1, c)).scale(&self.q);
                with_h.sub(&head.scale(&RatFunc::from_int(2)))
            }
            Letter::F => {
                // e f -> q f e + h + (1-q)/4 h^2
                let head = (a, b, c - 1);
                let fe = self
                    .right_letter(head, Letter::F)
                    .map_monomials(|(a, b, c)| (a, b, c + 1))
                    .scale(&self.q);
                let head_h = self.right_letter(head, Letter::H);
                let head_hh = self.right_mul_letter(&head_h, Letter::H);
                fe.add(&head_h).add(&head_hh.scale(&self.quad))
            }
        };
        self.right_memo.borrow_mut().insert((m, letter), out.clone());
        out
    }

    /// `form * letter`
    pub fn right_mul_letter(&self, form: &PbwForm, letter: Letter) -> PbwForm {
        let mut out = PbwForm::zero();
        for (m, c) in form.terms() {
            out.add_assign_scaled(&self.right_letter(*m, letter), c);
        }
        out
    }

    /// Normal form of a word, absorbing letters from the right end inward.
    pub fn normalize_word(&self, w: &FreeWord) -> PbwForm {
        let mut acc = PbwForm::one();
        for &l in w.letters().iter().rev() {
            acc = self.left_mul_letter(l, &acc);
        }
        acc.scale(w.coeff())
    }

    /// Normal form of a word, absorbing letters from the left end inward.
    pub fn normalize_word_rightwards(&self, w: &FreeWord) -> PbwForm {
        let mut acc = PbwForm::one();
        for &l in w.letters() {
            acc = self.right_mul_letter(&acc, l);
        }
        acc.scale(w.coeff())
    }

    pub fn normalize(&self, expr: &[FreeWord]) -> PbwForm {
        let mut out = PbwForm::zero();
        for w in expr {
            out = out.add(&self.normalize_word(w));
        }
        out
    }

    /// Product of normal forms: the letters of each left monomial are pushed
    /// into the right factor one at a time.
    pub fn mul(&self, lhs: &PbwForm, rhs: &PbwForm) -> PbwForm {
        let mut out = PbwForm::zero();
        for (&(a, b, c), k) in lhs.terms() {
            let mut acc = rhs.clone();
            for _ in 0..c {
                acc = self.left_mul_letter(Letter::E, &acc);
            }
            for _ in 0..b {
                acc = self.left_mul_letter(Letter::H, &acc);
            }
            for _ in 0..a {
                acc = self.left_mul_letter(Letter::F, &acc);
            }
            out.add_assign_scaled(&acc, k);
        }
        out
    }

    /// Same product, with the right factor's letters pushed into the left one.
    pub fn mul_rightwards(&self, lhs: &PbwForm, rhs: &PbwForm) -> PbwForm {
        let mut out = PbwForm::zero();
        for (&(a, b, c), k) in rhs.terms() {
            let mut acc = lhs.clone();
            for _ in 0..a {
                acc = self.right_mul_letter(&acc, Letter::F);
            }
            for _ in 0..b {
                acc = self.right_mul_letter(&acc, Letter::H);
            }
            for _ in 0..c {
                acc = self.right_mul_letter(&acc, Letter::E);
            }
            out.add_assign_scaled(&acc, k);
        }
        out
    }

    pub fn pow(&self, base: &PbwForm, k: u32) -> PbwForm {
        let mut acc = PbwForm::one();
        for _ in 0..k {
            acc = self.mul(&acc, base);
        }
        acc
    }
}
