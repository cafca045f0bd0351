//! Exact arithmetic in `Q(v)` (with `q = v^2`) and in `R = Q(v)[xi, h]`.
//!
//! Writing `q` as the square of an indeterminate keeps half-integer powers
//! `q^(s)`, `s` in `Z/2`, inside a single field.

mod bipoly;
mod parse;
mod poly;
mod ratfunc;

pub use bipoly::{BiPoly, Exponent};
pub(crate) use bipoly::{fmt_coeff, join_signed};
pub use parse::{parse_field_element, parse_rational, ParseError};
pub use poly::{rational_sqrt, UniPoly};
pub use ratfunc::{is_power_of_q, RatFunc};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("numeric q must satisfy |q| not in {{0, 1}}, got {0}")]
    InvalidNumericQ(BigRational),
    #[error("q = {0} has no rational square root, so q^(1/2) is not representable")]
    NoSquareRoot(BigRational),
}

/// How `q` is interpreted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QMode {
    /// `q = v^2` with `v` transcendental.
    Symbolic,
    /// `q` specialized to a rational with `|q| != 0, 1`, hence not a root of unity.
    Numeric(BigRational),
}

/// The coefficient field together with its distinguished element `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseField {
    mode: QMode,
    q: RatFunc,
}

impl BaseField {
    pub fn symbolic() -> Self {
        BaseField {
            mode: QMode::Symbolic,
            q: RatFunc::q(),
        }
    }

    pub fn numeric(q0: BigRational) -> Result<Self, FieldError> {
        if q0.is_zero() || q0.abs().is_one() {
            return Err(FieldError::InvalidNumericQ(q0));
        }
        Ok(BaseField {
            q: RatFunc::from_rational(q0.clone()),
            mode: QMode::Numeric(q0),
        })
    }

    pub fn mode(&self) -> &QMode {
        &self.mode
    }

    pub fn q(&self) -> &RatFunc {
        &self.q
    }

    pub fn q_pow(&self, n: i64) -> RatFunc {
        match &self.mode {
            QMode::Symbolic => RatFunc::q_pow(n),
            QMode::Numeric(_) => self.q.pow(n).expect("q is nonzero"),
        }
    }

    /// `q^(1/2)`: the indeterminate `v`, or the positive rational root in numeric mode.
    pub fn sqrt_q(&self) -> Result<RatFunc, FieldError> {
        match &self.mode {
            QMode::Symbolic => Ok(RatFunc::v()),
            QMode::Numeric(q0) => rational_sqrt(q0)
                .map(RatFunc::from_rational)
                .ok_or_else(|| FieldError::NoSquareRoot(q0.clone())),
        }
    }

    pub fn int(&self, c: i64) -> RatFunc {
        RatFunc::from_int(c)
    }

    /// `n` with `t = q^n`, if one exists.
    pub fn power_of_q(&self, t: &RatFunc) -> Option<i64> {
        match &self.mode {
            QMode::Symbolic => is_power_of_q(t),
            QMode::Numeric(q0) => {
                let t = t.as_constant()?;
                if t.is_zero() {
                    return None;
                }
                if t.is_one() {
                    return Some(0);
                }
                // Work with a base of modulus > 1 so powers grow monotonically.
                let (base, flip) = if q0.abs() > BigRational::one() {
                    (q0.clone(), 1)
                } else {
                    (q0.recip(), -1)
                };
                let search = |target: &BigRational| -> Option<i64> {
                    let mut p = base.clone();
                    let mut m = 1i64;
                    while p.abs() <= target.abs() {
                        if &p == target {
                            return Some(m);
                        }
                        p *= &base;
                        m += 1;
                    }
                    None
                };
                search(&t)
                    .map(|m| flip * m)
                    .or_else(|| search(&t.recip()).map(|m| -flip * m))
            }
        }
    }

    pub fn parse(&self, src: &str) -> Result<RatFunc, ParseError> {
        parse_field_element(src, self)
    }

    /// `"symbolic"` or the numeric value of `q`.
    pub fn describe(&self) -> String {
        match &self.mode {
            QMode::Symbolic => "symbolic".into(),
            QMode::Numeric(q0) => q0.to_string(),
        }
    }
}

pub(crate) fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_q_excludes_units_and_zero() {
        for bad in [0, 1, -1] {
            assert!(BaseField::numeric(big(bad)).is_err());
        }
        assert!(BaseField::numeric(big(2)).is_ok());
        assert!(BaseField::numeric(BigRational::new(1.into(), 3.into())).is_ok());
    }

    #[test]
    fn numeric_power_of_q() {
        let f = BaseField::numeric(big(-2)).unwrap();
        assert_eq!(f.power_of_q(&RatFunc::from_int(-8)), Some(3));
        assert_eq!(f.power_of_q(&RatFunc::from_int(8)), None);
        assert_eq!(f.power_of_q(&RatFunc::ratio(1, 4)), Some(-2));
        assert_eq!(f.power_of_q(&RatFunc::one()), Some(0));
        let g = BaseField::numeric(BigRational::new(1.into(), 3.into())).unwrap();
        assert_eq!(g.power_of_q(&RatFunc::ratio(1, 9)), Some(2));
        assert_eq!(g.power_of_q(&RatFunc::from_int(27)), Some(-3));
        assert_eq!(g.power_of_q(&RatFunc::from_int(5)), None);
    }
}
