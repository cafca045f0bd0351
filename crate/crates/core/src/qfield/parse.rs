//! Text syntax for field elements.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := ('-' | '+') unary | power
//! power    := atom ('^' exponent)?
//! exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'
//! atom     := INT | 'q' | '(' expr ')'
//! ```
//!
//! Fractional exponents are only accepted on `q` itself and must be
//! half-integers: `q^(1/2)` is the base indeterminate `v`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use super::{BaseField, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position} (near `{token}`): {message}")]
pub struct ParseError {
    pub position: usize,
    pub token: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Q,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Int(n) => n.to_string(),
            Tok::Q => "q".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::End => "<end of input>".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            'q' => Tok::Q,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                let ch = src[i..].chars().next().unwrap();
                return Err(ParseError {
                    position: i,
                    token: ch.to_string(),
                    message: "unexpected character".into(),
                });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    field: &'a BaseField,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let (position, tok) = &self.toks[self.pos];
        ParseError {
            position: *position,
            token: tok.text(),
            message: message.into(),
        }
    }

    fn error_at(&self, at: usize, message: impl Into<String>) -> ParseError {
        let (position, tok) = &self.toks[at];
        ParseError {
            position: *position,
            token: tok.text(),
            message: message.into(),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(format!("expected `{}`", want.text())))
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    let at = self.pos;
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc
                        .checked_div(&rhs)
                        .map_err(|_| self.error_at(at, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let is_q = *self.peek() == Tok::Q;
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let caret = self.pos;
        self.bump();
        let exp = self.exponent()?;
        if exp.denom().is_one() {
            let k = exp
                .numer()
                .to_i64()
                .filter(|k| k.abs() <= 4096)
                .ok_or_else(|| self.error_at(caret, "exponent out of range"))?;
            return base
                .pow(k)
                .map_err(|_| self.error_at(caret, "negative power of zero"));
        }
        if !is_q {
            return Err(self.error_at(caret, "fractional exponents are only allowed on q"));
        }
        if *exp.denom() != BigInt::from(2) {
            return Err(self.error_at(caret, "only half-integer powers of q are representable"));
        }
        let k = exp
            .numer()
            .to_i64()
            .filter(|k| k.abs() <= 8192)
            .ok_or_else(|| self.error_at(caret, "exponent out of range"))?;
        let root = self
            .field
            .sqrt_q()
            .map_err(|e| self.error_at(caret, e.to_string()))?;
        Ok(root.pow(k).expect("sqrt(q) is nonzero"))
    }

    fn exponent(&mut self) -> Result<BigRational, ParseError> {
        let parens = *self.peek() == Tok::LParen;
        if parens {
            self.bump();
        }
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let num = self
            .take_int()
            .ok_or_else(|| self.error_here("expected an integer exponent"))?;
        let mut den = BigInt::one();
        if parens {
            if *self.peek() == Tok::Slash {
                self.bump();
                den = self
                    .take_int()
                    .filter(|d| !d.is_zero())
                    .ok_or_else(|| self.error_here("expected a nonzero integer denominator"))?;
            }
            self.expect(Tok::RParen)?;
        }
        let e = BigRational::new(num, den);
        Ok(if negative { -e } else { e })
    }

    fn take_int(&mut self) -> Option<BigInt> {
        match self.peek() {
            Tok::Int(n) => {
                let n = n.clone();
                self.bump();
                Some(n)
            }
            _ => None,
        }
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek() {
            Tok::Int(_) => {
                let n = self.take_int().expect("peeked an integer");
                Ok(RatFunc::from_rational(BigRational::from_integer(n)))
            }
            Tok::Q => {
                self.bump();
                Ok(self.field.q().clone())
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.error_here("expected a number, `q`, or `(`")),
        }
    }
}

/// Parse a field element in the given base field.
pub fn parse_field_element(src: &str, field: &BaseField) -> Result<RatFunc, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        field,
    };
    let value = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error_here("unexpected trailing input"));
    }
    Ok(value)
}

/// Parse an exact rational such as `3`, `-5/2`.
pub fn parse_rational(src: &str) -> Result<BigRational, ParseError> {
    let value = parse_field_element(src, &BaseField::symbolic())?;
    value.as_constant().ok_or_else(|| ParseError {
        position: 0,
        token: src.to_string(),
        message: "expected a rational constant".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> RatFunc {
        parse_field_element(s, &BaseField::symbolic()).unwrap()
    }

    #[test]
    fn parses_special_point() {
        let alpha = sym("-1/(q-1)^2");
        let qm1 = &RatFunc::q() - &RatFunc::one();
        assert_eq!(alpha, -RatFunc::one().checked_div(&qm1.pow(2).unwrap()).unwrap());
        assert_eq!(sym("2/(q-1)"), RatFunc::from_int(2).checked_div(&qm1).unwrap());
    }

    #[test]
    fn laurent_and_half_powers() {
        assert_eq!(sym("q^(-1)"), RatFunc::v_pow(-2));
        assert_eq!(sym("q^(1/2)"), RatFunc::v());
        assert_eq!(sym("q^(-3/2)"), RatFunc::v_pow(-3));
        assert_eq!(sym("q^3"), RatFunc::v_pow(6));
        assert_eq!(sym("q^(2/4)"), RatFunc::v());
    }

    #[test]
    fn errors_carry_position() {
        let e = parse_field_element("1 + $", &BaseField::symbolic()).unwrap_err();
        assert_eq!(e.position, 4);
        assert_eq!(e.token, "$");
        let e = parse_field_element("1/(q-q)", &BaseField::symbolic()).unwrap_err();
        assert_eq!(e.position, 1);
        let e = parse_field_element("(q+1", &BaseField::symbolic()).unwrap_err();
        assert_eq!(e.token, "<end of input>");
        assert!(parse_field_element("(q+1)^(1/2)", &BaseField::symbolic()).is_err());
        assert!(parse_field_element("q^(1/3)", &BaseField::symbolic()).is_err());
        assert!(parse_field_element("", &BaseField::symbolic()).is_err());
        assert!(parse_field_element("2 3", &BaseField::symbolic()).is_err());
    }

    #[test]
    fn numeric_mode_substitutes_q() {
        let f = BaseField::numeric(BigRational::from_integer(4.into())).unwrap();
        let x = parse_field_element("q^(1/2) + q", &f).unwrap();
        assert_eq!(x, RatFunc::from_int(6));
        let f3 = BaseField::numeric(BigRational::from_integer(3.into())).unwrap();
        assert!(parse_field_element("q^(1/2)", &f3).is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["-1/(q-1)^2", "q^(1/2) - 3/4*q^(5/2)", "(q^2+1)/(2*q^(3/2)-q)", "0", "-7/3"] {
            let x = sym(s);
            assert_eq!(sym(&x.to_string()), x, "{s} -> {x}");
        }
    }
}
