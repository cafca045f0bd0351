//! Dense univariate polynomials in `v` over `BigRational`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients indexed by degree. The zero polynomial is the empty vector;
/// otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `c * v^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let lc_inv = divisor.coeffs[dd].recip();
        let monic: Option<Vec<BigInt>> = divisor
            .coeffs
            .iter()
            .map(|c| {
                let m = c * &lc_inv;
                m.is_integer().then(|| m.to_integer())
            })
            .collect();
        if let Some(monic) = monic {
            return self.div_rem_integral(&monic, &lc_inv);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Division by `monic / lc_inv` where `monic` has integer coefficients,
    /// carried out over Z after clearing the denominators of `self`.
    fn div_rem_integral(&self, monic: &[BigInt], lc_inv: &BigRational) -> (Self, Self) {
        let dd = monic.len() - 1;
        let (mut rem, l) = integer_form(self);
        let nd = rem.len() - 1;
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = std::mem::take(&mut rem[i + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, m) in monic[..dd].iter().enumerate() {
                if !m.is_zero() {
                    rem[i + j] -= &c * m;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        let back = |c: BigInt| BigRational::new(c, l.clone());
        let quot = quot.into_iter().map(|c| back(c) * lc_inv).collect();
        let rem = rem.into_iter().map(back).collect();
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Split off the largest power of `v`: `self = v^k * rest`.
    fn strip_v(&self) -> (Self, usize) {
        let k = self.valuation().unwrap_or(0);
        let rest = UniPoly {
            coeffs: self.coeffs[k..].to_vec(),
        };
        (rest, k)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return if a.is_zero() { b.make_monic() } else { a.make_monic() };
        }
        // Powers of v are split off first; Euclid on them is needlessly slow.
        let (a, ka) = a.strip_v();
        let (b, kb) = b.strip_v();
        let k = ka.min(kb);
        if a.is_constant() || b.is_constant() || coprime_mod_p(&a, &b) {
            return Self::one().shift(k);
        }
        Self::euclid(&a, &b).shift(k)
    }

    fn euclid(a: &Self, b: &Self) -> Self {
        let mut a = a.make_monic();
        let mut b = b.make_monic();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                return Self::one();
            }
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.make_monic();
        }
        a
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    /// Square root in `Q[v]`, if this polynomial is a perfect square.
    pub fn sqrt(&self) -> Option<Self> {
        let Some(deg) = self.degree() else {
            return Some(Self::zero());
        };
        if deg % 2 == 1 {
            return None;
        }
        let half = deg / 2;
        let lead = rational_sqrt(&self.coeffs[deg])?;
        // Top-down coefficient recurrence for r with r^2 = self.
        let mut r = vec![BigRational::zero(); half + 1];
        r[half] = lead.clone();
        let two_lead = &lead * BigRational::from_integer(BigInt::from(2));
        for k in 1..=half {
            // coefficient of v^(deg - k) in r^2
            let mut acc = self.coeffs[deg - k].clone();
            for i in 1..k {
                acc -= &r[half - i] * &r[half - (k - i)];
            }
            r[half - k] = acc / &two_lead;
        }
        let root = UniPoly::from_coeffs(r);
        (&root * &root == *self).then_some(root)
    }
}

/// Square root of a rational, if it is a perfect square.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

/// The Mersenne prime `2^61 - 1`.
const P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, P - 2, 1);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

/// Image mod `P`, or `None` if a denominator or the leading coefficient vanishes.
fn reduce_mod_p(a: &UniPoly) -> Option<Vec<u64>> {
    let p = BigInt::from(P);
    let out = a
        .coeffs
        .iter()
        .map(|c| {
            let n = c.numer().mod_floor(&p).to_u64()?;
            let d = c.denom().mod_floor(&p).to_u64()?;
            (d != 0).then(|| mul_mod(n, inv_mod(d)))
        })
        .collect::<Option<Vec<_>>>()?;
    (*out.last()? != 0).then_some(out)
}

/// Remainder of `a` by `b` mod `P`, with trailing zeros trimmed. `b` has a nonzero leading term.
fn rem_mod_p(mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    let lead_inv = inv_mod(*b.last().unwrap());
    while a.len() >= b.len() {
        let factor = mul_mod(*a.last().unwrap(), lead_inv);
        let shift = a.len() - b.len();
        for (i, &bc) in b.iter().enumerate() {
            let t = mul_mod(factor, bc);
            a[shift + i] = (a[shift + i] + P - t) % P;
        }
        while a.last() == Some(&0) {
            a.pop();
        }
    }
    a
}

/// A sufficient test for `gcd(a, b) = 1`: the gcd mod a prime not dividing
/// the leading coefficients is a constant.
fn coprime_mod_p(a: &UniPoly, b: &UniPoly) -> bool {
    let (Some(mut x), Some(mut y)) = (reduce_mod_p(a), reduce_mod_p(b)) else {
        return false;
    };
    while !y.is_empty() {
        if y.len() == 1 {
            return true;
        }
        let r = rem_mod_p(x, &y);
        x = y;
        y = r;
    }
    x.len() == 1
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        UniPoly::from_coeffs(coeffs)
    }
}

/// Coefficients scaled to integers by the lcm of their denominators.
fn integer_form(p: &UniPoly) -> (Vec<BigInt>, BigInt) {
    let l = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) });
    let ints = p
        .coeffs
        .iter()
        .map(|c| if l.is_one() { c.numer().clone() } else { c.numer() * (&l / c.denom()) })
        .collect();
    (ints, l)
}

fn small(ints: &[BigInt]) -> Option<Vec<i64>> {
    ints.iter().map(|c| c.to_i64()).collect()
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        // Multiply over Z, then divide once per coefficient.
        let (a, la) = integer_form(self);
        let (b, lb) = integer_form(rhs);
        let prods = match (small(&a), small(&b)) {
            (Some(sa), Some(sb)) => small_product(&sa, &sb).unwrap_or_else(|| schoolbook(&a, &b)),
            _ => schoolbook(&a, &b),
        };
        let l = la * lb;
        UniPoly::from_coeffs(
            prods
                .into_iter()
                .map(|c| BigRational::new(c, l.clone()))
                .collect(),
        )
    }
}

/// `None` if some accumulated coefficient leaves the `i128` range.
fn small_product(a: &[i64], b: &[i64]) -> Option<Vec<BigInt>> {
    let mut acc = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = acc[i + j].checked_add(x as i128 * y as i128)?;
        }
    }
    Some(acc.into_iter().map(BigInt::from).collect())
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Writes `v^k` as a power of `q`: `q`, `q^3`, `q^(1/2)`, `q^(5/2)`.
pub(crate) fn fmt_q_power(f: &mut fmt::Formatter<'_>, k: usize) -> fmt::Result {
    match k {
        0 => Ok(()),
        2 => write!(f, "q"),
        k if k % 2 == 0 => write!(f, "q^{}", k / 2),
        k => write!(f, "q^({k}/2)"),
    }
}

impl fmt::Display for UniPoly {
    /// Descending powers of `q`, e.g. `3/4*q^2 - q^(1/2) + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_q_power(f, k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}
