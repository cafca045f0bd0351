//! Closed points `P = (xi - alpha, h - beta)` of `Spec R` and their place in
//! the left prime spectrum.
//!
//! Everything is decided by the vanishing set
//! `V = { n : theta^n(xi)(alpha, beta) = 0 }`. Writing `t = q^n`, the value
//! `theta^n(xi)(alpha, beta)` is the quadratic `A t^2 + B t + C` with
//!
//! ```text
//! A = -(q/4) beta^2 + q beta/(q - 1) - q/(q - 1)^2
//! B = alpha + (q/4) beta^2 - q beta/(q - 1) + (q + 1)/(q - 1)^2
//! C = -1/(q - 1)^2
//! ```
//!
//! so `V` has at most two elements and is found exactly. A bounded scan of
//! the closed form is kept as an independent witness.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::jz::{theta_n_closed, Generator};
use crate::qfield::{big, BaseField, FieldError, ParseError, QMode, RatFunc, UniPoly};

pub const DEFAULT_SCAN_BOUND: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("quadratic solve gave {solved:?} but the scan over |n| <= {bound} gave {scanned:?}")]
    ScanMismatch {
        solved: Vec<i64>,
        scanned: Vec<i64>,
        bound: i64,
    },
    #[error("scan bound must be at least 1, got {0}")]
    BadScanBound(i64),
}

/// A closed point of `Spec R`, given by the values of `xi` and `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointParams {
    pub alpha: RatFunc,
    pub beta: RatFunc,
    pub field: BaseField,
}

impl PointParams {
    pub fn new(field: &BaseField, alpha: RatFunc, beta: RatFunc) -> Self {
        PointParams {
            alpha,
            beta,
            field: field.clone(),
        }
    }

    pub fn parse(field: &BaseField, alpha: &str, beta: &str) -> Result<Self, ParseError> {
        Ok(Self::new(field, field.parse(alpha)?, field.parse(beta)?))
    }

    fn q(&self) -> &RatFunc {
        self.field.q()
    }

    fn with(&self, alpha: RatFunc, beta: RatFunc) -> Self {
        PointParams {
            alpha,
            beta,
            field: self.field.clone(),
        }
    }
}

impl fmt::Display for PointParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

fn q_minus_one_inv(field: &BaseField) -> RatFunc {
    (field.q() - &RatFunc::one()).inv().expect("q != 1")
}

/// `2/(q - 1)`, the one value of `beta` whose orbit `beta`-coordinates repeat.
pub fn special_beta(field: &BaseField) -> RatFunc {
    q_minus_one_inv(field).scale(&big(2))
}

/// `(-1/(q - 1)^2, 2/(q - 1))`, the unique point with a finite orbit.
pub fn special_point(field: &BaseField) -> PointParams {
    let k = q_minus_one_inv(field);
    PointParams::new(field, -(&k * &k), special_beta(field))
}

/// Which sign is taken in `beta = 2 (1 -+ q^(-s))/(q - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Minus,
    Plus,
}

/// The point with `theta^-1(xi)` and `theta^(2s)(xi)` in `P`:
///
/// ```text
/// beta  = 2 (1 -+ q^(-s))/(q - 1)
/// alpha = beta - (q - 1)/4 beta^2 = (1 - q^(-2s))/(q - 1)
/// ```
///
/// `two_s` is `2s`. Odd `two_s` needs `q^(1/2)`, which a numeric `q` may lack.
pub fn finite_family(field: &BaseField, two_s: u32, branch: Branch) -> Result<PointParams, FieldError> {
    let k = q_minus_one_inv(field);
    let q_neg_s = if two_s.is_multiple_of(2) {
        field.q_pow(-(two_s as i64) / 2)
    } else {
        field.sqrt_q()?.pow(-(two_s as i64))?
    };
    let one = RatFunc::one();
    let shifted = match branch {
        Branch::Minus => &one - &q_neg_s,
        Branch::Plus => &one + &q_neg_s,
    };
    let beta = (&shifted * &k).scale(&big(2));
    let alpha = &(&one - &(&q_neg_s * &q_neg_s)) * &k;
    Ok(PointParams::new(field, alpha, beta))
}

/// `alpha = beta - (q - 1)/4 beta^2`, i.e. `theta^-1(xi)` vanishes at the point.
pub fn highest_alpha(field: &BaseField, beta: &RatFunc) -> RatFunc {
    let qm1 = field.q() - &RatFunc::one();
    beta - &(&qm1 * &(beta * beta)).scale(&big(4).recip())
}

/// The point `(alpha, beta)` pulled back along `theta`:
/// `(q alpha + q^2 beta + (q^2 - q^3)/4 beta^2 - (q + 1), q beta - 2)`.
pub fn theta_on_point(p: &PointParams) -> PointParams {
    let q = p.q();
    let q2 = q * q;
    let q3 = &q2 * q;
    let (a, b) = (&p.alpha, &p.beta);
    let alpha = &(&(&(q * a) + &(&q2 * b)) + &(&(&q2 - &q3) * &(b * b)).scale(&big(4).recip()))
        - &(q + &RatFunc::one());
    let beta = &(q * b) - &RatFunc::from_int(2);
    p.with(alpha, beta)
}

/// Inverse of [`theta_on_point`]:
/// `(q^-1 alpha - q^-1 beta + (q - 1)/(4q) beta^2, q^-1 beta + 2 q^-1)`.
pub fn theta_inverse_on_point(p: &PointParams) -> PointParams {
    let q = p.q();
    let qi = q.inv().expect("q is nonzero");
    let (a, b) = (&p.alpha, &p.beta);
    let c2 = (&(q - &RatFunc::one()) * &qi).scale(&big(4).recip());
    let alpha = &(&(&qi * a) - &(&qi * b)) + &(&c2 * &(b * b));
    let beta = &(&qi * b) + &qi.scale(&big(2));
    p.with(alpha, beta)
}

/// `theta_on_point` applied `n` times (its inverse for negative `n`).
pub fn theta_power_on_point(p: &PointParams, n: i64) -> PointParams {
    let step = if n >= 0 { theta_on_point } else { theta_inverse_on_point };
    (0..n.unsigned_abs()).fold(p.clone(), |cur, _| step(&cur))
}

/// The first `count` orbit points `theta^i(P)`, `i = 0, 1, ...`.
pub fn orbit(p: &PointParams, count: usize) -> Vec<PointParams> {
    let mut out = Vec::with_capacity(count);
    let mut cur = p.clone();
    for _ in 0..count {
        let next = theta_on_point(&cur);
        out.push(cur);
        cur = next;
    }
    out
}

/// `theta^m(P)` for every `m` in `lo..=hi`, by stepping outward from `P`.
pub fn orbit_window(p: &PointParams, lo: i64, hi: i64) -> Vec<PointParams> {
    if lo > hi {
        return Vec::new();
    }
    let start = lo.max(0).min(hi);
    let anchor = theta_power_on_point(p, start);
    let mut below = Vec::new();
    let mut cur = anchor.clone();
    for _ in lo..start {
        cur = theta_inverse_on_point(&cur);
        below.push(cur.clone());
    }
    below.reverse();
    let mut out = below;
    let mut cur = anchor;
    for m in start..=hi {
        if m > start {
            cur = theta_on_point(&cur);
        }
        out.push(cur.clone());
    }
    out
}

/// `theta^n(xi)` evaluated at the point, from the closed form.
pub fn eval_xi_shift(n: i64, p: &PointParams) -> RatFunc {
    theta_n_closed(&p.field, Generator::Xi, n).eval(&p.alpha, &p.beta)
}

/// `theta^n(h)` evaluated at the point: `q^n beta - 2 (q^n - 1)/(q - 1)`.
pub fn eval_h_shift(n: i64, p: &PointParams) -> RatFunc {
    let qn = p.field.q_pow(n);
    let shift = (&(&qn - &RatFunc::one()) * &q_minus_one_inv(&p.field)).scale(&big(2));
    &(&qn * &p.beta) - &shift
}

/// An unreduced fraction of polynomials in `v`, for zero tests on large
/// shifts without paying for gcds.
#[derive(Clone)]
struct Frac {
    num: UniPoly,
    den: UniPoly,
}

impl Frac {
    fn of(r: &RatFunc) -> Self {
        Frac {
            num: r.numer().clone(),
            den: r.denom().clone(),
        }
    }

    fn int(c: i64) -> Self {
        Frac {
            num: UniPoly::from_int(c),
            den: UniPoly::one(),
        }
    }

    /// `q^n` without ever forming a gcd.
    fn q_pow(field: &BaseField, n: i64) -> Self {
        match field.mode() {
            QMode::Symbolic => {
                let p = UniPoly::monomial(big(1), 2 * n.unsigned_abs() as usize);
                if n >= 0 {
                    Frac { num: p, den: UniPoly::one() }
                } else {
                    Frac { num: UniPoly::one(), den: p }
                }
            }
            QMode::Numeric(_) => Frac::of(&field.q_pow(n)),
        }
    }

    fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac {
                num: &self.num + &o.num,
                den: self.den.clone(),
            };
        }
        Frac {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    fn sub(&self, o: &Frac) -> Frac {
        self.add(&o.neg())
    }

    fn neg(&self) -> Frac {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }

    fn div(&self, o: &Frac) -> Frac {
        Frac {
            num: &self.num * &o.den,
            den: &self.den * &o.num,
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn same(&self, o: &Frac) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

/// `theta^n(xi)(alpha, beta)` from the closed form, unreduced.
fn xi_shift_frac(n: i64, p: &PointParams) -> Frac {
    let q = Frac::of(p.q());
    let one = Frac::int(1);
    let qm1 = q.sub(&one);
    let t = Frac::q_pow(&p.field, n);
    let (a, b) = (Frac::of(&p.alpha), Frac::of(&p.beta));
    let qt = q.mul(&t);
    let t1 = t.mul(&a);
    let t2 = qt.mul(&one.sub(&t)).mul(&b).mul(&b).div(&Frac::int(4));
    let t3 = qt.mul(&t.sub(&one)).mul(&b).div(&qm1);
    let t4 = t.sub(&one).mul(&qt.sub(&one)).div(&qm1.mul(&qm1));
    t1.add(&t2).add(&t3).sub(&t4)
}

/// `theta^n(h)(alpha, beta)`, unreduced.
fn h_shift_frac(n: i64, p: &PointParams) -> Frac {
    let one = Frac::int(1);
    let qm1 = Frac::of(p.q()).sub(&one);
    let t = Frac::q_pow(&p.field, n);
    t.mul(&Frac::of(&p.beta)).sub(&t.sub(&one).mul(&Frac::int(2)).div(&qm1))
}

/// [`dense_excluded_alpha`], unreduced.
fn dense_excluded_frac(n: i64, p: &PointParams) -> Frac {
    let q = Frac::of(p.q());
    let one = Frac::int(1);
    let qm1 = q.sub(&one);
    let t = Frac::q_pow(&p.field, n);
    let b = Frac::of(&p.beta);
    let q_tm1 = q.mul(&t.sub(&one));
    let t1 = q_tm1.mul(&b).mul(&b).div(&Frac::int(4));
    let t2 = q_tm1.mul(&b).div(&qm1);
    let t3 = t.sub(&one).mul(&q.mul(&t).sub(&one)).div(&qm1.mul(&qm1).mul(&t));
    t1.sub(&t2).add(&t3)
}

/// Coefficients `(A, B, C)` of `theta^n(xi)(alpha, beta)` as a quadratic in `t = q^n`.
pub fn xi_shift_quadratic(p: &PointParams) -> (RatFunc, RatFunc, RatFunc) {
    let q = p.q();
    let k = q_minus_one_inv(&p.field);
    let k2 = &k * &k;
    let b = &p.beta;
    let qb2_4 = (q * &(b * b)).scale(&big(4).recip());
    let qbk = &(q * b) * &k;
    let a = &(&-&qb2_4 + &qbk) - &(q * &k2);
    let bb = &(&(&p.alpha + &qb2_4) - &qbk) + &(&(q + &RatFunc::one()) * &k2);
    let c = -k2;
    (a, bb, c)
}

/// Roots in the base field of `A t^2 + B t + C`, with `C != 0`.
fn quadratic_roots(a: &RatFunc, b: &RatFunc, c: &RatFunc) -> Vec<RatFunc> {
    if a.is_zero() {
        if b.is_zero() {
            return Vec::new();
        }
        return vec![-&c.checked_div(b).expect("b is nonzero")];
    }
    let disc = &(b * b) - &(a * c).scale(&big(4));
    let Some(r) = disc.sqrt() else {
        return Vec::new();
    };
    let two_a = a.scale(&big(2));
    let mut roots = vec![
        (&-b + &r).checked_div(&two_a).expect("a is nonzero"),
        (&-b - &r).checked_div(&two_a).expect("a is nonzero"),
    ];
    roots.dedup();
    roots
}

/// The vanishing set, solved exactly and witnessed by a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingSet {
    /// Every `n` with `theta^n(xi)(alpha, beta) = 0`.
    pub shifts: BTreeSet<i64>,
    /// Roots `t` of the quadratic, as canonical strings.
    pub roots: Vec<String>,
    pub scan_bound: i64,
    pub scanned: BTreeSet<i64>,
}

impl VanishingSet {
    pub fn contains(&self, n: i64) -> bool {
        self.shifts.contains(&n)
    }
}

/// All `n` with `theta^n(xi) in P`, by the quadratic solve, reconciled with
/// a direct scan of `|n| <= scan_bound`.
pub fn xi_vanishing_set(p: &PointParams, scan_bound: i64) -> Result<VanishingSet, SpectrumError> {
    if scan_bound < 1 {
        return Err(SpectrumError::BadScanBound(scan_bound));
    }
    let (a, b, c) = xi_shift_quadratic(p);
    let roots = quadratic_roots(&a, &b, &c);
    let shifts: BTreeSet<i64> = roots.iter().filter_map(|t| p.field.power_of_q(t)).collect();
    let scanned: BTreeSet<i64> = (-scan_bound..=scan_bound)
        .filter(|&n| xi_shift_frac(n, p).is_zero())
        .collect();
    let in_range: BTreeSet<i64> = shifts.range(-scan_bound..=scan_bound).copied().collect();
    if in_range != scanned {
        return Err(SpectrumError::ScanMismatch {
            solved: shifts.into_iter().collect(),
            scanned: scanned.into_iter().collect(),
            bound: scan_bound,
        });
    }
    Ok(VanishingSet {
        shifts,
        roots: roots.iter().map(RatFunc::to_string).collect(),
        scan_bound,
        scanned,
    })
}

/// Where the point sits in the left prime spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointType {
    /// The fixed point of `theta`; no module is attached.
    FiniteOrbitSpecial,
    /// `{-1, 0}` in `V`: the one-dimensional module.
    T11,
    /// `-1` and `n >= 1` in `V`, nothing in `0..n`: dimension `n + 1`.
    T1n(u64),
    /// `-1` in `V`, no `n >= 0`: highest weight.
    T1Inf,
    /// `0` in `V`, no `n <= -1`: lowest weight.
    TInf1,
    /// `V` empty with an infinite orbit: dense weight module.
    TInfInf,
    /// A nonempty `V` not anchored at `-1` or `0` (a shift of an anchored point).
    Unanchored,
}

impl PointType {
    pub fn name(&self) -> &'static str {
        match self {
            PointType::FiniteOrbitSpecial => "FiniteOrbitSpecial",
            PointType::T11 => "T11",
            PointType::T1n(_) => "T1n",
            PointType::T1Inf => "T1Inf",
            PointType::TInf1 => "TInf1",
            PointType::TInfInf => "TInfInf",
            PointType::Unanchored => "Unanchored",
        }
    }

    pub fn n(&self) -> Option<u64> {
        match self {
            PointType::T1n(n) => Some(*n),
            _ => None,
        }
    }

    /// Dimension of the attached module, `None` if infinite or absent.
    pub fn finite_dim(&self) -> Option<u64> {
        match self {
            PointType::T11 => Some(1),
            PointType::T1n(n) => Some(n + 1),
            _ => None,
        }
    }
}

impl fmt::Display for PointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointType::T1n(n) => write!(f, "T1n(n={n})"),
            other => f.write_str(other.name()),
        }
    }
}

/// `theta^i(P) != P` for `0 < |i| <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCheck {
    pub bound: i64,
    /// `"beta"` when the beta-coordinates already separate, else `"point"`.
    pub method: &'static str,
    pub distinct: bool,
}

pub fn orbit_check(p: &PointParams, bound: i64) -> OrbitCheck {
    let by_beta = p.beta != special_beta(&p.field);
    let (alpha, beta) = (Frac::of(&p.alpha), Frac::of(&p.beta));
    let distinct = (1..=bound).flat_map(|i| [i, -i]).all(|i| {
        let beta_moves = !h_shift_frac(i, p).same(&beta);
        beta_moves || (!by_beta && !xi_shift_frac(i, p).same(&alpha))
    });
    OrbitCheck {
        bound,
        method: if by_beta { "beta" } else { "point" },
        distinct,
    }
}

/// The value `alpha` must avoid for `theta^n(xi)` to stay outside `P`:
/// `q(q^n - 1)/4 beta^2 - q(q^n - 1)/(q - 1) beta + (q^n - 1)(q^(n+1) - 1)/((q - 1)^2 q^n)`.
pub fn dense_excluded_alpha(n: i64, p: &PointParams) -> RatFunc {
    let q = p.q();
    let k = q_minus_one_inv(&p.field);
    let qn = p.field.q_pow(n);
    let qn_m1 = &qn - &RatFunc::one();
    let b = &p.beta;
    let t1 = (&(q * &qn_m1) * &(b * b)).scale(&big(4).recip());
    let t2 = &(&(q * &qn_m1) * &k) * b;
    let t3 = (&(&(&qn_m1 * &(&(&qn * q) - &RatFunc::one())) * &k) * &k)
        .checked_div(&qn)
        .expect("q^n is nonzero");
    &(&t1 - &t2) + &t3
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub roots: Vec<String>,
    pub scan_bound: i64,
    pub scanned: Vec<i64>,
    pub scan_agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitCheck>,
    /// Shifts where `alpha == dense_excluded_alpha(n)` disagrees with `n in V`.
    pub dense_alpha_discrepancies: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub point_type: PointType,
    pub vanishing: VanishingSet,
    pub certificate: Certificate,
}

#[derive(Serialize)]
struct ClassificationDoc<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    vanishing_set: Vec<i64>,
    certificate: &'a Certificate,
}

impl Serialize for Classification {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ClassificationDoc {
            kind: self.point_type.name(),
            n: self.point_type.n(),
            vanishing_set: self.vanishing.shifts.iter().copied().collect(),
            certificate: &self.certificate,
        }
        .serialize(s)
    }
}

fn type_from_vanishing(v: &BTreeSet<i64>) -> PointType {
    let has_neg_one = v.contains(&-1);
    let has_zero = v.contains(&0);
    let first_nonneg = v.range(0..).next().copied();
    let has_below_neg_one = v.range(..-1).next().is_some();
    match (has_neg_one, has_zero) {
        (true, true) => PointType::T11,
        (true, false) => match first_nonneg {
            Some(n) => PointType::T1n(n as u64),
            None => PointType::T1Inf,
        },
        (false, true) if !has_below_neg_one => PointType::TInf1,
        _ if v.is_empty() => PointType::TInfInf,
        _ => PointType::Unanchored,
    }
}

pub fn classify(p: &PointParams, scan_bound: i64) -> Result<Classification, SpectrumError> {
    let vanishing = xi_vanishing_set(p, scan_bound)?;
    let alpha = Frac::of(&p.alpha);
    let dense_alpha_discrepancies = (-scan_bound..=scan_bound)
        .filter(|&n| dense_excluded_frac(n, p).same(&alpha) != vanishing.contains(n))
        .collect();
    let special = *p == special_point(&p.field);
    let mut point_type = if special {
        PointType::FiniteOrbitSpecial
    } else {
        type_from_vanishing(&vanishing.shifts)
    };
    let orbit = (point_type == PointType::TInfInf).then(|| orbit_check(p, scan_bound));
    if let Some(o) = &orbit {
        if !o.distinct {
            point_type = PointType::FiniteOrbitSpecial;
        }
    }
    let certificate = Certificate {
        roots: vanishing.roots.clone(),
        scan_bound,
        scanned: vanishing.scanned.iter().copied().collect(),
        scan_agrees: true,
        orbit,
        dense_alpha_discrepancies,
    };
    Ok(Classification {
        point_type,
        vanishing,
        certificate,
    })
}
