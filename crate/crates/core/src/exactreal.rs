//! Exact arithmetic in a single real quadratic field `Q(sqrt(d))`.
//!
//! Every value is stored as `(a + b*sqrt(d)) / c` with arbitrary-precision
//! integer components. Signs, floors and comparisons are decided with integer
//! arithmetic only, so a point on a rotation orbit can never land "on the
//! wrong side" of an interval boundary through rounding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("values live in different quadratic fields: sqrt({left}) and sqrt({right})")]
    MixedRadicands { left: u64, right: u64 },
    #[error("value {value} is outside the required range {range}")]
    OutOfRange { value: String, range: &'static str },
    #[error("cannot parse {input:?}: {reason}")]
    Syntax { input: String, reason: String },
    #[error("division by zero")]
    DivisionByZero,
}

/// A number `(a + b*sqrt(d)) / c`.
///
/// Normal form: `c >= 1`, `gcd(a, b, c) = 1`, `d` square-free and different
/// from 1, and `b = 0` exactly when `d = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactReal {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u64,
}

/// Result of [`ExactReal::parse_reporting`]: the value plus the radicand
/// reduction that happened while normalizing, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub value: ExactReal,
    /// `(written, reduced)` when the written radicand was not square-free.
    pub reduced_radicand: Option<(u64, u64)>,
}

/// Continued fraction `[0; a_1, a_2, ...]` of a number in `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub quotients: Vec<BigUint>,
    /// True when the expansion ended because the number is rational.
    pub terminated: bool,
}

impl ContinuedFraction {
    /// Quotients as machine integers; `None` if any does not fit.
    pub fn small_quotients(&self) -> Option<Vec<u64>> {
        self.quotients.iter().map(|q| q.to_u64()).collect()
    }
}

/// Splits `d` into `(f, r)` with `d = f^2 * r` and `r` square-free.
fn square_free_part(mut d: u64) -> (u64, u64) {
    let mut f = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        let pp = p * p;
        while d.is_multiple_of(pp) {
            d /= pp;
            f *= p;
        }
        p += 1;
    }
    (f, d)
}

impl ExactReal {
    fn from_parts(a: BigInt, b: BigInt, c: BigInt, d: u64) -> Result<Self, ExactError> {
        if c.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let (f, d) = square_free_part(d);
        let mut a = a;
        let mut b = b * BigInt::from(f);
        let mut c = c;
        let mut d = d;
        if d == 1 {
            a += &b;
            b = BigInt::zero();
        }
        if d == 0 {
            b = BigInt::zero();
        }
        if b.is_zero() {
            d = 0;
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        Ok(ExactReal { a, b, c, d })
    }

    /// Builds `(a + b*sqrt(d)) / c`, normalizing the radicand and the gcd.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: u64,
    ) -> Result<Self, ExactError> {
        Self::from_parts(a.into(), b.into(), c.into(), d)
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactReal { a: n.into(), b: BigInt::zero(), c: BigInt::one(), d: 0 }
    }

    /// The rational `num / den`.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ExactError> {
        Self::from_parts(num.into(), BigInt::zero(), den.into(), 0)
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn rational_part(&self) -> &BigInt {
        &self.a
    }

    pub fn surd_coefficient(&self) -> &BigInt {
        &self.b
    }

    pub fn denominator(&self) -> &BigInt {
        &self.c
    }

    /// Square-free radicand, `0` for rationals.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn field_with(&self, other: &Self) -> Result<u64, ExactError> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(ExactError::MixedRadicands { left: x, right: y }),
        }
    }

    /// True if `self` and `other` can be combined without leaving one field.
    pub fn same_field(&self, other: &Self) -> bool {
        self.field_with(other).is_ok()
    }

    /// Sign of the value: -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // a and b*sqrt(d) have opposite signs; the larger magnitude wins.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigInt::from(self.d);
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.field_with(other)?;
        if self.c == other.c {
            return Self::from_parts(&self.a + &other.a, &self.b + &other.b, self.c.clone(), d);
        }
        Self::from_parts(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
            d,
        )
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.field_with(other)?;
        let dd = BigInt::from(d);
        Self::from_parts(
            &self.a * &other.a + &self.b * &other.b * dd,
            &self.a * &other.b + &self.b * &other.a,
            &self.c * &other.c,
            d,
        )
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, ExactError> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        let diff = self.try_sub(other)?;
        Ok(diff.signum().cmp(&0))
    }

    pub fn neg(&self) -> Self {
        ExactReal { a: -&self.a, b: -&self.b, c: self.c.clone(), d: self.d }
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        // c / (a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
        let norm = &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d);
        Self::from_parts(&self.c * &self.a, -(&self.c * &self.b), norm, self.d)
    }

    /// Multiplies by the rational `num / den`.
    pub fn scale(&self, num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ExactError> {
        let num = num.into();
        Self::from_parts(&self.a * &num, &self.b * &num, &self.c * den.into(), self.d)
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_add(other)?.scale(1, 2)
    }

    pub fn floor(&self) -> BigInt {
        let whole = if self.b.is_zero() {
            self.a.clone()
        } else {
            // b^2 d is never a perfect square here, so the integer root is a strict floor.
            let root = (&self.b * &self.b * BigInt::from(self.d)).sqrt();
            if self.b.is_negative() {
                &self.a - root - 1
            } else {
                &self.a + root
            }
        };
        // floor(t / c) = floor(floor(t) / c) for positive integer c.
        whole.div_floor(&self.c)
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Fractional part in `[0, 1)`.
    pub fn frac(&self) -> Self {
        let f = self.floor();
        Self::from_parts(&self.a - f * &self.c, self.b.clone(), self.c.clone(), self.d)
            .expect("denominator unchanged")
    }

    /// Upper fractional part in `(0, 1]`: integers map to 1.
    pub fn frac_upper(&self) -> Self {
        let f = self.frac();
        if f.is_zero() {
            Self::one()
        } else {
            f
        }
    }

    /// First `max_terms` partial quotients of `self = [0; a_1, a_2, ...]`.
    pub fn cf_expansion(&self, max_terms: usize) -> Result<ContinuedFraction, ExactError> {
        if self.signum() <= 0 || self.try_cmp(&Self::one())? != Ordering::Less {
            return Err(ExactError::OutOfRange { value: self.to_string(), range: "(0, 1)" });
        }
        let mut quotients = Vec::with_capacity(max_terms);
        let mut x = self.clone();
        while quotients.len() < max_terms {
            let y = x.recip()?;
            let q = y.floor();
            x = y.try_sub(&Self::from_integer(q.clone()))?;
            quotients.push(q.to_biguint().expect("reciprocal of (0,1) exceeds 1"));
            if x.is_zero() {
                return Ok(ContinuedFraction { quotients, terminated: true });
            }
        }
        Ok(ContinuedFraction { quotients, terminated: false })
    }

    /// Lossy conversion for rendering and summaries. Never used to decide order.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        (a + b * (self.d as f64).sqrt()) / c
    }

    /// Parses the text grammar and reports any radicand reduction.
    pub fn parse_reporting(text: &str) -> Result<Parsed, ExactError> {
        parse_impl(text)
    }
}

fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl PartialOrd for ExactReal {
    /// `None` only for values from two different irrational fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            if self.c.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            }
        } else {
            let op = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "({}{}{}*sqrt({}))/{}", self.a, op, self.b.abs(), self.d, self.c)
        }
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactReal({self})")
    }
}

impl FromStr for ExactReal {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_impl(s).map(|p| p.value)
    }
}

impl From<i64> for ExactReal {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

fn parse_impl(text: &str) -> Result<Parsed, ExactError> {
    let cleaned: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    let syntax = |reason: &str| ExactError::Syntax { input: text.to_string(), reason: reason.to_string() };
    if cleaned.is_empty() {
        return Err(syntax("empty input"));
    }
    if cleaned.contains('.') {
        return Err(syntax("decimals are not accepted; write a ratio such as 3/2"));
    }

    if let Some(rest) = cleaned.strip_prefix('(') {
        let close = rest.rfind(')').ok_or_else(|| syntax("missing ')'"))?;
        let inner = &rest[..close];
        let after = &rest[close + 1..];
        let den_text = after.strip_prefix('/').ok_or_else(|| syntax("expected '/INT' after ')'"))?;
        let den = parse_int(den_text).ok_or_else(|| syntax("bad denominator"))?;

        // Split "INT OP INT*sqrt(INT)" at the operator following the first integer.
        let body_start = usize::from(inner.starts_with(['+', '-']));
        let op_pos = inner[body_start..]
            .find(['+', '-'])
            .map(|p| p + body_start)
            .ok_or_else(|| syntax("expected '+' or '-' between terms"))?;
        let a = parse_int(&inner[..op_pos]).ok_or_else(|| syntax("bad rational term"))?;
        let negate = inner.as_bytes()[op_pos] == b'-';
        let surd = &inner[op_pos + 1..];
        let (coef_text, rad_text) = surd.split_once("*sqrt(").ok_or_else(|| syntax("expected 'INT*sqrt(INT)'"))?;
        let rad_text = rad_text.strip_suffix(')').unwrap_or(rad_text);
        let mut b = parse_int(coef_text).ok_or_else(|| syntax("bad surd coefficient"))?;
        if negate {
            b = -b;
        }
        let d: u64 = rad_text.parse().map_err(|_| syntax("radicand must be a non-negative integer"))?;
        let (_, reduced) = square_free_part(d);
        let reduced_radicand = (reduced != d && d != 0).then_some((d, reduced));
        let value = ExactReal::from_parts(a, b, den, d)?;
        return Ok(Parsed { value, reduced_radicand });
    }

    let value = match cleaned.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n).ok_or_else(|| syntax("bad numerator"))?;
            let d = parse_int(d).ok_or_else(|| syntax("bad denominator"))?;
            ExactReal::from_parts(n, BigInt::zero(), d, 0)?
        }
        None => ExactReal::from_integer(parse_int(&cleaned).ok_or_else(|| syntax("bad integer"))?),
    };
    Ok(Parsed { value, reduced_radicand: None })
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str) -> ExactReal {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(x("(0+1*sqrt(2))/4").try_cmp(&x("1/3")).unwrap(), Ordering::Greater);
        assert_eq!(x("1/2").try_cmp(&x("1/2")).unwrap(), Ordering::Equal);
        assert_eq!(x("(-1+1*sqrt(5))/2").try_cmp(&x("2/3")).unwrap(), Ordering::Less);
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let err = x("(0+1*sqrt(2))/4").try_cmp(&x("(0+1*sqrt(3))/4")).unwrap_err();
        assert_eq!(err, ExactError::MixedRadicands { left: 2, right: 3 });
        // A rational mixes with anything.
        assert!(x("1/3").try_add(&x("(0+1*sqrt(3))/4")).is_ok());
    }

    #[test]
    fn frac_examples() {
        assert_eq!(x("(1+1*sqrt(5))/2").frac(), x("(-1+1*sqrt(5))/2"));
        assert_eq!(x("3/4").frac(), x("3/4"));
        assert_eq!(x("-1/4").frac(), x("3/4"));
        assert_eq!(x("-1/4").floor(), BigInt::from(-1));
        assert_eq!(x("(1-1*sqrt(2))/1").floor(), BigInt::from(-1));
        assert_eq!(x("(0-1*sqrt(2))/4").ceil(), BigInt::from(0));
    }

    #[test]
    fn frac_upper_examples() {
        assert_eq!(x("2").frac_upper(), ExactReal::one());
        assert_eq!(x("(0+1*sqrt(2))/4").frac_upper(), x("(0+1*sqrt(2))/4"));
        assert_eq!(x("-1/4").frac_upper(), x("3/4"));
    }

    #[test]
    fn add_examples() {
        assert_eq!(x("1/3").try_add(&x("1/6")).unwrap(), x("1/2"));
        let g = x("(-1+1*sqrt(5))/2");
        assert_eq!(g.try_add(&g).unwrap(), x("(-1+1*sqrt(5))/1"));
        assert_eq!(x("(0+1*sqrt(2))/4").try_add(&x("1/2")).unwrap(), x("(2+1*sqrt(2))/4"));
    }

    #[test]
    fn cf_examples() {
        let cf = x("(-1+1*sqrt(5))/2").cf_expansion(5).unwrap();
        assert_eq!(cf.small_quotients().unwrap(), vec![1, 1, 1, 1, 1]);
        assert!(!cf.terminated);

        let cf = x("1/3").cf_expansion(5).unwrap();
        assert_eq!(cf.small_quotients().unwrap(), vec![3]);
        assert!(cf.terminated);

        let cf = x("(0+1*sqrt(2))/4").cf_expansion(4).unwrap();
        assert_eq!(cf.small_quotients().unwrap(), vec![2, 1, 4, 1]);

        assert!(matches!(x("3/2").cf_expansion(3), Err(ExactError::OutOfRange { .. })));
        assert!(matches!(x("0").cf_expansion(3), Err(ExactError::OutOfRange { .. })));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(x("(1+1*sqrt(5))/2").to_string(), "(1+1*sqrt(5))/2");
        assert_eq!(x("3/4").to_string(), "3/4");
        assert_eq!(x("6/-8").to_string(), "-3/4");
        assert_eq!(x("(2+2*sqrt(8))/4").to_string(), "(1+2*sqrt(2))/2");
        assert_eq!(x("( \u{2212}1 + 1 * sqrt(5) ) / 2").to_string(), "(-1+1*sqrt(5))/2");
        assert_eq!(x("(3-0*sqrt(7))/6").to_string(), "1/2");
        assert_eq!(x("(1+1*sqrt(4))/3").to_string(), "1");

        let p = ExactReal::parse_reporting("(2+2*sqrt(8))/4").unwrap();
        assert_eq!(p.reduced_radicand, Some((8, 2)));
        assert_eq!(ExactReal::parse_reporting("(0+1*sqrt(2))/4").unwrap().reduced_radicand, None);

        for bad in ["", "1/", "(1+sqrt(5))/2", "(1+1*sqrt(5))", "abc", "1/0", "(1+1*sqrt(-5))/2"] {
            assert!(bad.parse::<ExactReal>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn recip_and_mul() {
        let s = x("(0+1*sqrt(2))/4");
        assert_eq!(s.try_mul(&s.recip().unwrap()).unwrap(), ExactReal::one());
        assert_eq!(s.try_mul(&s).unwrap(), x("1/8"));
        assert_eq!(ExactReal::zero().recip(), Err(ExactError::DivisionByZero));
    }
}
