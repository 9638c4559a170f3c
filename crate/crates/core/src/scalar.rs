//! Exact scalars: big rationals, quadratic surds a + b·√d, and outward-rounded balls.
//!
//! Branch decisions go through [`ExactScalar::sign`], which is always exact for the
//! rational and quadratic kinds and fails with `PrecisionExhausted` when a ball
//! straddles zero.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 128;
/// Number of precision doublings tried by [`refine`].
pub const MAX_DOUBLINGS: u32 = 64;

/// Working precision in bits for ball scalars (`LORENZKIT_PRECISION`, default 128).
pub fn default_precision() -> u32 {
    std::env::var("LORENZKIT_PRECISION")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&b: &u32| b >= 8)
        .unwrap_or(DEFAULT_PRECISION)
}

/// Hard ceiling on refinement (`LORENZKIT_MAX_PRECISION`, default 65536 bits).
pub fn max_precision() -> u32 {
    std::env::var("LORENZKIT_MAX_PRECISION")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1 << 16)
}

/// Re-run `f` with doubled precision while it reports `PrecisionExhausted`.
pub fn refine<T>(mut f: impl FnMut(u32) -> Result<T>) -> Result<T> {
    let mut bits = default_precision();
    let cap = max_precision();
    for _ in 0..=MAX_DOUBLINGS {
        match f(bits) {
            Err(Error::PrecisionExhausted) if bits < cap => bits = bits.saturating_mul(2).min(cap),
            other => return other,
        }
    }
    Err(Error::PrecisionExhausted)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pow2(bits: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << bits as usize)
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Split d = s²·r with r squarefree.
fn squarefree_split(mut d: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        while d.is_multiple_of(p * p) {
            d /= p * p;
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, d)
}

/// a + b·√d with d squarefree, d > 1 and b ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    pub a: BigRational,
    pub b: BigRational,
    pub d: u64,
}

impl Surd {
    fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (Ordering::Less, Ordering::Less)
            | (Ordering::Equal, Ordering::Less)
            | (Ordering::Less, Ordering::Equal) => Ordering::Less,
            (Ordering::Greater, Ordering::Greater)
            | (Ordering::Equal, Ordering::Greater)
            | (Ordering::Greater, Ordering::Equal) => Ordering::Greater,
            (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
            _ => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
                if sa == Ordering::Greater {
                    a2.cmp(&b2d)
                } else {
                    b2d.cmp(&a2)
                }
            }
        }
    }

    fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * (self.d as f64).sqrt()
    }

    fn to_ball(&self, bits: u32) -> Ball {
        // s/2^k <= sqrt(d) < (s+1)/2^k
        let k = bits + 4;
        let scaled = BigInt::from(self.d) << (2 * k as usize);
        let s = scaled.sqrt();
        let lo = BigRational::new(s.clone(), BigInt::one() << k as usize);
        let half_ulp = BigRational::new(BigInt::one(), BigInt::one() << (k as usize + 1));
        let root_mid = lo + &half_ulp;
        let mid = &self.a + &self.b * root_mid;
        let rad = self.b.abs() * half_ulp;
        Ball { mid, rad, bits }.rounded()
    }
}

/// Ball [mid − rad, mid + rad]; `bits` is the absolute rounding granularity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ball {
    pub mid: BigRational,
    pub rad: BigRational,
    pub bits: u32,
}

impl Ball {
    pub fn exact(x: BigRational, bits: u32) -> Ball {
        Ball {
            mid: x,
            rad: BigRational::zero(),
            bits,
        }
    }

    pub fn from_bounds(lo: BigRational, hi: BigRational, bits: u32) -> Ball {
        let two = BigRational::from_integer(BigInt::from(2));
        let mid = (&lo + &hi) / &two;
        let rad = (hi - lo).abs() / two;
        Ball { mid, rad, bits }
    }

    pub fn lo(&self) -> BigRational {
        &self.mid - &self.rad
    }

    pub fn hi(&self) -> BigRational {
        &self.mid + &self.rad
    }

    fn rounded(mut self) -> Ball {
        let scale = pow2(self.bits);
        let scaled = &self.mid * &scale;
        let mut err = BigRational::zero();
        if !scaled.is_integer() {
            let m = scaled.round() / &scale;
            err = (&self.mid - &m).abs();
            self.mid = m;
        }
        let total = &self.rad + err;
        self.rad = if total.is_zero() {
            total
        } else {
            (total * &scale).ceil() / scale
        };
        self
    }

    fn sign(&self) -> Result<Ordering> {
        if self.rad.is_zero() {
            return Ok(self.mid.cmp(&BigRational::zero()));
        }
        if self.lo().is_positive() {
            Ok(Ordering::Greater)
        } else if self.hi().is_negative() {
            Ok(Ordering::Less)
        } else {
            Err(Error::PrecisionExhausted)
        }
    }

    fn add(&self, o: &Ball) -> Ball {
        Ball {
            mid: &self.mid + &o.mid,
            rad: &self.rad + &o.rad,
            bits: self.bits.max(o.bits),
        }
        .rounded()
    }

    fn mul(&self, o: &Ball) -> Ball {
        let rad = self.mid.abs() * &o.rad + o.mid.abs() * &self.rad + &self.rad * &o.rad;
        Ball {
            mid: &self.mid * &o.mid,
            rad,
            bits: self.bits.max(o.bits),
        }
        .rounded()
    }

    fn recip(&self) -> Ball {
        let (lo, hi) = (self.lo(), self.hi());
        assert!(
            lo.is_positive() || hi.is_negative(),
            "division by a ball containing zero"
        );
        Ball::from_bounds(hi.recip(), lo.recip(), self.bits).rounded()
    }
}

#[derive(Clone, Debug)]
pub enum ExactScalar {
    Rational(BigRational),
    Quadratic(Surd),
    Interval(Ball),
}

impl PartialEq for ExactScalar {
    /// Structural equality; exact kinds are normalized so this is value equality there.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExactScalar::Rational(a), ExactScalar::Rational(b)) => a == b,
            (ExactScalar::Quadratic(a), ExactScalar::Quadratic(b)) => a == b,
            (ExactScalar::Interval(a), ExactScalar::Interval(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for ExactScalar {}

impl Hash for ExactScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            ExactScalar::Rational(r) => {
                0u8.hash(state);
                r.hash(state)
            }
            ExactScalar::Quadratic(s) => {
                1u8.hash(state);
                s.hash(state)
            }
            ExactScalar::Interval(b) => {
                2u8.hash(state);
                b.hash(state)
            }
        }
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        ExactScalar::Rational(r)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl ExactScalar {
    pub fn zero() -> Self {
        0.into()
    }

    pub fn one() -> Self {
        1.into()
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ExactScalar::Rational(rat(n, d))
    }

    /// a + b·√d, normalized (falls back to a rational when the root is exact).
    pub fn surd(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() || d == 0 {
            return ExactScalar::Rational(a);
        }
        let (s, r) = squarefree_split(d);
        let b = b * BigRational::from_integer(BigInt::from(s));
        if r == 1 {
            return ExactScalar::Rational(a + b);
        }
        ExactScalar::Quadratic(Surd { a, b, d: r })
    }

    /// (1 + √5)/2.
    pub fn golden() -> Self {
        Self::surd(rat(1, 2), rat(1, 2), 5)
    }

    pub fn sqrt2() -> Self {
        Self::surd(BigRational::zero(), BigRational::one(), 2)
    }

    /// √n for a non-negative integer n (exact surd).
    pub fn sqrt_int(n: u64) -> Self {
        Self::surd(BigRational::zero(), BigRational::one(), n)
    }

    pub fn interval(lo: BigRational, hi: BigRational) -> Self {
        ExactScalar::Interval(Ball::from_bounds(lo, hi, default_precision()))
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, ExactScalar::Interval(_))
    }

    /// Rough storage size in bits (numerators plus denominators).
    pub fn bit_size(&self) -> u64 {
        let r = |q: &BigRational| q.numer().bits() + q.denom().bits();
        match self {
            ExactScalar::Rational(q) => r(q),
            ExactScalar::Quadratic(s) => r(&s.a) + r(&s.b),
            ExactScalar::Interval(b) => r(&b.mid) + r(&b.rad),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactScalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactScalar::Rational(r) => rat_to_f64(r),
            ExactScalar::Quadratic(s) => s.to_f64(),
            ExactScalar::Interval(b) => rat_to_f64(&b.mid),
        }
    }

    pub fn to_ball(&self, bits: u32) -> Ball {
        match self {
            ExactScalar::Rational(r) => Ball::exact(r.clone(), bits),
            ExactScalar::Quadratic(s) => s.to_ball(bits),
            ExactScalar::Interval(b) => b.clone(),
        }
    }

    /// Force ball representation at the given precision.
    pub fn as_interval(&self, bits: u32) -> Self {
        ExactScalar::Interval(self.to_ball(bits))
    }

    pub fn sign(&self) -> Result<Ordering> {
        match self {
            ExactScalar::Rational(r) => Ok(r.cmp(&BigRational::zero())),
            ExactScalar::Quadratic(s) => Ok(s.sign()),
            ExactScalar::Interval(b) => b.sign(),
        }
    }

    pub fn cmp_to(&self, other: &ExactScalar) -> Result<Ordering> {
        match (self, other) {
            (ExactScalar::Rational(a), ExactScalar::Rational(b)) => Ok(a.cmp(b)),
            _ => (self - other).sign(),
        }
    }

    pub fn lt(&self, o: &ExactScalar) -> Result<bool> {
        Ok(self.cmp_to(o)? == Ordering::Less)
    }

    pub fn le(&self, o: &ExactScalar) -> Result<bool> {
        Ok(self.cmp_to(o)? != Ordering::Greater)
    }

    pub fn gt(&self, o: &ExactScalar) -> Result<bool> {
        Ok(self.cmp_to(o)? == Ordering::Greater)
    }

    pub fn ge(&self, o: &ExactScalar) -> Result<bool> {
        Ok(self.cmp_to(o)? != Ordering::Less)
    }

    /// Value equality; fails on ambiguous balls.
    pub fn eq_val(&self, o: &ExactScalar) -> Result<bool> {
        Ok(self.cmp_to(o)? == Ordering::Equal)
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.sign()? == Ordering::Equal)
    }

    pub fn abs(&self) -> Result<ExactScalar> {
        Ok(if self.sign()? == Ordering::Less {
            -self
        } else {
            self.clone()
        })
    }

    pub fn min(&self, o: &ExactScalar) -> Result<ExactScalar> {
        Ok(if self.le(o)? { self.clone() } else { o.clone() })
    }

    pub fn max(&self, o: &ExactScalar) -> Result<ExactScalar> {
        Ok(if self.ge(o)? { self.clone() } else { o.clone() })
    }

    pub fn floor(&self) -> Result<BigInt> {
        match self {
            ExactScalar::Rational(r) => Ok(r.floor().to_integer()),
            ExactScalar::Quadratic(s) => {
                let approx = s.to_f64();
                let mut n = if approx.is_finite() {
                    BigInt::from(approx.floor() as i64)
                } else {
                    s.to_ball(256).mid.floor().to_integer()
                };
                loop {
                    let nq = ExactScalar::Rational(BigRational::from_integer(n.clone()));
                    if self.lt(&nq)? {
                        n -= 1;
                        continue;
                    }
                    let n1 = ExactScalar::Rational(BigRational::from_integer(&n + 1));
                    if self.ge(&n1)? {
                        n += 1;
                        continue;
                    }
                    return Ok(n);
                }
            }
            ExactScalar::Interval(b) => {
                let lo = b.lo().floor().to_integer();
                let hi = b.hi().floor().to_integer();
                if lo == hi {
                    Ok(lo)
                } else {
                    Err(Error::PrecisionExhausted)
                }
            }
        }
    }

    /// Representative in [0, m) of self modulo m (m a positive integer).
    pub fn rem_int(&self, m: u32) -> Result<ExactScalar> {
        if m == 1 {
            let k = self.floor()?;
            return Ok(self - &ExactScalar::Rational(BigRational::from_integer(k)));
        }
        let mm = ExactScalar::from(m as i64);
        let k = (self / &mm).floor()?;
        Ok(self - &(&mm * &ExactScalar::Rational(BigRational::from_integer(k))))
    }

    /// Shared quadratic field of two operands, if any.
    fn field_parts(&self, d: u64) -> Option<(BigRational, BigRational)> {
        match self {
            ExactScalar::Rational(r) => Some((r.clone(), BigRational::zero())),
            ExactScalar::Quadratic(s) if s.d == d => Some((s.a.clone(), s.b.clone())),
            _ => None,
        }
    }

    fn common_field(x: &ExactScalar, y: &ExactScalar) -> Option<u64> {
        match (x, y) {
            (ExactScalar::Quadratic(s), ExactScalar::Quadratic(t)) => (s.d == t.d).then_some(s.d),
            (ExactScalar::Quadratic(s), ExactScalar::Rational(_)) => Some(s.d),
            (ExactScalar::Rational(_), ExactScalar::Quadratic(t)) => Some(t.d),
            _ => None,
        }
    }

    fn ball_bits(x: &ExactScalar, y: &ExactScalar) -> u32 {
        let b = |s: &ExactScalar| match s {
            ExactScalar::Interval(b) => b.bits,
            _ => 0,
        };
        b(x).max(b(y)).max(default_precision())
    }

    fn add_impl(&self, o: &ExactScalar) -> ExactScalar {
        if let (ExactScalar::Rational(a), ExactScalar::Rational(b)) = (self, o) {
            return ExactScalar::Rational(a + b);
        }
        if let Some(d) = Self::common_field(self, o) {
            let (a, b) = self.field_parts(d).unwrap();
            let (c, e) = o.field_parts(d).unwrap();
            return ExactScalar::surd(a + c, b + e, d);
        }
        let bits = Self::ball_bits(self, o);
        ExactScalar::Interval(self.to_ball(bits).add(&o.to_ball(bits)))
    }

    fn mul_impl(&self, o: &ExactScalar) -> ExactScalar {
        if let (ExactScalar::Rational(a), ExactScalar::Rational(b)) = (self, o) {
            return ExactScalar::Rational(a * b);
        }
        if let Some(d) = Self::common_field(self, o) {
            let (a, b) = self.field_parts(d).unwrap();
            let (c, e) = o.field_parts(d).unwrap();
            let dd = BigRational::from_integer(BigInt::from(d));
            return ExactScalar::surd(&a * &c + &b * &e * dd, a * e + b * c, d);
        }
        let bits = Self::ball_bits(self, o);
        ExactScalar::Interval(self.to_ball(bits).mul(&o.to_ball(bits)))
    }

    pub fn recip(&self) -> ExactScalar {
        match self {
            ExactScalar::Rational(r) => ExactScalar::Rational(r.recip()),
            ExactScalar::Quadratic(s) => {
                let dd = BigRational::from_integer(BigInt::from(s.d));
                let den = &s.a * &s.a - &s.b * &s.b * dd;
                ExactScalar::surd(&s.a / &den, -(&s.b / &den), s.d)
            }
            ExactScalar::Interval(b) => ExactScalar::Interval(b.recip()),
        }
    }

    fn neg_impl(&self) -> ExactScalar {
        match self {
            ExactScalar::Rational(r) => ExactScalar::Rational(-r),
            ExactScalar::Quadratic(s) => ExactScalar::Quadratic(Surd {
                a: -&s.a,
                b: -&s.b,
                d: s.d,
            }),
            ExactScalar::Interval(b) => ExactScalar::Interval(Ball {
                mid: -&b.mid,
                rad: b.rad.clone(),
                bits: b.bits,
            }),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: &'b ExactScalar) -> ExactScalar {
                let f: fn(&ExactScalar, &ExactScalar) -> ExactScalar = $body;
                f(self, o)
            }
        }
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                (&self).$m(&o)
            }
        }
        impl<'b> $tr<&'b ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: &'b ExactScalar) -> ExactScalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b));
binop!(Sub, sub, |a, b| a.add_impl(&b.neg_impl()));
binop!(Mul, mul, |a, b| a.mul_impl(b));
binop!(Div, div, |a, b| a.mul_impl(&b.recip()));

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.neg_impl()
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.neg_impl()
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(r) => write!(f, "{r}"),
            ExactScalar::Quadratic(s) => {
                let root = if s.b.is_one() {
                    format!("sqrt({})", s.d)
                } else if (-&s.b).is_one() {
                    format!("-sqrt({})", s.d)
                } else {
                    format!("{}*sqrt({})", s.b, s.d)
                };
                if s.a.is_zero() {
                    write!(f, "{root}")
                } else if root.starts_with('-') {
                    write!(f, "{}{}", s.a, root)
                } else {
                    write!(f, "{}+{}", s.a, root)
                }
            }
            ExactScalar::Interval(b) => write!(f, "{}..{}", b.lo(), b.hi()),
        }
    }
}

/// Parse "p/q", "-7", decimal "1.8", "1e-3".
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let ten = BigInt::from(10);
    let scale = exp - frac.len() as i32;
    let mut r = BigRational::from_integer(digits);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -r } else { r })
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "golden" | "phi" => return Ok(ExactScalar::golden()),
            "sqrt2" => return Ok(ExactScalar::sqrt2()),
            _ => {}
        }
        if let Some((lo, hi)) = t.split_once("..") {
            let lo = parse_rational(lo)?;
            let hi = parse_rational(hi)?;
            if lo > hi {
                return Err(Error::Parse(format!("empty interval {t:?}")));
            }
            return Ok(ExactScalar::interval(lo, hi));
        }
        if let Some(pos) = t.find("sqrt(") {
            // [a(+|-)][b*]sqrt(d)
            let close = t[pos..]
                .find(')')
                .ok_or_else(|| Error::Parse(t.to_string()))?
                + pos;
            let d: u64 = t[pos + 5..close]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(t.to_string()))?;
            if close + 1 != t.len() {
                return Err(Error::Parse(format!("trailing input in {t:?}")));
            }
            let head = t[..pos].trim_end_matches('*');
            let split = head
                .char_indices()
                .rev()
                .find(|&(i, c)| {
                    (c == '+' || c == '-') && i > 0 && !head[..i].ends_with(['e', 'E', '/'])
                })
                .map(|(i, _)| i);
            let (a, bstr) = match split {
                Some(i) => (parse_rational(&head[..i])?, &head[i..]),
                None => (BigRational::zero(), head),
            };
            let b = match bstr.trim() {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                other => parse_rational(other)?,
            };
            return Ok(ExactScalar::surd(a, b, d));
        }
        Ok(ExactScalar::Rational(parse_rational(t)?))
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serialize a big rational as "p/q".
pub fn rational_string(r: &BigRational) -> String {
    r.to_string()
}

/// Greatest common divisor helper used by word utilities.
pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ExactScalar {
        x.parse().unwrap()
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(s("1.8"), ExactScalar::ratio(9, 5));
        assert_eq!(s("0.3455"), ExactScalar::ratio(691, 2000));
        assert_eq!(s("-2/4"), ExactScalar::ratio(-1, 2));
        assert_eq!(s("1e-3"), ExactScalar::ratio(1, 1000));
    }

    #[test]
    fn golden_identity() {
        let g = ExactScalar::golden();
        // g^2 = g + 1
        assert_eq!(&g * &g, &g + &ExactScalar::one());
        assert_eq!(g.floor().unwrap(), BigInt::from(1));
        assert_eq!(s(&g.to_string()), g);
    }

    #[test]
    fn surd_sign_and_recip() {
        let x = s("3-2*sqrt(2)"); // 0.17..
        assert_eq!(x.sign().unwrap(), Ordering::Greater);
        let y = s("1-sqrt(2)");
        assert_eq!(y.sign().unwrap(), Ordering::Less);
        assert_eq!(&x * &x.recip(), ExactScalar::one());
        assert_eq!(s("sqrt(8)"), s("2*sqrt(2)"));
        assert_eq!(s("sqrt(9)"), ExactScalar::from(3));
    }

    #[test]
    fn ball_comparisons() {
        let g = ExactScalar::golden().as_interval(64);
        assert!(g.gt(&ExactScalar::ratio(161, 100)).unwrap());
        let zero = &g - &g;
        assert_eq!(zero.sign(), Err(Error::PrecisionExhausted));
    }

    #[test]
    fn refinement_reaches_tight_comparison() {
        // sqrt2 vs a rational 2^-200 above it
        let target = ExactScalar::sqrt2().to_ball(400).hi() + rat(1, 1) / pow2(200);
        let t = ExactScalar::Rational(target);
        let out = refine(|bits| ExactScalar::sqrt2().as_interval(bits).lt(&t)).unwrap();
        assert!(out);
    }

    #[test]
    fn modular_reduction() {
        assert_eq!(s("7/3").rem_int(1).unwrap(), ExactScalar::ratio(1, 3));
        assert_eq!(s("-1/4").rem_int(2).unwrap(), ExactScalar::ratio(7, 4));
    }
}
