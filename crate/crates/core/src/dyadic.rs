//! Exact arithmetic on the dyadic rationals `Z[1/2]`.
//!
//! A [`Dyadic`] stores `num / 2^exp` in lowest terms. The numerator type is
//! generic so callers can pick a checked machine integer (`i64`, `i128`) or an
//! arbitrary-precision [`num_bigint::BigInt`]. Arithmetic never wraps: the
//! `checked_*` methods report overflow as [`DyadicError::Overflow`] and the
//! operator impls panic with that message.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Integer types usable as the numerator of a [`Dyadic`].
pub trait DyadicInt:
    Integer
    + Signed
    + Clone
    + Hash
    + fmt::Debug
    + fmt::Display
    + FromStr
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> DyadicInt for T where
    T: Integer
        + Signed
        + Clone
        + Hash
        + fmt::Debug
        + fmt::Display
        + FromStr
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DyadicError {
    #[error("dyadic arithmetic overflow")]
    Overflow,
    #[error("empty interval: {lower} is not below {upper}")]
    EmptyInterval { lower: String, upper: String },
    #[error("denominator {0} is not a power of two")]
    NonDyadicDenominator(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid dyadic literal `{0}`")]
    Invalid(String),
}

/// An exact element `num / 2^exp` of `Z[1/2]`, always normalized so that
/// `exp == 0` or `num` is odd.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic<I> {
    num: I,
    exp: u32,
}

fn two<I: DyadicInt>() -> I {
    I::one() + I::one()
}

/// `2^k`, or `None` on overflow.
fn pow2<I: DyadicInt>(k: u32) -> Option<I> {
    num_traits::checked_pow(two::<I>(), k as usize)
}

fn scale<I: DyadicInt>(n: &I, k: u32) -> Result<I, DyadicError> {
    if k == 0 || n.is_zero() {
        return Ok(n.clone());
    }
    pow2::<I>(k)
        .and_then(|p| n.checked_mul(&p))
        .ok_or(DyadicError::Overflow)
}

impl<I: DyadicInt> Dyadic<I> {
    /// `num / 2^exp`, normalized.
    pub fn new(num: I, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let two = two::<I>();
        while self.exp > 0 && self.num.is_even() {
            self.num = self.num.clone() / two.clone();
            self.exp -= 1;
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            num: I::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            num: I::one(),
            exp: 0,
        }
    }

    pub fn from_integer(n: I) -> Self {
        Dyadic { num: n, exp: 0 }
    }

    /// Integer from an `i64`. Panics if `I` cannot represent it.
    pub fn int(n: i64) -> Self {
        Self::from_integer(I::from_i64(n).expect("integer out of range for numerator type"))
    }

    /// `k / 2^m` from machine integers. Panics if `I` cannot represent `k`.
    pub fn frac(k: i64, m: u32) -> Self {
        Self::new(
            I::from_i64(k).expect("integer out of range for numerator type"),
            m,
        )
    }

    pub fn numerator(&self) -> &I {
        &self.num
    }

    /// Denominator exponent `m` in `k / 2^m`.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn to_integer(&self) -> Option<I> {
        self.is_integer().then(|| self.num.clone())
    }

    /// Greatest integer `<= self`.
    pub fn floor(&self) -> I {
        match pow2::<I>(self.exp) {
            Some(d) => self.num.div_floor(&d),
            // |num| < 2^exp, so the value lies strictly inside (-1, 1).
            None if self.num.is_negative() => -I::one(),
            None => I::zero(),
        }
    }

    /// Least integer `>= self`.
    pub fn ceil(&self) -> I {
        -(-self.clone()).floor()
    }

    fn aligned(&self, other: &Self) -> Result<(I, I, u32), DyadicError> {
        let e = self.exp.max(other.exp);
        Ok((
            scale(&self.num, e - self.exp)?,
            scale(&other.num, e - other.exp)?,
            e,
        ))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, DyadicError> {
        let (a, b, e) = self.aligned(other)?;
        let s = a.checked_add(&b).ok_or(DyadicError::Overflow)?;
        Ok(Self::new(s, e))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, DyadicError> {
        let (a, b, e) = self.aligned(other)?;
        let s = a.checked_sub(&b).ok_or(DyadicError::Overflow)?;
        Ok(Self::new(s, e))
    }

    pub fn checked_neg(&self) -> Result<Self, DyadicError> {
        let n = I::zero()
            .checked_sub(&self.num)
            .ok_or(DyadicError::Overflow)?;
        Ok(Dyadic { num: n, exp: self.exp })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, DyadicError> {
        let n = self
            .num
            .checked_mul(&other.num)
            .ok_or(DyadicError::Overflow)?;
        let e = self
            .exp
            .checked_add(other.exp)
            .ok_or(DyadicError::Overflow)?;
        Ok(Self::new(n, e))
    }

    pub fn checked_mul_int(&self, k: &I) -> Result<Self, DyadicError> {
        let n = self.num.checked_mul(k).ok_or(DyadicError::Overflow)?;
        Ok(Self::new(n, self.exp))
    }

    pub fn double(&self) -> Result<Self, DyadicError> {
        if self.exp > 0 {
            Ok(Dyadic {
                num: self.num.clone(),
                exp: self.exp - 1,
            })
        } else {
            Ok(Dyadic {
                num: scale(&self.num, 1)?,
                exp: 0,
            })
        }
    }

    pub fn half(&self) -> Result<Self, DyadicError> {
        if self.num.is_zero() {
            return Ok(Self::zero());
        }
        let e = self.exp.checked_add(1).ok_or(DyadicError::Overflow)?;
        Ok(Self::new(self.num.clone(), e))
    }

    /// The unit `2^-exp`, i.e. the spacing of the grid `self` was born on.
    pub fn ulp(&self) -> Self {
        Dyadic {
            num: I::one(),
            exp: self.exp,
        }
    }

    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering, DyadicError> {
        if self.exp == other.exp {
            return Ok(self.num.cmp(&other.num));
        }
        let (a, b, _) = self.aligned(other)?;
        Ok(a.cmp(&b))
    }

    /// Exact decimal expansion (`k / 2^m` always terminates after `m` digits).
    pub fn to_decimal_string(&self) -> String {
        if self.exp == 0 {
            return self.num.to_string();
        }
        // k / 2^m = k * 5^m / 10^m
        let five = I::from_u8(5).expect("5 fits every numerator type");
        let scaled = num_traits::checked_pow(five, self.exp as usize)
            .and_then(|p| self.num.abs().checked_mul(&p))
            .expect("dyadic overflow while formatting");
        let digits = scaled.to_string();
        let width = self.exp as usize;
        let padded = format!("{digits:0>w$}", w = width + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - width);
        let frac_part = frac_part.trim_end_matches('0');
        let sign = if self.num.is_negative() { "-" } else { "" };
        format!("{sign}{int_part}.{frac_part}")
    }
}

impl<I: DyadicInt> Ord for Dyadic<I> {
    /// Panics on overflow while aligning denominators.
    fn cmp(&self, other: &Self) -> Ordering {
        self.checked_cmp(other).expect("dyadic overflow in comparison")
    }
}

impl<I: DyadicInt> PartialOrd for Dyadic<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, I: DyadicInt> $tr<&'a Dyadic<I>> for &'a Dyadic<I> {
            type Output = Dyadic<I>;
            fn $method(self, rhs: &'a Dyadic<I>) -> Dyadic<I> {
                self.$checked(rhs).expect("dyadic arithmetic overflow")
            }
        }
        impl<I: DyadicInt> $tr<Dyadic<I>> for Dyadic<I> {
            type Output = Dyadic<I>;
            fn $method(self, rhs: Dyadic<I>) -> Dyadic<I> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, I: DyadicInt> $tr<&'a Dyadic<I>> for Dyadic<I> {
            type Output = Dyadic<I>;
            fn $method(self, rhs: &'a Dyadic<I>) -> Dyadic<I> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<I: DyadicInt> Neg for Dyadic<I> {
    type Output = Dyadic<I>;
    fn neg(self) -> Dyadic<I> {
        self.checked_neg().expect("dyadic arithmetic overflow")
    }
}

impl<I: DyadicInt> Neg for &Dyadic<I> {
    type Output = Dyadic<I>;
    fn neg(self) -> Dyadic<I> {
        self.checked_neg().expect("dyadic arithmetic overflow")
    }
}

impl<I: DyadicInt> fmt::Display for Dyadic<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            let den = pow2::<I>(self.exp).ok_or(fmt::Error)?;
            write!(f, "{}/{}", self.num, den)
        }
    }
}

impl<I: DyadicInt> fmt::Debug for Dyadic<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_unsigned<I: DyadicInt>(s: &str, whole: &str) -> Result<I, DyadicError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(DyadicError::Invalid(whole.to_string()));
    }
    s.parse::<I>().map_err(|_| DyadicError::Overflow)
}

impl<I: DyadicInt> FromStr for Dyadic<I> {
    type Err = DyadicError;

    /// Accepts `n`, `-n`, `k/d` and `-k/d` where `d` is a power of two.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (num_text, den_text) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        let mut num: I = parse_unsigned(num_text, s)?;
        if negative {
            num = -num;
        }
        let Some(den_text) = den_text else {
            return Ok(Self::from_integer(num));
        };
        let den: I = parse_unsigned(den_text, s)?;
        if den.is_zero() {
            return Err(DyadicError::ZeroDenominator);
        }
        let mut rest = den.clone();
        let mut exp = 0u32;
        let two = two::<I>();
        while rest.is_even() {
            rest = rest / two.clone();
            exp += 1;
        }
        if !rest.is_one() {
            return Err(DyadicError::NonDyadicDenominator(den.to_string()));
        }
        Ok(Self::new(num, exp))
    }
}

impl<I: DyadicInt> Serialize for Dyadic<I> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de, I: DyadicInt> Deserialize<'de> for Dyadic<I> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A dyadic extended by `-inf` and `+inf`.
///
/// Ordered `-inf < finite < +inf`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Extended<I> {
    NegInf,
    Finite(Dyadic<I>),
    PosInf,
}

impl<I: DyadicInt> Ord for Extended<I> {
    fn cmp(&self, other: &Self) -> Ordering {
        use Extended::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
        }
    }
}

impl<I: DyadicInt> PartialOrd for Extended<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<I: DyadicInt> Extended<I> {
    pub fn finite(&self) -> Option<&Dyadic<I>> {
        match self {
            Extended::Finite(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }
}

impl<I: DyadicInt> From<Dyadic<I>> for Extended<I> {
    fn from(d: Dyadic<I>) -> Self {
        Extended::Finite(d)
    }
}

impl<I: DyadicInt> fmt::Display for Extended<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => f.write_str("-inf"),
            Extended::Finite(d) => fmt::Display::fmt(d, f),
            Extended::PosInf => f.write_str("+inf"),
        }
    }
}

impl<I: DyadicInt> fmt::Debug for Extended<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<I: DyadicInt> FromStr for Extended<I> {
    type Err = DyadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "-inf" => Ok(Extended::NegInf),
            "+inf" => Ok(Extended::PosInf),
            _ => s.parse().map(Extended::Finite),
        }
    }
}

impl<I: DyadicInt> Serialize for Extended<I> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de, I: DyadicInt> Deserialize<'de> for Extended<I> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// The simplest number strictly between `lower` and `upper`: the integer of
/// least absolute value in the interval if there is one, otherwise the dyadic
/// with the smallest denominator.
pub fn simplest_strictly_between<I: DyadicInt>(
    lower: &Extended<I>,
    upper: &Extended<I>,
) -> Result<Dyadic<I>, DyadicError> {
    if lower >= upper {
        return Err(DyadicError::EmptyInterval {
            lower: lower.to_string(),
            upper: upper.to_string(),
        });
    }
    let zero = Extended::Finite(Dyadic::zero());
    if *lower < zero && zero < *upper {
        return Ok(Dyadic::zero());
    }
    match (lower, upper) {
        (Extended::Finite(l), _) if !l.is_negative() => simplest_above(l, upper),
        (_, Extended::Finite(u)) => {
            // upper <= 0: mirror into the non-negative half-line.
            let mirrored_upper = match lower {
                Extended::NegInf => Extended::PosInf,
                Extended::Finite(l) => Extended::Finite(l.checked_neg()?),
                Extended::PosInf => unreachable!("lower < upper"),
            };
            simplest_above(&u.checked_neg()?, &mirrored_upper)?.checked_neg()
        }
        _ => unreachable!("intervals containing 0 were handled above"),
    }
}

/// Simplest number in `(lower, upper)` where `lower >= 0`.
fn simplest_above<I: DyadicInt>(
    lower: &Dyadic<I>,
    upper: &Extended<I>,
) -> Result<Dyadic<I>, DyadicError> {
    let below = |x: &Dyadic<I>| match upper {
        Extended::Finite(u) => x < u,
        Extended::PosInf => true,
        Extended::NegInf => false,
    };
    let next_int = lower
        .floor()
        .checked_add(&I::one())
        .ok_or(DyadicError::Overflow)?;
    let candidate = Dyadic::from_integer(next_int);
    if below(&candidate) {
        return Ok(candidate);
    }
    // No integer inside: the interval sits in (n, n+1]; take the coarsest grid
    // point strictly above `lower`.
    let mut exp = 1u32;
    loop {
        let grid = pow2::<I>(exp).ok_or(DyadicError::Overflow)?;
        let scaled = lower.checked_mul(&Dyadic::from_integer(grid))?;
        let k = scaled
            .floor()
            .checked_add(&I::one())
            .ok_or(DyadicError::Overflow)?;
        let candidate = Dyadic::new(k, exp);
        if below(&candidate) {
            return Ok(candidate);
        }
        exp = exp.checked_add(1).ok_or(DyadicError::Overflow)?;
    }
}
