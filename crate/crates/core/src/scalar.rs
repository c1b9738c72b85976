//! Exact coefficients.
//!
//! [`Scalar`] is an arbitrary-precision rational number with an inline fast
//! path for values that are integers fitting in an `i64`; almost every
//! coefficient produced by Magnus expansions and Lyndon brackets is of that
//! kind. [`CoefficientRing`] decides which subset of the rationals is legal
//! and how results are normalized (reduction modulo `p` for prime fields).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    // never an integer that fits in i64
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Small(0))
    }

    pub fn one() -> Self {
        Scalar(Repr::Small(1))
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(Repr::Small(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => Scalar(Repr::Small(s)),
            None => Scalar(Repr::Big(BigRational::from_integer(v))),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_integer() {
            if let Some(s) = r.numer().to_i64() {
                return Scalar(Repr::Small(s));
            }
        }
        Scalar(Repr::Big(r))
    }

    /// `num / den`; panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn to_rational(&self) -> BigRational {
        match &self.0 {
            Repr::Small(v) => BigRational::from_integer((*v).into()),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_) => true,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => (*v).into(),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_) => BigInt::one(),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    /// Multiplicative inverse over the rationals.
    pub fn recip(&self) -> Option<Scalar> {
        if self.is_zero() {
            None
        } else {
            Some(Self::from_rational(self.to_rational().recip()))
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_rational().cmp(&other.to_rational()),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_add(*b) {
                return Scalar(Repr::Small(s));
            }
        }
        Scalar::from_rational(self.to_rational() + rhs.to_rational())
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_sub(*b) {
                return Scalar(Repr::Small(s));
            }
        }
        Scalar::from_rational(self.to_rational() - rhs.to_rational())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_mul(*b) {
                return Scalar(Repr::Small(s));
            }
        }
        Scalar::from_rational(self.to_rational() * rhs.to_rational())
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        if let Repr::Small(a) = &self.0 {
            if let Some(s) = a.checked_neg() {
                return Scalar(Repr::Small(s));
            }
        }
        Scalar::from_rational(-self.to_rational())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `n` or `n/d` with optional leading minus sign.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("not an exact number: `{s}`"));
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        match den {
            None => Ok(Scalar::from_bigint(num)),
            Some(d) => {
                let den: BigInt = d.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::from_rational(BigRational::new(num, den)))
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which exact ring coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    /// `Z/pZ`, elements stored as representatives in `[0, p)`.
    PrimeField(u32),
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d: &u32| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl CoefficientRing {
    pub fn prime_field(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientRing::PrimeField(p))
        } else {
            Err(Error::InvalidInput(format!("{p} is not prime")))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    /// Brings a value produced by ring operations into canonical form.
    ///
    /// Panics if the value is not an element of the ring; use
    /// [`CoefficientRing::convert`] for untrusted input.
    pub fn normalize(&self, x: Scalar) -> Scalar {
        self.convert(&x).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Maps a rational into the ring, failing when it has no image.
    pub fn convert(&self, x: &Scalar) -> Result<Scalar> {
        match self {
            CoefficientRing::Rationals => Ok(x.clone()),
            CoefficientRing::Integers => {
                if x.is_integer() {
                    Ok(x.clone())
                } else {
                    Err(Error::InvalidInput(format!("{x} is not an integer")))
                }
            }
            CoefficientRing::PrimeField(p) => {
                let p = *p as i64;
                if let Some(v) = x.as_i64() {
                    return Ok(Scalar::from_int(v.rem_euclid(p)));
                }
                let pb = BigInt::from(p);
                let num = x.numer().mod_floor(&pb).to_i64().unwrap();
                let den = x.denom().mod_floor(&pb).to_i64().unwrap();
                if den == 0 {
                    return Err(Error::InvalidInput(format!("{x} has no image modulo {p}")));
                }
                Ok(Scalar::from_int((num * mod_inverse(den, p)).rem_euclid(p)))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    /// Inverse in the ring, if it exists.
    pub fn inverse(&self, a: &Scalar) -> Option<Scalar> {
        match self {
            CoefficientRing::Rationals => a.recip(),
            CoefficientRing::Integers => match a.as_i64() {
                Some(1) => Some(Scalar::one()),
                Some(-1) => Some(Scalar::from_int(-1)),
                _ => None,
            },
            CoefficientRing::PrimeField(p) => {
                let v = self.normalize(a.clone()).as_i64()?;
                if v == 0 {
                    None
                } else {
                    Some(Scalar::from_int(mod_inverse(v, *p as i64)))
                }
            }
        }
    }

    // integer-closed fast path; only prime fields need work
    #[inline]
    fn reduce(&self, x: Scalar) -> Scalar {
        match self {
            CoefficientRing::PrimeField(_) => self.normalize(x),
            _ => x,
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let e = i64::extended_gcd(&a.rem_euclid(p), &p);
    e.x.rem_euclid(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_overflow_promotes() {
        let a = Scalar::from_int(i64::MAX);
        let b = &a + &Scalar::one();
        assert_eq!(b.to_string(), "9223372036854775808");
        let c = &b - &Scalar::one();
        assert_eq!(c, a);
        assert!(c.as_i64().is_some());
    }

    #[test]
    fn parse_and_display() {
        let x: Scalar = "-6/4".parse().unwrap();
        assert_eq!(x.to_string(), "-3/2");
        let y: Scalar = "4/2".parse().unwrap();
        assert!(y.is_integer());
        assert_eq!(y.as_i64(), Some(2));
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn prime_field_normalizes() {
        let f = CoefficientRing::prime_field(5).unwrap();
        assert_eq!(f.normalize(Scalar::from_int(-1)), Scalar::from_int(4));
        assert_eq!(
            f.convert(&Scalar::ratio(1, 2)).unwrap(),
            Scalar::from_int(3)
        );
        assert!(f.convert(&Scalar::ratio(1, 5)).is_err());
        assert_eq!(f.inverse(&Scalar::from_int(2)), Some(Scalar::from_int(3)));
        assert!(CoefficientRing::prime_field(9).is_err());
    }

    #[test]
    fn integers_reject_fractions() {
        let z = CoefficientRing::Integers;
        assert!(z.convert(&Scalar::ratio(1, 3)).is_err());
        assert_eq!(z.inverse(&Scalar::from_int(2)), None);
    }
}
