//! Exact membership degrees.
//!
//! A [`Membership`] is a finite decimal in `[0, 1]`. Finite decimals are closed
//! under `min`, products and `max(0, a + b - 1)`, so every value this crate
//! produces prints back exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Membership(BigRational);

impl Membership {
    pub fn zero() -> Self {
        Membership(BigRational::zero())
    }

    pub fn one() -> Self {
        Membership(BigRational::one())
    }

    /// `numer / denom`, which must be a finite decimal in `[0, 1]`.
    pub fn from_ratio(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::BadMembership(format!("{numer}/{denom}")));
        }
        Self::from_rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_rational(value: BigRational) -> Result<Self> {
        if value.is_negative() || value > BigRational::one() {
            return Err(Error::MembershipOutOfRange(value.to_string()));
        }
        if decimal_scale(value.denom()).is_none() {
            return Err(Error::BadMembership(format!(
                "{value} has no finite decimal expansion"
            )));
        }
        Ok(Membership(value))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Lossy conversion for display and statistics only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub(crate) fn product(&self, other: &Self) -> Self {
        Membership(&self.0 * &other.0)
    }

    pub(crate) fn lukasiewicz(&self, other: &Self) -> Self {
        let s = &self.0 + &other.0 - BigRational::one();
        if s.is_negative() {
            Self::zero()
        } else {
            Membership(s)
        }
    }

    pub fn sum<'a>(values: impl IntoIterator<Item = &'a Membership>) -> Total {
        Total(
            values
                .into_iter()
                .fold(BigRational::zero(), |acc, m| acc + &m.0),
        )
    }
}

/// An exact sum of memberships; may exceed 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Total(BigRational);

impl Total {
    pub fn zero() -> Self {
        Total(BigRational::zero())
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Total {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_decimal(&self.0))
    }
}

impl fmt::Debug for Total {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Total({self})")
    }
}

impl Serialize for Total {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Smallest `s` with `denom | 10^s`, if any.
fn decimal_scale(denom: &BigInt) -> Option<u32> {
    let mut d = denom.clone();
    let two = BigInt::from(2u8);
    let five = BigInt::from(5u8);
    let (mut twos, mut fives) = (0u32, 0u32);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    d.is_one().then_some(twos.max(fives))
}

/// Renders a non-negative finite-decimal rational exactly.
pub(crate) fn format_decimal(value: &BigRational) -> String {
    let scale = decimal_scale(value.denom()).expect("finite decimal");
    let pow = num_traits::pow(BigInt::from(10u8), scale as usize);
    let scaled = value.numer() * &pow / value.denom();
    let int_part = &scaled / &pow;
    let frac_part = &scaled % &pow;
    let mut frac = format!("{:0>width$}", frac_part.to_string(), width = scale as usize);
    while frac.ends_with('0') {
        frac.pop();
    }
    if frac.is_empty() {
        frac.push('0');
    }
    format!("{int_part}.{frac}")
}

/// Parses an unsigned decimal literal such as `0.75`, `1` or `1.000`.
pub(crate) fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::BadMembership(s.to_string());
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part.is_empty()
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
        || (s.contains('.') && frac_part.is_empty())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10u8), frac_part.len());
    Ok(BigRational::new(numer, denom))
}

impl FromStr for Membership {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let value = parse_decimal(s.trim())?;
        if value > BigRational::one() {
            return Err(Error::MembershipOutOfRange(s.to_string()));
        }
        Ok(Membership(value))
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_decimal(&self.0))
    }
}

impl fmt::Debug for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Membership({self})")
    }
}

impl Serialize for Membership {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Membership {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A cut threshold α in `(0, 1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MembershipLevel(Membership);

impl MembershipLevel {
    pub fn new(value: Membership) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::BadLevel(value.to_string()));
        }
        Ok(MembershipLevel(value))
    }

    pub fn one() -> Self {
        MembershipLevel(Membership::one())
    }

    pub fn value(&self) -> &Membership {
        &self.0
    }

    /// `μ ≥ α`
    pub fn admits(&self, mu: &Membership) -> bool {
        *mu >= self.0
    }
}

impl FromStr for MembershipLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let m: Membership = s.parse().map_err(|e| match e {
            Error::MembershipOutOfRange(v) => Error::BadLevel(v),
            other => other,
        })?;
        MembershipLevel::new(m)
    }
}

impl fmt::Display for MembershipLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for MembershipLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MembershipLevel({})", self.0)
    }
}

impl Serialize for MembershipLevel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MembershipLevel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
