//! Exact integer and half-integer angular-momentum labels.
//!
//! Every label is stored as twice its value, so `3/2` is held as `3` and
//! factorial arguments such as `j + m` are always computed exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// An integer or half-integer, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i32) -> Self {
        Self { twice }
    }

    pub const fn from_int(value: i32) -> Self {
        Self { twice: 2 * value }
    }

    pub const fn twice(self) -> i32 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn abs(self) -> Self {
        Self {
            twice: self.twice.abs(),
        }
    }

    /// Value as a float. Exact for every representable label.
    pub fn value<T: Real>(self) -> T {
        crate::scalar::from_i64::<T>(self.twice as i64) / crate::scalar::lit(2.0)
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for HalfInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice.cmp(&other.twice)
    }
}

impl Neg for HalfInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self { twice: -self.twice }
    }
}

impl Add for HalfInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            twice: self.twice + rhs.twice,
        }
    }
}

impl Sub for HalfInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            twice: self.twice - rhs.twice,
        }
    }
}

impl From<i32> for HalfInt {
    fn from(value: i32) -> Self {
        Self::from_int(value)
    }
}

/// Parses `"3"`, `"-3/2"` or `"1.5"`.
pub fn halfint_from_string(s: &str) -> Result<HalfInt> {
    let err = || Error::ParseHalfInt(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: i32 = parse_int(num).ok_or_else(err)?;
        let den: i32 = parse_int(den).ok_or_else(err)?;
        return match den {
            1 => num.checked_mul(2).map(HalfInt::from_twice).ok_or_else(err),
            2 => Ok(HalfInt::from_twice(num)),
            _ => Err(err()),
        };
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let whole: i32 = if whole == "-" || whole == "+" || whole.is_empty() {
            0
        } else {
            parse_int(whole).ok_or_else(err)?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let half = match frac.trim_end_matches('0') {
            "" => 0,
            "5" => 1,
            _ => return Err(err()),
        };
        let twice = whole.checked_mul(2).ok_or_else(err)?;
        let twice = if negative || whole < 0 {
            twice - half
        } else {
            twice + half
        };
        return Ok(HalfInt::from_twice(twice));
    }
    parse_int(t)
        .and_then(|v| v.checked_mul(2))
        .map(HalfInt::from_twice)
        .ok_or_else(err)
}

fn parse_int(s: &str) -> Option<i32> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        halfint_from_string(s)
    }
}

/// `-j, -j+1, ..., j`.
pub fn m_range(j: HalfInt) -> Result<Vec<HalfInt>> {
    if j.twice < 0 {
        return Err(Error::NegativeJ(j));
    }
    Ok((0..=j.twice)
        .map(|i| HalfInt::from_twice(2 * i - j.twice))
        .collect())
}

/// A validated `|j, m>` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JmState {
    j: HalfInt,
    m: HalfInt,
}

impl JmState {
    pub fn new(j: HalfInt, m: HalfInt) -> Result<Self> {
        check_projection(j, m)?;
        Ok(Self { j, m })
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn m(&self) -> HalfInt {
        self.m
    }
}

/// Checks `j >= 0`, `|m| <= j` and `j - m` integral.
pub fn check_projection(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.twice < 0 {
        return Err(Error::NegativeJ(j));
    }
    if m.twice.abs() > j.twice || (j.twice - m.twice) % 2 != 0 {
        return Err(Error::InvalidState { j, m });
    }
    Ok(())
}
