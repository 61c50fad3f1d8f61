// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigRat(BigRational);

impl BigRat {
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        BigRat(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        BigRat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        BigRat(BigRational::zero())
    }

    pub fn one() -> Self {
        BigRat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigRat(self.0.abs())
    }

    /// Panics on zero.
    pub fn recip(&self) -> Self {
        BigRat(self.0.recip())
    }

    /// Integer power; `0^0 = 1`. Panics for `0` raised to a negative power.
    pub fn pow(&self, exp: i64) -> Self {
        if exp == 0 {
            return BigRat::one();
        }
        let e = u32::try_from(exp.unsigned_abs()).expect("exponent out of range");
        let num = num_traits::pow::Pow::pow(self.0.numer(), e);
        let den = num_traits::pow::Pow::pow(self.0.denom(), e);
        if exp > 0 {
            BigRat(BigRational::new_raw(num, den))
        } else {
            BigRat(BigRational::new(den, num))
        }
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    /// Nearest `f64`, correctly rounded.
    pub fn to_f64(&self) -> f64 {
        super::Float::from_rat(self, 53).to_f64()
    }

    /// Round to `places` decimal places, ties to even, and render with exactly
    /// that many digits after the point.
    pub fn to_decimal(&self, places: u32) -> String {
        let scale = num_traits::pow::Pow::pow(BigInt::from(10u32), places);
        let scaled = &self.0 * BigRational::from_integer(scale);
        let rounded = round_half_even(&scaled);
        format_scaled(&rounded, places)
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn as_inner(&self) -> &BigRational {
        &self.0
    }
}

fn round_half_even(x: &BigRational) -> BigInt {
    let floor = x.numer().div_floor(x.denom());
    let frac = x - BigRational::from_integer(floor.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    match frac.cmp(&half) {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1,
        Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    }
}

fn format_scaled(v: &BigInt, places: u32) -> String {
    let neg = v.sign() == Sign::Minus;
    let digits = v.abs().to_string();
    let places = places as usize;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if places == 0 {
        out.push_str(&digits);
        return out;
    }
    let padded = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = padded.split_at(padded.len() - places);
    out.push_str(int);
    out.push('.');
    out.push_str(frac);
    out
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigRat({self})")
    }
}

/// Serialized as the string `"p/q"` so no precision is lost.
impl serde::Serialize for BigRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for BigRat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for BigRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRat::new(n, d))
            }
            None => Ok(BigRat::from_integer(
                s.parse::<BigInt>().map_err(|_| bad())?,
            )),
        }
    }
}

impl ToPrimitive for BigRat {
    fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    fn to_u64(&self) -> Option<u64> {
        if self.0.is_integer() {
            self.0.numer().to_u64()
        } else {
            None
        }
    }

    fn to_f64(&self) -> Option<f64> {
        Some(BigRat::to_f64(self))
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for BigRat {
            fn from(v: $t) -> Self {
                BigRat::from_integer(v)
            }
        }
    )*};
}
from_prim!(i32, i64, u32, u64, usize, i128, u128);

impl From<BigInt> for BigRat {
    fn from(v: BigInt) -> Self {
        BigRat::from_integer(v)
    }
}

impl From<BigRational> for BigRat {
    fn from(v: BigRational) -> Self {
        BigRat(v)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<BigRat> for BigRat {
            type Output = BigRat;
            fn $m(self, rhs: BigRat) -> BigRat {
                BigRat(self.0.$m(rhs.0))
            }
        }
        impl $tr<&BigRat> for BigRat {
            type Output = BigRat;
            fn $m(self, rhs: &BigRat) -> BigRat {
                BigRat(self.0.$m(&rhs.0))
            }
        }
        impl $tr<BigRat> for &BigRat {
            type Output = BigRat;
            fn $m(self, rhs: BigRat) -> BigRat {
                BigRat((&self.0).$m(rhs.0))
            }
        }
        impl $tr<&BigRat> for &BigRat {
            type Output = BigRat;
            fn $m(self, rhs: &BigRat) -> BigRat {
                BigRat((&self.0).$m(&rhs.0))
            }
        }
        impl $atr<BigRat> for BigRat {
            fn $am(&mut self, rhs: BigRat) {
                self.0.$am(rhs.0);
            }
        }
        impl $atr<&BigRat> for BigRat {
            fn $am(&mut self, rhs: &BigRat) {
                self.0.$am(&rhs.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
binop!(Div, div, DivAssign, div_assign);

impl Neg for BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-self.0)
    }
}

impl Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-&self.0)
    }
}

impl Sum for BigRat {
    fn sum<I: Iterator<Item = BigRat>>(iter: I) -> Self {
        iter.fold(BigRat::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a BigRat> for BigRat {
    fn sum<I: Iterator<Item = &'a BigRat>>(iter: I) -> Self {
        iter.fold(BigRat::zero(), |a, b| a + b)
    }
}

impl Product for BigRat {
    fn product<I: Iterator<Item = BigRat>>(iter: I) -> Self {
        iter.fold(BigRat::one(), |a, b| a * b)
    }
}
