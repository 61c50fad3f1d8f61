// SPDX-License-Identifier: Apache-2.0

//! Binary floating point values of configurable precision.
//!
//! A [`Float`] is `mantissa * 2^exponent` with `|mantissa| < 2^precision`.
//! Conversions from exact values round to nearest, ties to even. Values that
//! carry a power of `e` are evaluated by interval refinement until both ends
//! of the enclosure round to the same float, so they are correctly rounded too.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{BigRat, ScaledExp};

/// Working precision used when none is given.
pub const DEFAULT_PRECISION: u32 = 100;

#[derive(Clone, PartialEq, Eq)]
pub struct Float {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

impl Float {
    pub fn zero(precision: u32) -> Self {
        Float {
            mantissa: BigInt::zero(),
            exponent: 0,
            precision,
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Correctly rounded conversion of an exact rational.
    pub fn from_rat(q: &BigRat, precision: u32) -> Self {
        assert!(precision >= 2, "precision must be at least 2 bits");
        if q.is_zero() {
            return Float::zero(precision);
        }
        let neg = q.is_negative();
        let num = q.numer().abs();
        let den = q.denom().clone();
        let (m, e) = round_nearest(&num, &den, precision);
        Float {
            mantissa: if neg { -m } else { m },
            exponent: e,
            precision,
        }
    }

    /// Exact conversion of an `f64` (rounded only if `precision < 53`).
    pub fn from_f64(x: f64, precision: u32) -> Self {
        assert!(x.is_finite(), "cannot represent {x} as Float");
        if x == 0.0 {
            return Float::zero(precision);
        }
        let (m, e) = decompose_f64(x);
        let q = if e >= 0 {
            BigRat::from_integer(BigInt::from(m) << e as usize)
        } else {
            BigRat::new(BigInt::from(m), BigInt::one() << (-e) as usize)
        };
        Float::from_rat(&q, precision)
    }

    /// Correctly rounded value of `coeff * e^epow`.
    pub fn from_scaled(x: &ScaledExp, precision: u32) -> Self {
        if x.epow() == 0 || x.coeff().is_zero() {
            return Float::from_rat(x.coeff(), precision);
        }
        let mut guard = 32u32;
        loop {
            let (lo, hi) = exp_enclosure(x.epow(), precision + guard);
            let a = Float::from_rat(&(x.coeff() * &lo), precision);
            let b = Float::from_rat(&(x.coeff() * &hi), precision);
            if a == b {
                return a;
            }
            guard *= 2;
        }
    }

    /// The exact rational value.
    pub fn to_rat(&self) -> BigRat {
        if self.exponent >= 0 {
            BigRat::from_integer(&self.mantissa << self.exponent as usize)
        } else {
            BigRat::new(
                self.mantissa.clone(),
                BigInt::one() << (-self.exponent) as usize,
            )
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if self.precision > 53 {
            return Float::from_rat(&self.to_rat(), 53).to_f64();
        }
        let m = self.mantissa.to_f64().expect("mantissa fits in f64");
        // Split the scaling so that intermediate powers stay finite.
        let mut e = self.exponent;
        let mut v = m;
        while e > 0 {
            let step = e.min(1000);
            v *= 2f64.powi(step as i32);
            e -= step;
        }
        while e < 0 {
            let step = (-e).min(1000);
            v /= 2f64.powi(step as i32);
            e += step;
        }
        v
    }

    /// Decimal rendering with `places` digits after the point, ties to even.
    pub fn to_decimal(&self, places: u32) -> String {
        self.to_rat().to_decimal(places)
    }
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Float({} * 2^{}, prec={})",
            self.mantissa, self.exponent, self.precision
        )
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = f
            .precision()
            .unwrap_or(((self.precision as f64) * std::f64::consts::LOG10_2) as usize);
        write!(f, "{}", self.to_decimal(places as u32))
    }
}

fn decompose_f64(x: f64) -> (i64, i64) {
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    if exp_bits == 0 {
        (sign * frac, -1074)
    } else {
        (sign * (frac | (1i64 << 52)), exp_bits - 1075)
    }
}

fn bit_len(x: &BigInt) -> i64 {
    x.bits() as i64
}

/// `num / den` (both positive) as `m * 2^e` with `m` exactly `precision` bits,
/// rounded to nearest with ties to even.
fn round_nearest(num: &BigInt, den: &BigInt, precision: u32) -> (BigInt, i64) {
    let p = precision as i64;
    let mut e = bit_len(num) - bit_len(den) - p;
    loop {
        let (n, d) = scale(num, den, e);
        let (q, r) = n.div_rem(&d);
        let qb = bit_len(&q);
        if qb > p {
            e += qb - p;
            continue;
        }
        if qb < p {
            e -= p - qb;
            continue;
        }
        let twice = &r << 1usize;
        let round_up = match twice.cmp(&d) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => q.is_odd(),
        };
        let mut m = q;
        if round_up {
            m += 1;
            if bit_len(&m) > p {
                m >>= 1usize;
                e += 1;
            }
        }
        return (m, e);
    }
}

/// `num / den / 2^e` as an integer fraction.
fn scale(num: &BigInt, den: &BigInt, e: i64) -> (BigInt, BigInt) {
    if e >= 0 {
        (num.clone(), den << e as usize)
    } else {
        (num << (-e) as usize, den.clone())
    }
}

/// Dyadic bound `m * 2^e` with `m > 0`.
#[derive(Clone)]
struct Dyadic {
    m: BigInt,
    e: i64,
}

impl Dyadic {
    fn to_rat(&self) -> BigRat {
        Float {
            mantissa: self.m.clone(),
            exponent: self.e,
            precision: 0,
        }
        .to_rat()
    }

    fn mul(&self, other: &Dyadic, bits: u32, up: bool) -> Dyadic {
        trim(&self.m * &other.m, self.e + other.e, bits, up)
    }

    fn from_rat(q: &BigRat, bits: u32, up: bool) -> Dyadic {
        let e = bit_len(q.numer()) - bit_len(q.denom()) - bits as i64 - 2;
        let (n, d) = scale(q.numer(), q.denom(), e);
        let (mut m, r) = n.div_rem(&d);
        if up && !r.is_zero() {
            m += 1;
        }
        trim(m, e, bits, up)
    }

    fn recip(&self, bits: u32, up: bool) -> Dyadic {
        let q = self.to_rat().recip();
        Dyadic::from_rat(&q, bits, up)
    }
}

fn trim(m: BigInt, e: i64, bits: u32, up: bool) -> Dyadic {
    debug_assert_eq!(m.sign(), Sign::Plus);
    let len = bit_len(&m);
    if len <= bits as i64 {
        return Dyadic { m, e };
    }
    let shift = (len - bits as i64) as usize;
    let mut q = &m >> shift;
    if up && (&q << shift) != m {
        q += 1;
    }
    Dyadic {
        m: q,
        e: e + shift as i64,
    }
}

/// Rational bounds `lo <= e^k <= hi` with roughly `bits` bits of agreement.
fn exp_enclosure(k: i64, bits: u32) -> (BigRat, BigRat) {
    let work = bits + 2 * (64 - k.unsigned_abs().leading_zeros()) + 8;
    // Partial sums of 1/i! undershoot e by less than 1/(N! * N).
    let mut sum = BigRat::zero();
    let mut term = BigRat::one();
    let mut n = 0u64;
    loop {
        sum += &term;
        n += 1;
        term /= BigRat::from(n);
        if n > 2 && term.denom().bits() > work as u64 + 8 {
            break;
        }
    }
    let tail = &term * BigRat::new(n + 1, n);
    let mut lo = Dyadic::from_rat(&sum, work, false);
    let mut hi = Dyadic::from_rat(&(&sum + &tail), work, true);
    let mut acc_lo = Dyadic {
        m: BigInt::one(),
        e: 0,
    };
    let mut acc_hi = acc_lo.clone();
    let mut p = k.unsigned_abs();
    while p > 0 {
        if p & 1 == 1 {
            acc_lo = acc_lo.mul(&lo, work, false);
            acc_hi = acc_hi.mul(&hi, work, true);
        }
        p >>= 1;
        if p > 0 {
            lo = lo.mul(&lo, work, false);
            hi = hi.mul(&hi, work, true);
        }
    }
    if k < 0 {
        let new_lo = acc_hi.recip(work, false);
        let new_hi = acc_lo.recip(work, true);
        acc_lo = new_lo;
        acc_hi = new_hi;
    }
    (acc_lo.to_rat(), acc_hi.to_rat())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_conversion_matches_f64_rounding() {
        for (n, d) in [
            (1, 3),
            (2, 3),
            (-7, 10),
            (1, 1 << 20),
            (123456789, 1000),
            (1, 7),
        ] {
            let q = BigRat::new(n, d);
            assert_eq!(q.to_f64(), n as f64 / d as f64, "{n}/{d}");
        }
    }

    #[test]
    fn ties_round_to_even() {
        // 2^53 + 1 sits halfway between two f64 values; even mantissa wins.
        let q = BigRat::from_integer((BigInt::one() << 53usize) + 1);
        assert_eq!(q.to_f64(), 9007199254740992.0);
        let q = BigRat::from_integer((BigInt::one() << 53usize) + 3);
        assert_eq!(q.to_f64(), 9007199254740996.0);
    }

    #[test]
    fn e_powers_match_libm() {
        for k in [-30i64, -5, -1, 1, 2, 10, 40] {
            let x = ScaledExp::new(BigRat::one(), k);
            let got = Float::from_scaled(&x, 53).to_f64();
            let want = (k as f64).exp();
            assert!(
                ((got - want) / want).abs() <= f64::EPSILON,
                "k={k}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn e_to_100_bits() {
        let e = Float::from_scaled(&ScaledExp::new(BigRat::one(), 1), 100);
        // e = 2.71828182845904523536028747135266249775724709369995...
        assert_eq!(e.to_decimal(28), "2.7182818284590452353602874714");
    }

    #[test]
    fn f64_round_trip() {
        for x in [0.1, -2.5, 1e-300, 6.02e23, 5e-324] {
            assert_eq!(Float::from_f64(x, 60).to_f64(), x);
        }
    }
}
