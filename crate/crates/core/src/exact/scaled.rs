// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::ops::Mul;

use super::{BigRat, Float};
use crate::Error;

/// The exact value `coeff * e^epow`.
///
/// Products are always exact. Sums are exact only between values with the
/// same power of `e`; anything else must go through [`Float`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScaledExp {
    coeff: BigRat,
    epow: i64,
}

impl ScaledExp {
    pub fn new(coeff: BigRat, epow: i64) -> Self {
        ScaledExp { coeff, epow }
    }

    pub fn rational(coeff: BigRat) -> Self {
        ScaledExp { coeff, epow: 0 }
    }

    /// `e^epow`.
    pub fn exp(epow: i64) -> Self {
        ScaledExp {
            coeff: BigRat::one(),
            epow,
        }
    }

    pub fn coeff(&self) -> &BigRat {
        &self.coeff
    }

    pub fn epow(&self) -> i64 {
        self.epow
    }

    pub fn pow(&self, k: i64) -> ScaledExp {
        ScaledExp {
            coeff: self.coeff.pow(k),
            epow: self.epow * k,
        }
    }

    pub fn recip(&self) -> ScaledExp {
        ScaledExp {
            coeff: self.coeff.recip(),
            epow: -self.epow,
        }
    }

    pub fn scale(&self, q: &BigRat) -> ScaledExp {
        ScaledExp {
            coeff: &self.coeff * q,
            epow: self.epow,
        }
    }

    pub fn checked_add(&self, other: &ScaledExp) -> Result<ScaledExp, Error> {
        if self.coeff.is_zero() {
            return Ok(other.clone());
        }
        if other.coeff.is_zero() {
            return Ok(self.clone());
        }
        if self.epow != other.epow {
            return Err(Error::MixedExponent(self.epow, other.epow));
        }
        Ok(ScaledExp {
            coeff: &self.coeff + &other.coeff,
            epow: self.epow,
        })
    }

    /// The rational value, provided every power of `e` has cancelled.
    pub fn into_rational(self) -> Result<BigRat, Error> {
        if self.epow == 0 || self.coeff.is_zero() {
            Ok(self.coeff)
        } else {
            Err(Error::UncancelledExponent(self.epow))
        }
    }

    pub fn to_float(&self, precision: u32) -> Float {
        Float::from_scaled(self, precision)
    }

    pub fn to_f64(&self) -> f64 {
        Float::from_scaled(self, 53).to_f64()
    }
}

impl Mul<&ScaledExp> for &ScaledExp {
    type Output = ScaledExp;
    fn mul(self, rhs: &ScaledExp) -> ScaledExp {
        ScaledExp {
            coeff: &self.coeff * &rhs.coeff,
            epow: self.epow + rhs.epow,
        }
    }
}

impl Mul for ScaledExp {
    type Output = ScaledExp;
    fn mul(self, rhs: ScaledExp) -> ScaledExp {
        &self * &rhs
    }
}

impl Mul<&BigRat> for ScaledExp {
    type Output = ScaledExp;
    fn mul(self, rhs: &BigRat) -> ScaledExp {
        self.scale(rhs)
    }
}

impl fmt::Display for ScaledExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.epow {
            0 => write!(f, "{}", self.coeff),
            k => write!(f, "({})*e^({k})", self.coeff),
        }
    }
}

impl fmt::Debug for ScaledExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScaledExp({self})")
    }
}
