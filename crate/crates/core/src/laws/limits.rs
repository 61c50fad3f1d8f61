// SPDX-License-Identifier: Apache-2.0

//! Floating-point Poisson tail probabilities, the Spitzer-type series behind
//! the limiting acceptance rate, and the exact acceptance rate of the
//! Ewens(1/2) rejection sampler.

use num_bigint::BigInt;

use super::check_equal;
use crate::exact::{factorial, rising_factorial, BigRat, Float, ScaledExp, DEFAULT_PRECISION};
use crate::{domain, Result};

/// Default truncation point of [`spitzer_partial_sum`]. The neglected tail is
/// of order `J^(-1/2)`.
pub const SPITZER_DEFAULT_TERMS: u64 = 1_000_000;

/// `ln k!`, exact summation for small `k` and Stirling's series beyond.
fn ln_factorial(k: u64) -> f64 {
    if k < 256 {
        return (2..=k).map(|i| (i as f64).ln()).sum();
    }
    let x = k as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    x * x.ln() - x
        + 0.5 * (2.0 * std::f64::consts::PI * x).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// `P(Po(mean) <= k)` by summing Poisson terms.
///
/// For `mean <= 700` the terms are accumulated upward from `e^-mean`; beyond
/// that `e^-mean` underflows, so the sum is taken downward from the largest
/// term relative to it and only the final log-scale factor is exponentiated.
pub fn poisson_cdf(mean: u64, k: i64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    let mu = mean as f64;
    if mean <= 700 {
        let mut t = (-mu).exp();
        let mut s = t;
        for l in 0..k as u64 {
            t *= mu / (l + 1) as f64;
            s += t;
        }
        return s.min(1.0);
    }
    // Terms increase up to l = mean, so for k < mean the top term dominates.
    let top = (k as u64).min(mean);
    let ln_top = -mu + top as f64 * mu.ln() - ln_factorial(top);
    let mut ratio = 1.0;
    let mut rel = 1.0;
    let mut l = top;
    while l > 0 {
        ratio *= l as f64 / mu;
        rel += ratio;
        l -= 1;
        if ratio < 1e-20 * rel {
            break;
        }
    }
    let below = (ln_top + rel.ln()).exp();
    if (k as u64) <= mean {
        return below.min(1.0);
    }
    // Above the mode add the upper terms l = mean+1..=k.
    let mut t = ln_top.exp();
    let mut s = below;
    for l in mean..k as u64 {
        t *= mu / (l + 1) as f64;
        s += t;
        if t < 1e-20 * s {
            break;
        }
    }
    s.min(1.0)
}

/// `omega_j = P(Po(j) < j - 1)`, evaluated by direct summation.
pub fn omega(j: u64) -> f64 {
    poisson_cdf(j, j as i64 - 2)
}

/// Streams `omega_j` for `j = 2, 3, ...` in constant work per step.
///
/// Uses `Po(j+1) = Po(j) + Po(1)`: `P(Po(j+1) <= j-1)` is a Poisson(1)
/// mixture of lower tails of `Po(j)`, each of which is `omega_j` corrected by
/// a few point masses near the mode. The Poisson(1) weights are truncated
/// after 30 terms, far below `f64` resolution.
#[derive(Debug, Clone)]
pub struct OmegaRecurrence {
    j: u64,
    omega: f64,
    /// `P(Po(j) = j - 1)`
    mode_mass: f64,
    weights: [f64; MIXTURE_TERMS],
}

const MIXTURE_TERMS: usize = 30;

pub fn omega_recurrence() -> OmegaRecurrence {
    let mut weights = [0.0; MIXTURE_TERMS];
    let mut w = (-1.0f64).exp();
    for (m, slot) in weights.iter_mut().enumerate() {
        *slot = w;
        w /= (m + 1) as f64;
    }
    let e2 = (-2.0f64).exp();
    OmegaRecurrence {
        j: 2,
        omega: e2,
        mode_mass: 2.0 * e2,
        weights,
    }
}

impl OmegaRecurrence {
    fn advance(&mut self) {
        let j = self.j;
        let jf = j as f64;
        let terms = (j as usize).min(MIXTURE_TERMS);
        // lower[m] = P(Po(j) <= j-1-m)
        let mut lower = self.omega + self.mode_mass;
        let mut mass = self.mode_mass; // P(Po(j) = j-1-m+1) at step m
        let mut next = 0.0;
        for m in 0..terms {
            if m > 0 {
                lower -= mass;
                // P(Po(j) = j-1-m) from P(Po(j) = j-m)
                mass *= (j - m as u64) as f64 / jf;
            }
            next += self.weights[m] * lower.max(0.0);
        }
        // P(Po(j+1) = j) = P(Po(j) = j-1) * (1 + 1/j)^j / e
        self.mode_mass *= (jf * (1.0 / jf).ln_1p() - 1.0).exp();
        self.omega = next;
        self.j += 1;
    }
}

impl Iterator for OmegaRecurrence {
    type Item = (u64, f64);

    fn next(&mut self) -> Option<(u64, f64)> {
        let out = (self.j, self.omega);
        self.advance();
        Some(out)
    }
}

/// `sum_{j=2}^{J} (1/j)(1/2 - P(Po(j) < j-1))`.
pub fn spitzer_partial_sum(terms: u64) -> Result<Float> {
    if terms < 2 {
        return domain("spitzer_partial_sum needs J >= 2");
    }
    // Compensated summation: the terms fall off like j^(-3/2).
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for (j, w) in omega_recurrence().take(terms as usize - 1) {
        let y = (0.5 - w) / j as f64 - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    Ok(Float::from_f64(sum, DEFAULT_PRECISION))
}

/// `(1 + ln 2) / 2`, the value of the full series.
pub fn spitzer_limit() -> f64 {
    0.5 * (1.0 + std::f64::consts::LN_2)
}

/// `1/(e sqrt 2)`, the limiting acceptance probability.
pub fn acceptance_rate_limit() -> f64 {
    (-1.0f64).exp() / std::f64::consts::SQRT_2
}

/// `1 - e^(-1/2)`, the limit of `q_n`.
pub fn q_limit() -> f64 {
    1.0 - (-0.5f64).exp()
}

/// Exact probability that one Ewens(1/2) proposal is accepted by the
/// component sampler: `(n-1)^n e^-n / (1/2)^(n)` with the rising factorial.
pub fn acceptance_rate_exact(n: usize) -> Result<ScaledExp> {
    if n < 2 {
        return domain("acceptance rate needs n >= 2");
    }
    let rising = rising_factorial(&BigRat::new(1, 2), n as u64);
    let coeff = BigRat::from(n - 1).pow(n as i64) / rising;
    // Same constant through (2n)! / (4^n n!).
    let alt = BigRat::from(n - 1).pow(n as i64)
        * BigRat::new(
            num_traits::pow(BigInt::from(4), n) * factorial(n as u64),
            factorial(2 * n as u64),
        );
    check_equal("acceptance rate normalisers", &coeff, &alt)?;
    Ok(ScaledExp::new(coeff, -(n as i64)))
}
