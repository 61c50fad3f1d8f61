// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic and the combinatorial primitives the laws are built from.

mod bigrat;
mod combinatorics;
mod float;
mod scaled;

pub use bigrat::BigRat;
pub use combinatorics::{
    binomial, derangement_number, derangement_numbers, derangement_ratios, factorial,
    falling_factorial, multinomial, poisson_partial_sum, rising_factorial,
};
pub use float::{Float, DEFAULT_PRECISION};
pub use num_bigint::BigInt;
pub use scaled::ScaledExp;

/// Sum of `t_0 + t_1 + ... + t_L` where `t_l = t_{l-1} * p_l / q_l`.
///
/// `ratios[l-1] = (p_l, q_l)` with `q_l > 0`. Evaluated in nested (Horner)
/// form over integers with a single reduction at the end, which keeps long
/// alternating series with huge denominators linear in the term count.
pub fn ratio_series(first: &BigRat, ratios: &[(BigInt, BigInt)]) -> BigRat {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for (p, q) in ratios.iter().rev() {
        // 1 + (p/q) (num/den)
        let new_den = q * &den;
        num = &new_den + p * num;
        den = new_den;
    }
    first * &BigRat::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_series_matches_direct_sum() {
        // t_l = (-1)^l / l!, l = 0..=10
        let ratios: Vec<_> = (1..=10)
            .map(|l| (BigInt::from(-1), BigInt::from(l)))
            .collect();
        let direct: BigRat = (0..=10u64)
            .map(|l| {
                let s = if l % 2 == 0 { 1 } else { -1 };
                BigRat::new(s, factorial(l))
            })
            .sum();
        assert_eq!(ratio_series(&BigRat::one(), &ratios), direct);
        assert_eq!(ratio_series(&BigRat::new(2, 3), &[]), BigRat::new(2, 3));
    }
}
