// SPDX-License-Identifier: Apache-2.0

//! Integer-valued building blocks: factorials, derangement numbers and
//! binomial coefficients, plus the exact Poisson partial sums.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::BigRat;

/// `n_[r] = n (n-1) ... (n-r+1)`; `1` for `r = 0` and `0` for `r > n`.
pub fn falling_factorial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    (n - r + 1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn factorial(n: u64) -> BigInt {
    falling_factorial(n, n)
}

/// Number of fixed-point-free permutations of `n` objects.
pub fn derangement_number(n: u64) -> BigInt {
    derangement_numbers(n).pop().expect("table is non-empty")
}

/// `[D_0, D_1, ..., D_n]` from `D_k = (k-1)(D_{k-1} + D_{k-2})`.
pub fn derangement_numbers(n: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(BigInt::one());
    if n >= 1 {
        out.push(BigInt::zero());
    }
    for k in 2..=n {
        let next = (&out[k as usize - 1] + &out[k as usize - 2]) * (k - 1);
        out.push(next);
    }
    out
}

/// `D_k / k!` for `k = 0..=n`, exactly.
pub fn derangement_ratios(n: u64) -> Vec<BigRat> {
    let mut fact = BigInt::one();
    derangement_numbers(n)
        .into_iter()
        .enumerate()
        .map(|(k, d)| {
            if k > 0 {
                fact *= k;
            }
            BigRat::new(d, fact.clone())
        })
        .collect()
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n! / (i! j! (n-i-j)!)`, zero when `i + j > n`.
pub fn multinomial(n: u64, i: u64, j: u64) -> BigInt {
    match i.checked_add(j) {
        Some(s) if s <= n => binomial(n, i) * binomial(n - i, j),
        _ => BigInt::zero(),
    }
}

/// `sum_{i=0}^{k} j^i / i!`, i.e. `e^j P(Po(j) <= k)`. Empty (zero) for `k < 0`.
pub fn poisson_partial_sum(j: u64, k: i64) -> BigRat {
    assert!(j >= 1, "Poisson mean must be positive");
    if k < 0 {
        return BigRat::zero();
    }
    // Common denominator k!: sum_i j^i k!/i!, built from the top term down.
    let k = k as u64;
    let mut numer = BigInt::zero();
    let mut factor = BigInt::one(); // k!/i! for the current i, starting at i = k
    let mut jpow = BigInt::one();
    let mut powers = Vec::with_capacity(k as usize + 1);
    for _ in 0..=k {
        powers.push(jpow.clone());
        jpow *= j;
    }
    for i in (0..=k).rev() {
        numer += &powers[i as usize] * &factor;
        factor *= i.max(1);
    }
    BigRat::new(numer, factorial(k))
}

/// `prod_{i=0}^{n-1} (x + i)`, the rising factorial.
pub fn rising_factorial(x: &BigRat, n: u64) -> BigRat {
    (0..n).fold(BigRat::one(), |acc, i| acc * (x + BigRat::from(i)))
}
