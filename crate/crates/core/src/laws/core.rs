// SPDX-License-Identifier: Apache-2.0

//! Laws of the core: its size, the cycle counts within it, and the number of
//! 2-cycles ("screaming pairs").

use num_bigint::BigInt;

use super::{check_equal, ratio_pow, CycleModel, Model};
use crate::exact::{
    derangement_numbers, derangement_ratios, factorial, falling_factorial, ratio_series, BigRat,
};
use crate::{domain, Result};

/// `P(N_n = r)`, the law of the number of cyclic points.
pub fn core_size_pmf(n: usize, r: usize, model: Model) -> Result<BigRat> {
    if r < model.min_size() || r > n {
        return domain(format!(
            "core_size_pmf: need {} <= r <= n, got r={r}, n={n}",
            model.min_size()
        ));
    }
    let base = std_core_pmf(n, r);
    Ok(match model {
        Model::Standard => base,
        Model::Toes => {
            let d = BigRat::new(
                crate::exact::derangement_number(r as u64),
                factorial(r as u64),
            );
            toes_normaliser(n) * base * d
        }
    })
}

/// `(r/n) n_[r] / n^r`
fn std_core_pmf(n: usize, r: usize) -> BigRat {
    BigRat::new(
        BigInt::from(r) * falling_factorial(n as u64, r as u64),
        BigInt::from(n) * num_traits::pow(BigInt::from(n), r),
    )
}

/// `(n/(n-1))^n`, the reciprocal of `P(standard core is a derangement)` in the
/// limit sense; exact here.
fn toes_normaliser(n: usize) -> BigRat {
    ratio_pow(n as i64, n as i64 - 1, n as u64)
}

/// The whole core-size law, indexed by `r` (entries below the minimum size are
/// zero). Uses the counting form `r C(n,r) w_r n^(n-r-1)` over a shared
/// denominator, with `w_r = D_r` (toes) or `r!` (standard).
pub fn core_size_law(n: usize, model: Model) -> Result<Vec<BigRat>> {
    if n < model.min_size() {
        return domain(format!("core_size_law needs n >= {}", model.min_size()));
    }
    let nn = n as u64;
    let weights: Vec<BigInt> = match model {
        Model::Standard => (0..=nn).map(factorial).collect(),
        Model::Toes => derangement_numbers(nn),
    };
    let denom = match model {
        Model::Standard => num_traits::pow(BigInt::from(n), n),
        Model::Toes => num_traits::pow(BigInt::from(n - 1), n),
    };
    // n^(n-r-1) for r = n-1 down to 1, then r = n gives n^-1.
    let mut npow = vec![BigInt::from(1); n];
    for r in (0..n.saturating_sub(1)).rev() {
        npow[r] = &npow[r + 1] * n;
    }
    let mut out = vec![BigRat::zero(); n + 1];
    let mut binom = BigInt::from(1);
    for r in 1..=n {
        binom = binom * (n - r + 1) / r;
        if r < model.min_size() {
            continue;
        }
        let count = BigInt::from(r) * &binom * &weights[r];
        out[r] = if r == n {
            BigRat::new(count, &denom * n)
        } else {
            BigRat::new(count * &npow[r], denom.clone())
        };
    }
    Ok(out)
}

/// `P(N_n >= j) = (n-1)_[j-1] / n^(j-1)` for the unconstrained mapping,
/// checked against the summed point probabilities.
pub fn core_size_tail_std(n: usize, j: usize) -> Result<BigRat> {
    if j < 1 || j > n {
        return domain(format!(
            "core_size_tail_std: need 1 <= j <= n, got j={j}, n={n}"
        ));
    }
    let closed = BigRat::new(
        falling_factorial(n as u64 - 1, j as u64 - 1),
        num_traits::pow(BigInt::from(n), j - 1),
    );
    let summed: BigRat = (j..=n).map(|k| std_core_pmf(n, k)).sum();
    check_equal("core size tail vs summed pmf", &closed, &summed)?;
    Ok(closed)
}

/// Mean number of `j`-cycles in the core (or in a uniform derangement).
///
/// In the derangement model the value is zero when `n - j = 1`, since a
/// single leftover point would have to be fixed.
pub fn mean_cycle_count(n: usize, j: usize, model: CycleModel) -> Result<BigRat> {
    if j < model.min_size() || j > n {
        return domain(format!(
            "mean_cycle_count: need {} <= j <= n, got j={j}, n={n} ({model})",
            model.min_size()
        ));
    }
    let (nn, jj) = (n as u64, j as u64);
    Ok(match model {
        CycleModel::Standard => BigRat::new(
            falling_factorial(nn, jj),
            BigInt::from(j) * num_traits::pow(BigInt::from(n), j),
        ),
        CycleModel::Toes => BigRat::new(
            falling_factorial(nn, jj),
            BigInt::from(j) * num_traits::pow(BigInt::from(n - 1), j),
        ),
        CycleModel::Derangement => {
            let d = derangement_ratios(nn);
            d[n - j].clone() / (BigRat::from(j) * &d[n])
        }
    })
}

/// The toes cycle mean obtained by conditioning on the core size:
/// `sum_r P(N~_n = r) E[j-cycles in a uniform derangement of r]`.
pub fn mean_cycle_count_toes_by_conditioning(n: usize, j: usize) -> Result<BigRat> {
    let law = core_size_law(n, Model::Toes)?;
    let mut acc = BigRat::zero();
    for (r, p) in law.iter().enumerate().skip(j.max(2)) {
        acc += p * mean_cycle_count(r, j, CycleModel::Derangement)?;
    }
    Ok(acc)
}

/// `P(C_1(n) = 0, C_2(n) = k)` for a uniform permutation of `[n]`.
pub fn derangement_two_cycle_pmf(n: usize, k: usize) -> Result<BigRat> {
    if k > n / 2 {
        return domain(format!(
            "derangement_two_cycle_pmf: need k <= n/2, got k={k}, n={n}"
        ));
    }
    let d = derangement_ratios(n as u64);
    let mut sum = BigRat::zero();
    for l in 0..=(n / 2 - k) {
        let term = BigRat::new(1, BigInt::from(2u32).pow(l as u32) * factorial(l as u64))
            * &d[n - 2 * l - 2 * k];
        if l % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum / BigRat::from_integer(BigInt::from(2u32).pow(k as u32) * factorial(k as u64)))
}

/// Both sides of the identity
/// `(n/(n-1))^n sum_{r=m}^n (r/n)(n_[r]/n^r)(D_{r-m}/(r-m)!) = n_[m]/(n-1)^m`,
/// each evaluated on its own.
pub fn lemma1_both_sides(n: usize, m: usize) -> Result<(BigRat, BigRat)> {
    if n < 2 || m < 1 || m > n {
        return domain(format!(
            "lemma1_both_sides: need n >= 2, 1 <= m <= n (n={n}, m={m})"
        ));
    }
    let d = derangement_ratios(n as u64);
    let sum: BigRat = (m..=n).map(|r| std_core_pmf(n, r) * &d[r - m]).sum();
    let lhs = toes_normaliser(n) * sum;
    let rhs = BigRat::new(
        falling_factorial(n as u64, m as u64),
        num_traits::pow(BigInt::from(n - 1), m),
    );
    Ok((lhs, rhs))
}

/// Series terms of `sum_l (-1/2)^l / l! * n_[2l+2k] / (n-1)^(2l+2k)` for
/// `l = 0..=floor(n/2)-k`, as a first term and successive ratios.
fn scream_series(n: usize, k: usize, first_l: usize) -> (BigRat, Vec<(BigInt, BigInt)>) {
    let (nn, kk) = (n as u64, k as u64);
    let n1sq = BigInt::from(n - 1) * BigInt::from(n - 1);
    let top = n / 2 - k;
    let lo = 2 * (kk + first_l as u64);
    let mut first = BigRat::new(
        falling_factorial(nn, lo),
        num_traits::pow(BigInt::from(n - 1), lo as usize),
    ) / BigRat::from_integer(
        BigInt::from(2u32).pow(first_l as u32) * factorial(first_l as u64),
    );
    if first_l % 2 == 1 {
        first = -first;
    }
    let ratios = (first_l + 1..=top)
        .map(|l| {
            // t_l / t_{l-1} = -(n-2k-2l+2)(n-2k-2l+1) / (2 l (n-1)^2)
            let a = n as i64 - 2 * k as i64 - 2 * l as i64;
            let p = -BigInt::from((a + 2) * (a + 1));
            let q = BigInt::from(2 * l) * &n1sq;
            (p, q)
        })
        .collect();
    (first, ratios)
}

/// Law of the number of 2-cycles in the core of the toes mapping.
pub fn scream_pmf(n: usize, k: usize) -> Result<BigRat> {
    if n < 2 || k > n / 2 {
        return domain(format!(
            "scream_pmf: need n >= 2 and k <= n/2 (n={n}, k={k})"
        ));
    }
    let (first, ratios) = scream_series(n, k, 0);
    let prefactor = BigRat::new(1, BigInt::from(2u32).pow(k as u32) * factorial(k as u64));
    Ok(prefactor * ratio_series(&first, &ratios))
}

/// The same law obtained by conditioning on the core size and using the
/// 2-cycle law of a uniform derangement. Quadratic in `n`; meant for checks.
pub fn scream_pmf_by_conditioning(n: usize, k: usize) -> Result<BigRat> {
    if n < 2 || k > n / 2 {
        return domain(format!(
            "scream_pmf: need n >= 2 and k <= n/2 (n={n}, k={k})"
        ));
    }
    let law = core_size_law(n, Model::Toes)?;
    let d = derangement_ratios(n as u64);
    let mut acc = BigRat::zero();
    for r in (2 * k).max(2)..=n {
        let joint = derangement_two_cycle_pmf(r, k)?;
        acc += &law[r] * joint / &d[r];
    }
    Ok(acc)
}

/// `q_n = sum_{l>=1} (-1)^(l-1) n_[2l] / (2^l l! (n-1)^(2l))`.
pub fn q_by_alternating_sum(n: usize) -> Result<BigRat> {
    if n < 2 {
        return domain("q_n needs n >= 2");
    }
    let (first, ratios) = scream_series(n, 0, 1);
    Ok(-ratio_series(&first, &ratios))
}

/// Probability that at least one pair of points map to each other.
/// Checked against `1 - P(no 2-cycles)`.
pub fn prob_someone_screams(n: usize) -> Result<BigRat> {
    let q = q_by_alternating_sum(n)?;
    let complement = BigRat::one() - scream_pmf(n, 0)?;
    check_equal("q_n vs 1 - P(no screaming pair)", &q, &complement)?;
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_size_examples() {
        assert_eq!(core_size_pmf(2, 2, Model::Toes).unwrap(), BigRat::one());
        assert_eq!(
            core_size_pmf(10, 2, Model::Toes).unwrap().to_decimal(4),
            "0.2581"
        );
        assert_eq!(
            core_size_pmf(10, 4, Model::Standard).unwrap().to_decimal(4),
            "0.2016"
        );
        assert!(core_size_pmf(10, 1, Model::Toes).is_err());
        for model in [Model::Standard, Model::Toes] {
            for n in model.min_size()..=15 {
                let law = core_size_law(n, model).unwrap();
                let total: BigRat = law.iter().sum();
                assert_eq!(total, BigRat::one(), "n={n} {model}");
                for (r, p) in law.iter().enumerate().skip(model.min_size()) {
                    assert_eq!(p, &core_size_pmf(n, r, model).unwrap(), "n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn tail_examples() {
        assert_eq!(core_size_tail_std(7, 1).unwrap(), BigRat::one());
        assert_eq!(core_size_tail_std(10, 2).unwrap(), BigRat::new(9, 10));
        assert_eq!(core_size_tail_std(10, 5).unwrap(), BigRat::new(3024, 10000));
    }

    #[test]
    fn cycle_mean_examples() {
        assert_eq!(
            mean_cycle_count(10, 2, CycleModel::Toes)
                .unwrap()
                .to_decimal(4),
            "0.5556"
        );
        assert_eq!(
            mean_cycle_count(2, 2, CycleModel::Toes).unwrap(),
            BigRat::one()
        );
        assert_eq!(
            mean_cycle_count(10, 1, CycleModel::Standard).unwrap(),
            BigRat::one()
        );
        assert_eq!(
            mean_cycle_count(5, 4, CycleModel::Derangement).unwrap(),
            BigRat::zero()
        );
        assert!(mean_cycle_count(5, 1, CycleModel::Derangement).is_err());
        for n in 2..=20 {
            for j in 2..=n {
                assert_eq!(
                    mean_cycle_count(n, j, CycleModel::Toes).unwrap(),
                    mean_cycle_count_toes_by_conditioning(n, j).unwrap()
                );
            }
        }
    }

    #[test]
    fn two_cycle_pmf_examples() {
        assert_eq!(derangement_two_cycle_pmf(2, 1).unwrap(), BigRat::new(1, 2));
        assert_eq!(derangement_two_cycle_pmf(3, 0).unwrap(), BigRat::new(2, 6));
        assert_eq!(derangement_two_cycle_pmf(2, 0).unwrap(), BigRat::zero());
        assert!(derangement_two_cycle_pmf(3, 2).is_err());
    }

    #[test]
    fn lemma1_examples() {
        let (l, r) = lemma1_both_sides(2, 1).unwrap();
        assert_eq!(l, BigRat::from(2));
        assert_eq!(r, BigRat::from(2));
        let (l, r) = lemma1_both_sides(10, 10).unwrap();
        let expect = BigRat::from_integer(factorial(10)) / BigRat::from(9).pow(10);
        assert_eq!(l, expect);
        assert_eq!(r, expect);
    }

    #[test]
    fn scream_examples() {
        let table: Vec<String> = (0..=5)
            .map(|k| scream_pmf(10, k).unwrap().to_decimal(4))
            .collect();
        assert_eq!(
            table,
            ["0.5346", "0.3809", "0.0789", "0.0055", "0.0001", "0.0000"]
        );
        assert_eq!(scream_pmf(2, 1).unwrap(), BigRat::one());
        assert_eq!(scream_pmf(2, 0).unwrap(), BigRat::zero());
        assert_eq!(scream_pmf(5, 0).unwrap().to_decimal(4), "0.4336");
        for n in 2..=16 {
            for k in 0..=n / 2 {
                assert_eq!(
                    scream_pmf(n, k).unwrap(),
                    scream_pmf_by_conditioning(n, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn q_examples() {
        assert_eq!(prob_someone_screams(2).unwrap(), BigRat::one());
        assert_eq!(prob_someone_screams(10).unwrap().to_decimal(4), "0.4654");
        assert_eq!(prob_someone_screams(50).unwrap().to_decimal(4), "0.4060");
    }
}
