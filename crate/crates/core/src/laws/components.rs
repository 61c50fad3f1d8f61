// SPDX-License-Identifier: Apache-2.0

//! Component-size laws: the Poisson parameters `lambda_j`, the joint law of
//! the component counts and its factorial moments.

use num_bigint::BigInt;

use super::{check_equal, ratio_pow, Model};
use crate::exact::{
    binomial, factorial, falling_factorial, multinomial, poisson_partial_sum, BigRat, ScaledExp,
};
use crate::{domain, Result, Spectrum};

/// `lambda_j = P(Po(j) < j) / j` for the unconstrained mapping, as `q * e^-j`.
pub fn lambda_std(j: usize) -> Result<ScaledExp> {
    if j < 1 {
        return domain("lambda_std needs j >= 1");
    }
    let coeff = poisson_partial_sum(j as u64, j as i64 - 1) / BigRat::from(j);
    Ok(ScaledExp::new(coeff, -(j as i64)))
}

/// `P(Po(j) < j - 1) / j` for the constrained mapping, as `q * e^-j`.
pub fn lambda_toes(j: usize) -> Result<ScaledExp> {
    if j < 2 {
        return domain("lambda_toes needs j >= 2: there are no components of size 1");
    }
    let coeff = poisson_partial_sum(j as u64, j as i64 - 2) / BigRat::from(j);
    Ok(ScaledExp::new(coeff, -(j as i64)))
}

/// Number of connected mappings on `i` labelled points with no fixed point
/// whose cycle has exactly `j` points: `C(i,j) (j-1)! j i^(i-j-1)`.
pub fn connected_count_toes(i: usize, j: usize) -> BigInt {
    if j < 2 || j > i {
        return BigInt::from(0);
    }
    let cycles = factorial(j as u64 - 1);
    if j == i {
        return cycles;
    }
    // j rooted trees spanning i points: j i^(i-j-1) forests.
    let forests = BigInt::from(j) * num_traits::pow(BigInt::from(i), i - j - 1);
    binomial(i as u64, j as u64) * cycles * forests
}

/// Number of connected fixed-point-free mappings on `i` points,
/// `(i-1)! sum_{l=0}^{i-2} i^l / l!`.
pub fn m_tilde(i: usize) -> BigInt {
    if i < 2 {
        return BigInt::from(0);
    }
    let q =
        poisson_partial_sum(i as u64, i as i64 - 2) * BigRat::from_integer(factorial(i as u64 - 1));
    debug_assert!(q.denom() == &BigInt::from(1));
    q.numer().clone()
}

/// Probability that the mapping is connected (a single component).
pub fn single_component_prob(n: usize, model: Model) -> Result<BigRat> {
    let nn = n as u64;
    let (lambda, base) = match model {
        Model::Standard => {
            if n < 1 {
                return domain("single_component_prob needs n >= 1");
            }
            (lambda_std(n)?, n as i64)
        }
        Model::Toes => {
            if n < 2 {
                return domain("single_component_prob needs n >= 2 in the toes model");
            }
            (lambda_toes(n)?, n as i64 - 1)
        }
    };
    let scale = BigRat::from_integer(factorial(nn)) / BigRat::from(base).pow(n as i64);
    (ScaledExp::new(scale, n as i64) * lambda).into_rational()
}

/// Joint law of the component counts, `P(C_j(n) = a_j for all j)`.
///
/// Zero when the spectrum does not add up to `n`. In the toes model a
/// spectrum with a size-1 component is rejected.
pub fn component_pmf(n: usize, spectrum: &Spectrum, model: Model) -> Result<BigRat> {
    if model == Model::Toes && spectrum.count(1) > 0 {
        return domain("toes spectra cannot contain components of size 1");
    }
    if n < model.min_size() {
        return domain(format!("component_pmf needs n >= {}", model.min_size()));
    }
    if spectrum.total() != n {
        return Ok(BigRat::zero());
    }
    let nn = n as u64;
    let mut acc = match model {
        Model::Standard => ScaledExp::new(
            BigRat::from_integer(factorial(nn)) / BigRat::from(n).pow(n as i64),
            n as i64,
        ),
        Model::Toes => ScaledExp::new(
            BigRat::from_integer(factorial(nn)) / BigRat::from(n - 1).pow(n as i64),
            n as i64,
        ),
    };
    for (j, a) in spectrum.parts() {
        let lambda = match model {
            Model::Standard => lambda_std(j)?,
            Model::Toes => lambda_toes(j)?,
        };
        let term = lambda
            .pow(a as i64)
            .scale(&BigRat::from_integer(factorial(a as u64)).recip());
        acc = acc * term;
    }
    acc.into_rational()
}

/// The toes joint law evaluated with an arbitrary free parameter `x > 0`.
///
/// The law does not depend on `x`; `x = e^-1` gives [`component_pmf`].
pub fn component_pmf_toes_with_x(n: usize, spectrum: &Spectrum, x: &ScaledExp) -> Result<BigRat> {
    if spectrum.count(1) > 0 {
        return domain("toes spectra cannot contain components of size 1");
    }
    if x.coeff().is_zero() || x.coeff().is_negative() {
        return domain("x must be positive");
    }
    if spectrum.total() != n {
        return Ok(BigRat::zero());
    }
    let nn = n as u64;
    let mut acc = x
        .pow(-(n as i64))
        .scale(&(BigRat::from_integer(factorial(nn)) / BigRat::from(n - 1).pow(n as i64)));
    for (j, a) in spectrum.parts() {
        let weight = x
            .pow(j as i64)
            .scale(&BigRat::new(m_tilde(j), factorial(j as u64)));
        acc = acc
            * weight
                .pow(a as i64)
                .scale(&BigRat::from_integer(factorial(a as u64)).recip());
    }
    acc.into_rational()
}

fn check_size(n: usize, j: usize, model: Model, what: &str) -> Result<()> {
    if j < model.min_size() || j > n {
        return domain(format!(
            "{what}: need {} <= j <= n, got j={j}, n={n}",
            model.min_size()
        ));
    }
    Ok(())
}

/// First form of the mean: `lambda_j e^j n_[j] (n-j-1)^(n-j) / (n-1)^n`
/// (toes) or `n!/n^n (n-j)^(n-j)/(n-j)! e^j lambda_j` (standard).
fn mean_via_lambda(n: usize, j: usize, model: Model) -> Result<BigRat> {
    let (nn, jj) = (n as u64, j as u64);
    match model {
        Model::Standard => {
            let lam = lambda_std(j)?;
            let scale = BigRat::from_integer(factorial(nn)) / BigRat::from(n).pow(n as i64)
                * ratio_pow((n - j) as i64, 1, nn - jj)
                / BigRat::from_integer(factorial(nn - jj));
            (lam * ScaledExp::new(scale, j as i64)).into_rational()
        }
        Model::Toes => {
            let lam = lambda_toes(j)?;
            let scale = BigRat::from_integer(falling_factorial(nn, jj))
                * ratio_pow(n as i64 - j as i64 - 1, 1, nn - jj)
                / BigRat::from(n - 1).pow(n as i64);
            (lam * ScaledExp::new(scale, j as i64)).into_rational()
        }
    }
}

/// Second form: `s_j C(n,j) (j'/n')^j (1 - j/n')^(n-j)` with `j' = j`, `n' = n`
/// (standard) or `j' = j-1`, `n' = n-1` (toes).
fn mean_via_single(n: usize, j: usize, model: Model) -> Result<BigRat> {
    let (nn, jj) = (n as u64, j as u64);
    let s = single_component_prob(j, model)?;
    let (jp, np) = match model {
        Model::Standard => (j as i64, n as i64),
        Model::Toes => (j as i64 - 1, n as i64 - 1),
    };
    Ok(s * BigRat::from_integer(binomial(nn, jj))
        * ratio_pow(jp, np, jj)
        * ratio_pow(np - j as i64, np, nn - jj))
}

/// `E C_j(n)`, the mean number of components of size `j`.
pub fn mean_component_count(n: usize, j: usize, model: Model) -> Result<BigRat> {
    check_size(n, j, model, "mean_component_count")?;
    let a = mean_via_lambda(n, j, model)?;
    let b = mean_via_single(n, j, model)?;
    check_equal("component mean, two closed forms", &a, &b)?;
    Ok(a)
}

/// Falling factorial moment `E prod_j C_j^[r_j]` of the toes component counts.
///
/// `moments` lists `(j, r_j)` with `j >= 2`; the value is zero once
/// `m = sum j r_j` exceeds `n`.
pub fn factorial_moment_toes(n: usize, moments: &[(usize, u32)]) -> Result<BigRat> {
    if n < 2 {
        return domain("factorial_moment_toes needs n >= 2");
    }
    let mut lam = ScaledExp::rational(BigRat::one());
    let mut m = 0usize;
    for &(j, r) in moments {
        if j < 2 {
            return domain("factorial_moment_toes: component sizes start at 2");
        }
        m += j * r as usize;
        lam = lam * lambda_toes(j)?.pow(r as i64);
    }
    if m > n {
        return Ok(BigRat::zero());
    }
    let (nn, mm) = (n as u64, m as u64);
    let scale = BigRat::from_integer(falling_factorial(nn, mm))
        * ratio_pow(n as i64 - m as i64 - 1, 1, nn - mm)
        / BigRat::from(n - 1).pow(n as i64);
    (lam * ScaledExp::new(scale, m as i64)).into_rational()
}

/// `E C_i(n) C_j(n)` for `i != j` from the closed product form; zero when
/// `i + j > n`. For `i == j` the same expression is `E C_i(n)(C_i(n) - 1)`.
pub fn cross_moment_toes(n: usize, i: usize, j: usize) -> Result<BigRat> {
    if i < 2 || j < 2 {
        return domain("cross_moment_toes: component sizes start at 2");
    }
    if i + j > n {
        return Ok(BigRat::zero());
    }
    let (nn, ii, jj) = (n as u64, i as u64, j as u64);
    let np = n as i64 - 1;
    Ok(single_component_prob(i, Model::Toes)?
        * single_component_prob(j, Model::Toes)?
        * BigRat::from_integer(multinomial(nn, ii, jj))
        * ratio_pow(i as i64 - 1, np, ii)
        * ratio_pow(j as i64 - 1, np, jj)
        * ratio_pow(np - (i + j) as i64, np, nn - ii - jj))
}

/// `E K_n` summed over component means.
pub fn mean_components_via_lambdas(n: usize) -> Result<BigRat> {
    if n < 2 {
        return domain("need n >= 2");
    }
    (2..=n).map(|j| mean_via_lambda(n, j, Model::Toes)).sum()
}

/// `E K_n` summed over the mean cycle counts in the core.
pub fn mean_components_via_cycles(n: usize) -> Result<BigRat> {
    if n < 2 {
        return domain("need n >= 2");
    }
    let nn = n as u64;
    Ok((2..=n)
        .map(|j| {
            BigRat::new(falling_factorial(nn, j as u64), BigInt::from(j))
                / BigRat::from(n - 1).pow(j as i64)
        })
        .sum())
}

/// Expected number of components of the toes mapping. Both routes (through
/// the component means and through the core cycle means) are evaluated and
/// must agree exactly.
pub fn expected_num_components_toes(n: usize) -> Result<BigRat> {
    let a = mean_components_via_lambdas(n)?;
    let b = mean_components_via_cycles(n)?;
    check_equal("number of components vs number of core cycles", &a, &b)?;
    Ok(a)
}

/// Expected number of components of the unconstrained mapping.
pub fn expected_num_components_std(n: usize) -> Result<BigRat> {
    if n < 1 {
        return domain("need n >= 1");
    }
    (1..=n)
        .map(|j| mean_component_count(n, j, Model::Standard))
        .sum()
}
