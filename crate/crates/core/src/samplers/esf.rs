// SPDX-License-Identifier: Apache-2.0

//! Ewens sampling formula: cycle counts of a `theta`-biased permutation.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{domain, Error, Result, Spectrum};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EsfMethod {
    #[default]
    Feller,
    /// Chinese restaurant process.
    Crp,
}

impl fmt::Display for EsfMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EsfMethod::Feller => "feller",
            EsfMethod::Crp => "crp",
        })
    }
}

impl FromStr for EsfMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "feller" => Ok(EsfMethod::Feller),
            "crp" => Ok(EsfMethod::Crp),
            _ => Err(Error::Parse(format!("unknown ESF method {s:?}"))),
        }
    }
}

fn check(n: usize, theta: f64) -> Result<()> {
    if n < 1 || !(theta > 0.0 && theta.is_finite()) {
        return domain(format!(
            "ESF needs n >= 1 and theta > 0 (n={n}, theta={theta})"
        ));
    }
    Ok(())
}

/// Feller coupling: independent `xi_i ~ Bernoulli(theta/(theta+i-1))` for
/// `i = 1..=n` with `xi_1 = xi_{n+1} = 1`; the gaps between successive ones
/// are the cycle lengths.
pub fn sample_esf_feller<R: Rng + ?Sized>(n: usize, theta: f64, rng: &mut R) -> Result<Spectrum> {
    check(n, theta)?;
    let mut out = Spectrum::empty(n);
    feller_into(n, theta, rng, &mut out);
    Ok(out)
}

pub(crate) fn feller_into<R: Rng + ?Sized>(n: usize, theta: f64, rng: &mut R, out: &mut Spectrum) {
    out.clear();
    let mut last = 1;
    for i in 2..=n + 1 {
        if i == n + 1 || rng.random::<f64>() * (theta + (i - 1) as f64) < theta {
            out.push(i - last);
            last = i;
        }
    }
    debug_assert!(out.is_complete());
}

/// Chinese restaurant process: customer `i + 1` opens a table with
/// probability `theta/(theta+i)`, otherwise sits next to a uniformly chosen
/// earlier customer.
pub fn sample_esf_crp<R: Rng + ?Sized>(n: usize, theta: f64, rng: &mut R) -> Result<Spectrum> {
    check(n, theta)?;
    let mut out = Spectrum::empty(n);
    let mut table_of: Vec<u32> = Vec::with_capacity(n);
    let mut sizes: Vec<usize> = Vec::new();
    crp_into(n, theta, rng, &mut table_of, &mut sizes, &mut out);
    Ok(out)
}

fn crp_into<R: Rng + ?Sized>(
    n: usize,
    theta: f64,
    rng: &mut R,
    table_of: &mut Vec<u32>,
    sizes: &mut Vec<usize>,
    out: &mut Spectrum,
) {
    table_of.clear();
    sizes.clear();
    for i in 0..n {
        let t = if rng.random::<f64>() * (theta + i as f64) < theta {
            sizes.push(0);
            sizes.len() - 1
        } else {
            table_of[rng.random_range(0..i)] as usize
        };
        sizes[t] += 1;
        table_of.push(t as u32);
    }
    out.clear();
    for &s in sizes.iter() {
        out.push(s);
    }
    debug_assert!(out.is_complete());
}

/// ESF sampler with reusable buffers.
#[derive(Debug, Clone)]
pub struct EsfSampler {
    n: usize,
    theta: f64,
    method: EsfMethod,
    table_of: Vec<u32>,
    sizes: Vec<usize>,
}

impl EsfSampler {
    pub fn new(n: usize, theta: f64, method: EsfMethod) -> Result<Self> {
        check(n, theta)?;
        Ok(EsfSampler {
            n,
            theta,
            method,
            table_of: Vec::with_capacity(n),
            sizes: Vec::new(),
        })
    }

    pub fn sample_into<R: Rng + ?Sized>(&mut self, rng: &mut R, out: &mut Spectrum) {
        match self.method {
            EsfMethod::Feller => feller_into(self.n, self.theta, rng, out),
            EsfMethod::Crp => crp_into(
                self.n,
                self.theta,
                rng,
                &mut self.table_of,
                &mut self.sizes,
                out,
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samplers::RngStream;

    #[test]
    fn one_point() {
        let mut rng = RngStream::new(1);
        for _ in 0..10 {
            assert_eq!(
                sample_esf_feller(1, 0.5, &mut rng).unwrap(),
                Spectrum::from_parts(1, [1])
            );
            assert_eq!(
                sample_esf_crp(1, 0.5, &mut rng).unwrap(),
                Spectrum::from_parts(1, [1])
            );
        }
    }

    #[test]
    fn always_complete() {
        let mut rng = RngStream::new(2);
        for n in 1..40 {
            for theta in [0.1, 0.5, 1.0, 3.0] {
                assert!(sample_esf_feller(n, theta, &mut rng).unwrap().is_complete());
                assert!(sample_esf_crp(n, theta, &mut rng).unwrap().is_complete());
            }
        }
    }

    #[test]
    fn bad_arguments() {
        let mut rng = RngStream::new(0);
        assert!(sample_esf_feller(0, 1.0, &mut rng).is_err());
        assert!(sample_esf_feller(3, 0.0, &mut rng).is_err());
        assert!(sample_esf_crp(3, f64::NAN, &mut rng).is_err());
        assert_eq!("crp".parse::<EsfMethod>().unwrap(), EsfMethod::Crp);
    }
}
