// SPDX-License-Identifier: Apache-2.0

//! Component spectra of the toes mapping by rejection from ESF(1/2).

use rand::Rng;

use super::esf::{EsfMethod, EsfSampler};
use crate::laws::omega_recurrence;
use crate::{domain, Error, Result, Spectrum};

const THETA: f64 = 0.5;

/// Proposes ESF(1/2) spectra and accepts `(a_2, ..., a_n)` with probability
/// `1(a_1 = 0) prod_j (omega_j / theta)^(a_j)`.
#[derive(Debug, Clone)]
pub struct ComponentSampler {
    n: usize,
    /// `omega_j / theta`, indexed by `j`.
    ratio: Vec<f64>,
    esf: EsfSampler,
    proposal: Spectrum,
}

impl ComponentSampler {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_method(n, EsfMethod::Feller)
    }

    pub fn with_method(n: usize, method: EsfMethod) -> Result<Self> {
        if n < 2 {
            return domain(format!("component sampler needs n >= 2, got {n}"));
        }
        let mut ratio = vec![0.0; n + 1];
        for (j, w) in omega_recurrence().take(n - 1) {
            if !(0.0..=THETA).contains(&w) {
                return Err(Error::Inconsistent(format!(
                    "omega_{j} = {w} lies outside [0, 1/2]"
                )));
            }
            ratio[j as usize] = w / THETA;
        }
        Ok(ComponentSampler {
            n,
            ratio,
            esf: EsfSampler::new(n, THETA, method)?,
            proposal: Spectrum::empty(n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Writes an accepted spectrum into `out` and returns the number of
    /// proposals used, at least one.
    pub fn sample_into<R: Rng + ?Sized>(&mut self, rng: &mut R, out: &mut Spectrum) -> u64 {
        let mut attempts = 0;
        loop {
            attempts += 1;
            self.esf.sample_into(rng, &mut self.proposal);
            if self.proposal.count(1) > 0 {
                continue;
            }
            let mut p = 1.0;
            for (j, a) in self.proposal.parts() {
                p *= self.ratio[j].powi(a as i32);
            }
            if rng.random::<f64>() < p {
                out.clone_from(&self.proposal);
                return attempts;
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> (Spectrum, u64) {
        let mut out = Spectrum::empty(self.n);
        let attempts = self.sample_into(rng, &mut out);
        (out, attempts)
    }
}

/// One accepted spectrum and the proposals it took.
pub fn sample_toes_components<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<(Spectrum, u64)> {
    Ok(ComponentSampler::new(n)?.sample(rng))
}
