// SPDX-License-Identifier: Apache-2.0

//! Cycle spectra of the toes core: draw the core size, then a uniform
//! derangement of that many points.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::exact::BigRat;
use crate::laws::{core_size_law, Model};
use crate::{domain, Error, Result, Spectrum};

/// Inverse-CDF sampler for the core size of the toes mapping on `n` points.
#[derive(Debug, Clone)]
pub struct CoreSizeSampler {
    /// `cdf[r] = P(N <= r)` rounded to `f64`; the last entry is exactly 1.
    cdf: Vec<f64>,
}

impl CoreSizeSampler {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return domain(format!("core size sampler needs n >= 2, got {n}"));
        }
        let law = core_size_law(n, Model::Toes)?;
        let mut acc = BigRat::zero();
        let mut cdf = Vec::with_capacity(n + 1);
        for p in &law {
            acc += p;
            cdf.push(acc.to_f64());
        }
        if !acc.is_one() {
            return Err(Error::Inconsistent(format!("core size law sums to {acc}")));
        }
        Ok(CoreSizeSampler { cdf })
    }

    pub fn cdf(&self) -> &[f64] {
        &self.cdf
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        // First r with u < cdf[r]; cdf ends at 1 > u.
        self.cdf.partition_point(|&c| c <= u)
    }
}

/// One core size. Builds the table on each call; keep a
/// [`CoreSizeSampler`] for repeated draws.
pub fn sample_core_size_toes<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<usize> {
    Ok(CoreSizeSampler::new(n)?.sample(rng))
}

/// Shuffles `perm` (of length `r >= 2`) until it has no fixed point, then
/// pushes its cycle lengths into `out` without clearing it.
fn derangement_cycles_into<R: Rng + ?Sized>(
    perm: &mut Vec<u32>,
    seen: &mut Vec<bool>,
    r: usize,
    rng: &mut R,
    out: &mut Spectrum,
) {
    perm.clear();
    perm.extend(0..r as u32);
    loop {
        perm.shuffle(rng);
        if perm.iter().enumerate().all(|(i, &p)| p as usize != i) {
            break;
        }
    }
    seen.clear();
    seen.resize(r, false);
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        out.push(len);
    }
}

/// Cycle spectrum of a uniform derangement of `r` points, by rejection from
/// uniform permutations.
pub fn sample_derangement_cycles<R: Rng + ?Sized>(r: usize, rng: &mut R) -> Result<Spectrum> {
    if r < 2 {
        return domain(format!("no derangement of {r} point(s)"));
    }
    let mut out = Spectrum::empty(r);
    derangement_cycles_into(&mut Vec::new(), &mut Vec::new(), r, rng, &mut out);
    Ok(out)
}

/// Core size then derangement, with buffers reused across draws.
#[derive(Debug, Clone)]
pub struct ToesCoreSampler {
    n: usize,
    sizes: CoreSizeSampler,
    perm: Vec<u32>,
    seen: Vec<bool>,
}

impl ToesCoreSampler {
    pub fn new(n: usize) -> Result<Self> {
        Ok(ToesCoreSampler {
            n,
            sizes: CoreSizeSampler::new(n)?,
            perm: Vec::with_capacity(n),
            seen: Vec::with_capacity(n),
        })
    }

    /// Writes the cycle spectrum (over `n`, total equal to the core size)
    /// and returns the core size.
    pub fn sample_into<R: Rng + ?Sized>(&mut self, rng: &mut R, out: &mut Spectrum) -> usize {
        let r = self.sizes.sample(rng);
        out.clear();
        derangement_cycles_into(&mut self.perm, &mut self.seen, r, rng, out);
        r
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Spectrum {
        let mut out = Spectrum::empty(self.n);
        self.sample_into(rng, &mut out);
        out
    }
}

pub fn sample_toes_core<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Spectrum> {
    Ok(ToesCoreSampler::new(n)?.sample(rng))
}
