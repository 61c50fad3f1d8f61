// SPDX-License-Identifier: Apache-2.0

//! Deterministic parallel Monte Carlo.
//!
//! Replicates are cut into fixed batches of [`BATCH_SIZE`]; batch `k` always
//! runs on stream `k` of the master seed and reports integer sums, so the
//! merged result does not depend on the number of workers.

use rayon::prelude::*;

use super::config::Method;
use crate::samplers::{ComponentSampler, Decomposer, EsfMethod, RngStream, ToesCoreSampler};
use crate::{domain, Error, Result, Spectrum};

pub const BATCH_SIZE: u64 = 10_000;

/// Integer sums of each observed column and of its squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    pub count: u64,
    pub sum: Vec<u64>,
    pub sum_sq: Vec<u64>,
}

/// A sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

impl Tally {
    pub fn new(width: usize) -> Self {
        Tally {
            count: 0,
            sum: vec![0; width],
            sum_sq: vec![0; width],
        }
    }

    pub fn width(&self) -> usize {
        self.sum.len()
    }

    pub fn record(&mut self, obs: &[u64]) {
        self.count += 1;
        for (i, &x) in obs.iter().enumerate() {
            self.sum[i] += x;
            self.sum_sq[i] += x * x;
        }
    }

    pub fn merge(&mut self, other: &Tally) {
        self.count += other.count;
        for i in 0..self.width() {
            self.sum[i] += other.sum[i];
            self.sum_sq[i] += other.sum_sq[i];
        }
    }

    /// Mean of column `i` and the standard error from the sample variance.
    pub fn estimate(&self, i: usize) -> Estimate {
        let n = self.count as u128;
        let s = self.sum[i] as u128;
        let mean = s as f64 / n as f64;
        if n < 2 {
            return Estimate {
                mean,
                std_error: f64::NAN,
            };
        }
        // n * sum_sq - sum^2 is exact in integers.
        let centred = n * self.sum_sq[i] as u128 - s * s;
        let var = centred as f64 / (n * (n - 1)) as f64;
        Estimate {
            mean,
            std_error: (var / n as f64).sqrt(),
        }
    }
}

/// What one replicate produced. Fields a method does not generate are left
/// empty.
#[derive(Debug)]
pub struct Draw<'a> {
    pub components: &'a Spectrum,
    pub cycles: &'a Spectrum,
    pub core_size: usize,
    /// Proposals used by the rejection sampler, 1 otherwise.
    pub attempts: u64,
}

enum Source {
    Direct { image: Vec<u32>, dec: Decomposer },
    Rejection(ComponentSampler),
    CoreJoint(ToesCoreSampler),
}

struct Worker {
    source: Source,
    components: Spectrum,
    cycles: Spectrum,
}

impl Worker {
    fn new(n: usize, method: Method, esf: EsfMethod) -> Result<Self> {
        let source = match method {
            Method::Direct => Source::Direct {
                image: vec![0; n],
                dec: Decomposer::new(),
            },
            Method::Rejection => Source::Rejection(ComponentSampler::with_method(n, esf)?),
            Method::CoreJoint => Source::CoreJoint(ToesCoreSampler::new(n)?),
            Method::BruteForce => return Err(Error::Config("brute force does not sample".into())),
        };
        Ok(Worker {
            source,
            components: Spectrum::empty(n),
            cycles: Spectrum::empty(n),
        })
    }

    fn draw(&mut self, rng: &mut RngStream) -> Draw<'_> {
        let (core_size, attempts) = match &mut self.source {
            Source::Direct { image, dec } => {
                crate::samplers::fill_mapping(image, rng);
                dec.spectra(image, &mut self.components, &mut self.cycles);
                (self.cycles.total(), 1)
            }
            Source::Rejection(s) => (0, s.sample_into(rng, &mut self.components)),
            Source::CoreJoint(s) => (s.sample_into(rng, &mut self.cycles), 1),
        };
        Draw {
            components: &self.components,
            cycles: &self.cycles,
            core_size,
            attempts,
        }
    }
}

/// Settings shared by every simulation.
#[derive(Debug, Clone, Copy)]
pub struct RunSpec {
    pub n: usize,
    pub replicates: u64,
    pub seed: u64,
    pub method: Method,
    pub esf: EsfMethod,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

/// Runs `spec.replicates` draws and tallies `width` integer observations
/// written by `observe` for each.
pub fn simulate<F>(spec: &RunSpec, width: usize, observe: F) -> Result<Tally>
where
    F: Fn(&Draw<'_>, &mut [u64]) + Sync,
{
    if spec.replicates == 0 {
        return domain("need at least one replicate");
    }
    // Fail early on bad arguments rather than inside a worker.
    Worker::new(spec.n, spec.method, spec.esf)?;
    let batches = spec.replicates.div_ceil(BATCH_SIZE);
    let run = || {
        (0..batches)
            .into_par_iter()
            .map(|k| {
                let size = BATCH_SIZE.min(spec.replicates - k * BATCH_SIZE);
                let mut rng = RngStream::split(spec.seed, k);
                let mut worker = Worker::new(spec.n, spec.method, spec.esf)?;
                let mut tally = Tally::new(width);
                let mut obs = vec![0u64; width];
                for _ in 0..size {
                    obs.iter_mut().for_each(|x| *x = 0);
                    let d = worker.draw(&mut rng);
                    observe(&d, &mut obs);
                    tally.record(&obs);
                }
                Ok(tally)
            })
            .collect::<Result<Vec<Tally>>>()
    };
    let parts = match spec.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let mut total = Tally::new(width);
    for t in &parts {
        total.merge(t);
    }
    Ok(total)
}
