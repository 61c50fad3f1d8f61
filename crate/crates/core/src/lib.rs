// SPDX-License-Identifier: Apache-2.0

//! Component and cycle statistics of random mappings `f: [n] -> [n]` with
//! `f(i) != i` for every `i`, whose core is therefore a derangement.
//!
//! * [`exact`]: exact rationals, values of the form `q * e^k`, correctly
//!   rounded binary floats and the integer primitives (factorials,
//!   derangement numbers, Poisson partial sums).
//! * [`laws`]: closed-form distributions and moments for the constrained
//!   mapping, with the unconstrained mapping and uniform derangements as
//!   baselines.
//! * [`samplers`]: seeded generators: direct simulation with graph
//!   decomposition, Ewens(1/2) rejection for component counts, and
//!   core size followed by a uniform derangement for cycle counts.
//! * [`harness`]: table reproduction, Monte Carlo experiments, exhaustive
//!   enumeration and report serialization.

pub mod exact;
pub mod harness;
pub mod laws;
pub mod samplers;
mod spectrum;

pub use exact::{BigRat, Float, ScaledExp};
pub use laws::{CycleModel, Model};

pub use samplers::{Decomposition, Mapping, RngStream};
pub use spectrum::Spectrum;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("argument out of range: {0}")]
    Domain(String),
    #[error("cannot add values scaled by e^{0} and e^{1} exactly")]
    MixedExponent(i64, i64),
    #[error("a factor e^{0} did not cancel")]
    UncancelledExponent(i64),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
