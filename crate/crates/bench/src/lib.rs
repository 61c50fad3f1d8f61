// SPDX-License-Identifier: Apache-2.0

//! Shared inputs for the benchmarks.

use toes_core::samplers::{sample_mapping, Mapping};
use toes_core::RngStream;

/// Seed used by every benchmark.
pub const SEED: u64 = 1;

/// A fixed random mapping on `n` points.
pub fn mapping(n: usize) -> Mapping {
    sample_mapping(n, &mut RngStream::new(SEED)).expect("n >= 2")
}

/// A fresh stream at the benchmark seed.
pub fn rng() -> RngStream {
    RngStream::new(SEED)
}
