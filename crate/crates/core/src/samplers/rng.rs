// SPDX-License-Identifier: Apache-2.0

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded random stream. Stream `k` of master seed `s` is ChaCha8 keyed by
/// `seed_from_u64(s)` with stream id `k`, so any batch can be replayed on its
/// own and distinct `(s, k)` never share a key stream.
///
/// Seeding with `s ^ k` instead would make masters that differ only in low
/// bits produce the same set of batch streams, merely permuted.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream::split(seed, 0)
    }

    /// Stream `k` derived from a master seed.
    pub fn split(master: u64, k: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(master);
        inner.set_stream(k);
        RngStream {
            seed: master,
            stream: k,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }
}

/// Human-readable statement of the splitting rule, recorded in reports.
pub const SEED_RULE: &str =
    "batch k of 10000 replicates uses ChaCha8 seed_from_u64(seed) with stream id k";

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
