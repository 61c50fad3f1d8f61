// SPDX-License-Identifier: Apache-2.0

//! Exact joint law of (component size, cycle length) pairs, used for the
//! probabilities that no size repeats.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::connected_count_toes;
use crate::exact::{factorial, BigRat};
use crate::{domain, Result};

/// Largest `n` accepted by [`no_repeat_probabilities`]; the number of
/// configurations grows like the partitions of `n` with `i - 1` colours per
/// part of size `i`.
pub const NO_REPEAT_MAX_N: usize = 20;

/// Probabilities that the component sizes, the cycle lengths, or both, are
/// all distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoRepeat {
    pub components: BigRat,
    pub cycles: BigRat,
    pub both: BigRat,
}

struct Walk {
    n: usize,
    pairs: Vec<(usize, usize)>,
    counts: Vec<BigInt>,
    fact: Vec<BigInt>,
    chosen: Vec<usize>,
    total: BigInt,
    components: BigInt,
    cycles: BigInt,
    both: BigInt,
}

impl Walk {
    fn visit(&mut self, rem: usize, start: usize) {
        if rem == 0 {
            self.record();
            return;
        }
        for idx in start..self.pairs.len() {
            let (i, _) = self.pairs[idx];
            if i <= rem {
                self.chosen.push(idx);
                self.visit(rem - i, idx);
                self.chosen.pop();
            }
        }
    }

    fn record(&mut self) {
        // n! prod cnt(i,j)/i! / prod mult!, an integer count of mappings.
        let mut num = self.fact[self.n].clone();
        let mut den = BigInt::from(1);
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
        let mut lens: BTreeMap<usize, usize> = BTreeMap::new();
        for &idx in &self.chosen {
            let (i, j) = self.pairs[idx];
            num *= &self.counts[idx];
            den *= &self.fact[i];
            *mult.entry(idx).or_default() += 1;
            *sizes.entry(i).or_default() += 1;
            *lens.entry(j).or_default() += 1;
        }
        for &m in mult.values() {
            den *= &self.fact[m];
        }
        let w = num / den;
        let distinct_sizes = sizes.values().all(|&m| m == 1);
        let distinct_lens = lens.values().all(|&m| m == 1);
        if distinct_sizes {
            self.components += &w;
        }
        if distinct_lens {
            self.cycles += &w;
        }
        if distinct_sizes && distinct_lens {
            self.both += &w;
        }
        self.total += w;
    }
}

/// Exact no-repeat probabilities for the toes mapping on `n` points.
pub fn no_repeat_probabilities(n: usize) -> Result<NoRepeat> {
    if !(2..=NO_REPEAT_MAX_N).contains(&n) {
        return domain(format!(
            "no_repeat_probabilities supports 2 <= n <= {NO_REPEAT_MAX_N}, got {n}"
        ));
    }
    let pairs: Vec<(usize, usize)> = (2..=n).flat_map(|i| (2..=i).map(move |j| (i, j))).collect();
    let counts = pairs
        .iter()
        .map(|&(i, j)| connected_count_toes(i, j))
        .collect();
    let fact = (0..=n as u64).map(factorial).collect();
    let mut walk = Walk {
        n,
        pairs,
        counts,
        fact,
        chosen: Vec::new(),
        total: BigInt::from(0),
        components: BigInt::from(0),
        cycles: BigInt::from(0),
        both: BigInt::from(0),
    };
    walk.visit(n, 0);
    let all = num_traits::pow(BigInt::from(n - 1), n);
    if walk.total != all {
        return Err(crate::Error::Inconsistent(format!(
            "configurations count {} mappings, expected {all}",
            walk.total
        )));
    }
    Ok(NoRepeat {
        components: BigRat::new(walk.components, all.clone()),
        cycles: BigRat::new(walk.cycles, all.clone()),
        both: BigRat::new(walk.both, all),
    })
}
