// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::{Deserialize, Serialize};

/// A multiset of part sizes from `1..=n`, stored as counts `a_j`.
///
/// Used both for component sizes and for cycle lengths. A spectrum is
/// *complete* when `sum_j j a_j = n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Spectrum {
    n: usize,
    counts: Vec<u32>,
}

impl Spectrum {
    pub fn empty(n: usize) -> Self {
        Spectrum {
            n,
            counts: vec![0; n + 1],
        }
    }

    /// Build from `(j, a_j)` pairs. Panics if some `j` is outside `1..=n`.
    pub fn from_counts(n: usize, counts: &[(usize, u32)]) -> Self {
        let mut s = Spectrum::empty(n);
        for &(j, a) in counts {
            assert!((1..=n).contains(&j), "part size {j} outside 1..={n}");
            s.counts[j] += a;
        }
        s
    }

    /// Build from a list of part sizes.
    pub fn from_parts(n: usize, parts: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Spectrum::empty(n);
        for j in parts {
            s.push(j);
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn push(&mut self, j: usize) {
        self.counts[j] += 1;
    }

    pub fn clear(&mut self) {
        self.counts.iter_mut().for_each(|c| *c = 0);
    }

    /// `a_j`, zero outside `1..=n`.
    pub fn count(&self, j: usize) -> u32 {
        self.counts.get(j).copied().unwrap_or(0)
    }

    /// `sum_j j a_j`.
    pub fn total(&self) -> usize {
        self.counts
            .iter()
            .enumerate()
            .map(|(j, &a)| j * a as usize)
            .sum()
    }

    pub fn is_complete(&self) -> bool {
        self.total() == self.n
    }

    pub fn num_parts(&self) -> usize {
        self.counts.iter().map(|&a| a as usize).sum()
    }

    /// True if some size occurs at least twice.
    pub fn has_repeat(&self) -> bool {
        self.counts.iter().any(|&a| a >= 2)
    }

    /// Non-zero `(j, a_j)` pairs in increasing `j`.
    pub fn parts(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(j, &a)| (j, a))
    }

    /// Every complete spectrum of `n` whose parts are all at least `min_part`.
    pub fn partitions(n: usize, min_part: usize) -> Vec<Spectrum> {
        fn rec(rem: usize, max: usize, min: usize, cur: &mut Spectrum, out: &mut Vec<Spectrum>) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            for j in (min..=max.min(rem)).rev() {
                cur.counts[j] += 1;
                rec(rem - j, j, min, cur, out);
                cur.counts[j] -= 1;
            }
        }
        let mut out = Vec::new();
        let min = min_part.max(1);
        if n == 0 {
            return vec![Spectrum::empty(0)];
        }
        rec(n, n, min, &mut Spectrum::empty(n), &mut out);
        out
    }
}

impl fmt::Debug for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spectrum(n={}, {self})", self.n)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().map(|(j, a)| format!("{j}:{a}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
