// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    component_pmf, core_size_law, cross_moment_toes, mean_component_count, mean_cycle_count,
    scream_pmf, CycleModel, Model,
};
use crate::exact::BigRat;
use crate::{Error, Result, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawKind {
    ComponentPmf,
    CoreSizePmf,
    CycleMean,
    ComponentMean,
    ScreamPmf,
    CrossMoment,
}

impl LawKind {
    pub fn is_pmf(self) -> bool {
        matches!(
            self,
            LawKind::ComponentPmf | LawKind::CoreSizePmf | LawKind::ScreamPmf
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableKey {
    Size(usize),
    Pair(usize, usize),
    Spectrum(Spectrum),
}

/// A materialized exact table for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawTable {
    pub n: usize,
    pub kind: LawKind,
    pub entries: Vec<(TableKey, BigRat)>,
}

impl LawTable {
    /// Every complete spectrum with its probability.
    pub fn component_pmf(n: usize, model: Model) -> Result<Self> {
        let entries = Spectrum::partitions(n, model.min_size())
            .into_par_iter()
            .map(|s| {
                let p = component_pmf(n, &s, model)?;
                Ok((TableKey::Spectrum(s), p))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LawTable {
            n,
            kind: LawKind::ComponentPmf,
            entries,
        })
    }

    pub fn core_size_pmf(n: usize, model: Model) -> Result<Self> {
        let law = core_size_law(n, model)?;
        let entries = law
            .into_iter()
            .enumerate()
            .skip(model.min_size())
            .map(|(r, p)| (TableKey::Size(r), p))
            .collect();
        Ok(LawTable {
            n,
            kind: LawKind::CoreSizePmf,
            entries,
        })
    }

    pub fn component_means(n: usize, model: Model) -> Result<Self> {
        let entries = (model.min_size()..=n)
            .into_par_iter()
            .map(|j| Ok((TableKey::Size(j), mean_component_count(n, j, model)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LawTable {
            n,
            kind: LawKind::ComponentMean,
            entries,
        })
    }

    pub fn cycle_means(n: usize, model: CycleModel) -> Result<Self> {
        let entries = (model.min_size()..=n)
            .into_par_iter()
            .map(|j| Ok((TableKey::Size(j), mean_cycle_count(n, j, model)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LawTable {
            n,
            kind: LawKind::CycleMean,
            entries,
        })
    }

    pub fn scream_pmf(n: usize) -> Result<Self> {
        let entries = (0..=n / 2)
            .into_par_iter()
            .map(|k| Ok((TableKey::Size(k), scream_pmf(n, k)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LawTable {
            n,
            kind: LawKind::ScreamPmf,
            entries,
        })
    }

    /// `E C_i C_j` for `2 <= i < j`, `i + j <= n`.
    pub fn cross_moments(n: usize) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (2..=n)
            .flat_map(|i| (i + 1..=n).filter(move |j| i + j <= n).map(move |j| (i, j)))
            .collect();
        let entries = pairs
            .into_par_iter()
            .map(|(i, j)| Ok((TableKey::Pair(i, j), cross_moment_toes(n, i, j)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LawTable {
            n,
            kind: LawKind::CrossMoment,
            entries,
        })
    }

    pub fn total(&self) -> BigRat {
        self.entries.iter().map(|(_, p)| p).sum()
    }

    /// Fails unless a probability table sums to exactly one.
    pub fn check_normalized(&self) -> Result<()> {
        if !self.kind.is_pmf() {
            return Ok(());
        }
        let t = self.total();
        if t.is_one() {
            Ok(())
        } else {
            Err(Error::Inconsistent(format!(
                "{:?} table for n={} sums to {t}",
                self.kind, self.n
            )))
        }
    }

    pub fn get(&self, key: &TableKey) -> Option<&BigRat> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmf_tables_are_normalized() {
        for n in 2..=12 {
            LawTable::component_pmf(n, Model::Toes)
                .unwrap()
                .check_normalized()
                .unwrap();
            LawTable::core_size_pmf(n, Model::Toes)
                .unwrap()
                .check_normalized()
                .unwrap();
            LawTable::scream_pmf(n).unwrap().check_normalized().unwrap();
        }
        for n in 1..=10 {
            LawTable::component_pmf(n, Model::Standard)
                .unwrap()
                .check_normalized()
                .unwrap();
            LawTable::core_size_pmf(n, Model::Standard)
                .unwrap()
                .check_normalized()
                .unwrap();
        }
    }

    #[test]
    fn lookups() {
        let t = LawTable::core_size_pmf(2, Model::Toes).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.get(&TableKey::Size(2)), Some(&BigRat::one()));
        assert_eq!(t.get(&TableKey::Size(1)), None);
        let c = LawTable::cross_moments(6).unwrap();
        assert_eq!(c.entries.len(), 2); // (2,3), (2,4)
        assert!(!c.kind.is_pmf());
    }
}
