// SPDX-License-Identifier: Apache-2.0

//! Exhaustive enumeration of every mapping without fixed points.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::config::BRUTE_FORCE_MAX_N;
use crate::exact::BigRat;
use crate::laws::{
    component_pmf, core_size_law, mean_component_count, mean_cycle_count, no_repeat_probabilities,
    scream_pmf, CycleModel, LawKind, LawTable, Model, NoRepeat, TableKey,
};
use crate::samplers::Decomposer;
use crate::{domain, Result, Spectrum};

#[derive(Debug, Clone, Default)]
struct Counts {
    spectra: BTreeMap<Spectrum, u64>,
    core: Vec<u64>,
    twos: Vec<u64>,
    comp_sum: Vec<u64>,
    cycle_sum: Vec<u64>,
    distinct_comps: u64,
    distinct_cycles: u64,
    distinct_both: u64,
}

impl Counts {
    fn new(n: usize) -> Self {
        Counts {
            core: vec![0; n + 1],
            twos: vec![0; n / 2 + 1],
            comp_sum: vec![0; n + 1],
            cycle_sum: vec![0; n + 1],
            ..Default::default()
        }
    }

    fn merge(mut self, other: Counts) -> Counts {
        for (s, c) in other.spectra {
            *self.spectra.entry(s).or_default() += c;
        }
        let add = |a: &mut Vec<u64>, b: &[u64]| a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        add(&mut self.core, &other.core);
        add(&mut self.twos, &other.twos);
        add(&mut self.comp_sum, &other.comp_sum);
        add(&mut self.cycle_sum, &other.cycle_sum);
        self.distinct_comps += other.distinct_comps;
        self.distinct_cycles += other.distinct_cycles;
        self.distinct_both += other.distinct_both;
        self
    }
}

/// Exact laws tallied over all `(n-1)^n` mappings.
#[derive(Debug, Clone)]
pub struct BruteForceLaw {
    pub n: usize,
    pub mappings: u64,
    pub component_pmf: LawTable,
    pub core_size_pmf: LawTable,
    pub scream_pmf: LawTable,
    pub component_means: LawTable,
    pub cycle_means: LawTable,
    pub no_repeat: NoRepeat,
}

/// Tally every mapping whose first image is `first`.
fn enumerate_from(n: usize, first: u32) -> Counts {
    let mut counts = Counts::new(n);
    let mut dec = Decomposer::new();
    let mut comps = Spectrum::empty(n);
    let mut cycles = Spectrum::empty(n);
    // digits[i] in 0..n-1 encodes image u or u+1 as in the sampler.
    let mut digits = vec![0u32; n];
    digits[0] = first;
    let mut image = vec![0u32; n];
    loop {
        for (i, (&u, slot)) in digits.iter().zip(image.iter_mut()).enumerate() {
            *slot = if u < i as u32 { u } else { u + 1 };
        }
        dec.spectra(&image, &mut comps, &mut cycles);
        *counts.spectra.entry(comps.clone()).or_default() += 1;
        counts.core[cycles.total()] += 1;
        counts.twos[cycles.count(2) as usize] += 1;
        for (j, a) in comps.parts() {
            counts.comp_sum[j] += a as u64;
        }
        for (j, a) in cycles.parts() {
            counts.cycle_sum[j] += a as u64;
        }
        let (dc, dy) = (!comps.has_repeat(), !cycles.has_repeat());
        counts.distinct_comps += dc as u64;
        counts.distinct_cycles += dy as u64;
        counts.distinct_both += (dc && dy) as u64;
        // Advance the odometer over positions 1..n.
        let mut i = 1;
        loop {
            if i == n {
                return counts;
            }
            digits[i] += 1;
            if digits[i] < n as u32 - 1 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

pub fn brute_force_law(n: usize) -> Result<BruteForceLaw> {
    if !(2..=BRUTE_FORCE_MAX_N).contains(&n) {
        return domain(format!(
            "brute force needs 2 <= n <= {BRUTE_FORCE_MAX_N}, got {n}"
        ));
    }
    let counts = (0..n as u32 - 1)
        .into_par_iter()
        .map(|f| enumerate_from(n, f))
        .reduce(|| Counts::new(n), Counts::merge);
    let total = (n as u64 - 1).pow(n as u32);
    let frac = |c: u64| BigRat::new(BigInt::from(c), BigInt::from(total));
    let sized = |v: &[u64], from: usize, kind: LawKind| LawTable {
        n,
        kind,
        entries: (from..v.len())
            .map(|j| (TableKey::Size(j), frac(v[j])))
            .collect(),
    };
    Ok(BruteForceLaw {
        n,
        mappings: counts.spectra.values().sum(),
        component_pmf: LawTable {
            n,
            kind: LawKind::ComponentPmf,
            entries: counts
                .spectra
                .iter()
                .map(|(s, &c)| (TableKey::Spectrum(s.clone()), frac(c)))
                .collect(),
        },
        core_size_pmf: sized(&counts.core, 2, LawKind::CoreSizePmf),
        scream_pmf: sized(&counts.twos, 0, LawKind::ScreamPmf),
        component_means: sized(&counts.comp_sum, 2, LawKind::ComponentMean),
        cycle_means: sized(&counts.cycle_sum, 2, LawKind::CycleMean),
        no_repeat: NoRepeat {
            components: frac(counts.distinct_comps),
            cycles: frac(counts.distinct_cycles),
            both: frac(counts.distinct_both),
        },
    })
}

/// One enumerated value next to its closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub statistic: String,
    pub label: Option<usize>,
    pub enumerated: BigRat,
    pub exact: BigRat,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.enumerated == self.exact
    }
}

/// Compare enumeration with every closed form that applies at this `n`.
pub fn validate(n: usize) -> Result<Vec<Comparison>> {
    let law = brute_force_law(n)?;
    let mut out = Vec::new();
    let mut push = |statistic: String, label: Option<usize>, enumerated: BigRat, exact: BigRat| {
        out.push(Comparison {
            statistic,
            label,
            enumerated,
            exact,
        })
    };
    // Every partition with parts >= 2, including those never observed.
    for s in Spectrum::partitions(n, 2) {
        let key = TableKey::Spectrum(s.clone());
        let e = law
            .component_pmf
            .get(&key)
            .cloned()
            .unwrap_or_else(BigRat::zero);
        push(
            format!("P(spectrum = {s})"),
            None,
            e,
            component_pmf(n, &s, Model::Toes)?,
        );
    }
    let core = core_size_law(n, Model::Toes)?;
    for (key, e) in &law.core_size_pmf.entries {
        let TableKey::Size(r) = *key else {
            unreachable!()
        };
        push(format!("P(N = {r})"), Some(r), e.clone(), core[r].clone());
    }
    for (key, e) in &law.scream_pmf.entries {
        let TableKey::Size(k) = *key else {
            unreachable!()
        };
        push(
            format!("P(C_2* = {k})"),
            Some(k),
            e.clone(),
            scream_pmf(n, k)?,
        );
    }
    for (key, e) in &law.component_means.entries {
        let TableKey::Size(j) = *key else {
            unreachable!()
        };
        push(
            format!("E C_{j}"),
            Some(j),
            e.clone(),
            mean_component_count(n, j, Model::Toes)?,
        );
    }
    for (key, e) in &law.cycle_means.entries {
        let TableKey::Size(j) = *key else {
            unreachable!()
        };
        push(
            format!("E C_{j}*"),
            Some(j),
            e.clone(),
            mean_cycle_count(n, j, CycleModel::Toes)?,
        );
    }
    let nr = no_repeat_probabilities(n)?;
    push(
        "P(no repeated component size)".into(),
        None,
        law.no_repeat.components,
        nr.components,
    );
    push(
        "P(no repeated cycle length)".into(),
        None,
        law.no_repeat.cycles,
        nr.cycles,
    );
    push(
        "P(no repeat in either)".into(),
        None,
        law.no_repeat.both,
        nr.both,
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let law = brute_force_law(2).unwrap();
        assert_eq!(law.mappings, 1);
        assert_eq!(law.component_pmf.entries.len(), 1);
        assert_eq!(
            law.core_size_pmf.get(&TableKey::Size(2)),
            Some(&BigRat::one())
        );
        assert_eq!(law.scream_pmf.get(&TableKey::Size(1)), Some(&BigRat::one()));
    }

    #[test]
    fn three_points() {
        // 8 mappings: 2 are 3-cycles, 6 are a 2-cycle with a tail.
        let law = brute_force_law(3).unwrap();
        assert_eq!(law.mappings, 8);
        let one = Spectrum::from_parts(3, [3]);
        assert_eq!(
            law.component_pmf.get(&TableKey::Spectrum(one)),
            Some(&BigRat::one())
        );
        assert_eq!(
            law.core_size_pmf.get(&TableKey::Size(2)),
            Some(&BigRat::new(3, 4))
        );
        assert_eq!(
            law.core_size_pmf.get(&TableKey::Size(3)),
            Some(&BigRat::new(1, 4))
        );
    }

    #[test]
    fn bounds() {
        assert!(brute_force_law(1).is_err());
        assert!(brute_force_law(BRUTE_FORCE_MAX_N + 1).is_err());
    }

    #[test]
    fn four_points_agree() {
        assert!(validate(4).unwrap().iter().all(Comparison::agrees));
    }
}
