// SPDX-License-Identifier: Apache-2.0

use std::time::Instant;

use super::brute::brute_force_law;
use super::config::{ExperimentConfig, Method, TableId};
use super::montecarlo::{simulate, Draw, Estimate, RunSpec, Tally};
use super::report::{ExperimentReport, Metadata, Record, EXACT_PLACES};
use crate::exact::BigRat;
use crate::laws::{
    acceptance_rate_exact, core_size_law, cross_moment_toes, expected_num_components_std,
    expected_num_components_toes, mean_component_count, mean_cycle_count, no_repeat_probabilities,
    prob_someone_screams, scream_pmf, CycleModel, LawTable, Model, TableKey, NO_REPEAT_MAX_N,
};
use crate::samplers::SEED_RULE;
use crate::{Error, Result};

/// Values of `n` in the published table of `q_n`.
pub const Q_TABLE_NS: [usize; 14] = [5, 10, 15, 20, 30, 40, 50, 60, 70, 80, 90, 100, 1000, 10_000];

const ACCEPTANCE_PRECISION: u32 = 160;

fn q_ns(n: usize) -> Vec<usize> {
    let mut ns = Q_TABLE_NS.to_vec();
    if !ns.contains(&n) {
        ns.push(n);
        ns.sort_unstable();
    }
    ns
}

fn toes_only(table: TableId) -> Error {
    Error::Config(format!("table {table} is only defined for the toes model"))
}

/// Exact rows of `table` for one model, without simulation.
pub fn exact_records(table: TableId, n: usize, model: Model) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    match (table, model) {
        (TableId::Q, Model::Toes) => {
            for m in q_ns(n) {
                out.push(Record::exact(
                    format!("q_{m}"),
                    Some(m),
                    &prob_someone_screams(m)?,
                ));
            }
        }
        (TableId::Components, _) => {
            let prefix = if model == Model::Standard {
                "standard "
            } else {
                ""
            };
            for j in model.min_size()..=n {
                let v = mean_component_count(n, j, model)?;
                out.push(Record::exact(format!("{prefix}E C_{j}"), Some(j), &v));
            }
            let k = match model {
                Model::Toes => expected_num_components_toes(n)?,
                Model::Standard => expected_num_components_std(n)?,
            };
            out.push(Record::exact(format!("{prefix}E K"), None, &k));
        }
        (TableId::Scream, Model::Toes) => {
            for k in 0..=n / 2 {
                out.push(Record::exact(
                    format!("P(C_2* = {k})"),
                    Some(k),
                    &scream_pmf(n, k)?,
                ));
            }
        }
        (TableId::Cycles, _) => {
            let prefix = if model == Model::Standard {
                "standard "
            } else {
                ""
            };
            let cm = CycleModel::from(model);
            for j in cm.min_size()..=n {
                let v = mean_cycle_count(n, j, cm)?;
                out.push(Record::exact(format!("{prefix}E C_{j}*"), Some(j), &v));
            }
        }
        (TableId::Core, _) => {
            let prefix = if model == Model::Standard {
                "standard "
            } else {
                ""
            };
            let law = core_size_law(n, model)?;
            for (r, p) in law.iter().enumerate().skip(model.min_size()) {
                out.push(Record::exact(format!("{prefix}P(N = {r})"), Some(r), p));
            }
        }
        (TableId::Repeated, Model::Toes) => {
            let names = repeated_names();
            if n <= NO_REPEAT_MAX_N {
                let p = no_repeat_probabilities(n)?;
                for (name, v) in names.iter().zip([&p.components, &p.cycles, &p.both]) {
                    out.push(Record::exact(*name, None, v));
                }
            } else {
                for name in names {
                    out.push(Record {
                        exact: None,
                        ..Record::exact(name, None, &BigRat::zero())
                    });
                }
            }
        }
        (TableId::ComponentPmf, _) => {
            for (key, p) in LawTable::component_pmf(n, model)?.entries {
                let TableKey::Spectrum(s) = key else {
                    unreachable!()
                };
                out.push(Record::exact(format!("P(spectrum = {s})"), None, &p));
            }
        }
        (TableId::CrossMoments, Model::Toes) => {
            for i in 2..=n {
                for j in i + 1..=n - i {
                    out.push(Record::exact(
                        format!("E C_{i} C_{j}"),
                        None,
                        &cross_moment_toes(n, i, j)?,
                    ));
                }
            }
        }
        (t, Model::Standard) => return Err(toes_only(t)),
    }
    Ok(out)
}

fn repeated_names() -> [&'static str; 3] {
    [
        "P(no repeated component size)",
        "P(no repeated cycle length)",
        "P(no repeat in either)",
    ]
}

/// A report with exact values only.
pub fn exact_report(table: TableId, n: usize, model: Model) -> Result<ExperimentReport> {
    if n < model.min_size().max(2) && model == Model::Toes {
        return Err(Error::Config(format!("n must be at least 2, got {n}")));
    }
    if n < 1 {
        return Err(Error::Config("n must be positive".into()));
    }
    Ok(ExperimentReport {
        metadata: Metadata {
            table,
            n,
            replicates: None,
            seed: None,
            method: None,
            esf: None,
            seed_rule: None,
            wall_time_secs: None,
        },
        records: exact_records(table, n, model)?,
    })
}

/// Observation columns a table needs from each draw.
fn observe(table: TableId, n: usize, d: &Draw<'_>, out: &mut [u64]) {
    match table {
        TableId::Q => out[0] = (d.cycles.count(2) > 0) as u64,
        TableId::Components => {
            for j in 2..=n {
                out[j - 2] = d.components.count(j) as u64;
            }
            out[n - 1] = d.components.num_parts() as u64;
            out[n] = d.attempts;
        }
        TableId::Scream => out[d.cycles.count(2) as usize] = 1,
        TableId::Cycles => {
            for j in 2..=n {
                out[j - 2] = d.cycles.count(j) as u64;
            }
        }
        TableId::Core => out[d.core_size - 2] = 1,
        TableId::Repeated => {
            let (c, y) = (!d.components.has_repeat(), !d.cycles.has_repeat());
            out[0] = c as u64;
            out[1] = y as u64;
            out[2] = (c && y) as u64;
        }
        TableId::ComponentPmf | TableId::CrossMoments => {}
    }
}

fn width(table: TableId, n: usize) -> usize {
    match table {
        TableId::Q => 1,
        TableId::Components => n + 1,
        TableId::Scream => n / 2 + 1,
        TableId::Cycles | TableId::Core => n - 1,
        TableId::Repeated => 3,
        TableId::ComponentPmf | TableId::CrossMoments => 0,
    }
}

/// Index of the simulated column for a main (non-baseline) row.
fn column(table: TableId, n: usize, r: &Record) -> Option<usize> {
    match table {
        TableId::Q => (r.label == Some(n)).then_some(0),
        TableId::Components => match r.label {
            Some(j) => Some(j - 2),
            None if r.statistic == "E K" => Some(n - 1),
            None => None,
        },
        TableId::Scream => r.label,
        TableId::Cycles | TableId::Core => r.label.map(|j| j - 2),
        TableId::Repeated => repeated_names().iter().position(|s| *s == r.statistic),
        TableId::ComponentPmf | TableId::CrossMoments => None,
    }
}

fn acceptance_record(n: usize, tally: &Tally) -> Result<Record> {
    let exact = acceptance_rate_exact(n)?
        .to_float(ACCEPTANCE_PRECISION)
        .to_decimal(EXACT_PLACES);
    // Attempts are geometric; the rate is 1/mean, s.e. by the delta method.
    let Estimate { mean, std_error } = tally.estimate(n);
    let rate = 1.0 / mean;
    Ok(Record::exact_decimal("acceptance rate", None, exact)
        .with_simulated(rate, std_error / (mean * mean)))
}

/// Brute-force values standing in for the simulated column.
fn enumerated_values(table: TableId, n: usize) -> Result<Vec<(String, BigRat)>> {
    let law = brute_force_law(n)?;
    let sized = |t: &LawTable, name: &dyn Fn(usize) -> String| -> Vec<(String, BigRat)> {
        t.entries
            .iter()
            .map(|(k, v)| {
                let TableKey::Size(j) = *k else {
                    unreachable!()
                };
                (name(j), v.clone())
            })
            .collect()
    };
    Ok(match table {
        TableId::Q => {
            let zero = law
                .scream_pmf
                .get(&TableKey::Size(0))
                .cloned()
                .unwrap_or_default();
            vec![(format!("q_{n}"), BigRat::one() - zero)]
        }
        TableId::Components => {
            let mut v = sized(&law.component_means, &|j| format!("E C_{j}"));
            v.push(("E K".into(), law.component_means.total()));
            v
        }
        TableId::Scream => sized(&law.scream_pmf, &|k| format!("P(C_2* = {k})")),
        TableId::Cycles => sized(&law.cycle_means, &|j| format!("E C_{j}*")),
        TableId::Core => sized(&law.core_size_pmf, &|r| format!("P(N = {r})")),
        TableId::Repeated => {
            let names = repeated_names();
            vec![
                (names[0].into(), law.no_repeat.components),
                (names[1].into(), law.no_repeat.cycles),
                (names[2].into(), law.no_repeat.both),
            ]
        }
        TableId::ComponentPmf | TableId::CrossMoments => Vec::new(),
    })
}

/// Exact column, simulated (or enumerated) column and, where the published
/// table has one, the standard-mapping comparison column.
pub fn run_table(config: &ExperimentConfig, table: TableId) -> Result<ExperimentReport> {
    config.check_scalars()?;
    let method = config.method_for(table)?;
    let n = config.n;
    let start = Instant::now();
    let mut records = exact_records(table, n, Model::Toes)?;
    if matches!(table, TableId::Components | TableId::Cycles | TableId::Core) {
        records.extend(
            exact_records(table, n, Model::Standard)?
                .into_iter()
                .map(Record::baseline),
        );
    }
    let sampled = method != Method::BruteForce;
    if sampled {
        let spec = RunSpec {
            n,
            replicates: config.replicates,
            seed: config.seed,
            method,
            esf: config.esf,
            workers: config.workers,
        };
        let tally = simulate(&spec, width(table, n), |d, out| observe(table, n, d, out))?;
        for r in records.iter_mut().filter(|r| !r.baseline) {
            if let Some(c) = column(table, n, r) {
                let e = tally.estimate(c);
                *r = r.clone().with_simulated(e.mean, e.std_error);
            }
        }
        if method == Method::Rejection {
            records.push(acceptance_record(n, &tally)?);
        }
    } else {
        for (name, v) in enumerated_values(table, n)? {
            if let Some(r) = records
                .iter_mut()
                .find(|r| !r.baseline && r.statistic == name)
            {
                *r = r.clone().with_simulated(v.to_f64(), 0.0);
            }
        }
    }
    let wall = config.timing.then(|| start.elapsed().as_secs_f64());
    Ok(ExperimentReport {
        metadata: Metadata {
            table,
            n,
            replicates: sampled.then_some(config.replicates),
            seed: sampled.then_some(config.seed),
            method: Some(method),
            esf: (method == Method::Rejection).then_some(config.esf),
            seed_rule: sampled.then(|| SEED_RULE.to_string()),
            wall_time_secs: wall,
        },
        records,
    })
}

/// Every target table of the configuration, in order.
pub fn run(config: &ExperimentConfig) -> Result<Vec<ExperimentReport>> {
    config.validate()?;
    config
        .targets
        .iter()
        .map(|&t| run_table(config, t))
        .collect()
}

/// Monte Carlo probabilities of no repeated component size, no repeated
/// cycle length, and neither, from direct simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepeatedStats {
    pub components: Estimate,
    pub cycles: Estimate,
    pub both: Estimate,
}

pub fn repeated_size_stats(
    n: usize,
    replicates: u64,
    seed: u64,
    workers: Option<usize>,
) -> Result<RepeatedStats> {
    let spec = RunSpec {
        n,
        replicates,
        seed,
        method: Method::Direct,
        esf: Default::default(),
        workers,
    };
    let t = simulate(&spec, 3, |d, out| observe(TableId::Repeated, n, d, out))?;
    Ok(RepeatedStats {
        components: t.estimate(0),
        cycles: t.estimate(1),
        both: t.estimate(2),
    })
}
