// SPDX-License-Identifier: Apache-2.0

//! Table reproduction, Monte Carlo experiments, exhaustive enumeration and
//! report serialization.

mod brute;
mod config;
mod montecarlo;
mod report;
mod tables;

pub use self::brute::{brute_force_law, validate, BruteForceLaw, Comparison};
pub use self::config::{
    ExperimentConfig, Method, TableId, BRUTE_FORCE_MAX_N, DEFAULT_REPLICATES, DEFAULT_SEED,
};
pub use self::montecarlo::{simulate, Draw, Estimate, RunSpec, Tally, BATCH_SIZE};
pub use self::report::{
    emit, parse_json, round_decimal, ExperimentReport, Format, Metadata, Record, CSV_HEADER,
    DISPLAY_PLACES, EXACT_PLACES,
};
pub use self::tables::{
    exact_records, exact_report, repeated_size_stats, run, run_table, RepeatedStats, Q_TABLE_NS,
};
