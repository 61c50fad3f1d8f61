// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use toes_core::harness::{
    emit, exact_report, run_table, validate, Comparison, ExperimentConfig, ExperimentReport,
    Format, Method, TableId, BRUTE_FORCE_MAX_N, DISPLAY_PLACES,
};
use toes_core::samplers::EsfMethod;
use toes_core::Model;

/// Exact laws and simulation for random mappings without fixed points.
#[derive(Debug, Parser)]
#[command(name = "toes", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format: pretty, csv or json.
    #[arg(long, global = true, default_value = "pretty", value_parser = parse::<Format>)]
    format: Format,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// JSON experiment configuration; flags given on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads for simulation.
    #[arg(long, global = true, env = "TOES_WORKERS")]
    workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute an exact table.
    Exact {
        /// Number of points.
        #[arg(long)]
        n: Option<usize>,
        /// toes or standard.
        #[arg(long, default_value = "toes", value_parser = parse::<Model>)]
        model: Model,
        /// q, components, scream, cycles, core, repeated, component-pmf or cross-moments.
        #[arg(long, value_parser = parse::<TableId>)]
        table: Option<TableId>,
    },
    /// Simulate a table and compare it with the exact values.
    Simulate(SimArgs),
    /// Compare exhaustive enumeration with the closed forms.
    Validate {
        /// Number of points, at most 7.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Reproduce a published table: 1, 2, 3, cycles or core.
    Tables {
        /// Table to reproduce.
        #[arg(value_name = "TABLE", value_parser = parse::<TableId>)]
        which: TableId,
        /// Skip the simulated column.
        #[arg(long)]
        exact_only: bool,
        #[command(flatten)]
        sim: SimArgs,
    },
}

#[derive(Debug, Args)]
struct SimArgs {
    /// Number of points.
    #[arg(long)]
    n: Option<usize>,
    /// Number of replicates.
    #[arg(long)]
    reps: Option<u64>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// direct, rejection, core-joint or brute-force.
    #[arg(long, value_parser = parse::<Method>)]
    method: Option<Method>,
    /// Table to simulate.
    #[arg(long, value_parser = parse::<TableId>)]
    table: Option<TableId>,
    /// Sampler for the ESF proposals of the rejection method.
    #[arg(long, value_parser = parse::<EsfMethod>)]
    esf: Option<EsfMethod>,
    /// Record wall time in the report.
    #[arg(long)]
    timing: bool,
}

fn parse<T: std::str::FromStr<Err = toes_core::Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: toes_core::Error| e.to_string())
}

impl Cli {
    fn base_config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::from_json_file(p)?,
            None => ExperimentConfig::default(),
        };
        if self.workers.is_some() {
            cfg.workers = self.workers;
        }
        Ok(cfg)
    }

    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

impl SimArgs {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(n) = self.n {
            cfg.n = n;
        }
        if let Some(r) = self.reps {
            cfg.replicates = r;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if self.method.is_some() {
            cfg.method = self.method;
        }
        if let Some(t) = self.table {
            cfg.targets = vec![t];
        }
        if let Some(e) = self.esf {
            cfg.esf = e;
        }
        cfg.timing |= self.timing;
    }
}

fn simulate_all(cfg: &ExperimentConfig) -> Result<Vec<ExperimentReport>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for &t in &cfg.targets {
        out.push(run_table(cfg, t)?);
    }
    Ok(out)
}

#[derive(Serialize)]
struct ComparisonRow<'a> {
    statistic: &'a str,
    enumerated: String,
    exact: String,
    equal: bool,
}

#[derive(Serialize)]
struct ValidationReport<'a> {
    n: usize,
    mappings: u64,
    all_equal: bool,
    comparisons: Vec<ComparisonRow<'a>>,
}

fn emit_validation(n: usize, rows: &[Comparison], format: Format, mut w: impl Write) -> Result<()> {
    let all_equal = rows.iter().all(Comparison::agrees);
    match format {
        Format::Json => {
            let rep = ValidationReport {
                n,
                mappings: (n as u64 - 1).pow(n as u32),
                all_equal,
                comparisons: rows
                    .iter()
                    .map(|c| ComparisonRow {
                        statistic: &c.statistic,
                        enumerated: c.enumerated.to_string(),
                        exact: c.exact.to_string(),
                        equal: c.agrees(),
                    })
                    .collect(),
            };
            serde_json::to_writer_pretty(&mut w, &rep)?;
            writeln!(w)?;
        }
        Format::Csv => {
            writeln!(w, "statistic,enumerated,exact,equal")?;
            for c in rows {
                writeln!(
                    w,
                    "\"{}\",{},{},{}",
                    c.statistic,
                    c.enumerated,
                    c.exact,
                    c.agrees()
                )?;
            }
        }
        Format::Pretty => {
            writeln!(
                w,
                "Enumeration of all {} mappings on {n} points",
                (n as u64 - 1).pow(n as u32)
            )?;
            for c in rows {
                writeln!(
                    w,
                    "{:<36} {:>10}  {}",
                    c.statistic,
                    c.exact.to_decimal(DISPLAY_PLACES as u32),
                    if c.agrees() { "equal" } else { "MISMATCH" }
                )?;
            }
            let bad = rows.iter().filter(|c| !c.agrees()).count();
            writeln!(w, "{} values compared, {bad} mismatches", rows.len())?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    let mut cfg = cli.base_config()?;
    let reports = match &cli.command {
        Command::Exact { n, model, table } => {
            let n = n.unwrap_or(cfg.n);
            let table = table
                .or(cfg.targets.first().copied())
                .unwrap_or(TableId::Components);
            vec![exact_report(table, n, *model)?]
        }
        Command::Simulate(sim) => {
            sim.apply(&mut cfg);
            simulate_all(&cfg)?
        }
        Command::Validate { n } => {
            let n = n.unwrap_or(cfg.n);
            if !(2..=BRUTE_FORCE_MAX_N).contains(&n) {
                bail!("validate needs 2 <= n <= {BRUTE_FORCE_MAX_N}, got {n}");
            }
            let rows = validate(n)?;
            let mut w = cli.writer()?;
            emit_validation(n, &rows, cli.format, &mut w)?;
            w.flush()?;
            return Ok(rows.iter().all(Comparison::agrees));
        }
        Command::Tables {
            which,
            exact_only,
            sim,
        } => {
            sim.apply(&mut cfg);
            cfg.targets = vec![*which];
            if *exact_only || *which == TableId::Q {
                vec![exact_report(*which, cfg.n, Model::Toes)?]
            } else {
                simulate_all(&cfg)?
            }
        }
    };
    let mut w = cli.writer()?;
    emit(&reports, cli.format, &mut w)?;
    w.flush()?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
