// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::config::{Method, TableId};
use crate::exact::BigRat;
use crate::samplers::EsfMethod;
use crate::{Error, Result};

/// Digits kept in the `exact` field.
pub const EXACT_PLACES: u32 = 30;
/// Digits shown in CSV and pretty output.
pub const DISPLAY_PLACES: usize = 4;

pub const CSV_HEADER: [&str; 5] = ["statistic", "exact", "simulated", "std_error", "z"];

/// One row: an exact value, a simulated one, or both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub statistic: String,
    /// Row index within the table (`j`, `k`, `r` or `n`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<usize>,
    /// True for standard-mapping comparison rows.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub baseline: bool,
    /// Decimal string rounded to [`EXACT_PLACES`] places.
    pub exact: Option<String>,
    pub simulated: Option<f64>,
    pub std_error: Option<f64>,
    /// `(simulated - exact) / std_error`.
    pub z: Option<f64>,
}

impl Record {
    pub fn exact(statistic: impl Into<String>, label: Option<usize>, value: &BigRat) -> Self {
        Record {
            statistic: statistic.into(),
            label,
            baseline: false,
            exact: Some(value.to_decimal(EXACT_PLACES)),
            simulated: None,
            std_error: None,
            z: None,
        }
    }

    pub fn exact_decimal(
        statistic: impl Into<String>,
        label: Option<usize>,
        decimal: String,
    ) -> Self {
        Record {
            statistic: statistic.into(),
            label,
            baseline: false,
            exact: Some(decimal),
            simulated: None,
            std_error: None,
            z: None,
        }
    }

    pub fn baseline(mut self) -> Self {
        self.baseline = true;
        self
    }

    /// Attach a simulated value. `z` is left empty when the standard error
    /// is zero or undefined.
    pub fn with_simulated(mut self, simulated: f64, std_error: f64) -> Self {
        self.simulated = Some(simulated);
        self.std_error = std_error.is_finite().then_some(std_error);
        self.z = match (&self.exact, self.std_error) {
            (Some(e), Some(se)) if se > 0.0 => {
                let e: f64 = e.parse().unwrap_or(f64::NAN);
                Some((simulated - e) / se)
            }
            _ => None,
        };
        self
    }

    pub fn exact_f64(&self) -> Option<f64> {
        self.exact.as_deref().and_then(|s| s.parse().ok())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub table: TableId,
    pub n: usize,
    /// Absent for exact-only reports.
    pub replicates: Option<u64>,
    pub seed: Option<u64>,
    pub method: Option<Method>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub esf: Option<EsfMethod>,
    /// How per-batch random streams derive from `seed`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed_rule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub metadata: Metadata,
    pub records: Vec<Record>,
}

impl ExperimentReport {
    pub fn record(&self, statistic: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.statistic == statistic)
    }

    /// Rows with a `z` score.
    pub fn z_scores(&self) -> impl Iterator<Item = (&str, f64)> {
        self.records
            .iter()
            .filter_map(|r| r.z.map(|z| (r.statistic.as_str(), z)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
    #[default]
    Pretty,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "pretty" => Ok(Format::Pretty),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

/// Round a plain decimal string (`-?digits.digits`) to `places`, ties to
/// even.
pub fn round_decimal(s: &str, places: usize) -> String {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let mut frac: Vec<u8> = frac.bytes().collect();
    if frac.len() <= places {
        frac.resize(places, b'0');
        let f = String::from_utf8(frac).unwrap();
        return format_parts(neg, int, &f);
    }
    let rest = &frac[places..];
    let first = rest[0];
    let beyond = rest[1..].iter().any(|&d| d != b'0');
    frac.truncate(places);
    let mut digits: Vec<u8> = int.bytes().chain(frac.iter().copied()).collect();
    let last_odd = digits.last().map(|d| (d - b'0') % 2 == 1).unwrap_or(false);
    let round_up = first > b'5' || (first == b'5' && (beyond || last_odd));
    if round_up {
        let mut i = digits.len();
        loop {
            if i == 0 {
                digits.insert(0, b'1');
                break;
            }
            i -= 1;
            if digits[i] == b'9' {
                digits[i] = b'0';
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    let split = digits.len() - places;
    let int = String::from_utf8(digits[..split].to_vec()).unwrap();
    let f = String::from_utf8(digits[split..].to_vec()).unwrap();
    format_parts(neg, &int, &f)
}

fn format_parts(neg: bool, int: &str, frac: &str) -> String {
    let int = if int.is_empty() { "0" } else { int };
    let zero = int.bytes().all(|d| d == b'0') && frac.bytes().all(|d| d == b'0');
    let sign = if neg && !zero { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.DISPLAY_PLACES$}"))
        .unwrap_or_default()
}

fn fmt_exact(r: &Record) -> String {
    r.exact
        .as_deref()
        .map(|e| round_decimal(e, DISPLAY_PLACES))
        .unwrap_or_default()
}

/// Serialize reports. JSON gives one object per report (an array when
/// there are several); CSV gives one header followed by every row.
pub fn emit<W: Write>(reports: &[ExperimentReport], format: Format, mut out: W) -> Result<()> {
    match format {
        Format::Json => {
            if reports.len() == 1 {
                serde_json::to_writer_pretty(&mut out, &reports[0])?;
            } else {
                serde_json::to_writer_pretty(&mut out, reports)?;
            }
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(CSV_HEADER)?;
            for rep in reports {
                for r in &rep.records {
                    w.write_record([
                        r.statistic.clone(),
                        fmt_exact(r),
                        fmt_opt(r.simulated),
                        fmt_opt(r.std_error),
                        fmt_opt(r.z),
                    ])?;
                }
            }
            w.flush()?;
        }
        Format::Pretty => {
            for (i, rep) in reports.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                out.write_all(pretty(rep).as_bytes())?;
            }
        }
    }
    Ok(())
}

/// Parse a JSON report as written by [`emit`].
pub fn parse_json(text: &str) -> Result<ExperimentReport> {
    Ok(serde_json::from_str(text)?)
}

fn header(rep: &ExperimentReport) -> String {
    let m = &rep.metadata;
    let mut h = format!("{} (n = {})", m.table.title(), m.n);
    if let (Some(reps), Some(method)) = (m.replicates, m.method) {
        let _ = write!(h, "; {method}, {reps} replicates");
        if let Some(seed) = m.seed {
            let _ = write!(h, ", seed {seed}");
        }
    }
    if let Some(t) = m.wall_time_secs {
        let _ = write!(h, ", {t:.2} s");
    }
    h
}

fn pretty(rep: &ExperimentReport) -> String {
    let mut s = header(rep);
    s.push('\n');
    match rep.metadata.table {
        TableId::Q => pretty_q(rep, &mut s),
        _ => pretty_grid(rep, &mut s),
    }
    s
}

/// `n  q_n || n  q_n`, the two halves side by side.
fn pretty_q(rep: &ExperimentReport, s: &mut String) {
    let rows: Vec<&Record> = rep.records.iter().filter(|r| r.label.is_some()).collect();
    let half = rows.len().div_ceil(2);
    let _ = writeln!(s, "{:>6}  {:>7} || {:>6}  {:>7}", "n", "q_n", "n", "q_n");
    for i in 0..half {
        let left = rows[i];
        let _ = write!(s, "{:>6}  {:>7}", left.label.unwrap(), fmt_exact(left));
        if let Some(right) = rows.get(half + i) {
            let _ = write!(
                s,
                " || {:>6}  {:>7}",
                right.label.unwrap(),
                fmt_exact(right)
            );
        }
        s.push('\n');
    }
    for r in rep.records.iter().filter(|r| r.simulated.is_some()) {
        let _ = writeln!(
            s,
            "simulated q_{}: {} (s.e. {}, z {})",
            rep.metadata.n,
            fmt_opt(r.simulated),
            fmt_opt(r.std_error),
            fmt_opt(r.z)
        );
    }
}

/// Labelled rows with the standard-mapping column on the right; unlabelled
/// rows follow as a list.
fn pretty_grid(rep: &ExperimentReport, s: &mut String) {
    let mut labels: Vec<usize> = rep.records.iter().filter_map(|r| r.label).collect();
    labels.sort_unstable();
    labels.dedup();
    let has_sim = rep.records.iter().any(|r| r.simulated.is_some());
    let has_base = rep.records.iter().any(|r| r.baseline);
    let _ = write!(s, "{:>5}  {:>8}", "", "exact");
    if has_sim {
        let _ = write!(s, "  {:>9}  {:>8}  {:>8}", "simulated", "s.e.", "z");
    }
    if has_base {
        let _ = write!(s, " || {:>8}", "standard");
    }
    s.push('\n');
    for l in labels {
        let main = rep
            .records
            .iter()
            .find(|r| r.label == Some(l) && !r.baseline);
        let base = rep
            .records
            .iter()
            .find(|r| r.label == Some(l) && r.baseline);
        let _ = write!(s, "{l:>5}  {:>8}", main.map(fmt_exact).unwrap_or_default());
        if has_sim {
            let _ = write!(
                s,
                "  {:>9}  {:>8}  {:>8}",
                fmt_opt(main.and_then(|r| r.simulated)),
                fmt_opt(main.and_then(|r| r.std_error)),
                fmt_opt(main.and_then(|r| r.z)),
            );
        }
        if has_base {
            let _ = write!(s, " || {:>8}", base.map(fmt_exact).unwrap_or_default());
        }
        s.push('\n');
    }
    for r in rep.records.iter().filter(|r| r.label.is_none()) {
        let _ = write!(s, "{}: exact {}", r.statistic, fmt_exact(r));
        if r.simulated.is_some() {
            let _ = write!(
                s,
                ", simulated {} (s.e. {}, z {})",
                fmt_opt(r.simulated),
                fmt_opt(r.std_error),
                fmt_opt(r.z)
            );
        }
        s.push('\n');
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_decimal("0.55555", 4), "0.5556");
        assert_eq!(round_decimal("0.12345", 4), "0.1234");
        assert_eq!(round_decimal("0.12355", 4), "0.1236");
        assert_eq!(round_decimal("0.123450001", 4), "0.1235");
        assert_eq!(round_decimal("0.99996", 4), "1.0000");
        assert_eq!(round_decimal("-0.00001", 4), "0.0000");
        assert_eq!(round_decimal("2.5", 0), "2");
        assert_eq!(round_decimal("3.5", 0), "4");
        assert_eq!(round_decimal("0.1", 4), "0.1000");
        assert_eq!(round_decimal("7", 2), "7.00");
    }

    #[test]
    fn rounding_agrees_with_exact() {
        for (p, q) in [
            (5u32, 9u32),
            (1, 8),
            (123_455, 1_000_000),
            (2, 3),
            (1, 20_000),
        ] {
            let r = BigRat::new(p, q);
            assert_eq!(
                round_decimal(&r.to_decimal(EXACT_PLACES), 4),
                r.to_decimal(4),
                "{p}/{q}"
            );
        }
    }

    #[test]
    fn z_score() {
        let r = Record::exact("x", None, &BigRat::new(1, 2)).with_simulated(0.6, 0.05);
        assert!((r.z.unwrap() - 2.0).abs() < 1e-12);
        let r = Record::exact("x", None, &BigRat::new(1, 2)).with_simulated(0.5, 0.0);
        assert_eq!(r.z, None);
        let r = Record::exact("x", None, &BigRat::new(1, 2)).with_simulated(0.5, f64::NAN);
        assert_eq!(r.std_error, None);
    }
}
