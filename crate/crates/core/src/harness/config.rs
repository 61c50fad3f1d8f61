// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::samplers::EsfMethod;
use crate::{Error, Result};

/// Largest `n` for exhaustive enumeration: `6^7` mappings.
pub const BRUTE_FORCE_MAX_N: usize = 7;

pub const DEFAULT_REPLICATES: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Sample the mapping and decompose it.
    Direct,
    /// ESF(1/2) rejection; component spectra only.
    Rejection,
    /// Core size then a uniform derangement; cycle spectra only.
    CoreJoint,
    /// Enumerate every mapping; exact.
    BruteForce,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Rejection => "rejection",
            Method::CoreJoint => "core-joint",
            Method::BruteForce => "brute-force",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "rejection" => Ok(Method::Rejection),
            "core-joint" => Ok(Method::CoreJoint),
            "brute-force" => Ok(Method::BruteForce),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

/// Table identifiers. The first five follow the published tables; the rest
/// are extra outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableId {
    /// Probability of at least one 2-cycle, over a range of `n`.
    Q,
    /// Mean number of components of each size.
    Components,
    /// Law of the number of 2-cycles.
    Scream,
    /// Mean number of core cycles of each length.
    Cycles,
    /// Law of the core size.
    Core,
    /// Probabilities of no repeated component size or cycle length.
    Repeated,
    /// Joint law of the component spectrum; exact only.
    ComponentPmf,
    /// `E C_i C_j` for `i < j`; exact only.
    CrossMoments,
}

impl TableId {
    pub const ALL: [TableId; 8] = [
        TableId::Q,
        TableId::Components,
        TableId::Scream,
        TableId::Cycles,
        TableId::Core,
        TableId::Repeated,
        TableId::ComponentPmf,
        TableId::CrossMoments,
    ];

    pub fn default_method(self) -> Option<Method> {
        match self {
            TableId::Components => Some(Method::Rejection),
            TableId::Q | TableId::Scream | TableId::Cycles | TableId::Core => {
                Some(Method::CoreJoint)
            }
            TableId::Repeated => Some(Method::Direct),
            TableId::ComponentPmf | TableId::CrossMoments => None,
        }
    }

    pub fn supports(self, method: Method) -> bool {
        match self {
            TableId::Components => method != Method::CoreJoint,
            TableId::Q | TableId::Scream | TableId::Cycles | TableId::Core => {
                method != Method::Rejection
            }
            TableId::Repeated => matches!(method, Method::Direct | Method::BruteForce),
            TableId::ComponentPmf | TableId::CrossMoments => false,
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            TableId::Q => "Probability of at least one 2-cycle",
            TableId::Components => "Mean number of components of each size",
            TableId::Scream => "Distribution of the number of 2-cycles",
            TableId::Cycles => "Mean number of core cycles of each length",
            TableId::Core => "Distribution of the core size",
            TableId::Repeated => "Probability of no repeated sizes",
            TableId::ComponentPmf => "Joint law of component counts",
            TableId::CrossMoments => "Mixed moments of component counts",
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::Q => "q",
            TableId::Components => "components",
            TableId::Scream => "scream",
            TableId::Cycles => "cycles",
            TableId::Core => "core",
            TableId::Repeated => "repeated",
            TableId::ComponentPmf => "component-pmf",
            TableId::CrossMoments => "cross-moments",
        })
    }
}

impl FromStr for TableId {
    type Err = Error;
    /// Accepts the names above and the table numbers 1, 2 and 3.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "q" => Ok(TableId::Q),
            "2" | "components" => Ok(TableId::Components),
            "3" | "scream" => Ok(TableId::Scream),
            "cycles" => Ok(TableId::Cycles),
            "core" => Ok(TableId::Core),
            "repeated" => Ok(TableId::Repeated),
            "component-pmf" => Ok(TableId::ComponentPmf),
            "cross-moments" => Ok(TableId::CrossMoments),
            _ => Err(Error::Parse(format!("unknown table {s:?}"))),
        }
    }
}

/// Settings for an experiment. Every field has a default, so a JSON file
/// may give any subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    pub replicates: u64,
    pub seed: u64,
    /// `None` picks the table's default method.
    pub method: Option<Method>,
    pub targets: Vec<TableId>,
    pub esf: EsfMethod,
    /// Worker threads; `None` uses all available.
    pub workers: Option<usize>,
    /// Record wall time in the report metadata. Off by default so that
    /// reports are byte-identical across runs.
    pub timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n: 10,
            replicates: DEFAULT_REPLICATES,
            seed: DEFAULT_SEED,
            method: None,
            targets: vec![TableId::Components],
            esf: EsfMethod::Feller,
            workers: None,
            timing: false,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// The method used for `table`, after validation.
    pub fn method_for(&self, table: TableId) -> Result<Method> {
        let method = match self.method.or(table.default_method()) {
            Some(m) => m,
            None => {
                return Err(Error::Config(format!(
                    "table {table} has no simulated column"
                )))
            }
        };
        if !table.supports(method) {
            return Err(Error::Config(format!(
                "method {method} cannot produce table {table}"
            )));
        }
        if method == Method::BruteForce && !(2..=BRUTE_FORCE_MAX_N).contains(&self.n) {
            return Err(Error::Config(format!(
                "brute force needs 2 <= n <= {BRUTE_FORCE_MAX_N}, got {}",
                self.n
            )));
        }
        Ok(method)
    }

    pub fn validate(&self) -> Result<()> {
        self.check_scalars()?;
        if self.targets.is_empty() {
            return Err(Error::Config("no target tables".into()));
        }
        for &t in &self.targets {
            self.method_for(t)?;
        }
        Ok(())
    }

    /// Checks everything except the target list.
    pub(crate) fn check_scalars(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Config(format!(
                "n must be at least 2, got {}",
                self.n
            )));
        }
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be positive".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_json() {
        let c: ExperimentConfig =
            serde_json::from_str(r#"{"n": 6, "method": "brute-force", "targets": ["scream"]}"#)
                .unwrap();
        assert_eq!(c.n, 6);
        assert_eq!(c.replicates, DEFAULT_REPLICATES);
        c.validate().unwrap();
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn brute_force_bound() {
        let c = ExperimentConfig {
            n: 8,
            method: Some(Method::BruteForce),
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn method_table_compatibility() {
        let c = ExperimentConfig {
            method: Some(Method::Rejection),
            targets: vec![TableId::Cycles],
            ..Default::default()
        };
        assert!(c.validate().is_err());
        let c = ExperimentConfig {
            targets: vec![TableId::CrossMoments],
            ..Default::default()
        };
        assert!(c.validate().is_err());
        for t in TableId::ALL {
            assert_eq!(t.to_string().parse::<TableId>().unwrap(), t);
        }
        assert_eq!("2".parse::<TableId>().unwrap(), TableId::Components);
    }
}
