// SPDX-License-Identifier: Apache-2.0

//! Exact closed-form laws.
//!
//! Every function here returns an exact [`BigRat`] (or a [`ScaledExp`](crate::ScaledExp) where a
//! power of `e` survives). Where a quantity has two independent closed forms,
//! both are evaluated and compared, and a mismatch is reported as
//! [`Error::Inconsistent`].
//!
//! Size-1 components and cycles cannot occur in the constrained model; queries
//! for them in [`Model::Toes`] are rejected rather than answered with zero.

mod components;
mod core;
mod joint;
mod limits;
mod table;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use self::components::{
    component_pmf, component_pmf_toes_with_x, connected_count_toes, cross_moment_toes,
    expected_num_components_std, expected_num_components_toes, factorial_moment_toes, lambda_std,
    lambda_toes, m_tilde, mean_component_count, mean_components_via_cycles,
    mean_components_via_lambdas, single_component_prob,
};
pub use self::core::{
    core_size_law, core_size_pmf, core_size_tail_std, derangement_two_cycle_pmf, lemma1_both_sides,
    mean_cycle_count, mean_cycle_count_toes_by_conditioning, prob_someone_screams,
    q_by_alternating_sum, scream_pmf, scream_pmf_by_conditioning,
};
pub use self::joint::{no_repeat_probabilities, NoRepeat, NO_REPEAT_MAX_N};
pub use self::limits::{
    acceptance_rate_exact, acceptance_rate_limit, omega, omega_recurrence, poisson_cdf, q_limit,
    spitzer_limit, spitzer_partial_sum, OmegaRecurrence, SPITZER_DEFAULT_TERMS,
};
pub use self::table::{LawKind, LawTable, TableKey};

use crate::exact::BigRat;
use crate::Error;

/// Which random mapping a component query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// Uniform `f: [n] -> [n]`.
    Standard,
    /// Uniform `f` with `f(i) != i`.
    Toes,
}

/// Which random object a cycle query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleModel {
    /// Core of a uniform mapping.
    Standard,
    /// Core of a mapping with `f(i) != i`.
    Toes,
    /// Uniform derangement of `[n]`.
    Derangement,
}

impl Model {
    /// Smallest possible component size.
    pub fn min_size(self) -> usize {
        match self {
            Model::Standard => 1,
            Model::Toes => 2,
        }
    }
}

impl CycleModel {
    pub fn min_size(self) -> usize {
        match self {
            CycleModel::Standard => 1,
            CycleModel::Toes | CycleModel::Derangement => 2,
        }
    }
}

impl From<Model> for CycleModel {
    fn from(m: Model) -> Self {
        match m {
            Model::Standard => CycleModel::Standard,
            Model::Toes => CycleModel::Toes,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Standard => "standard",
            Model::Toes => "toes",
        })
    }
}

impl fmt::Display for CycleModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleModel::Standard => "standard",
            CycleModel::Toes => "toes",
            CycleModel::Derangement => "derangement",
        })
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "standard" => Ok(Model::Standard),
            "toes" => Ok(Model::Toes),
            _ => Err(Error::Parse(format!("unknown model {s:?}"))),
        }
    }
}

impl FromStr for CycleModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "standard" => Ok(CycleModel::Standard),
            "toes" => Ok(CycleModel::Toes),
            "derangement" => Ok(CycleModel::Derangement),
            _ => Err(Error::Parse(format!("unknown cycle model {s:?}"))),
        }
    }
}

/// `(num/den)^exp` with `0^0 = 1`.
pub(crate) fn ratio_pow(num: i64, den: i64, exp: u64) -> BigRat {
    BigRat::new(num, den).pow(exp as i64)
}

pub(crate) fn check_equal(what: &str, a: &BigRat, b: &BigRat) -> crate::Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!("{what}: {a} != {b}")))
    }
}
