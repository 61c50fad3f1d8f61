// SPDX-License-Identifier: Apache-2.0

//! Seeded random generation by three routes: direct simulation of the mapping
//! followed by decomposition, ESF(1/2) rejection for component spectra, and
//! core size followed by a uniform derangement for cycle spectra.

mod core;
mod esf;
mod mapping;
mod rejection;
mod rng;

pub use self::core::{
    sample_core_size_toes, sample_derangement_cycles, sample_toes_core, CoreSizeSampler,
    ToesCoreSampler,
};
pub use self::esf::{sample_esf_crp, sample_esf_feller, EsfMethod, EsfSampler};
pub use self::mapping::{
    decompose, fill_mapping, sample_mapping, Decomposer, Decomposition, Mapping,
};
pub use self::rejection::{sample_toes_components, ComponentSampler};
pub use self::rng::{RngStream, SEED_RULE};
