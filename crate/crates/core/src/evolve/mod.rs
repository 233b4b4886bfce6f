//! Evolutionary optimization core: NSGA-III with an optional
//! focused-operator screening stage, plus a minimal decomposition
//! baseline for comparison runs.
//!
//! The screening stage ranks the population by the perpendicular
//! distance of each normalized objective vector to the unit-simplex
//! hyperplane. The closest members ("focused") skip variation and
//! survive verbatim; the farthest are dropped before mating. With both
//! screening counts at zero the generation reduces exactly to standard
//! NSGA-III — the two algorithms share one code path.
//!
//! All randomness flows through a single seeded ChaCha stream, so a
//! `(config, seed)` pair reproduces a run bit for bit.

pub mod config;
pub mod individual;
pub mod moead;
pub mod niching;
pub mod operators;
pub mod rates;
pub mod reference;
pub mod runner;
pub mod sorting;
pub mod trace;

pub use config::{Algorithm, AlgorithmConfig, MetricOptions};
pub use individual::{Individual, Population};
pub use rates::{adaptive_rates, RateBounds, RateState};
pub use reference::{das_dennis, plane_distance, ReferenceSet};
pub use runner::{run, screen_focused, Screened};
pub use trace::{GenerationRecord, ParetoMember, RunTrace};

use crate::problems::EvaluationError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvolveError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("reference set needs m >= 2 and p >= 1, got m={m}, p={p}")]
    BadReference { m: usize, p: usize },
    #[error("screening {focused}+{excluded} members would empty a population of {population}")]
    ScreeningTooGreedy {
        focused: usize,
        excluded: usize,
        population: usize,
    },
    #[error("selection pool of {pool} cannot fill a population of {target}")]
    PoolTooSmall { pool: usize, target: usize },
    #[error(transparent)]
    Evaluation(#[from] EvaluationError),
}
