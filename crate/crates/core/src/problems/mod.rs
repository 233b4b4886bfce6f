//! Benchmark problems and the problem abstraction consumed by the
//! optimizers.
//!
//! A [`Problem`] owns its decision-space geometry (dimension and bounds)
//! and a pure, deterministic evaluation function producing objective
//! values plus an aggregate constraint violation. Problems with an
//! analytic Pareto front additionally expose a deterministic front
//! sampler for distance-based indicators.

use thiserror::Error;

mod dtlz;
mod wfg;

pub use dtlz::Dtlz3;
pub use wfg::Wfg3;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("objective count must be at least 2, got {0}")]
    TooFewObjectives(usize),
    #[error("distance variable count must be at least 1, got {0}")]
    TooFewDistanceVariables(usize),
    #[error("position parameter count {k} must be a positive multiple of objectives-1 ({groups})")]
    BadPositionCount { k: usize, groups: usize },
    #[error("distance parameter count must be a positive even number, got {0}")]
    BadDistanceCount(usize),
    #[error("problem '{0}' has no analytic Pareto front")]
    NoKnownFront(String),
    #[error("front sample count must be at least 1")]
    EmptySample,
}

/// Outcome of evaluating one decision vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// Objective values, minimization orientation.
    pub objectives: Vec<f64>,
    /// Aggregate constraint violation; zero means feasible.
    pub violation: f64,
}

impl Evaluation {
    pub fn feasible(objectives: Vec<f64>) -> Self {
        Self {
            objectives,
            violation: 0.0,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.violation == 0.0
    }
}

/// Error raised by a problem evaluation, with the offending genes kept
/// for diagnosis.
#[derive(Debug, Error)]
#[error("evaluation failed for genes {genes:?}: {message}")]
pub struct EvaluationError {
    pub genes: Vec<f64>,
    pub message: String,
}

/// A real-valued multi-objective minimization problem.
///
/// Evaluation must be a pure function of the genes so that populations
/// may be evaluated concurrently and runs stay reproducible.
pub trait Problem: Sync {
    fn name(&self) -> &str;

    /// Number of decision variables.
    fn dimension(&self) -> usize;

    /// Per-variable `[lower, upper]` bounds, all finite.
    fn bounds(&self) -> &[(f64, f64)];

    /// Number of objectives `m`.
    fn objective_count(&self) -> usize;

    fn evaluate(&self, genes: &[f64]) -> Result<Evaluation, EvaluationError>;

    /// Deterministic sample of the analytic Pareto front, if one is
    /// known. `None` means the problem has no closed-form front.
    fn true_front(&self, _count: usize) -> Option<Vec<Vec<f64>>> {
        None
    }

    /// A hypervolume reference point that encloses the analytic front,
    /// if one is known (componentwise nadir scaled by 1.1).
    fn suggested_hv_ref(&self) -> Option<Vec<f64>> {
        None
    }
}

/// Samples `count` points from the problem's analytic Pareto front.
///
/// Fails explicitly when the problem has no known front.
pub fn sample_true_front(problem: &dyn Problem, count: usize) -> Result<Vec<Vec<f64>>, ProblemError> {
    if count == 0 {
        return Err(ProblemError::EmptySample);
    }
    problem
        .true_front(count)
        .ok_or_else(|| ProblemError::NoKnownFront(problem.name().to_string()))
}

/// Picks `count` evenly strided indices out of `total`, used to thin a
/// systematic lattice down to a requested sample size.
pub(crate) fn strided_indices(total: usize, count: usize) -> Vec<usize> {
    if count >= total {
        return (0..total).collect();
    }
    (0..count).map(|i| i * total / count).collect()
}

/// Smallest simplex lattice with at least `count` points, thinned back
/// to exactly `count` by even striding.
pub(crate) fn lattice_at_least(m: usize, count: usize) -> Vec<Vec<f64>> {
    let mut divisions = 1usize;
    while simplex_lattice_size(m, divisions) < count {
        divisions += 1;
    }
    let lattice = crate::evolve::reference::simplex_lattice(m, divisions);
    strided_indices(lattice.len(), count)
        .into_iter()
        .map(|i| lattice[i].clone())
        .collect()
}

/// C(m + p - 1, m - 1), the simplex lattice size; exact at the scales
/// used here.
fn simplex_lattice_size(m: usize, p: usize) -> usize {
    let mut value = 1usize;
    for i in 0..m - 1 {
        value = value * (p + i + 1) / (i + 1);
    }
    value
}
