//! DTLZ3: spherical Pareto front with a highly multimodal
//! Rastrigin-style distance function.

use super::{Evaluation, EvaluationError, Problem, ProblemError};

use std::f64::consts::PI;

/// DTLZ3 with `m` objectives and `k` distance variables
/// (`dimension = m + k - 1`, all variables in `[0, 1]`).
///
/// The distance function `g` attains its minimum of zero when every
/// distance variable equals 0.5; the Pareto front is the positive
/// octant of the unit sphere.
#[derive(Debug, Clone)]
pub struct Dtlz3 {
    name: String,
    objectives: usize,
    distance_vars: usize,
    bounds: Vec<(f64, f64)>,
}

impl Dtlz3 {
    pub fn new(objectives: usize, distance_vars: usize) -> Result<Self, ProblemError> {
        if objectives < 2 {
            return Err(ProblemError::TooFewObjectives(objectives));
        }
        if distance_vars < 1 {
            return Err(ProblemError::TooFewDistanceVariables(distance_vars));
        }
        let dimension = objectives + distance_vars - 1;
        Ok(Self {
            name: format!("dtlz3(m={objectives},k={distance_vars})"),
            objectives,
            distance_vars,
            bounds: vec![(0.0, 1.0); dimension],
        })
    }

    fn g(&self, distance: &[f64]) -> f64 {
        let sum: f64 = distance
            .iter()
            .map(|&x| {
                let c = x - 0.5;
                c * c - (20.0 * PI * c).cos()
            })
            .sum();
        100.0 * (self.distance_vars as f64 + sum)
    }
}

impl Problem for Dtlz3 {
    fn name(&self) -> &str {
        &self.name
    }

    fn dimension(&self) -> usize {
        self.objectives + self.distance_vars - 1
    }

    fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    fn objective_count(&self) -> usize {
        self.objectives
    }

    fn evaluate(&self, genes: &[f64]) -> Result<Evaluation, EvaluationError> {
        let m = self.objectives;
        if genes.len() != self.dimension() {
            return Err(EvaluationError {
                genes: genes.to_vec(),
                message: format!("expected {} variables, got {}", self.dimension(), genes.len()),
            });
        }
        let position = &genes[..m - 1];
        let g = self.g(&genes[m - 1..]);
        let radius = 1.0 + g;
        let mut objectives = vec![radius; m];
        for (j, objective) in objectives.iter_mut().enumerate() {
            // f_j keeps cos factors for the first m-1-j angles and ends
            // with a sin factor except on the first objective.
            for &x in &position[..m - 1 - j] {
                *objective *= (x * PI / 2.0).cos();
            }
            if j > 0 {
                *objective *= (position[m - 1 - j] * PI / 2.0).sin();
            }
        }
        Ok(Evaluation::feasible(objectives))
    }

    fn true_front(&self, count: usize) -> Option<Vec<Vec<f64>>> {
        // Das-Dennis directions radially projected onto the unit sphere.
        let lattice = super::lattice_at_least(self.objectives, count);
        Some(
            lattice
                .into_iter()
                .map(|direction| {
                    let norm = direction.iter().map(|v| v * v).sum::<f64>().sqrt();
                    direction.into_iter().map(|v| v / norm).collect()
                })
                .collect(),
        )
    }

    fn suggested_hv_ref(&self) -> Option<Vec<f64>> {
        // The front nadir is the all-ones vector.
        Some(vec![1.1; self.objectives])
    }
}
