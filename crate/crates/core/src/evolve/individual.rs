use crate::problems::Evaluation;

/// One candidate solution together with its evaluation results and the
/// per-generation bookkeeping the optimizer attaches to it.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genes: Vec<f64>,
    pub objectives: Vec<f64>,
    /// Aggregate constraint violation; zero means feasible.
    pub violation: f64,
    /// Non-domination front index, written by the sorter.
    pub rank: usize,
    /// Distance of the normalized objective vector to the unit-simplex
    /// hyperplane, written during screening.
    pub plane_distance: f64,
}

impl Individual {
    pub fn new(genes: Vec<f64>, evaluation: Evaluation) -> Self {
        Self {
            genes,
            objectives: evaluation.objectives,
            violation: evaluation.violation,
            rank: 0,
            plane_distance: 0.0,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.violation == 0.0
    }
}

/// An ordered set of individuals tagged with its generation number.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub members: Vec<Individual>,
    pub generation: usize,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        Self {
            members,
            generation: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Objective vectors of all members, in member order.
    pub fn objectives(&self) -> Vec<Vec<f64>> {
        self.members.iter().map(|m| m.objectives.clone()).collect()
    }
}
