//! Run recording: per-generation statistics, the best-so-far feasible
//! archive, and the final Pareto set.

use super::individual::Individual;
use super::sorting::dominates_objectives;
use crate::metrics::{hypervolume, igd, FrontSet, IgdMode};

/// Snapshot taken after every completed generation (and once for the
/// initial population, as generation 0).
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationRecord {
    pub generation: usize,
    /// Total problem evaluations spent so far.
    pub evaluations: usize,
    /// Hypervolume of the best-so-far feasible archive, when a
    /// reference point was configured.
    pub hv: Option<f64>,
    /// IGD of the same best-so-far archive against the configured
    /// reference front, so both indicators describe the solution set a
    /// run would deliver if stopped at this generation.
    pub igd: Option<f64>,
    /// Componentwise minimum objective values in the population.
    pub best: Vec<f64>,
    /// Componentwise mean objective values in the population.
    pub mean: Vec<f64>,
    pub feasible_fraction: f64,
}

/// A solution carried out of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoMember {
    pub genes: Vec<f64>,
    pub objectives: Vec<f64>,
    pub violation: f64,
}

impl From<&Individual> for ParetoMember {
    fn from(member: &Individual) -> Self {
        Self {
            genes: member.genes.clone(),
            objectives: member.objectives.clone(),
            violation: member.violation,
        }
    }
}

/// Complete record of one optimization run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub records: Vec<GenerationRecord>,
    /// Non-dominated set of the final population; all feasible whenever
    /// the final population contains any feasible member.
    pub pareto: Vec<ParetoMember>,
    /// Objective vectors of the feasible archive after each recorded
    /// generation, aligned with `records`. Enables indicator
    /// recomputation against references chosen after the run.
    pub archive_snapshots: Vec<Vec<Vec<f64>>>,
}

impl RunTrace {
    pub fn final_evaluations(&self) -> usize {
        self.records.last().map_or(0, |r| r.evaluations)
    }
}

/// Best-so-far archive over every feasible evaluation of a run: keeps
/// exactly the mutually non-dominated objective vectors seen.
#[derive(Debug, Clone, Default)]
pub struct Archive {
    points: Vec<Vec<f64>>,
}

impl Archive {
    /// Offers one feasible objective vector; returns whether it was
    /// retained. Duplicates and dominated points are rejected, and any
    /// point the newcomer dominates is evicted.
    pub fn offer(&mut self, objectives: &[f64]) -> bool {
        if self
            .points
            .iter()
            .any(|kept| kept.iter().zip(objectives).all(|(k, o)| k <= o))
        {
            return false;
        }
        self.points
            .retain(|kept| !dominates_objectives(objectives, kept));
        self.points.push(objectives.to_vec());
        true
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Validated indicator inputs shared by the optimizers.
pub(crate) struct IndicatorRefs<'a> {
    pub hv_reference: Option<&'a [f64]>,
    pub true_front: Option<&'a FrontSet>,
    pub igd_mode: IgdMode,
}

/// Builds the per-generation record for the current population.
pub(crate) fn snapshot(
    generation: usize,
    evaluations: usize,
    members: &[Individual],
    archive: &Archive,
    indicators: &IndicatorRefs,
) -> GenerationRecord {
    let m = members[0].objectives.len();
    let mut best = vec![f64::INFINITY; m];
    let mut mean = vec![0.0; m];
    let mut feasible = 0usize;
    for member in members {
        for (j, &value) in member.objectives.iter().enumerate() {
            best[j] = best[j].min(value);
            mean[j] += value;
        }
        if member.is_feasible() {
            feasible += 1;
        }
    }
    for value in &mut mean {
        *value /= members.len() as f64;
    }

    let hv = indicators.hv_reference.and_then(|reference| {
        if archive.is_empty() {
            return None;
        }
        let front = FrontSet::new(archive.points().to_vec()).ok()?;
        hypervolume(&front, reference).ok()
    });
    let igd_value = indicators.true_front.and_then(|reference| {
        if archive.is_empty() {
            return None;
        }
        let front = FrontSet::new(archive.points().to_vec()).ok()?;
        igd(&front, reference, indicators.igd_mode).ok()
    });

    GenerationRecord {
        generation,
        evaluations,
        hv,
        igd: igd_value,
        best,
        mean,
        feasible_fraction: feasible as f64 / members.len() as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn archive_keeps_only_nondominated_points() {
        let mut archive = Archive::default();
        assert!(archive.offer(&[1.0, 2.0]));
        assert!(archive.offer(&[2.0, 1.0]));
        assert!(!archive.offer(&[2.0, 2.0]));
        assert!(!archive.offer(&[1.0, 2.0]));
        assert_eq!(archive.len(), 2);
        assert!(archive.offer(&[0.5, 0.5]));
        assert_eq!(archive.points(), &[vec![0.5, 0.5]]);
    }

    #[test]
    fn archive_rejects_weakly_dominated_points() {
        let mut archive = Archive::default();
        assert!(archive.offer(&[1.0, 1.0]));
        assert!(!archive.offer(&[1.0, 1.5]));
        assert!(archive.offer(&[0.5, 1.2]));
        assert_eq!(archive.len(), 2);
    }
}
