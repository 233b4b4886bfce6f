//! Minimal Tchebycheff decomposition baseline, present only to give
//! benchmark plots a second reference curve.
//!
//! One population slot per weight vector (the same simplex lattice the
//! reference directions use, so the population size is the lattice size
//! rather than the configured N), neighborhood replacement, and one
//! offspring per subproblem per generation.

use super::config::AlgorithmConfig;
use super::individual::Individual;
use super::operators::{polynomial_mutation, sbx_crossover};
use super::reference::simplex_lattice;
use super::runner::{pareto_front, prepare_indicators};
use super::trace::{snapshot, Archive, IndicatorRefs, RunTrace};
use super::EvolveError;
use crate::problems::Problem;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

const NEIGHBORHOOD: usize = 20;

/// Weight floor keeping axis-aligned weights from ignoring an
/// objective entirely.
const WEIGHT_FLOOR: f64 = 1e-6;

/// Penalty factor folding constraint violations into the scalarized
/// fitness; the benchmark problems this baseline runs on are
/// unconstrained, so it only guards against misuse.
const VIOLATION_PENALTY: f64 = 1e6;

fn tchebycheff(member: &Individual, weight: &[f64], ideal: &[f64]) -> f64 {
    let scalar = member
        .objectives
        .iter()
        .zip(weight)
        .zip(ideal)
        .map(|((f, w), z)| w.max(WEIGHT_FLOOR) * (f - z))
        .fold(f64::NEG_INFINITY, f64::max);
    scalar + VIOLATION_PENALTY * member.violation
}

pub(crate) fn run_baseline(
    problem: &dyn Problem,
    config: &AlgorithmConfig,
) -> Result<RunTrace, EvolveError> {
    let true_front = prepare_indicators(problem, config)?;
    let m = problem.objective_count();
    if m < 2 || config.simplex_divisions < 1 {
        return Err(EvolveError::BadReference {
            m,
            p: config.simplex_divisions,
        });
    }
    let weights = simplex_lattice(m, config.simplex_divisions);
    let size = weights.len();
    let neighborhood = NEIGHBORHOOD.min(size);

    // Each subproblem mates within its closest weight vectors.
    let neighbors: Vec<Vec<usize>> = (0..size)
        .map(|i| {
            let mut order: Vec<usize> = (0..size).collect();
            order.sort_by(|&a, &b| {
                let da = weight_distance(&weights[i], &weights[a]);
                let db = weight_distance(&weights[i], &weights[b]);
                da.partial_cmp(&db).unwrap().then(a.cmp(&b))
            });
            order.truncate(neighborhood);
            order
        })
        .collect();

    let indicators = IndicatorRefs {
        hv_reference: config.metrics.hv_reference.as_deref(),
        true_front: true_front.as_ref(),
        igd_mode: config.metrics.igd_mode,
    };

    let bounds = problem.bounds();
    let dimension = problem.dimension();
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut archive = Archive::default();
    let mut population = Vec::with_capacity(size);
    for _ in 0..size {
        let genes: Vec<f64> = bounds
            .iter()
            .map(|&(lower, upper)| rng.random_range(lower..=upper))
            .collect();
        let evaluation = problem.evaluate(&genes)?;
        if evaluation.is_feasible() {
            archive.offer(&evaluation.objectives);
        }
        population.push(Individual::new(genes, evaluation));
    }
    let mut evaluations = size;
    let mut ideal = vec![f64::INFINITY; m];
    for member in &population {
        update_ideal(&mut ideal, &member.objectives);
    }

    let mut generation = 0usize;
    let mut records = vec![snapshot(
        generation,
        evaluations,
        &population,
        &archive,
        &indicators,
    )];
    let mut snapshots = vec![archive.points().to_vec()];

    while evaluations + size <= config.max_evaluations {
        for index in 0..size {
            let pick = neighbors[index][rng.random_range(0..neighborhood)];
            let mate = neighbors[index][rng.random_range(0..neighborhood)];
            let (child_genes, _) = sbx_crossover(
                &population[pick].genes,
                &population[mate].genes,
                bounds,
                config.sbx_eta,
                &mut rng,
            );
            let mut child_genes = child_genes;
            polynomial_mutation(
                &mut child_genes,
                bounds,
                config.pm_eta,
                1.0 / dimension as f64,
                &mut rng,
            );
            let evaluation = problem.evaluate(&child_genes)?;
            evaluations += 1;
            if evaluation.is_feasible() {
                archive.offer(&evaluation.objectives);
            }
            let child = Individual::new(child_genes, evaluation);
            update_ideal(&mut ideal, &child.objectives);
            for &j in &neighbors[index] {
                if tchebycheff(&child, &weights[j], &ideal)
                    <= tchebycheff(&population[j], &weights[j], &ideal)
                {
                    population[j] = child.clone();
                }
            }
        }
        generation += 1;
        records.push(snapshot(
            generation,
            evaluations,
            &population,
            &archive,
            &indicators,
        ));
        snapshots.push(archive.points().to_vec());
    }

    Ok(RunTrace {
        records,
        pareto: pareto_front(&population),
        archive_snapshots: snapshots,
    })
}

fn weight_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
}

fn update_ideal(ideal: &mut [f64], objectives: &[f64]) {
    for (z, &f) in ideal.iter_mut().zip(objectives) {
        if f < *z {
            *z = f;
        }
    }
}
