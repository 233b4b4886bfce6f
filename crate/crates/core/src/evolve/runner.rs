//! The generation loop shared by NSGA-III and its focused-operator
//! variant, plus the `run` entry point dispatching on the configured
//! algorithm.

use super::config::{Algorithm, AlgorithmConfig};
use super::individual::{Individual, Population};
use super::moead;
use super::niching::niche_select;
use super::operators::{binary_tournament, polynomial_mutation, sbx_crossover};
use super::rates::{adaptive_rates, RateState};
use super::reference::{das_dennis, plane_distance, ReferenceSet};
use super::sorting::{assign_ranks, fast_nondominated_sort};
use super::trace::{snapshot, Archive, GenerationRecord, IndicatorRefs, ParetoMember, RunTrace};
use super::EvolveError;
use crate::metrics::FrontSet;
use crate::problems::Problem;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Population split produced by the screening stage.
#[derive(Debug, Clone)]
pub struct Screened {
    /// Smallest plane distances; survive into the next generation
    /// without passing through variation or selection.
    pub focused: Vec<Individual>,
    /// Largest plane distances; take no part in this generation.
    pub excluded: Vec<Individual>,
    pub remainder: Vec<Individual>,
}

/// Splits a population by plane distance: the `focused_count` members
/// closest to the simplex plane and the `excluded_count` farthest from
/// it. Distance ties resolve to the lower member index on both sides.
///
/// Members must carry up-to-date `plane_distance` values.
pub fn screen_focused(
    members: Vec<Individual>,
    focused_count: usize,
    excluded_count: usize,
) -> Result<Screened, EvolveError> {
    let n = members.len();
    if focused_count + excluded_count >= n {
        return Err(EvolveError::ScreeningTooGreedy {
            focused: focused_count,
            excluded: excluded_count,
            population: n,
        });
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Role {
        Focused,
        Excluded,
        Remainder,
    }
    let mut role = vec![Role::Remainder; n];

    let mut ascending: Vec<usize> = (0..n).collect();
    ascending.sort_by(|&a, &b| {
        members[a]
            .plane_distance
            .partial_cmp(&members[b].plane_distance)
            .expect("plane distances are finite")
            .then(a.cmp(&b))
    });
    for &index in &ascending[..focused_count] {
        role[index] = Role::Focused;
    }

    let mut descending: Vec<usize> = (0..n).filter(|&i| role[i] == Role::Remainder).collect();
    descending.sort_by(|&a, &b| {
        members[b]
            .plane_distance
            .partial_cmp(&members[a].plane_distance)
            .expect("plane distances are finite")
            .then(a.cmp(&b))
    });
    for &index in &descending[..excluded_count] {
        role[index] = Role::Excluded;
    }

    // Focused members keep ascending (distance, index) order, excluded keep
    // descending distance order; the remainder stays in population order.
    let mut slots: Vec<Option<Individual>> = members.into_iter().map(Some).collect();
    let mut take = |index: usize| slots[index].take().expect("member taken twice");
    let focused = ascending[..focused_count].iter().map(|&i| take(i)).collect();
    let excluded = descending[..excluded_count]
        .iter()
        .map(|&i| take(i))
        .collect();
    let remainder = (0..n)
        .filter(|&i| role[i] == Role::Remainder)
        .map(take)
        .collect();
    Ok(Screened {
        focused,
        excluded,
        remainder,
    })
}

/// Validates the optional indicator inputs against the problem's
/// objective count and pre-builds the reference front.
pub(crate) fn prepare_indicators(
    problem: &dyn Problem,
    config: &AlgorithmConfig,
) -> Result<Option<FrontSet>, EvolveError> {
    let m = problem.objective_count();
    if let Some(reference) = &config.metrics.hv_reference {
        if reference.len() != m {
            return Err(EvolveError::Config(format!(
                "hypervolume reference has {} coordinates for a {m}-objective problem",
                reference.len()
            )));
        }
    }
    match &config.metrics.true_front {
        Some(points) => {
            let front = FrontSet::new(points.clone())
                .map_err(|e| EvolveError::Config(format!("reference front: {e}")))?;
            if front.objective_count() != m {
                return Err(EvolveError::Config(format!(
                    "reference front has {} objectives, problem has {m}",
                    front.objective_count()
                )));
            }
            Ok(Some(front))
        }
        None => Ok(None),
    }
}

/// Constrained-domination front 0 of a set of members.
pub(crate) fn pareto_front(members: &[Individual]) -> Vec<ParetoMember> {
    let fronts = fast_nondominated_sort(members);
    match fronts.first() {
        Some(front) => front.iter().map(|&i| ParetoMember::from(&members[i])).collect(),
        None => Vec::new(),
    }
}

/// Runs the configured optimizer against `problem` until the evaluation
/// budget cannot fund another full generation.
pub fn run(problem: &dyn Problem, config: &AlgorithmConfig) -> Result<RunTrace, EvolveError> {
    config.validate()?;
    if config.algorithm == Algorithm::MoeadBaseline {
        return moead::run_baseline(problem, config);
    }
    let mut optimizer = Optimizer::new(problem, config)?;
    while optimizer.step()? {}
    Ok(optimizer.finish())
}

/// One in-flight NSGA-III(-FO) run.
pub(crate) struct Optimizer<'a> {
    problem: &'a dyn Problem,
    config: &'a AlgorithmConfig,
    refs: ReferenceSet,
    rng: ChaCha12Rng,
    pub(crate) population: Population,
    evaluations: usize,
    archive: Archive,
    true_front: Option<FrontSet>,
    records: Vec<GenerationRecord>,
    snapshots: Vec<Vec<Vec<f64>>>,
    /// Members that bypassed selection when forming the current
    /// population; retained for invariant checks.
    pub(crate) last_focused: Vec<Individual>,
}

impl<'a> Optimizer<'a> {
    pub(crate) fn new(
        problem: &'a dyn Problem,
        config: &'a AlgorithmConfig,
    ) -> Result<Self, EvolveError> {
        let true_front = prepare_indicators(problem, config)?;
        let refs = das_dennis(problem.objective_count(), config.simplex_divisions)?;
        let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
        let bounds = problem.bounds();

        let mut archive = Archive::default();
        let mut members = Vec::with_capacity(config.population_size);
        for _ in 0..config.population_size {
            let genes: Vec<f64> = bounds
                .iter()
                .map(|&(lower, upper)| rng.random_range(lower..=upper))
                .collect();
            let evaluation = problem.evaluate(&genes)?;
            if evaluation.is_feasible() {
                archive.offer(&evaluation.objectives);
            }
            members.push(Individual::new(genes, evaluation));
        }
        let evaluations = members.len();

        let mut optimizer = Self {
            problem,
            config,
            refs,
            rng,
            population: Population::new(members),
            evaluations,
            archive,
            true_front,
            records: Vec::new(),
            snapshots: Vec::new(),
            last_focused: Vec::new(),
        };
        optimizer.record();
        Ok(optimizer)
    }

    fn indicators(&self) -> IndicatorRefs<'_> {
        IndicatorRefs {
            hv_reference: self.config.metrics.hv_reference.as_deref(),
            true_front: self.true_front.as_ref(),
            igd_mode: self.config.metrics.igd_mode,
        }
    }

    fn record(&mut self) {
        let record = snapshot(
            self.population.generation,
            self.evaluations,
            &self.population.members,
            &self.archive,
            &self.indicators(),
        );
        self.records.push(record);
        self.snapshots.push(self.archive.points().to_vec());
    }

    /// Runs one generation; returns false when the remaining budget
    /// cannot fund it.
    pub(crate) fn step(&mut self) -> Result<bool, EvolveError> {
        let n = self.config.population_size;
        if self.evaluations + n > self.config.max_evaluations {
            return Ok(false);
        }
        self.evolve_generation()?;
        Ok(true)
    }

    fn evolve_generation(&mut self) -> Result<(), EvolveError> {
        let n = self.config.population_size;
        let (focused_count, excluded_count) = self.config.effective_screening();
        let bounds = self.problem.bounds();
        let dimension = self.problem.dimension();

        // Screening on plane distances of the freshly normalized
        // population.
        let objectives = self.population.objectives();
        let normalized = self.refs.normalize(&objectives);
        for (member, row) in self.population.members.iter_mut().zip(&normalized) {
            member.plane_distance = plane_distance(row);
        }
        let members = std::mem::take(&mut self.population.members);
        let Screened {
            focused,
            excluded,
            mut remainder,
        } = screen_focused(members, focused_count, excluded_count)?;

        assign_ranks(&mut remainder);

        // Rates follow the fitness spread of the mating pool; fitness is
        // the negated plane distance, so converging pools cool down.
        let fitness: Vec<f64> = remainder.iter().map(|m| -m.plane_distance).collect();
        let (pc, pm) = adaptive_rates(&RateState::from_fitness(self.config.rates, &fitness));
        let per_gene_rate = pm / dimension as f64;

        // Excluded members sit out the genetic operators but rejoin the
        // merged pool below, so it reaches 2N counting the focused
        // members off to the side.
        let offspring_target = n;
        let mut offspring_genes = Vec::with_capacity(offspring_target + 1);
        while offspring_genes.len() < offspring_target {
            let first = binary_tournament(&remainder, &mut self.rng);
            let second = binary_tournament(&remainder, &mut self.rng);
            let (a, b) = if self.rng.random::<f64>() < pc {
                sbx_crossover(
                    &remainder[first].genes,
                    &remainder[second].genes,
                    bounds,
                    self.config.sbx_eta,
                    &mut self.rng,
                )
            } else {
                (remainder[first].genes.clone(), remainder[second].genes.clone())
            };
            for mut genes in [a, b] {
                polynomial_mutation(
                    &mut genes,
                    bounds,
                    self.config.pm_eta,
                    per_gene_rate,
                    &mut self.rng,
                );
                offspring_genes.push(genes);
            }
        }
        offspring_genes.truncate(offspring_target);

        let mut pool = remainder;
        pool.extend(excluded);
        pool.reserve(offspring_genes.len());
        for genes in offspring_genes {
            let evaluation = self.problem.evaluate(&genes)?;
            self.evaluations += 1;
            if evaluation.is_feasible() {
                self.archive.offer(&evaluation.objectives);
            }
            pool.push(Individual::new(genes, evaluation));
        }

        let selected = niche_select(pool, &mut self.refs, n - focused_count)?;
        self.last_focused = focused.clone();
        let mut next = focused;
        next.extend(selected);
        self.population.members = next;
        self.population.generation += 1;
        self.record();
        Ok(())
    }

    pub(crate) fn finish(self) -> RunTrace {
        RunTrace {
            records: self.records,
            pareto: pareto_front(&self.population.members),
            archive_snapshots: self.snapshots,
        }
    }
}
