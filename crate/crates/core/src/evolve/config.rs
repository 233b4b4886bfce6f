use super::rates::RateBounds;
use super::EvolveError;
use crate::metrics::IgdMode;
use std::str::FromStr;

/// Which optimizer drives the run. The first two share one generation
/// code path and differ only in the screening counts they apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Nsga3,
    Nsga3Fo,
    MoeadBaseline,
}

impl Algorithm {
    pub fn label(&self) -> &'static str {
        match self {
            Algorithm::Nsga3 => "nsga3",
            Algorithm::Nsga3Fo => "nsga3-fo",
            Algorithm::MoeadBaseline => "moead-baseline",
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nsga3" => Ok(Algorithm::Nsga3),
            "nsga3-fo" => Ok(Algorithm::Nsga3Fo),
            "moead-baseline" => Ok(Algorithm::MoeadBaseline),
            other => Err(format!(
                "unknown algorithm '{other}' (expected nsga3, nsga3-fo or moead-baseline)"
            )),
        }
    }
}

/// Optional per-generation indicator computation attached to a run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricOptions {
    /// Reference point for hypervolume of the best-so-far archive; when
    /// absent the trace leaves the hypervolume column empty.
    pub hv_reference: Option<Vec<f64>>,
    /// Reference front for the per-generation IGD column.
    pub true_front: Option<Vec<Vec<f64>>>,
    pub igd_mode: IgdMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmConfig {
    pub algorithm: Algorithm,
    /// Steady-state population size N; even and at least 4.
    pub population_size: usize,
    /// Divisions per axis for the reference lattice.
    pub simplex_divisions: usize,
    /// Evaluation budget; a generation only starts when its full
    /// offspring cost still fits.
    pub max_evaluations: usize,
    /// Members entering the next generation directly each generation.
    pub focused_count: usize,
    /// Members barred from mating each generation; they still compete
    /// for survival.
    pub non_focused_count: usize,
    pub sbx_eta: f64,
    pub pm_eta: f64,
    pub rates: RateBounds,
    pub seed: u64,
    pub metrics: MetricOptions,
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::Nsga3Fo,
            population_size: 92,
            simplex_divisions: 12,
            max_evaluations: 20_000,
            focused_count: 1,
            non_focused_count: 1,
            sbx_eta: 30.0,
            pm_eta: 20.0,
            rates: RateBounds::default(),
            seed: 0,
            metrics: MetricOptions::default(),
        }
    }
}

impl AlgorithmConfig {
    /// Screening counts actually applied: plain NSGA-III and the
    /// decomposition baseline never screen.
    pub fn effective_screening(&self) -> (usize, usize) {
        match self.algorithm {
            Algorithm::Nsga3Fo => (self.focused_count, self.non_focused_count),
            _ => (0, 0),
        }
    }

    pub fn validate(&self) -> Result<(), EvolveError> {
        let n = self.population_size;
        if n < 4 || n % 2 != 0 {
            return Err(EvolveError::Config(format!(
                "population size must be even and at least 4, got {n}"
            )));
        }
        if self.simplex_divisions < 1 {
            return Err(EvolveError::Config(
                "simplex divisions must be at least 1".into(),
            ));
        }
        if self.max_evaluations == 0 {
            return Err(EvolveError::Config(
                "evaluation budget must be positive".into(),
            ));
        }
        let (focused, excluded) = self.effective_screening();
        if focused + excluded >= n {
            return Err(EvolveError::ScreeningTooGreedy {
                focused,
                excluded,
                population: n,
            });
        }
        for (label, eta) in [("sbx_eta", self.sbx_eta), ("pm_eta", self.pm_eta)] {
            if !eta.is_finite() || eta <= 0.0 {
                return Err(EvolveError::Config(format!(
                    "{label} must be a positive finite number, got {eta}"
                )));
            }
        }
        self.rates.validate().map_err(EvolveError::Config)?;
        if let Some(reference) = &self.metrics.hv_reference {
            if reference.iter().any(|v| !v.is_finite()) {
                return Err(EvolveError::Config(
                    "hypervolume reference point must be finite".into(),
                ));
            }
        }
        Ok(())
    }
}
