//! Pareto-front quality indicators.
//!
//! Two indicators are provided, both for minimization fronts:
//!
//! * [`igd`] — inverted generational distance between an obtained front
//!   and a reference front.
//! * [`hypervolume`] — the measure of the region dominated by a front
//!   relative to a reference point, exact for one to three objectives
//!   and Monte Carlo estimated beyond. [`hypervolume_mc`] exposes the
//!   estimator directly so the exact routines can be cross-checked
//!   against an independent computation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

/// Samples used by [`hypervolume`] when it falls back to Monte Carlo
/// for four or more objectives.
const HV_MC_FALLBACK_SAMPLES: usize = 200_000;
const HV_MC_FALLBACK_SEED: u64 = 0x9d1c_e878;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("front must contain at least one point")]
    EmptyFront,
    #[error("objective count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("point {index} contains a non-finite objective value")]
    NonFinite { index: usize },
    #[error("Monte Carlo estimate needs at least 1000 samples, got {0}")]
    TooFewSamples(usize),
}

/// A set of objective vectors, minimization orientation.
#[derive(Debug, Clone)]
pub struct FrontSet {
    points: Vec<Vec<f64>>,
    objective_count: usize,
}

impl FrontSet {
    /// Validates that the set is non-empty, rectangular, and finite.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self, MetricsError> {
        let objective_count = points.first().ok_or(MetricsError::EmptyFront)?.len();
        if objective_count == 0 {
            return Err(MetricsError::EmptyFront);
        }
        for (index, point) in points.iter().enumerate() {
            if point.len() != objective_count {
                return Err(MetricsError::DimensionMismatch {
                    left: objective_count,
                    right: point.len(),
                });
            }
            if point.iter().any(|value| !value.is_finite()) {
                return Err(MetricsError::NonFinite { index });
            }
        }
        Ok(Self {
            points,
            objective_count,
        })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn objective_count(&self) -> usize {
        self.objective_count
    }
}

/// Which inverted-generational-distance formula to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IgdMode {
    /// Mean over reference points of the distance to the nearest front
    /// point. The community-standard definition.
    #[default]
    Standard,
    /// Sum over front points of the distance to the nearest reference
    /// point, divided by the reference set size. Differs from
    /// `Standard` whenever the two sets have different cardinality.
    Transposed,
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn nearest_distance(point: &[f64], set: &[Vec<f64>]) -> f64 {
    set.iter()
        .map(|other| euclid(point, other))
        .fold(f64::INFINITY, f64::min)
}

/// Inverted generational distance between an obtained front and a
/// reference front.
pub fn igd(front: &FrontSet, reference: &FrontSet, mode: IgdMode) -> Result<f64, MetricsError> {
    if front.objective_count != reference.objective_count {
        return Err(MetricsError::DimensionMismatch {
            left: front.objective_count,
            right: reference.objective_count,
        });
    }
    let value = match mode {
        IgdMode::Standard => {
            let sum: f64 = reference
                .points
                .iter()
                .map(|r| nearest_distance(r, &front.points))
                .sum();
            sum / reference.points.len() as f64
        }
        IgdMode::Transposed => {
            let sum: f64 = front
                .points
                .iter()
                .map(|p| nearest_distance(p, &reference.points))
                .sum();
            sum / reference.points.len() as f64
        }
    };
    Ok(value)
}

/// Points strictly better than the reference point in every coordinate;
/// only these enclose positive volume.
fn contributing<'a>(front: &'a FrontSet, reference_point: &[f64]) -> Vec<&'a [f64]> {
    front
        .points
        .iter()
        .filter(|p| p.iter().zip(reference_point).all(|(v, r)| v < r))
        .map(Vec::as_slice)
        .collect()
}

fn hv1(points: &[&[f64]], reference_point: &[f64]) -> f64 {
    points
        .iter()
        .map(|p| reference_point[0] - p[0])
        .fold(0.0, f64::max)
}

/// Rectangle-union sweep. `points` must already dominate the reference
/// point strictly.
fn hv2(points: &[(f64, f64)], reference_point: (f64, f64)) -> f64 {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite objectives"));
    let mut area = 0.0;
    let mut ceiling = reference_point.1;
    for (x, y) in sorted {
        if y < ceiling {
            area += (reference_point.0 - x) * (ceiling - y);
            ceiling = y;
        }
    }
    area
}

/// Sweep-plane slicing along the third axis, reducing each slab to a
/// two-dimensional rectangle union.
fn hv3(points: &[&[f64]], reference_point: &[f64]) -> f64 {
    let mut sorted: Vec<&[f64]> = points.to_vec();
    sorted.sort_by(|a, b| a[2].partial_cmp(&b[2]).expect("finite objectives"));
    let mut volume = 0.0;
    let mut active: Vec<(f64, f64)> = Vec::with_capacity(sorted.len());
    let mut i = 0;
    while i < sorted.len() {
        let z = sorted[i][2];
        while i < sorted.len() && sorted[i][2] == z {
            active.push((sorted[i][0], sorted[i][1]));
            i += 1;
        }
        let z_next = if i < sorted.len() {
            sorted[i][2]
        } else {
            reference_point[2]
        };
        volume += hv2(&active, (reference_point[0], reference_point[1])) * (z_next - z);
    }
    volume
}

/// Hypervolume dominated by `front` with respect to `reference_point`.
///
/// Exact for up to three objectives; four and more fall back to a
/// seeded Monte Carlo estimate. Dominated and duplicate points do not
/// change the result, and an empty contributing set yields zero.
pub fn hypervolume(front: &FrontSet, reference_point: &[f64]) -> Result<f64, MetricsError> {
    if front.objective_count != reference_point.len() {
        return Err(MetricsError::DimensionMismatch {
            left: front.objective_count,
            right: reference_point.len(),
        });
    }
    let points = contributing(front, reference_point);
    if points.is_empty() {
        return Ok(0.0);
    }
    match front.objective_count {
        1 => Ok(hv1(&points, reference_point)),
        2 => {
            let pts: Vec<(f64, f64)> = points.iter().map(|p| (p[0], p[1])).collect();
            Ok(hv2(&pts, (reference_point[0], reference_point[1])))
        }
        3 => Ok(hv3(&points, reference_point)),
        _ => Ok(hypervolume_mc(
            front,
            reference_point,
            HV_MC_FALLBACK_SAMPLES,
            HV_MC_FALLBACK_SEED,
        )?
        .value),
    }
}

/// A Monte Carlo hypervolume estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HvEstimate {
    pub value: f64,
    pub std_error: f64,
}

/// Estimates hypervolume by uniform sampling in the box spanned by the
/// componentwise minimum of the front and the reference point.
///
/// A degenerate box (zero volume on any axis) yields a zero estimate
/// with zero error. The estimate is reproducible for a fixed seed.
pub fn hypervolume_mc(
    front: &FrontSet,
    reference_point: &[f64],
    samples: usize,
    seed: u64,
) -> Result<HvEstimate, MetricsError> {
    if front.objective_count != reference_point.len() {
        return Err(MetricsError::DimensionMismatch {
            left: front.objective_count,
            right: reference_point.len(),
        });
    }
    if samples < 1000 {
        return Err(MetricsError::TooFewSamples(samples));
    }
    let m = front.objective_count;
    let mut low = vec![f64::INFINITY; m];
    for point in &front.points {
        for (l, v) in low.iter_mut().zip(point) {
            *l = l.min(*v);
        }
    }
    let volume: f64 = low
        .iter()
        .zip(reference_point)
        .map(|(l, r)| r - l)
        .product();
    if low.iter().zip(reference_point).any(|(l, r)| l >= r) {
        return Ok(HvEstimate {
            value: 0.0,
            std_error: 0.0,
        });
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut sample = vec![0.0; m];
    let mut hits = 0usize;
    for _ in 0..samples {
        for ((s, l), r) in sample.iter_mut().zip(&low).zip(reference_point) {
            *s = l + rng.random::<f64>() * (r - l);
        }
        let dominated = front
            .points
            .iter()
            .any(|p| p.iter().zip(&sample).all(|(v, s)| v <= s));
        if dominated {
            hits += 1;
        }
    }
    let fraction = hits as f64 / samples as f64;
    Ok(HvEstimate {
        value: volume * fraction,
        std_error: volume * (fraction * (1.0 - fraction) / samples as f64).sqrt(),
    })
}
