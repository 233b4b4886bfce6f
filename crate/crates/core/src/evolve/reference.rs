//! Structured reference directions on the unit simplex and the adaptive
//! objective normalization built around them.

use super::EvolveError;
use nalgebra::{DMatrix, DVector};

/// Weight used for the off-axis components of the achievement
/// scalarizing function when locating extreme points.
const ASF_EPSILON: f64 = 1e-6;

/// Intercepts at or below this threshold are treated as degenerate.
const INTERCEPT_FLOOR: f64 = 1e-12;

/// Reference directions plus the normalization state that accumulates
/// over a run: the ideal point only ever moves toward smaller values,
/// the worst point toward larger ones, and extreme points compete
/// against their predecessors.
#[derive(Debug, Clone)]
pub struct ReferenceSet {
    points: Vec<Vec<f64>>,
    ideal: Vec<f64>,
    worst: Vec<f64>,
    extremes: Vec<Vec<f64>>,
}

/// Systematic lattice of points with coordinates `k/p` summing to one,
/// in lexicographic coordinate order.
pub(crate) fn simplex_lattice(m: usize, p: usize) -> Vec<Vec<f64>> {
    fn fill(points: &mut Vec<Vec<f64>>, prefix: &mut Vec<usize>, m: usize, p: usize, left: usize) {
        if prefix.len() == m - 1 {
            let mut point: Vec<f64> = prefix.iter().map(|&k| k as f64 / p as f64).collect();
            point.push(left as f64 / p as f64);
            points.push(point);
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            fill(points, prefix, m, p, left - k);
            prefix.pop();
        }
    }
    let mut points = Vec::new();
    fill(&mut points, &mut Vec::new(), m, p, p);
    points
}

/// Builds the reference set for `m` objectives with `p` divisions per
/// axis; the lattice has `C(m + p - 1, m - 1)` points.
pub fn das_dennis(m: usize, p: usize) -> Result<ReferenceSet, EvolveError> {
    if m < 2 || p < 1 {
        return Err(EvolveError::BadReference { m, p });
    }
    Ok(ReferenceSet {
        points: simplex_lattice(m, p),
        ideal: vec![f64::INFINITY; m],
        worst: vec![f64::NEG_INFINITY; m],
        extremes: Vec::new(),
    })
}

impl ReferenceSet {
    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn objective_count(&self) -> usize {
        self.ideal.len()
    }

    /// Per-objective minima over everything normalized so far.
    pub fn ideal(&self) -> &[f64] {
        &self.ideal
    }

    /// Translates objectives by the (monotonically updated) ideal point
    /// and rescales each axis by the intercept of the hyperplane through
    /// the extreme points, so a well-spread population maps roughly onto
    /// the unit simplex.
    ///
    /// Extreme points accumulate across calls: the previous extremes
    /// compete with the incoming rows, which keeps the hyperplane from
    /// jittering when a generation happens to lack a good axis anchor.
    /// Intercepts are rejected (singular system, non-positive, or
    /// implying a nadir beyond the worst point seen so far — the tilted
    /// planes degenerate fronts produce) in favor of the per-axis maxima
    /// of the current non-dominated rows; a fully collapsed axis
    /// normalizes to zero rather than dividing by zero.
    pub fn normalize(&mut self, objectives: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let m = self.objective_count();
        if objectives.is_empty() {
            return Vec::new();
        }
        for row in objectives {
            for (i, &value) in row.iter().enumerate() {
                if value < self.ideal[i] {
                    self.ideal[i] = value;
                }
                if value > self.worst[i] {
                    self.worst[i] = value;
                }
            }
        }
        let translate = |row: &Vec<f64>| -> Vec<f64> {
            row.iter().zip(&self.ideal).map(|(v, i)| v - i).collect()
        };
        let translated: Vec<Vec<f64>> = objectives.iter().map(translate).collect();

        // Previous extremes (re-translated against the current ideal)
        // stay in the running for each axis anchor.
        let mut candidates = translated.clone();
        candidates.extend(self.extremes.iter().map(translate));
        self.extremes = (0..m)
            .map(|axis| {
                let best = (0..candidates.len())
                    .min_by(|&a, &b| {
                        let fa = asf(&candidates[a], axis);
                        let fb = asf(&candidates[b], axis);
                        fa.partial_cmp(&fb).unwrap().then(a.cmp(&b))
                    })
                    .unwrap();
                candidates[best]
                    .iter()
                    .zip(&self.ideal)
                    .map(|(v, i)| v + i)
                    .collect()
            })
            .collect();

        let worst_translated: Vec<f64> = self
            .worst
            .iter()
            .zip(&self.ideal)
            .map(|(w, i)| w - i)
            .collect();
        let front = nondominated_mask(&translated);
        let front_max = axis_maxima(&translated, |i| front[i]);
        let pool_max = axis_maxima(&translated, |_| true);

        let intercepts = self
            .plane_intercepts(&worst_translated)
            .unwrap_or(front_max);
        let intercepts: Vec<f64> = intercepts
            .into_iter()
            .zip(&pool_max)
            .map(|(a, &spread)| {
                if a > INTERCEPT_FLOOR {
                    a
                } else if spread > INTERCEPT_FLOOR {
                    spread
                } else {
                    1.0
                }
            })
            .collect();

        translated
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .zip(&intercepts)
                    .map(|(v, a)| v / a)
                    .collect()
            })
            .collect()
    }

    /// Solves for the axis intercepts of the hyperplane through the
    /// extreme points; `None` when the system is singular, inaccurate,
    /// or produces an intercept outside `(floor, cap]`.
    fn plane_intercepts(&self, cap: &[f64]) -> Option<Vec<f64>> {
        let m = self.objective_count();
        let matrix =
            DMatrix::from_fn(m, m, |r, c| self.extremes[r][c] - self.ideal[c]);
        let rhs = DVector::from_element(m, 1.0);
        let solution = matrix.clone().lu().solve(&rhs)?;
        let residual = (&matrix * &solution - rhs).amax();
        if !(residual <= 1e-8) {
            return None;
        }
        let mut intercepts = Vec::with_capacity(m);
        for (j, &b) in solution.iter().enumerate() {
            let a = 1.0 / b;
            if !a.is_finite() || a <= INTERCEPT_FLOOR || a > cap[j] {
                return None;
            }
            intercepts.push(a);
        }
        Some(intercepts)
    }
}

fn asf(translated: &[f64], axis: usize) -> f64 {
    translated
        .iter()
        .enumerate()
        .map(|(i, &v)| if i == axis { v } else { v / ASF_EPSILON })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Rows not dominated by any other row (minimization, objectives only).
fn nondominated_mask(rows: &[Vec<f64>]) -> Vec<bool> {
    let dominates = |a: &[f64], b: &[f64]| {
        a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y)
    };
    (0..rows.len())
        .map(|i| !rows.iter().any(|other| dominates(other, &rows[i])))
        .collect()
}

fn axis_maxima(rows: &[Vec<f64>], keep: impl Fn(usize) -> bool) -> Vec<f64> {
    let m = rows[0].len();
    (0..m)
        .map(|j| {
            (0..rows.len())
                .filter(|&i| keep(i))
                .map(|i| rows[i][j])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect()
}

/// Perpendicular distance from a normalized objective vector to the
/// unit-simplex hyperplane (coordinates summing to one).
pub fn plane_distance(normalized: &[f64]) -> f64 {
    let sum: f64 = normalized.iter().sum();
    (sum - 1.0).abs() / (normalized.len() as f64).sqrt()
}
