//! Degree-6 clamped B-spline interpolation of timed joint angles.
//!
//! Each joint trajectory passes through every key point and honors prescribed
//! endpoint velocity / acceleration / jerk. Derivatives up to order 3 are
//! evaluated from cached difference control nets, so velocity, acceleration,
//! and jerk queries cost the same as a position query.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Polynomial degree of every interpolated trajectory.
pub const DEGREE: usize = 6;

#[derive(Debug, Error)]
pub enum SplineError {
    #[error("need at least two key points, got {0}")]
    TooFewPoints(usize),
    #[error("times ({times}) and values ({values}) differ in length")]
    LengthMismatch { times: usize, values: usize },
    #[error("times must be strictly increasing and finite (violated at index {0})")]
    NonIncreasingTimes(usize),
    #[error("key point values must be finite (index {0})")]
    NonFiniteValue(usize),
    #[error("boundary conditions must be finite")]
    NonFiniteBoundary,
    #[error("interpolation system is numerically singular (pivot ratio {pivot_ratio:.3e})")]
    SingularSystem { pivot_ratio: f64 },
    #[error("parameter {t} outside trajectory domain [{start}, {end}]")]
    OutOfDomain { t: f64, start: f64, end: f64 },
    #[error("derivative order {0} not supported (0 through 3)")]
    BadOrder(usize),
}

/// Timed samples of one joint: angles in degrees at strictly increasing times.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyPointSeries {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl KeyPointSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self, SplineError> {
        if times.len() != values.len() {
            return Err(SplineError::LengthMismatch {
                times: times.len(),
                values: values.len(),
            });
        }
        if times.len() < 2 {
            return Err(SplineError::TooFewPoints(times.len()));
        }
        check_times(&times)?;
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(SplineError::NonFiniteValue(i));
        }
        Ok(Self { times, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn check_times(times: &[f64]) -> Result<(), SplineError> {
    if times.is_empty() || !times[0].is_finite() {
        return Err(SplineError::NonIncreasingTimes(0));
    }
    for i in 1..times.len() {
        if !times[i].is_finite() || times[i] <= times[i - 1] {
            return Err(SplineError::NonIncreasingTimes(i));
        }
    }
    Ok(())
}

/// Endpoint derivative constraints: velocity (deg/s), acceleration (deg/s²),
/// jerk (deg/s³) at the start and end of the trajectory.
///
/// Serialized with the short field names `vs`, `ve`, `as`, `ae`, `js`, `je`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundaryConditions {
    #[serde(rename = "vs")]
    pub start_velocity: f64,
    #[serde(rename = "ve")]
    pub end_velocity: f64,
    #[serde(rename = "as")]
    pub start_acceleration: f64,
    #[serde(rename = "ae")]
    pub end_acceleration: f64,
    #[serde(rename = "js")]
    pub start_jerk: f64,
    #[serde(rename = "je")]
    pub end_jerk: f64,
}

impl BoundaryConditions {
    fn as_array(&self) -> [f64; 6] {
        [
            self.start_velocity,
            self.start_acceleration,
            self.start_jerk,
            self.end_velocity,
            self.end_acceleration,
            self.end_jerk,
        ]
    }

    fn validate(&self) -> Result<(), SplineError> {
        if self.as_array().iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(SplineError::NonFiniteBoundary)
        }
    }
}

/// Builds the clamped knot vector for `times` = t₀…tₙ: t₀ and tₙ repeated
/// seven times, the interior times once each, plus one auxiliary knot at the
/// midpoint of the middle interval so the interpolation system (n+1
/// pass-through rows + 6 boundary rows) is square: n+14 knots for n+7
/// controls.
pub fn build_knots(times: &[f64]) -> Result<Vec<f64>, SplineError> {
    if times.len() < 2 {
        return Err(SplineError::TooFewPoints(times.len()));
    }
    check_times(times)?;
    let n = times.len() - 1;
    let mid = n / 2;
    let auxiliary = 0.5 * (times[mid] + times[mid + 1]);

    let mut knots = Vec::with_capacity(n + 14);
    knots.extend(std::iter::repeat_n(times[0], DEGREE + 1));
    for (i, &t) in times[1..n].iter().enumerate() {
        if i == mid {
            knots.push(auxiliary);
        }
        knots.push(t);
    }
    if mid + 2 > n {
        knots.push(auxiliary);
    }
    knots.extend(std::iter::repeat_n(times[n], DEGREE + 1));
    debug_assert_eq!(knots.len(), n + 14);
    debug_assert!(knots.windows(2).all(|w| w[0] <= w[1]));
    Ok(knots)
}

/// One polynomial spline curve: controls over a clamped knot vector.
#[derive(Debug, Clone)]
struct Curve {
    degree: usize,
    knots: Vec<f64>,
    controls: Vec<f64>,
}

impl Curve {
    /// Largest span index `i` with knots[i] <= t < knots[i+1], clamped to the
    /// last non-empty span at the domain end.
    fn find_span(&self, t: f64) -> usize {
        let last = self.controls.len() - 1;
        if t >= self.knots[last + 1] {
            return last;
        }
        let mut span = self.degree;
        while span < last && t >= self.knots[span + 1] {
            span += 1;
        }
        span
    }

    /// De Boor evaluation.
    fn value(&self, t: f64) -> f64 {
        let p = self.degree;
        let k = self.find_span(t);
        let mut d: Vec<f64> = self.controls[k - p..=k].to_vec();
        for r in 1..=p {
            for j in (r..=p).rev() {
                let i = k - p + j;
                let denom = self.knots[i + p + 1 - r] - self.knots[i];
                let alpha = if denom > 0.0 {
                    (t - self.knots[i]) / denom
                } else {
                    0.0
                };
                d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j];
            }
        }
        d[p]
    }

    /// Control net of the first derivative; one degree lower, on the knot
    /// vector with the first and last knot dropped.
    fn derivative(&self) -> Curve {
        let p = self.degree;
        let mut controls = Vec::with_capacity(self.controls.len() - 1);
        for j in 0..self.controls.len() - 1 {
            let denom = self.knots[j + p + 1] - self.knots[j + 1];
            controls.push(if denom > 0.0 {
                p as f64 * (self.controls[j + 1] - self.controls[j]) / denom
            } else {
                0.0
            });
        }
        Curve {
            degree: p - 1,
            knots: self.knots[1..self.knots.len() - 1].to_vec(),
            controls,
        }
    }
}

/// An interpolated joint trajectory with cached derivative nets for orders
/// 1–3. Immutable; evaluation is pure.
#[derive(Debug, Clone)]
pub struct JointTrajectory {
    position: Curve,
    derivatives: [Curve; 3],
    start: f64,
    end: f64,
}

impl JointTrajectory {
    pub fn degree(&self) -> usize {
        DEGREE
    }

    pub fn knots(&self) -> &[f64] {
        &self.position.knots
    }

    pub fn controls(&self) -> &[f64] {
        &self.position.controls
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.start, self.end)
    }

    /// Position (order 0), velocity (1), acceleration (2), or jerk (3) at `t`.
    pub fn evaluate(&self, t: f64, order: usize) -> Result<f64, SplineError> {
        if order > 3 {
            return Err(SplineError::BadOrder(order));
        }
        if !(t >= self.start && t <= self.end) {
            return Err(SplineError::OutOfDomain {
                t,
                start: self.start,
                end: self.end,
            });
        }
        Ok(match order {
            0 => self.position.value(t),
            _ => self.derivatives[order - 1].value(t),
        })
    }
}

fn solve_dense(a: DMatrix<f64>, b: DVector<f64>) -> Result<DVector<f64>, SplineError> {
    let lu = a.lu();
    let mut min_pivot = f64::INFINITY;
    let mut max_pivot = 0.0_f64;
    for v in lu.u().diagonal().iter() {
        min_pivot = min_pivot.min(v.abs());
        max_pivot = max_pivot.max(v.abs());
    }
    let pivot_ratio = if max_pivot > 0.0 && max_pivot.is_finite() {
        min_pivot / max_pivot
    } else {
        0.0
    };
    if pivot_ratio <= 100.0 * f64::EPSILON {
        return Err(SplineError::SingularSystem { pivot_ratio });
    }
    match lu.solve(&b) {
        Some(x) if x.iter().all(|v| v.is_finite()) => Ok(x),
        _ => Err(SplineError::SingularSystem { pivot_ratio }),
    }
}

/// Interpolates one joint: solves the (n+7)×(n+7) collocation system with
/// n+1 pass-through rows and 6 boundary-derivative rows (velocity,
/// acceleration, jerk at the start, then at the end).
pub fn interpolate(
    series: &KeyPointSeries,
    bc: &BoundaryConditions,
) -> Result<JointTrajectory, SplineError> {
    bc.validate()?;
    let times = series.times();
    let n = times.len() - 1;
    let controls = n + 7;
    let knots = build_knots(times)?;

    // Assemble column by column through the same evaluator used afterwards:
    // the unit response of control j gives the basis values for every row.
    let mut a = DMatrix::zeros(controls, controls);
    for j in 0..controls {
        let mut unit = vec![0.0; controls];
        unit[j] = 1.0;
        let pos = Curve {
            degree: DEGREE,
            knots: knots.clone(),
            controls: unit,
        };
        let d1 = pos.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        for (k, &t) in times.iter().enumerate() {
            a[(k, j)] = pos.value(t);
        }
        for (r, curve) in [&d1, &d2, &d3].into_iter().enumerate() {
            a[(n + 1 + r, j)] = curve.value(times[0]);
            a[(n + 4 + r, j)] = curve.value(times[n]);
        }
    }

    let mut b = DVector::zeros(controls);
    for (k, &q) in series.values().iter().enumerate() {
        b[k] = q;
    }
    let [vs, acc_s, js, ve, acc_e, je] = bc.as_array();
    b[n + 1] = vs;
    b[n + 2] = acc_s;
    b[n + 3] = js;
    b[n + 4] = ve;
    b[n + 5] = acc_e;
    b[n + 6] = je;

    let solution = solve_dense(a, b)?;
    let position = Curve {
        degree: DEGREE,
        knots,
        controls: solution.iter().copied().collect(),
    };
    let d1 = position.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    Ok(JointTrajectory {
        position,
        derivatives: [d1, d2, d3],
        start: times[0],
        end: times[n],
    })
}
