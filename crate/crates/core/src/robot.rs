//! Serial-arm trajectory model: per-joint dynamics, motion limits, the three
//! planning objectives (duration, jerk smoothness, drive effort), and the
//! adapter that turns a planning task into an optimizable [`Problem`].
//!
//! Decision variables are the free interval durations of the time vector;
//! dwell intervals declared by the task keep a fixed duration. Joint motion
//! between key points comes from [`crate::spline`]; torque follows the
//! decoupled per-joint model `tau = inertia * accel + viscous * speed +
//! gravity * cos(angle)` with angles in degrees. The shipped default
//! parameters are placeholders for a six-joint hydraulic arm, not measured
//! values.

use crate::problems::{Evaluation, EvaluationError, Problem};
use crate::spline::{interpolate, BoundaryConditions, JointTrajectory, KeyPointSeries, SplineError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RobotError {
    #[error("task needs at least two key points, got {0}")]
    TooFewKeyPoints(usize),
    #[error("key point row {row} has {found} joints, expected {expected}")]
    RaggedKeyPoints {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("key point row {row} contains a non-finite angle")]
    NonFiniteKeyPoint { row: usize },
    #[error("interval bounds [{lo}, {hi}] invalid: need 0 < lo <= hi, finite")]
    BadIntervalBounds { lo: f64, hi: f64 },
    #[error("fixed segment index {index} out of range ({intervals} intervals)")]
    BadSegmentIndex { index: usize, intervals: usize },
    #[error("fixed segment index {0} declared twice")]
    DuplicateSegment(usize),
    #[error("fixed segment duration {0} must be positive and finite")]
    BadSegmentDuration(f64),
    #[error("model must declare at least one joint")]
    EmptyModel,
    #[error("joint {index}: {field} must be positive and finite, got {value}")]
    BadJointParameter {
        index: usize,
        field: &'static str,
        value: f64,
    },
    #[error("model has {model} joints but task key points have {task}")]
    JointCountMismatch { model: usize, task: usize },
    #[error("need {expected} genes (free intervals), got {found}")]
    GeneCount { expected: usize, found: usize },
    #[error("time vector length {found} does not match {expected} key points")]
    TimeVectorLength { expected: usize, found: usize },
    #[error("need at least 100 samples per evaluation, got {0}")]
    BadSampleCount(usize),
    #[error(transparent)]
    Spline(#[from] SplineError),
}

/// Dynamics parameters and motion limits for one joint.
///
/// Units: inertia kg·m², viscous N·m·s/deg, gravity N·m, tauMax N·m,
/// omegaMax deg/s, jerkMax deg/s³.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct JointModel {
    pub inertia: f64,
    pub viscous: f64,
    pub gravity: f64,
    pub tau_max: f64,
    pub omega_max: f64,
    pub jerk_max: f64,
}

impl JointModel {
    /// Torque demanded at one sampled state, angles in degrees.
    pub fn torque(&self, angle: f64, speed: f64, accel: f64) -> f64 {
        self.inertia * accel
            + self.viscous * speed
            + self.gravity * (angle * std::f64::consts::PI / 180.0).cos()
    }
}

/// The whole arm: one [`JointModel`] per joint, serialized as
/// `{"joints": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArmModel {
    pub joints: Vec<JointModel>,
}

impl Default for ArmModel {
    /// Placeholder six-joint arm: heavy proximal joints, light wrist.
    fn default() -> Self {
        let inertia = [50.0, 40.0, 30.0, 8.0, 5.0, 2.0];
        let gravity = [400.0, 300.0, 200.0, 50.0, 30.0, 10.0];
        let tau_max = [3000.0, 2500.0, 2000.0, 500.0, 300.0, 100.0];
        let joints = (0..6)
            .map(|i| JointModel {
                inertia: inertia[i],
                viscous: 0.5,
                gravity: gravity[i],
                tau_max: tau_max[i],
                omega_max: 30.0,
                jerk_max: 200.0,
            })
            .collect();
        Self { joints }
    }
}

impl ArmModel {
    pub fn joint_count(&self) -> usize {
        self.joints.len()
    }

    pub fn validate(&self) -> Result<(), RobotError> {
        if self.joints.is_empty() {
            return Err(RobotError::EmptyModel);
        }
        for (index, joint) in self.joints.iter().enumerate() {
            let fields = [
                ("inertia", joint.inertia),
                ("viscous", joint.viscous),
                ("gravity", joint.gravity),
                ("tauMax", joint.tau_max),
                ("omegaMax", joint.omega_max),
                ("jerkMax", joint.jerk_max),
            ];
            for (field, value) in fields {
                // Dynamics coefficients may be zero (e.g. frictionless or
                // gravity-balanced joints); limits must be strictly positive.
                let is_limit = matches!(field, "tauMax" | "omegaMax" | "jerkMax");
                let bad = !value.is_finite() || value < 0.0 || (is_limit && value == 0.0);
                if bad {
                    return Err(RobotError::BadJointParameter {
                        index,
                        field,
                        value,
                    });
                }
            }
        }
        Ok(())
    }
}

/// A dwell: the interval at `index` (counting intervals between consecutive
/// key points from zero) is pinned to `duration` seconds instead of being a
/// decision variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedSegment {
    pub index: usize,
    pub duration: f64,
}

/// Optional post-hoc caps on the objectives; a solution is kept when every
/// present cap is strictly respected.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub f1: Option<f64>,
    pub f2: Option<f64>,
    pub f3: Option<f64>,
}

impl Thresholds {
    pub fn accepts(&self, objectives: &[f64]) -> bool {
        let caps = [self.f1, self.f2, self.f3];
        objectives
            .iter()
            .zip(caps)
            .all(|(value, cap)| cap.is_none_or(|cap| *value < cap))
    }

    pub fn is_empty(&self) -> bool {
        self.f1.is_none() && self.f2.is_none() && self.f3.is_none()
    }
}

/// One planning task: the key-point matrix (rows = nodes, columns = joints,
/// degrees), dwell segments, per-interval duration bounds, endpoint
/// conditions shared by all joints, and optional objective caps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TrajectoryTask {
    pub key_points: Vec<Vec<f64>>,
    #[serde(default)]
    pub fixed_segments: Vec<FixedSegment>,
    pub interval_bounds: [f64; 2],
    #[serde(default)]
    pub boundary: BoundaryConditions,
    #[serde(default)]
    pub thresholds: Thresholds,
}

impl TrajectoryTask {
    pub fn validate(&self) -> Result<(), RobotError> {
        if self.key_points.len() < 2 {
            return Err(RobotError::TooFewKeyPoints(self.key_points.len()));
        }
        let width = self.key_points[0].len();
        for (row, angles) in self.key_points.iter().enumerate() {
            if angles.len() != width || width == 0 {
                return Err(RobotError::RaggedKeyPoints {
                    row,
                    expected: width.max(1),
                    found: angles.len(),
                });
            }
            if angles.iter().any(|a| !a.is_finite()) {
                return Err(RobotError::NonFiniteKeyPoint { row });
            }
        }
        let [lo, hi] = self.interval_bounds;
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return Err(RobotError::BadIntervalBounds { lo, hi });
        }
        let intervals = self.interval_count();
        let mut seen = vec![false; intervals];
        for segment in &self.fixed_segments {
            if segment.index >= intervals {
                return Err(RobotError::BadSegmentIndex {
                    index: segment.index,
                    intervals,
                });
            }
            if seen[segment.index] {
                return Err(RobotError::DuplicateSegment(segment.index));
            }
            seen[segment.index] = true;
            if !(segment.duration.is_finite() && segment.duration > 0.0) {
                return Err(RobotError::BadSegmentDuration(segment.duration));
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.key_points.len()
    }

    pub fn joint_count(&self) -> usize {
        self.key_points.first().map_or(0, Vec::len)
    }

    pub fn interval_count(&self) -> usize {
        self.key_points.len().saturating_sub(1)
    }

    /// Number of decision variables: intervals that are not dwells.
    pub fn free_interval_count(&self) -> usize {
        self.interval_count() - self.fixed_segments.len()
    }

    fn fixed_duration(&self, interval: usize) -> Option<f64> {
        self.fixed_segments
            .iter()
            .find(|s| s.index == interval)
            .map(|s| s.duration)
    }

    /// Expands free durations into the full time vector: t₀ = 0, then the
    /// cumulative sum of interval durations with dwells spliced in at their
    /// declared interval indices.
    pub fn time_vector_from_genes(&self, genes: &[f64]) -> Result<Vec<f64>, RobotError> {
        let expected = self.free_interval_count();
        if genes.len() != expected {
            return Err(RobotError::GeneCount {
                expected,
                found: genes.len(),
            });
        }
        let mut times = Vec::with_capacity(self.node_count());
        let mut t = 0.0;
        times.push(t);
        let mut next_gene = 0;
        for interval in 0..self.interval_count() {
            let duration = match self.fixed_duration(interval) {
                Some(d) => d,
                None => {
                    let g = genes[next_gene];
                    next_gene += 1;
                    g
                }
            };
            t += duration;
            times.push(t);
        }
        Ok(times)
    }

    fn joint_column(&self, joint: usize) -> Vec<f64> {
        self.key_points.iter().map(|row| row[joint]).collect()
    }
}

/// Objective values of one candidate trajectory.
///
/// `f1` is the total duration in seconds; `f2` sums each joint's RMS jerk;
/// `f3` sums each joint's RMS speed·torque product. `violation` aggregates
/// normalized limit exceedances (zero when every limit holds).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveEvaluation {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub violation: f64,
    pub sample_count: usize,
}

impl ObjectiveEvaluation {
    pub fn objectives(&self) -> [f64; 3] {
        [self.f1, self.f2, self.f3]
    }
}

/// Observed peak magnitude against one limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitCheck {
    pub observed: f64,
    pub limit: f64,
}

impl LimitCheck {
    /// Positive exceedance normalized by the limit; zero when inside it.
    pub fn exceedance(&self) -> f64 {
        let over = self.observed - self.limit;
        if over > 0.0 {
            over / self.limit
        } else {
            0.0
        }
    }

    /// Slack left below the limit (negative when violated).
    pub fn margin(&self) -> f64 {
        self.limit - self.observed
    }
}

/// Peak torque / speed / jerk of one joint over the sample grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointReport {
    pub torque: LimitCheck,
    pub speed: LimitCheck,
    pub jerk: LimitCheck,
}

/// Per-joint limit checks for a whole trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    pub joints: Vec<JointReport>,
}

impl ConstraintReport {
    /// Sum of normalized exceedances across joints and limit kinds; the same
    /// number [`evaluate_objectives`] reports as `violation`.
    pub fn violation(&self) -> f64 {
        self.joints
            .iter()
            .map(|j| j.torque.exceedance() + j.speed.exceedance() + j.jerk.exceedance())
            .sum()
    }
}

/// Default quadrature resolution.
pub const DEFAULT_SAMPLES: usize = 1000;

struct SampledJoint {
    report: JointReport,
    rms_jerk: f64,
    rms_effort: f64,
}

/// Interpolates every joint over `times` and integrates/checks it on a
/// uniform `samples`-point grid (trapezoidal rule, endpoints included).
fn sample_joints(
    task: &TrajectoryTask,
    times: &[f64],
    model: &ArmModel,
    samples: usize,
) -> Result<Vec<SampledJoint>, RobotError> {
    if samples < 100 {
        return Err(RobotError::BadSampleCount(samples));
    }
    if times.len() != task.node_count() {
        return Err(RobotError::TimeVectorLength {
            expected: task.node_count(),
            found: times.len(),
        });
    }
    if model.joint_count() != task.joint_count() {
        return Err(RobotError::JointCountMismatch {
            model: model.joint_count(),
            task: task.joint_count(),
        });
    }

    let start = times[0];
    let end = times[times.len() - 1];
    let span = end - start;
    let step = span / (samples - 1) as f64;
    let grid: Vec<f64> = (0..samples)
        .map(|i| {
            if i + 1 == samples {
                end
            } else {
                start + step * i as f64
            }
        })
        .collect();

    let mut out = Vec::with_capacity(model.joint_count());
    for (joint_index, joint) in model.joints.iter().enumerate() {
        let series = KeyPointSeries::new(times.to_vec(), task.joint_column(joint_index))?;
        let trajectory: JointTrajectory = interpolate(&series, &task.boundary)?;

        let mut max_speed = 0.0_f64;
        let mut max_jerk = 0.0_f64;
        let mut max_torque = 0.0_f64;
        let mut jerk_sq = Vec::with_capacity(samples);
        let mut effort_sq = Vec::with_capacity(samples);
        for &t in &grid {
            let angle = trajectory.evaluate(t, 0)?;
            let speed = trajectory.evaluate(t, 1)?;
            let accel = trajectory.evaluate(t, 2)?;
            let jerk = trajectory.evaluate(t, 3)?;
            let torque = joint.torque(angle, speed, accel);
            max_speed = max_speed.max(speed.abs());
            max_jerk = max_jerk.max(jerk.abs());
            max_torque = max_torque.max(torque.abs());
            jerk_sq.push(jerk * jerk);
            let effort = speed * torque;
            effort_sq.push(effort * effort);
        }

        let mean_of = |values: &[f64]| trapezoid(values, step) / span;
        out.push(SampledJoint {
            report: JointReport {
                torque: LimitCheck {
                    observed: max_torque,
                    limit: joint.tau_max,
                },
                speed: LimitCheck {
                    observed: max_speed,
                    limit: joint.omega_max,
                },
                jerk: LimitCheck {
                    observed: max_jerk,
                    limit: joint.jerk_max,
                },
            },
            rms_jerk: mean_of(&jerk_sq).max(0.0).sqrt(),
            rms_effort: mean_of(&effort_sq).max(0.0).sqrt(),
        })
    }
    Ok(out)
}

fn trapezoid(values: &[f64], step: f64) -> f64 {
    let inner: f64 = values[1..values.len() - 1].iter().sum();
    step * (inner + 0.5 * (values[0] + values[values.len() - 1]))
}

/// Computes the three objectives and the aggregate violation for one time
/// vector. `f1` is exactly the last entry minus the first.
pub fn evaluate_objectives(
    task: &TrajectoryTask,
    times: &[f64],
    model: &ArmModel,
    samples: usize,
) -> Result<ObjectiveEvaluation, RobotError> {
    let sampled = sample_joints(task, times, model, samples)?;
    let report = ConstraintReport {
        joints: sampled.iter().map(|j| j.report).collect(),
    };
    Ok(ObjectiveEvaluation {
        f1: times[times.len() - 1] - times[0],
        f2: sampled.iter().map(|j| j.rms_jerk).sum(),
        f3: sampled.iter().map(|j| j.rms_effort).sum(),
        violation: report.violation(),
        sample_count: samples,
    })
}

/// Per-joint peaks and margins against the model limits, sampled on the same
/// grid as [`evaluate_objectives`] (so the aggregate violation matches).
pub fn check_constraints(
    task: &TrajectoryTask,
    times: &[f64],
    model: &ArmModel,
    samples: usize,
) -> Result<ConstraintReport, RobotError> {
    let sampled = sample_joints(task, times, model, samples)?;
    Ok(ConstraintReport {
        joints: sampled.iter().map(|j| j.report).collect(),
    })
}

/// A planning task bound to an arm model, exposed as a three-objective
/// minimization [`Problem`] over the free interval durations.
#[derive(Debug, Clone)]
pub struct TaskProblem {
    task: TrajectoryTask,
    model: ArmModel,
    samples: usize,
    bounds: Vec<(f64, f64)>,
}

impl TaskProblem {
    pub fn new(
        task: TrajectoryTask,
        model: ArmModel,
        samples: usize,
    ) -> Result<Self, RobotError> {
        task.validate()?;
        model.validate()?;
        if samples < 100 {
            return Err(RobotError::BadSampleCount(samples));
        }
        if model.joint_count() != task.joint_count() {
            return Err(RobotError::JointCountMismatch {
                model: model.joint_count(),
                task: task.joint_count(),
            });
        }
        let [lo, hi] = task.interval_bounds;
        let bounds = vec![(lo, hi); task.free_interval_count()];
        Ok(Self {
            task,
            model,
            samples,
            bounds,
        })
    }

    pub fn task(&self) -> &TrajectoryTask {
        &self.task
    }

    pub fn model(&self) -> &ArmModel {
        &self.model
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Full evaluation of one gene vector, exposing the time vector alongside
    /// the objectives (the CLI report wants both).
    pub fn evaluate_genes(
        &self,
        genes: &[f64],
    ) -> Result<(Vec<f64>, ObjectiveEvaluation), RobotError> {
        let times = self.task.time_vector_from_genes(genes)?;
        let objectives = evaluate_objectives(&self.task, &times, &self.model, self.samples)?;
        Ok((times, objectives))
    }
}

impl Problem for TaskProblem {
    fn name(&self) -> &str {
        "trajectory"
    }

    fn dimension(&self) -> usize {
        self.bounds.len()
    }

    fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    fn objective_count(&self) -> usize {
        3
    }

    fn evaluate(&self, genes: &[f64]) -> Result<Evaluation, EvaluationError> {
        match self.evaluate_genes(genes) {
            Ok((_, result)) => Ok(Evaluation {
                objectives: result.objectives().to_vec(),
                violation: result.violation,
            }),
            Err(error) => Err(EvaluationError {
                genes: genes.to_vec(),
                message: error.to_string(),
            }),
        }
    }
}
