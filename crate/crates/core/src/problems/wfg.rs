//! WFG3: scaled domain, nonseparable distance reduction, and a
//! degenerate (one-dimensional) linear Pareto front.

use super::{Evaluation, EvaluationError, Problem, ProblemError};

/// WFG3 with `m` objectives, `k` position parameters and `l` distance
/// parameters. Variable `z_i` ranges over `[0, 2i]` (1-based `i`).
///
/// `k` must be a positive multiple of `m - 1`; `l` must be positive and
/// even because the distance reduction merges variables pairwise.
#[derive(Debug, Clone)]
pub struct Wfg3 {
    name: String,
    objectives: usize,
    position: usize,
    distance: usize,
    bounds: Vec<(f64, f64)>,
}

impl Wfg3 {
    pub fn new(objectives: usize, position: usize, distance: usize) -> Result<Self, ProblemError> {
        if objectives < 2 {
            return Err(ProblemError::TooFewObjectives(objectives));
        }
        let groups = objectives - 1;
        if position == 0 || position % groups != 0 {
            return Err(ProblemError::BadPositionCount { k: position, groups });
        }
        if distance == 0 || distance % 2 != 0 {
            return Err(ProblemError::BadDistanceCount(distance));
        }
        let dimension = position + distance;
        let bounds = (0..dimension)
            .map(|i| (0.0, 2.0 * (i + 1) as f64))
            .collect();
        Ok(Self {
            name: format!("wfg3(m={objectives},k={position},l={distance})"),
            objectives,
            position,
            distance,
            bounds,
        })
    }

    /// Componentwise maximum of the analytic front, used to anchor the
    /// hypervolume reference point.
    fn front_nadir(&self) -> Vec<f64> {
        let m = self.objectives;
        (1..=m)
            .map(|j| {
                if j == m {
                    2.0 * m as f64
                } else if j == 1 {
                    2.0 * 0.5f64.powi(m as i32 - 2)
                } else {
                    2.0 * j as f64 * 0.5f64.powi((m - j) as i32)
                }
            })
            .collect()
    }

    fn evaluate_raw(&self, genes: &[f64]) -> Vec<f64> {
        let m = self.objectives;
        let k = self.position;
        let n = k + self.distance;

        let y: Vec<f64> = genes
            .iter()
            .enumerate()
            .map(|(i, &z)| z / (2.0 * (i + 1) as f64))
            .collect();

        // Shift the distance parameters so their optimum moves to zero.
        let mut t1 = y.clone();
        for value in t1.iter_mut().skip(k) {
            *value = s_linear(*value, 0.35);
        }

        // Merge the distance parameters pairwise (nonseparable, degree 2).
        let mut t2 = t1[..k].to_vec();
        for pair in t1[k..n].chunks(2) {
            t2.push(r_nonsep(pair, 2));
        }

        // Reduce to m underlying parameters by unweighted means.
        let group = k / (m - 1);
        let mut t3: Vec<f64> = t2[..k].chunks(group).map(mean).collect();
        t3.push(mean(&t2[k..]));

        // Degeneracy: every position coordinate except the first
        // collapses toward 0.5 as the distance component approaches its
        // optimum.
        let xm = t3[m - 1];
        let mut x = vec![0.0; m];
        for i in 0..m - 1 {
            let a = if i == 0 { 1.0 } else { 0.0 };
            x[i] = xm.max(a) * (t3[i] - 0.5) + 0.5;
        }
        x[m - 1] = xm;

        let mut h = vec![0.0; m];
        h[0] = x[..m - 1].iter().product();
        for j in 1..m - 1 {
            let prefix: f64 = x[..m - 1 - j].iter().product();
            h[j] = prefix * (1.0 - x[m - 1 - j]);
        }
        h[m - 1] = 1.0 - x[0];

        (0..m)
            .map(|j| x[m - 1] + 2.0 * (j + 1) as f64 * h[j])
            .collect()
    }
}

impl Problem for Wfg3 {
    fn name(&self) -> &str {
        &self.name
    }

    fn dimension(&self) -> usize {
        self.position + self.distance
    }

    fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    fn objective_count(&self) -> usize {
        self.objectives
    }

    fn evaluate(&self, genes: &[f64]) -> Result<Evaluation, EvaluationError> {
        if genes.len() != self.dimension() {
            return Err(EvaluationError {
                genes: genes.to_vec(),
                message: format!("expected {} variables, got {}", self.dimension(), genes.len()),
            });
        }
        Ok(Evaluation::feasible(self.evaluate_raw(genes)))
    }

    fn true_front(&self, count: usize) -> Option<Vec<Vec<f64>>> {
        // The front is the one-dimensional curve traced by sweeping all
        // position parameters together while the distance parameters sit
        // at their optimum (0.35 after domain scaling).
        let front = (0..count)
            .map(|i| {
                let t = if count == 1 {
                    0.0
                } else {
                    i as f64 / (count - 1) as f64
                };
                let genes: Vec<f64> = (0..self.dimension())
                    .map(|v| {
                        let scale = 2.0 * (v + 1) as f64;
                        if v < self.position {
                            scale * t
                        } else {
                            scale * 0.35
                        }
                    })
                    .collect();
                self.evaluate_raw(&genes)
            })
            .collect();
        Some(front)
    }

    fn suggested_hv_ref(&self) -> Option<Vec<f64>> {
        Some(self.front_nadir().into_iter().map(|v| v * 1.1).collect())
    }
}

/// Linear shift: distance to `a`, rescaled so the image is `[0, 1]`
/// with the optimum at `y = a`.
fn s_linear(y: f64, a: f64) -> f64 {
    (y - a).abs() / ((a - y).floor() + a).abs()
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Nonseparable reduction of degree `a`: couples each value with its
/// `a - 1` cyclic successors.
fn r_nonsep(values: &[f64], a: usize) -> f64 {
    let len = values.len();
    let mut numerator = 0.0;
    for j in 0..len {
        numerator += values[j];
        for q in 0..a - 1 {
            numerator += (values[j] - values[(j + q + 1) % len]).abs();
        }
    }
    let half = (a as f64 / 2.0).ceil();
    let denominator =
        (len as f64 / a as f64) * half * (1.0 + 2.0 * a as f64 - 2.0 * half);
    numerator / denominator
}
