//! Population-adaptive crossover and mutation probabilities.

use std::f64::consts::PI;

/// Bounds for the adaptive crossover/mutation probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateBounds {
    pub pc_max: f64,
    pub pc_min: f64,
    pub pm_max: f64,
    pub pm_min: f64,
}

impl Default for RateBounds {
    fn default() -> Self {
        Self {
            pc_max: 0.9,
            pc_min: 0.6,
            pm_max: 1.0,
            pm_min: 0.6,
        }
    }
}

impl RateBounds {
    pub fn validate(&self) -> Result<(), String> {
        for (label, value) in [
            ("pc_max", self.pc_max),
            ("pc_min", self.pc_min),
            ("pm_max", self.pm_max),
            ("pm_min", self.pm_min),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(format!("{label} must be a probability, got {value}"));
            }
        }
        if self.pc_min > self.pc_max {
            return Err(format!(
                "pc_min {} exceeds pc_max {}",
                self.pc_min, self.pc_max
            ));
        }
        if self.pm_min > self.pm_max {
            return Err(format!(
                "pm_min {} exceeds pm_max {}",
                self.pm_min, self.pm_max
            ));
        }
        Ok(())
    }
}

/// Rate bounds plus the fitness statistics of the current mating pool.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateState {
    pub bounds: RateBounds,
    pub f_bar: f64,
    pub f_max: f64,
    pub f_min: f64,
}

impl RateState {
    /// Collects mean/max/min over a per-member fitness slice.
    pub fn from_fitness(bounds: RateBounds, fitness: &[f64]) -> Self {
        let f_bar = fitness.iter().sum::<f64>() / fitness.len() as f64;
        let f_max = fitness.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let f_min = fitness.iter().copied().fold(f64::INFINITY, f64::min);
        Self {
            bounds,
            f_bar,
            f_max,
            f_min,
        }
    }
}

/// Sigmoid-shaped interpolation between the configured bounds, driven
/// by how far the population maximum sits above the mean.
///
/// When the maximum exceeds the mean both probabilities stay at their
/// maxima; the same holds for a fully converged pool (mean equal to
/// minimum), keeping exploration pressure up instead of dividing by
/// zero.
pub fn adaptive_rates(state: &RateState) -> (f64, f64) {
    let RateBounds {
        pc_max,
        pc_min,
        pm_max,
        pm_min,
    } = state.bounds;
    if state.f_max > state.f_bar || state.f_bar == state.f_min {
        return (pc_max, pm_max);
    }
    let ratio = (state.f_bar - state.f_max) / (state.f_bar - state.f_min);
    let gate = 1.0 + (ratio * PI).cos().exp();
    let pc = (pc_max - (pc_max - pc_min) / gate).clamp(pc_min, pc_max);
    let pm = (pm_max - (pm_max - pm_min) / gate).clamp(pm_min, pm_max);
    (pc, pm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn bounds() -> RateBounds {
        RateBounds {
            pc_max: 0.9,
            pc_min: 0.6,
            pm_max: 1.0,
            pm_min: 0.6,
        }
    }

    #[test]
    fn maximum_above_mean_keeps_maximal_rates() {
        let state = RateState {
            bounds: bounds(),
            f_bar: 0.5,
            f_max: 0.6,
            f_min: 0.1,
        };
        assert_eq!(adaptive_rates(&state), (0.9, 1.0));
    }

    #[test]
    fn hand_evaluated_interpolation_point() {
        // ratio = (0.5 - 0.4) / (0.5 - 0.1) = 0.25,
        // pc = 0.9 - 0.3 / (1 + e^cos(pi/4)) = 0.800928...
        let state = RateState {
            bounds: bounds(),
            f_bar: 0.5,
            f_max: 0.4,
            f_min: 0.1,
        };
        let (pc, pm) = adaptive_rates(&state);
        assert_relative_eq!(pc, 0.8009285, epsilon = 1e-6);
        assert_relative_eq!(pm, 1.0 - 0.4 / (1.0 + (0.25f64 * PI).cos().exp()), epsilon = 1e-12);
    }

    #[test]
    fn uniform_fitness_returns_maxima() {
        let state = RateState::from_fitness(bounds(), &[0.3, 0.3, 0.3]);
        assert_eq!(state.f_bar, 0.3);
        assert_eq!(adaptive_rates(&state), (0.9, 1.0));
    }

    #[test]
    fn outputs_stay_inside_bounds() {
        let b = bounds();
        for i in 0..200 {
            let f_max = -(i as f64) / 100.0;
            let state = RateState {
                bounds: b,
                f_bar: 0.0,
                f_max,
                f_min: -3.0,
            };
            let (pc, pm) = adaptive_rates(&state);
            assert!((b.pc_min..=b.pc_max).contains(&pc), "pc {pc} out of range");
            assert!((b.pm_min..=b.pm_max).contains(&pm), "pm {pm} out of range");
        }
    }

    #[test]
    fn statistics_come_from_the_fitness_slice() {
        let state = RateState::from_fitness(bounds(), &[-0.2, -0.4, -0.6]);
        assert_relative_eq!(state.f_bar, -0.4, epsilon = 1e-15);
        assert_eq!(state.f_max, -0.2);
        assert_eq!(state.f_min, -0.6);
    }

    #[test]
    fn rejects_inverted_bounds() {
        let bad = RateBounds {
            pc_max: 0.5,
            pc_min: 0.9,
            ..RateBounds::default()
        };
        assert!(bad.validate().is_err());
        assert!(RateBounds::default().validate().is_ok());
    }
}
