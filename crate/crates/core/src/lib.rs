//! Multi-objective evolutionary optimization toolkit.
//!
//! The crate bundles four pieces that together support reproducible
//! multi-objective experiments and time/jerk/energy trajectory planning
//! for a six-joint arm:
//!
//! * [`evolve`] — reference-point based evolutionary algorithms: a
//!   standard NSGA-III, its focused-operator variant (NSGA-III-FO) that
//!   screens individuals by their distance to the normalized simplex
//!   hyperplane, and a minimal Tchebycheff MOEA/D baseline.
//! * [`problems`] — benchmark problems (DTLZ3, WFG3) with analytic
//!   Pareto-front samplers, plus the [`problems::Problem`] abstraction
//!   every optimizer consumes.
//! * [`metrics`] — Pareto-front quality indicators: inverted generational
//!   distance and hypervolume (exact for two and three objectives, Monte
//!   Carlo beyond).
//! * [`spline`] / [`robot`] — degree-six B-spline interpolation through
//!   joint key points with prescribed boundary derivatives, and the arm
//!   model that turns a key-point task into a three-objective problem
//!   (total time, jerk RMS, energy RMS) under torque/velocity/jerk
//!   limits.
//!
//! All randomness flows from caller-supplied 64-bit seeds through
//! deterministic ChaCha streams; a fixed `(config, seed)` pair always
//! reproduces the same run trace bit for bit.

pub mod evolve;
pub mod metrics;
pub mod problems;
pub mod robot;
pub mod spline;
