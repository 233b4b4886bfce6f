//! The `plan` command: optimize one trajectory task, then write the Pareto
//! set (objectives + genes), a JSON report with the per-objective optima and
//! the threshold-filtered subset, and a best-so-far hypervolume trace.

use crate::files::{fmt_float, StagedOutput};
use crate::{classify, CliError, PlanArgs};
use moplan_core::evolve::{run, Algorithm, AlgorithmConfig, MetricOptions, RunTrace};
use moplan_core::metrics::{hypervolume, FrontSet};
use moplan_core::robot::{ArmModel, TaskProblem, Thresholds, TrajectoryTask};
use serde::Serialize;
use std::fs;
use std::path::Path;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
struct SolutionRow {
    time_vector: Vec<f64>,
    f1: f64,
    f2: f64,
    f3: f64,
    violation: f64,
    genes: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct OptimalSet {
    f1: SolutionRow,
    f2: SolutionRow,
    f3: SolutionRow,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct PlanReport<'a> {
    task: String,
    algorithm: &'static str,
    seed: u64,
    evaluations: usize,
    feasible_count: usize,
    thresholds: &'a Thresholds,
    /// Minimizers of each objective among the feasible Pareto rows.
    optimal: Option<OptimalSet>,
    /// Feasible Pareto rows meeting every threshold in the task file.
    filtered: Vec<SolutionRow>,
    warnings: Vec<String>,
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {what} {path:?}: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid {what} {path:?}: {e}")))
}

/// Best-so-far hypervolume per generation, measured after the run against a
/// reference just beyond the worst feasible point ever archived. Empty
/// archives yield `nan` (nothing feasible yet).
fn archive_hv_series(trace: &RunTrace) -> Vec<f64> {
    let mut reference = vec![0.0_f64; 3];
    let mut any = false;
    for snapshot in &trace.archive_snapshots {
        for point in snapshot {
            any = true;
            for (r, v) in reference.iter_mut().zip(point) {
                *r = r.max(*v);
            }
        }
    }
    if !any {
        return vec![f64::NAN; trace.archive_snapshots.len()];
    }
    for r in &mut reference {
        *r = if *r > 0.0 { *r * 1.1 } else { 1.0 };
    }
    trace
        .archive_snapshots
        .iter()
        .map(|snapshot| {
            FrontSet::new(snapshot.clone())
                .and_then(|front| hypervolume(&front, &reference))
                .unwrap_or(f64::NAN)
        })
        .collect()
}

fn pareto_rows(problem: &TaskProblem, trace: &RunTrace) -> Vec<SolutionRow> {
    let mut rows: Vec<SolutionRow> = trace
        .pareto
        .iter()
        .map(|member| {
            let time_vector = problem
                .task()
                .time_vector_from_genes(&member.genes)
                .expect("final population genes match the task dimension");
            SolutionRow {
                time_vector,
                f1: member.objectives[0],
                f2: member.objectives[1],
                f3: member.objectives[2],
                violation: member.violation,
                genes: member.genes.clone(),
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        (a.f1, a.f2, a.f3)
            .partial_cmp(&(b.f1, b.f2, b.f3))
            .expect("objectives are finite")
    });
    rows
}

fn pareto_csv(rows: &[SolutionRow]) -> String {
    let genes = rows.first().map_or(0, |r| r.genes.len());
    let mut header = vec!["f1".to_string(), "f2".into(), "f3".into(), "violation".into()];
    header.extend((1..=genes).map(|i| format!("g{i}")));
    let mut text = header.join(",");
    text.push('\n');
    for row in rows {
        let mut cells = vec![
            fmt_float(row.f1),
            fmt_float(row.f2),
            fmt_float(row.f3),
            fmt_float(row.violation),
        ];
        cells.extend(row.genes.iter().map(|&g| fmt_float(g)));
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    text
}

fn trace_csv(trace: &RunTrace, hv: &[f64]) -> String {
    let mut text = String::from("gen,evals,hv,igd\n");
    for (record, &hv_value) in trace.records.iter().zip(hv) {
        text.push_str(&format!(
            "{},{},{},nan\n",
            record.generation,
            record.evaluations,
            fmt_float(hv_value),
        ));
    }
    text
}

fn argmin_by<F: Fn(&SolutionRow) -> f64>(rows: &[SolutionRow], key: F) -> SolutionRow {
    rows.iter()
        .min_by(|a, b| key(a).total_cmp(&key(b)))
        .expect("argmin of a non-empty set")
        .clone()
}

pub fn run_plan(args: &PlanArgs) -> Result<bool, CliError> {
    let task: TrajectoryTask = load_json(&args.task, "task file")?;
    task.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let model: ArmModel = match &args.model {
        Some(path) => load_json(path, "model file")?,
        None => ArmModel::default(),
    };
    model.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let algorithm: Algorithm = args.algo.parse().map_err(CliError::Usage)?;

    let problem = TaskProblem::new(task, model, args.samples)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let config = AlgorithmConfig {
        algorithm,
        population_size: args.shared.pop,
        simplex_divisions: args.shared.divisions,
        max_evaluations: args.shared.budget,
        focused_count: args.shared.focused,
        non_focused_count: args.shared.nonfocused,
        seed: args.shared.seed_base,
        metrics: MetricOptions::default(),
        ..AlgorithmConfig::default()
    };
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    let trace = run(&problem, &config).map_err(classify)?;

    let rows = pareto_rows(&problem, &trace);
    let feasible: Vec<SolutionRow> = rows
        .iter()
        .filter(|r| r.violation == 0.0)
        .cloned()
        .collect();
    let mut warnings = Vec::new();
    if feasible.is_empty() {
        warnings.push("no feasible solution found within the budget".to_string());
    }

    let optimal = if feasible.is_empty() {
        None
    } else {
        Some(OptimalSet {
            f1: argmin_by(&feasible, |r| r.f1),
            f2: argmin_by(&feasible, |r| r.f2),
            f3: argmin_by(&feasible, |r| r.f3),
        })
    };
    let thresholds = problem.task().thresholds;
    let filtered: Vec<SolutionRow> = feasible
        .iter()
        .filter(|row| thresholds.accepts(&[row.f1, row.f2, row.f3]))
        .cloned()
        .collect();

    let report = PlanReport {
        task: args.task.display().to_string(),
        algorithm: algorithm.label(),
        seed: config.seed,
        evaluations: trace.final_evaluations(),
        feasible_count: feasible.len(),
        thresholds: &thresholds,
        optimal,
        filtered,
        warnings: warnings.clone(),
    };
    let report_json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Runtime(format!("serializing report: {e}")))?;

    let hv = archive_hv_series(&trace);
    let mut staged = StagedOutput::new(&args.shared.out);
    staged.add("pareto.csv", pareto_csv(&rows));
    staged.add("report.json", report_json + "\n");
    staged.add("trace.csv", trace_csv(&trace, &hv));
    staged.commit()?;

    if !args.shared.quiet {
        eprintln!(
            "plan {}: {} evaluations, {} Pareto rows ({} feasible)",
            args.task.display(),
            trace.final_evaluations(),
            rows.len(),
            feasible.len(),
        );
    }
    for warning in &warnings {
        eprintln!("warning: {warning}");
    }
    Ok(!warnings.is_empty())
}
