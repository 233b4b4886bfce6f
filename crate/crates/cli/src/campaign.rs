//! The `bench` command: seeded campaigns of (algorithm × seed) runs on a
//! benchmark problem, written as per-seed trace/front CSVs plus a summary
//! table of final indicator statistics.

use crate::files::{fmt_float, StagedOutput};
use crate::{classify, BenchArgs, CliError};
use moplan_core::evolve::{run, Algorithm, AlgorithmConfig, MetricOptions, RunTrace};
use moplan_core::problems::{sample_true_front, Dtlz3, Problem, Wfg3};
use rayon::prelude::*;

/// Instantiates a benchmark problem by name. The dimensions are the
/// desk-scale defaults the acceptance runs use.
pub fn make_problem(name: &str) -> Result<Box<dyn Problem>, CliError> {
    match name {
        "dtlz3" => Ok(Box::new(
            Dtlz3::new(3, 10).map_err(|e| CliError::Usage(e.to_string()))?,
        )),
        "wfg3" => Ok(Box::new(
            Wfg3::new(3, 4, 20).map_err(|e| CliError::Usage(e.to_string()))?,
        )),
        other => Err(CliError::Usage(format!(
            "unknown problem '{other}' (expected dtlz3 or wfg3)"
        ))),
    }
}

pub fn parse_algorithms(list: &str) -> Result<Vec<Algorithm>, CliError> {
    let mut algorithms = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let algorithm = match name {
            // Convenience alias; files always use the canonical label.
            "moead" => Algorithm::MoeadBaseline,
            other => other.parse().map_err(CliError::Usage)?,
        };
        if algorithms.contains(&algorithm) {
            return Err(CliError::Usage(format!("algorithm '{name}' listed twice")));
        }
        algorithms.push(algorithm);
    }
    if algorithms.is_empty() {
        return Err(CliError::Usage("no algorithms requested".into()));
    }
    Ok(algorithms)
}

/// `--seeds` accepts a count (expanded from the seed base) or an explicit
/// comma-separated list of seed values.
pub fn parse_seeds(spec: &str, seed_base: u64) -> Result<Vec<u64>, CliError> {
    let bad = |_| CliError::Usage(format!("cannot parse seeds '{spec}'"));
    if spec.contains(',') {
        spec.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u64>().map_err(bad))
            .collect()
    } else {
        let count: u64 = spec.trim().parse().map_err(bad)?;
        if count == 0 {
            return Err(CliError::Usage("need at least one seed".into()));
        }
        Ok((0..count).map(|i| seed_base + i).collect())
    }
}

fn trace_csv(trace: &RunTrace) -> String {
    let mut text = String::from("gen,evals,hv,igd\n");
    for record in &trace.records {
        text.push_str(&format!(
            "{},{},{},{}\n",
            record.generation,
            record.evaluations,
            fmt_float(record.hv.unwrap_or(f64::NAN)),
            fmt_float(record.igd.unwrap_or(f64::NAN)),
        ));
    }
    text
}

fn front_csv(trace: &RunTrace, objectives: usize) -> String {
    let header: Vec<String> = (1..=objectives).map(|i| format!("f{i}")).collect();
    let mut text = header.join(",");
    text.push('\n');
    let mut rows: Vec<&Vec<f64>> = trace.pareto.iter().map(|m| &m.objectives).collect();
    rows.sort_by(|a, b| a.partial_cmp(b).expect("objective values are finite"));
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| fmt_float(v)).collect();
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    text
}

fn mean_and_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, f64::NAN);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

pub fn run_bench(args: &BenchArgs) -> Result<bool, CliError> {
    let problem = make_problem(&args.problem)?;
    let algorithms = parse_algorithms(&args.algos)?;
    let seeds = parse_seeds(&args.seeds, args.shared.seed_base)?;

    let true_front = sample_true_front(problem.as_ref(), args.front_samples)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let metrics = MetricOptions {
        hv_reference: problem.suggested_hv_ref(),
        true_front: Some(true_front),
        igd_mode: Default::default(),
    };

    let configure = |algorithm: Algorithm, seed: u64| AlgorithmConfig {
        algorithm,
        population_size: args.shared.pop,
        simplex_divisions: args.shared.divisions,
        max_evaluations: args.shared.budget,
        focused_count: args.shared.focused,
        non_focused_count: args.shared.nonfocused,
        seed,
        metrics: metrics.clone(),
        ..AlgorithmConfig::default()
    };

    // Surface configuration mistakes before any run starts.
    for &algorithm in &algorithms {
        configure(algorithm, seeds[0])
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }

    let jobs: Vec<(Algorithm, u64)> = algorithms
        .iter()
        .flat_map(|&a| seeds.iter().map(move |&s| (a, s)))
        .collect();
    let traces: Vec<RunTrace> = jobs
        .par_iter()
        .map(|&(algorithm, seed)| run(problem.as_ref(), &configure(algorithm, seed)))
        .collect::<Result<_, _>>()
        .map_err(classify)?;

    let mut staged = StagedOutput::new(&args.shared.out);
    for ((algorithm, seed), trace) in jobs.iter().zip(&traces) {
        let stem = format!("{}_{}_seed{}", args.problem, algorithm.label(), seed);
        staged.add(&format!("{stem}.csv"), trace_csv(trace));
        staged.add(
            &format!("{stem}_front.csv"),
            front_csv(trace, problem.objective_count()),
        );
        if !args.shared.quiet {
            eprintln!(
                "bench {} {} seed {}: {} generations, {} evaluations",
                args.problem,
                algorithm.label(),
                seed,
                trace.records.len().saturating_sub(1),
                trace.final_evaluations(),
            );
        }
    }

    let mut summary = String::from("problem,algorithm,seeds,igd_mean,igd_std,hv_mean,hv_std\n");
    for &algorithm in &algorithms {
        let finals: Vec<&RunTrace> = jobs
            .iter()
            .zip(&traces)
            .filter(|((a, _), _)| *a == algorithm)
            .map(|(_, trace)| trace)
            .collect();
        let igd: Vec<f64> = finals
            .iter()
            .map(|t| t.records.last().and_then(|r| r.igd).unwrap_or(f64::NAN))
            .collect();
        let hv: Vec<f64> = finals
            .iter()
            .map(|t| t.records.last().and_then(|r| r.hv).unwrap_or(f64::NAN))
            .collect();
        let (igd_mean, igd_std) = mean_and_std(&igd);
        let (hv_mean, hv_std) = mean_and_std(&hv);
        summary.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            args.problem,
            algorithm.label(),
            finals.len(),
            fmt_float(igd_mean),
            fmt_float(igd_std),
            fmt_float(hv_mean),
            fmt_float(hv_std),
        ));
    }
    staged.add("summary.csv", summary);

    staged.commit()?;
    Ok(false)
}
