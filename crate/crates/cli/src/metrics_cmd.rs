//! The `metrics` command: front quality indicators computed from stored
//! CSV fronts, printed as JSON on stdout.

use crate::files::read_numeric_csv;
use crate::{CliError, MetricsArgs};
use moplan_core::metrics::{hypervolume, igd, FrontSet, IgdMode};
use serde::Serialize;

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct MetricsOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    igd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    igd_mode: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hv: Option<f64>,
}

fn load_front(path: &std::path::Path) -> Result<FrontSet, CliError> {
    let csv = read_numeric_csv(path)?;
    let rows = csv.objective_rows()?;
    FrontSet::new(rows).map_err(|e| CliError::Usage(format!("{path:?}: {e}")))
}

pub fn parse_point(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|e| CliError::Usage(format!("bad reference point '{text}': {e}")))
        })
        .collect()
}

pub fn run_metrics(args: &MetricsArgs) -> Result<bool, CliError> {
    if args.ref_front.is_none() && args.ref_point.is_none() {
        return Err(CliError::Usage(
            "nothing to compute: pass --ref-front for IGD and/or --ref-point for hypervolume"
                .into(),
        ));
    }
    let front = load_front(&args.front)?;
    let mut output = MetricsOutput {
        igd: None,
        igd_mode: None,
        hv: None,
    };

    if let Some(reference_path) = &args.ref_front {
        let reference = load_front(reference_path)?;
        if reference.objective_count() != front.objective_count() {
            return Err(CliError::Usage(format!(
                "front has {} objectives but the reference front has {}",
                front.objective_count(),
                reference.objective_count()
            )));
        }
        let mode: IgdMode = args.igd_mode.into();
        output.igd = Some(
            igd(&front, &reference, mode).map_err(|e| CliError::Usage(e.to_string()))?,
        );
        output.igd_mode = Some(match mode {
            IgdMode::Standard => "standard",
            IgdMode::Transposed => "transposed",
        });
    }

    if let Some(point_text) = &args.ref_point {
        let point = parse_point(point_text)?;
        if point.len() != front.objective_count() {
            return Err(CliError::Usage(format!(
                "front has {} objectives but the reference point has {}",
                front.objective_count(),
                point.len()
            )));
        }
        output.hv =
            Some(hypervolume(&front, &point).map_err(|e| CliError::Usage(e.to_string()))?);
    }

    println!(
        "{}",
        serde_json::to_string_pretty(&output)
            .map_err(|e| CliError::Runtime(format!("serializing metrics: {e}")))?
    );
    Ok(false)
}
