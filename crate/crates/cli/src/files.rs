//! Staged file output and the tiny CSV dialect shared by all commands:
//! header row, comma-separated, floats printed in shortest round-trip
//! form (`nan` for absent indicator values).

use crate::CliError;
use std::fs;
use std::path::{Path, PathBuf};

/// Formats a float so that parsing the text recovers the exact value.
pub fn fmt_float(value: f64) -> String {
    if value.is_nan() {
        "nan".to_string()
    } else {
        format!("{value}")
    }
}

/// Output files accumulated in memory and written only when the whole
/// command has succeeded, so a failed run leaves no partial outputs.
pub struct StagedOutput {
    directory: PathBuf,
    files: Vec<(PathBuf, String)>,
}

impl StagedOutput {
    pub fn new(directory: &Path) -> Self {
        Self {
            directory: directory.to_path_buf(),
            files: Vec::new(),
        }
    }

    pub fn add(&mut self, name: &str, contents: String) {
        self.files.push((self.directory.join(name), contents));
    }

    /// Writes every staged file; on any write error the files already
    /// written by this call are removed again.
    pub fn commit(self) -> Result<Vec<PathBuf>, CliError> {
        fs::create_dir_all(&self.directory)
            .map_err(|e| CliError::Runtime(format!("creating {:?}: {e}", self.directory)))?;
        let mut written = Vec::new();
        for (path, contents) in &self.files {
            if let Err(error) = fs::write(path, contents) {
                for done in &written {
                    let _ = fs::remove_file(done);
                }
                return Err(CliError::Runtime(format!("writing {path:?}: {error}")));
            }
            written.push(path.clone());
        }
        Ok(written)
    }
}

/// One parsed numeric CSV: header names plus rows of floats.
pub struct NumericCsv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn read_numeric_csv(path: &Path) -> Result<NumericCsv, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {path:?}: {e}")))?;
    let mut lines = text.lines().filter(|line| !line.trim().is_empty());
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| CliError::Usage(format!("{path:?} is empty")))?
        .split(',')
        .map(|name| name.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for (number, line) in lines.enumerate() {
        let row: Result<Vec<f64>, _> = line
            .split(',')
            .map(|cell| cell.trim().parse::<f64>())
            .collect();
        let row = row.map_err(|e| {
            CliError::Usage(format!("{path:?} line {}: {e}", number + 2))
        })?;
        if row.len() != header.len() {
            return Err(CliError::Usage(format!(
                "{path:?} line {}: {} cells under a {}-column header",
                number + 2,
                row.len(),
                header.len()
            )));
        }
        rows.push(row);
    }
    Ok(NumericCsv { header, rows })
}

impl NumericCsv {
    /// Column indices named `f1`, `f2`, … in objective order.
    pub fn objective_columns(&self) -> Result<Vec<usize>, CliError> {
        let mut found: Vec<(usize, usize)> = Vec::new();
        for (index, name) in self.header.iter().enumerate() {
            if let Some(digits) = name.strip_prefix('f') {
                if let Ok(number) = digits.parse::<usize>() {
                    if number >= 1 {
                        found.push((number, index));
                    }
                }
            }
        }
        found.sort_unstable();
        if found.is_empty() {
            return Err(CliError::Usage(
                "no objective columns (f1, f2, …) in the CSV header".into(),
            ));
        }
        for (position, (number, _)) in found.iter().enumerate() {
            if *number != position + 1 {
                return Err(CliError::Usage(format!(
                    "objective columns must be f1..f{}, found f{number}",
                    found.len()
                )));
            }
        }
        Ok(found.into_iter().map(|(_, index)| index).collect())
    }

    /// Extracts the objective vectors using [`Self::objective_columns`].
    pub fn objective_rows(&self) -> Result<Vec<Vec<f64>>, CliError> {
        let columns = self.objective_columns()?;
        Ok(self
            .rows
            .iter()
            .map(|row| columns.iter().map(|&c| row[c]).collect())
            .collect())
    }
}
