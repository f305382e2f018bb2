//! CSV datasets and CSV dumps. All output is RFC 4180 with `.` decimals.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use fcac_core::data::LabeledDataset;
use fcac_core::{ClusterLabeling, Clusterer};

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{}: row {row}, column {column}: cannot parse {value:?} as {expected}", path.display())]
    Parse {
        path: PathBuf,
        row: usize,
        column: usize,
        value: String,
        expected: &'static str,
    },
    #[error("{}: row {row} has {found} columns, expected {expected}", path.display())]
    Width {
        path: PathBuf,
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("{}: no data rows", path.display())]
    Empty { path: PathBuf },
}

/// Reads numeric feature columns followed by an integer label column.
/// Labels are remapped to `0..k` in ascending order of their values.
/// Rows and columns in errors are 1-based and count the header if present.
pub fn load_csv(path: &Path, has_header: bool) -> Result<LabeledDataset, DataError> {
    let csv_err = |source| DataError::Csv {
        path: path.to_owned(),
        source,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_err)?;
    let mut points = Vec::new();
    let mut raw_labels = Vec::new();
    let mut width = None;
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let row = i + 1 + usize::from(has_header);
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected || expected < 2 {
            return Err(DataError::Width {
                path: path.to_owned(),
                row,
                found: record.len(),
                expected: expected.max(2),
            });
        }
        let parse_err = |column: usize, value: &str, expected| DataError::Parse {
            path: path.to_owned(),
            row,
            column,
            value: value.to_owned(),
            expected,
        };
        let mut p = Vec::with_capacity(expected - 1);
        for (j, cell) in record.iter().take(expected - 1).enumerate() {
            match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => p.push(v),
                _ => return Err(parse_err(j + 1, cell, "a finite number")),
            }
        }
        let cell = &record[expected - 1];
        let label = match cell.parse::<i64>() {
            Ok(l) => l,
            Err(_) => match cell.parse::<f64>() {
                Ok(v) if v.fract() == 0.0 && v.abs() < 1e15 => v as i64,
                _ => return Err(parse_err(expected, cell, "an integer label")),
            },
        };
        points.push(p);
        raw_labels.push(label);
    }
    if points.is_empty() {
        return Err(DataError::Empty { path: path.to_owned() });
    }
    let distinct: Vec<i64> = raw_labels.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let labels = raw_labels
        .iter()
        .map(|l| distinct.binary_search(l).expect("label collected above"))
        .collect();
    let name = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    Ok(LabeledDataset::new(name, points, labels).expect("rows checked for equal width"))
}

fn header_with_weights(prefix: &[&str], dim: usize) -> Vec<String> {
    prefix
        .iter()
        .map(|s| (*s).to_owned())
        .chain((0..dim).map(|j| format!("w_{j}")))
        .collect()
}

/// `node_id, cluster_id, M, sigma, w_0, ..., w_{d-1}`, ascending node id.
pub fn write_nodes_csv(path: &Path, state: &Clusterer, labeling: &ClusterLabeling) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header_with_weights(&["node_id", "cluster_id", "M", "sigma"], state.dim().unwrap_or(0)))?;
    for (id, node) in state.nodes() {
        let cluster = labeling.cluster_of(id).map_or_else(String::new, |c| c.to_string());
        let mut row = vec![id.to_string(), cluster, node.wins.to_string(), node.sigma.get().to_string()];
        row.extend(node.weight.iter().map(f64::to_string));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Points with their label: `label, x_0, ..., x_{d-1}`.
pub fn write_points_csv(path: &Path, points: &[Vec<f64>], labels: &[usize]) -> anyhow::Result<()> {
    let dim = points.first().map_or(0, Vec::len);
    let mut w = csv::Writer::from_path(path)?;
    let header: Vec<String> = std::iter::once("label".to_owned())
        .chain((0..dim).map(|j| format!("x_{j}")))
        .collect();
    w.write_record(&header)?;
    for (p, l) in points.iter().zip(labels) {
        let mut row = vec![l.to_string()];
        row.extend(p.iter().map(f64::to_string));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
