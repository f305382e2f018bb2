//! Order statistics and moments over `f64` slices.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;

/// Linear-interpolation percentile: rank `(p / 100) * (n - 1)` over the
/// sorted values, interpolating between the floor and ceiling neighbours.
pub fn percentile(values: &[f64], p: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Empty("percentile input"));
    }
    if !(0.0..=100.0).contains(&p) {
        return Err(Error::invalid("p", "percentile must lie in [0, 100]"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(percentile_sorted(&sorted, p))
}

/// Same as [`percentile`] but assumes `sorted` is non-empty and ascending.
pub(crate) fn percentile_sorted(sorted: &[f64], p: f64) -> f64 {
    let rank = p / 100.0 * (sorted.len() - 1) as f64;
    let lo = float::floor(rank) as usize;
    let hi = float::ceil(rank) as usize;
    let frac = rank - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// Interquartile range, `percentile(75) - percentile(25)`.
pub fn iqr(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Empty("iqr input"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(percentile_sorted(&sorted, 75.0) - percentile_sorted(&sorted, 25.0))
}

pub fn median(values: &[f64]) -> Result<f64> {
    percentile(values, 50.0)
}

pub fn mean(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Empty("mean input"));
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// Per-dimension sample standard deviation (`n - 1` denominator); zero for a
/// single row.
pub fn column_std<V: AsRef<[f64]>>(rows: &[V]) -> Result<Vec<f64>> {
    let first = rows.first().ok_or(Error::Empty("sample set"))?.as_ref();
    let d = first.len();
    let n = rows.len();
    let mut sum = alloc::vec![0.0; d];
    for row in rows {
        let row = row.as_ref();
        crate::error::check_dim(d, row.len())?;
        for (s, v) in sum.iter_mut().zip(row) {
            *s += v;
        }
    }
    if n < 2 {
        return Ok(alloc::vec![0.0; d]);
    }
    let means: Vec<f64> = sum.iter().map(|s| s / n as f64).collect();
    let mut ss = alloc::vec![0.0; d];
    for row in rows {
        for ((acc, v), m) in ss.iter_mut().zip(row.as_ref()).zip(&means) {
            *acc += (v - m) * (v - m);
        }
    }
    Ok(ss
        .into_iter()
        .map(|s| float::sqrt(s / (n - 1) as f64))
        .collect())
}
