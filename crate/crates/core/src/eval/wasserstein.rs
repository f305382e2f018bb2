use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_dim, Error, Result};
use crate::float;

/// Largest point set accepted by the exact `O(n³)` matching.
pub const MAX_EXACT_POINTS: usize = 2_000;

/// Minimum-cost perfect matching on a dense `n × n` cost matrix (row-major),
/// by shortest augmenting paths with dual potentials. Returns the column
/// assigned to each row and the total cost.
pub fn min_cost_assignment(n: usize, cost: &[f64]) -> (Vec<usize>, f64) {
    assert_eq!(cost.len(), n * n, "cost matrix must be n × n");
    // 1-based internally; index 0 is the virtual source column.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        row_of[0] = row;
        let mut col0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let r = row_of[col0];
            let mut delta = f64::INFINITY;
            let mut col1 = 0;
            for c in 1..=n {
                if used[c] {
                    continue;
                }
                let reduced = cost[(r - 1) * n + (c - 1)] - u[r] - v[c];
                if reduced < minv[c] {
                    minv[c] = reduced;
                    way[c] = col0;
                }
                if minv[c] < delta {
                    delta = minv[c];
                    col1 = c;
                }
            }
            for c in 0..=n {
                if used[c] {
                    u[row_of[c]] += delta;
                    v[c] -= delta;
                } else {
                    minv[c] -= delta;
                }
            }
            col0 = col1;
            if row_of[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            row_of[col0] = row_of[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for c in 1..=n {
        if row_of[c] > 0 {
            assignment[row_of[c] - 1] = c - 1;
        }
    }
    let total = assignment
        .iter()
        .enumerate()
        .map(|(r, &c)| cost[r * n + c])
        .sum();
    (assignment, total)
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    float::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

fn validate<V: AsRef<[f64]>>(a: &[V], b: &[V]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let d = a.first().ok_or(Error::Empty("point set"))?.as_ref().len();
    for p in a.iter().chain(b) {
        check_dim(d, p.as_ref().len())?;
    }
    Ok(())
}

/// Exact 1-Wasserstein distance between two equal-size uniform point clouds
/// under Euclidean ground cost.
pub fn wasserstein1<V: AsRef<[f64]>>(a: &[V], b: &[V]) -> Result<f64> {
    validate(a, b)?;
    let n = a.len();
    if n > MAX_EXACT_POINTS {
        return Err(Error::invalid("a", "exact matching supports at most 2000 points"));
    }
    let mut cost = Vec::with_capacity(n * n);
    for p in a {
        for q in b {
            cost.push(euclidean(p.as_ref(), q.as_ref()));
        }
    }
    let (_, total) = min_cost_assignment(n, &cost);
    Ok(total / n as f64)
}

/// Mean distance under the identity matching `a[i] ↔ b[i]`; an upper bound
/// on [`wasserstein1`] for paired data such as original vs. privatized points.
pub fn paired_distance<V: AsRef<[f64]>>(a: &[V], b: &[V]) -> Result<f64> {
    validate(a, b)?;
    let total: f64 = a
        .iter()
        .zip(b)
        .map(|(p, q)| euclidean(p.as_ref(), q.as_ref()))
        .sum();
    Ok(total / a.len() as f64)
}

/// Mean over dimensions of the exact 1-D 1-Wasserstein distance between the
/// two per-dimension marginals. Each term is at most [`wasserstein1`], so the
/// mean is a lower bound on it; it scales to any `n` (sorting only).
pub fn marginal_wasserstein1<V: AsRef<[f64]>>(a: &[V], b: &[V]) -> Result<f64> {
    validate(a, b)?;
    let d = a[0].as_ref().len();
    let mut total = 0.0;
    for j in 0..d {
        let mut x: Vec<f64> = a.iter().map(|p| p.as_ref()[j]).collect();
        let mut y: Vec<f64> = b.iter().map(|p| p.as_ref()[j]).collect();
        x.sort_by(f64::total_cmp);
        y.sort_by(f64::total_cmp);
        total += x.iter().zip(&y).map(|(u, v)| (u - v).abs()).sum::<f64>() / x.len() as f64;
    }
    Ok(total / d as f64)
}
