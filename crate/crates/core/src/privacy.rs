//! Local ε-differential privacy through the Laplace mechanism, sampled by
//! inverting the Laplace CDF at a uniform draw `v ~ U(-0.5, 0.5)`.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_dim, Error, Result};
use crate::float;

/// Uniform draws this close to ±0.5 are rejected; `ln(1 - 2|v|)` diverges there.
const V_GUARD: f64 = 0.5 - 1e-12;

/// Privacy budget. `Epsilon::INFINITE` disables noise entirely.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Epsilon(f64);

impl Epsilon {
    pub const INFINITE: Epsilon = Epsilon(f64::INFINITY);

    pub fn new(epsilon: f64) -> Result<Self> {
        if epsilon > 0.0 && !epsilon.is_nan() {
            Ok(Epsilon(epsilon))
        } else {
            Err(Error::invalid("epsilon", "privacy budget must be > 0"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrivacyParams {
    pub epsilon: Epsilon,
    /// Location of the Laplace noise.
    pub mu: f64,
    /// Per-dimension sensitivity `Δf_j`.
    pub sensitivities: Vec<f64>,
}

impl PrivacyParams {
    /// Zero-mean noise calibrated to the given data's own ranges.
    pub fn for_data<V: AsRef<[f64]>>(epsilon: Epsilon, data: &[V]) -> Result<Self> {
        Ok(PrivacyParams {
            epsilon,
            mu: 0.0,
            sensitivities: local_sensitivity(data)?,
        })
    }

    pub fn with_sensitivities(epsilon: Epsilon, sensitivities: Vec<f64>) -> Result<Self> {
        if sensitivities.iter().any(|s| !s.is_finite() || *s < 0.0) {
            return Err(Error::invalid("sensitivities", "must be finite and non-negative"));
        }
        Ok(PrivacyParams {
            epsilon,
            mu: 0.0,
            sensitivities,
        })
    }
}

/// `Δf_j = max_n x_{n,j} - min_n x_{n,j}` per dimension.
pub fn local_sensitivity<V: AsRef<[f64]>>(dataset: &[V]) -> Result<Vec<f64>> {
    let first = dataset.first().ok_or(Error::Empty("dataset"))?.as_ref();
    let mut lo = first.to_vec();
    let mut hi = first.to_vec();
    for row in dataset {
        let row = row.as_ref();
        check_dim(lo.len(), row.len())?;
        for ((l, h), v) in lo.iter_mut().zip(hi.iter_mut()).zip(row) {
            *l = l.min(*v);
            *h = h.max(*v);
        }
    }
    Ok(hi.iter().zip(&lo).map(|(h, l)| h - l).collect())
}

/// Inverse Laplace CDF: `μ - (Δf/ε) · sgn(v) · ln(1 - 2|v|)`.
pub fn laplace_icdf(v: f64, delta_f: f64, epsilon: Epsilon, mu: f64) -> Result<f64> {
    if v.is_nan() || v.abs() >= 0.5 {
        return Err(Error::invalid("v", "must satisfy |v| < 0.5"));
    }
    Ok(icdf(v, delta_f / epsilon.0, mu))
}

#[inline]
fn icdf(v: f64, scale: f64, mu: f64) -> f64 {
    if v == 0.0 || scale == 0.0 {
        return mu;
    }
    mu - scale * v.signum() * float::ln(1.0 - 2.0 * v.abs())
}

fn sample_v<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let v = rng.random::<f64>() - 0.5;
        if v.abs() < V_GUARD {
            return v;
        }
    }
}

/// Adds independent Laplace noise to every coordinate. Deterministic in
/// `seed`; an infinite budget returns the input unchanged.
pub fn privatize_dataset<V: AsRef<[f64]>>(
    dataset: &[V],
    params: &PrivacyParams,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    let d = params.sensitivities.len();
    for row in dataset {
        check_dim(d, row.as_ref().len())?;
    }
    if params.epsilon.is_infinite() {
        return Ok(dataset.iter().map(|r| r.as_ref().to_vec()).collect());
    }
    let scales: Vec<f64> = params
        .sensitivities
        .iter()
        .map(|s| s / params.epsilon.0)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(dataset
        .iter()
        .map(|row| {
            row.as_ref()
                .iter()
                .zip(&scales)
                .map(|(x, &b)| {
                    let v = sample_v(&mut rng);
                    if b == 0.0 {
                        *x
                    } else {
                        x + icdf(v, b, params.mu)
                    }
                })
                .collect()
        })
        .collect())
}
