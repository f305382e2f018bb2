//! Gaussian-kernel correntropy, the correntropy-induced metric (CIM) and
//! Silverman's rule bandwidth.

use alloc::vec::Vec;

use crate::error::{check_dim, Error, Result};
use crate::float;
use crate::stats;

/// Lower bound applied to every estimated bandwidth. Zero-variance samples
/// would otherwise collapse the Gaussian kernel.
pub const SIGMA_FLOOR: f64 = 1e-6;

/// Gaussian kernel bandwidth, in the units of the (scaled) features.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Bandwidth(f64);

impl Bandwidth {
    /// Accepts any positive finite value as given.
    pub fn new(sigma: f64) -> Result<Self> {
        if sigma > 0.0 && sigma.is_finite() {
            Ok(Bandwidth(sigma))
        } else {
            Err(Error::InvalidBandwidth(sigma))
        }
    }

    /// Clamps to [`SIGMA_FLOOR`]; used for estimated bandwidths.
    pub fn floored(sigma: f64) -> Self {
        if sigma.is_nan() || sigma < SIGMA_FLOOR {
            Bandwidth(SIGMA_FLOOR)
        } else {
            Bandwidth(sigma)
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// Arithmetic mean of a set of bandwidths, `None` when empty.
    pub fn mean<I: IntoIterator<Item = Bandwidth>>(iter: I) -> Option<Bandwidth> {
        let (sum, n) = iter
            .into_iter()
            .fold((0.0, 0usize), |(s, n), b| (s + b.0, n + 1));
        (n > 0).then(|| Bandwidth::floored(sum / n as f64))
    }
}

/// Correntropy estimate `(1/d) Σ exp(-(x_i - y_i)² / 2σ²)`, in `(0, 1]`.
pub fn correntropy(x: &[f64], y: &[f64], sigma: Bandwidth) -> Result<f64> {
    check_dim(x.len(), y.len())?;
    if x.is_empty() {
        return Err(Error::Empty("vector"));
    }
    Ok(correntropy_unchecked(x, y, sigma.0))
}

#[inline]
pub(crate) fn correntropy_unchecked(x: &[f64], y: &[f64], sigma: f64) -> f64 {
    let scale = -1.0 / (2.0 * sigma * sigma);
    let sum: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| float::exp((a - b) * (a - b) * scale))
        .sum();
    sum / x.len() as f64
}

/// Correntropy-induced metric `sqrt(1 - correntropy)`, in `[0, 1)`.
pub fn cim(x: &[f64], y: &[f64], sigma: Bandwidth) -> Result<f64> {
    correntropy(x, y, sigma).map(cim_from_correntropy)
}

#[inline]
pub(crate) fn cim_unchecked(x: &[f64], y: &[f64], sigma: f64) -> f64 {
    cim_from_correntropy(correntropy_unchecked(x, y, sigma))
}

#[inline]
fn cim_from_correntropy(c: f64) -> f64 {
    // Rounding can push the mean of kernels a hair above 1.
    float::sqrt((1.0 - c).max(0.0))
}

/// Silverman's rule per dimension, `(4/(2+d))^(1/(4+d)) · Γ · n^(-1/(4+d))`,
/// summarized by the median over dimensions and clamped to [`SIGMA_FLOOR`].
pub fn silverman_bandwidth<V: AsRef<[f64]>>(samples: &[V]) -> Result<Bandwidth> {
    let gamma = stats::column_std(samples)?;
    silverman_from_std(&gamma, samples.len())
}

/// Silverman's rule from precomputed per-dimension standard deviations `Γ`
/// over `count` instances.
pub fn silverman_from_std(gamma: &[f64], count: usize) -> Result<Bandwidth> {
    if gamma.is_empty() {
        return Err(Error::Empty("standard deviation vector"));
    }
    if count == 0 {
        return Err(Error::Empty("sample set"));
    }
    let d = gamma.len() as f64;
    let factor = float::powf(4.0 / (2.0 + d), 1.0 / (4.0 + d))
        * float::powf(count as f64, -1.0 / (4.0 + d));
    let per_dim: Vec<f64> = gamma.iter().map(|g| factor * g).collect();
    Ok(Bandwidth::floored(stats::median(&per_dim)?))
}
