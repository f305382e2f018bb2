//! Labeled datasets, min-max scaling, synthetic Gaussian mixtures and
//! client partitioning (stratified IID and Dirichlet non-IID).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Gamma, StandardNormal};

use crate::error::{check_dim, Error, Result};
use crate::float;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub name: String,
    pub points: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
}

impl LabeledDataset {
    pub fn new(name: impl Into<String>, points: Vec<Vec<f64>>, labels: Vec<usize>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::LengthMismatch {
                left: points.len(),
                right: labels.len(),
            });
        }
        if let Some(first) = points.first() {
            for p in &points {
                check_dim(first.len(), p.len())?;
            }
        }
        Ok(LabeledDataset {
            name: name.into(),
            points,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    /// `max(label) + 1`.
    pub fn num_classes(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    /// Rows selected by `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> LabeledDataset {
        LabeledDataset {
            name: self.name.clone(),
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    pub fn scaled(mut self, lo: f64, hi: f64) -> Result<Self> {
        minmax_scale(&mut self.points, lo, hi)?;
        Ok(self)
    }
}

/// Per-dimension affine map of the observed `[min, max]` onto `[lo, hi]`.
/// Constant dimensions map to `lo`.
pub fn minmax_scale(points: &mut [Vec<f64>], lo: f64, hi: f64) -> Result<()> {
    let first = points.first().ok_or(Error::Empty("dataset"))?;
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::invalid("range", "lower bound must be below upper bound"));
    }
    let d = first.len();
    let mut min = vec![f64::INFINITY; d];
    let mut max = vec![f64::NEG_INFINITY; d];
    for p in points.iter() {
        check_dim(d, p.len())?;
        for j in 0..d {
            min[j] = min[j].min(p[j]);
            max[j] = max[j].max(p[j]);
        }
    }
    for p in points.iter_mut() {
        for j in 0..d {
            let span = max[j] - min[j];
            p[j] = if span > 0.0 {
                lo + (p[j] - min[j]) / span * (hi - lo)
            } else {
                lo
            };
        }
    }
    Ok(())
}

/// Disjoint per-client index lists covering every row exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub clients: Vec<Vec<usize>>,
}

impl Partition {
    pub fn num_clients(&self) -> usize {
        self.clients.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.clients.iter().map(Vec::len).collect()
    }

    /// Whether the lists form an exact set partition of `0..n`.
    pub fn is_exact(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for i in self.clients.iter().flatten() {
            if *i >= n || seen[*i] {
                return false;
            }
            seen[*i] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

fn class_indices(labels: &[usize]) -> Vec<Vec<usize>> {
    let classes = labels.iter().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); classes];
    for (i, &l) in labels.iter().enumerate() {
        out[l].push(i);
    }
    out
}

/// Stratified split: each class is shuffled and dealt round-robin, with the
/// dealer position carried across classes so client sizes differ by at most
/// one overall and per class. Each client's rows come out in random order.
pub fn split_iid(labels: &[usize], clients: usize, seed: u64) -> Result<Partition> {
    if clients == 0 {
        return Err(Error::invalid("clients", "need at least one client"));
    }
    if clients > labels.len() {
        return Err(Error::invalid("clients", "more clients than data points"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = vec![Vec::new(); clients];
    let mut next = 0;
    for mut idx in class_indices(labels) {
        idx.shuffle(&mut rng);
        for i in idx {
            parts[next].push(i);
            next = (next + 1) % clients;
        }
    }
    for p in &mut parts {
        p.shuffle(&mut rng);
    }
    Ok(Partition { clients: parts })
}

const DIRICHLET_MAX_DRAWS: usize = 10_000;

/// Per-class proportions drawn from `Dirichlet(alpha · 1)`; each class's
/// shuffled rows are cut at the cumulative proportions. The whole draw is
/// repeated until no client is empty. Each client's rows come out in random
/// order.
pub fn split_dirichlet(labels: &[usize], clients: usize, alpha: f64, seed: u64) -> Result<Partition> {
    if clients < 2 {
        return Err(Error::invalid("clients", "Dirichlet split needs at least two clients"));
    }
    if clients > labels.len() {
        return Err(Error::invalid("clients", "more clients than data points"));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::invalid("alpha", "concentration must be positive and finite"));
    }
    let gamma = Gamma::new(alpha, 1.0).map_err(|_| Error::invalid("alpha", "invalid Gamma shape"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes = class_indices(labels);
    for _ in 0..DIRICHLET_MAX_DRAWS {
        let mut parts = vec![Vec::new(); clients];
        for idx in &classes {
            let mut idx = idx.clone();
            idx.shuffle(&mut rng);
            // Tiny shapes can underflow every draw to zero.
            let (draws, total) = loop {
                let draws: Vec<f64> = (0..clients).map(|_| rng.sample(gamma)).collect();
                let total: f64 = draws.iter().sum();
                if total > 0.0 {
                    break (draws, total);
                }
            };
            let n = idx.len();
            let mut start = 0;
            let mut cum = 0.0;
            for (c, g) in draws.iter().enumerate() {
                cum += g / total;
                let end = if c + 1 == clients {
                    n
                } else {
                    (float::floor(cum * n as f64) as usize).clamp(start, n)
                };
                parts[c].extend_from_slice(&idx[start..end]);
                start = end;
            }
        }
        if parts.iter().all(|p| !p.is_empty()) {
            for p in &mut parts {
                p.shuffle(&mut rng);
            }
            return Ok(Partition { clients: parts });
        }
    }
    Err(Error::invalid("alpha", "could not draw a partition without empty clients"))
}

/// One Gaussian component of a synthetic mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianComponent {
    pub mean: Vec<f64>,
    /// Row-major `d × d` covariance.
    pub cov: Vec<f64>,
    pub count: usize,
}

impl GaussianComponent {
    pub fn isotropic(mean: Vec<f64>, variance: f64, count: usize) -> Self {
        let d = mean.len();
        let mut cov = vec![0.0; d * d];
        for i in 0..d {
            cov[i * d + i] = variance;
        }
        GaussianComponent { mean, cov, count }
    }
}

/// Lower-triangular factor of a positive semi-definite matrix.
fn cholesky_psd(d: usize, cov: &[f64]) -> Result<Vec<f64>> {
    let not_psd = || Error::invalid("cov", "covariance must be symmetric positive semi-definite");
    let scale = cov.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let tol = 1e-12 * scale;
    for i in 0..d {
        for j in 0..i {
            if (cov[i * d + j] - cov[j * d + i]).abs() > tol {
                return Err(not_psd());
            }
        }
    }
    let mut l = vec![0.0; d * d];
    for j in 0..d {
        let mut diag = cov[j * d + j];
        for k in 0..j {
            diag -= l[j * d + k] * l[j * d + k];
        }
        if diag < -tol {
            return Err(not_psd());
        }
        let pivot = float::sqrt(diag.max(0.0));
        l[j * d + j] = pivot;
        for i in j + 1..d {
            let mut v = cov[i * d + j];
            for k in 0..j {
                v -= l[i * d + k] * l[j * d + k];
            }
            if pivot > tol {
                l[i * d + j] = v / pivot;
            } else if v.abs() > tol {
                return Err(not_psd());
            }
        }
    }
    Ok(l)
}

/// Draws a labeled sample (label = component index) from each component
/// without scaling.
pub fn sample_gaussian_mixture(components: &[GaussianComponent], seed: u64) -> Result<LabeledDataset> {
    let d = components.first().ok_or(Error::Empty("mixture"))?.mean.len();
    if d == 0 {
        return Err(Error::Empty("component mean"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (label, comp) in components.iter().enumerate() {
        check_dim(d, comp.mean.len())?;
        check_dim(d * d, comp.cov.len())?;
        let l = cholesky_psd(d, &comp.cov)?;
        for _ in 0..comp.count {
            let z: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            let p = (0..d)
                .map(|i| comp.mean[i] + (0..=i).map(|k| l[i * d + k] * z[k]).sum::<f64>())
                .collect();
            points.push(p);
            labels.push(label);
        }
    }
    LabeledDataset::new("gaussian-mixture", points, labels)
}

/// [`sample_gaussian_mixture`] followed by min-max scaling onto `range`.
pub fn gen_gaussian_mixture(
    components: &[GaussianComponent],
    range: (f64, f64),
    seed: u64,
) -> Result<LabeledDataset> {
    sample_gaussian_mixture(components, seed)?.scaled(range.0, range.1)
}

/// Synthetic continual-learning stream: three well separated 2-D Gaussians
/// (A, B, C) scaled to `[0, 1]`, with A cut into four equal subsets and B, C
/// into two each, all disjoint.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinualSubsets {
    pub data: LabeledDataset,
    /// Index lists in the order A1, A2, A3, A4, B1, B2, C1, C2.
    pub subsets: Vec<Vec<usize>>,
}

pub const CONTINUAL_SUBSET_NAMES: [&str; 8] = ["A1", "A2", "A3", "A4", "B1", "B2", "C1", "C2"];

impl ContinualSubsets {
    /// `per_distribution` points per Gaussian (15 000 at full scale).
    pub fn generate(per_distribution: usize, seed: u64) -> Result<Self> {
        if per_distribution < 4 {
            return Err(Error::invalid("per_distribution", "need at least four points per distribution"));
        }
        let components = [
            GaussianComponent::isotropic(vec![0.0, 0.0], 1.0, per_distribution),
            GaussianComponent::isotropic(vec![9.0, 0.0], 1.0, per_distribution),
            GaussianComponent::isotropic(vec![4.5, 8.0], 1.0, per_distribution),
        ];
        let data = gen_gaussian_mixture(&components, (0.0, 1.0), seed)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
        let mut subsets = Vec::with_capacity(8);
        for (label, pieces) in [(0usize, 4usize), (1, 2), (2, 2)] {
            let mut idx: Vec<usize> = (0..data.len()).filter(|&i| data.labels[i] == label).collect();
            idx.shuffle(&mut rng);
            let size = idx.len() / pieces;
            for p in 0..pieces {
                let end = if p + 1 == pieces { idx.len() } else { (p + 1) * size };
                subsets.push(idx[p * size..end].to_vec());
            }
        }
        Ok(ContinualSubsets { data, subsets })
    }

    /// Per-round, per-client index lists for two clients over three rounds:
    /// round 1 `A1 | A2`, round 2 `A3+B1 | A4+C1`, round 3 `B2 | C2`.
    pub fn schedule(&self) -> Vec<[Vec<usize>; 2]> {
        let s = &self.subsets;
        let join = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().chain(b).copied().collect() };
        vec![
            [s[0].clone(), s[1].clone()],
            [join(&s[2], &s[4]), join(&s[3], &s[6])],
            [s[5].clone(), s[7].clone()],
        ]
    }
}
