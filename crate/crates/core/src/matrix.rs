//! Pairwise node-similarity matrices and their determinant ("diversity").

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_dim, Error, Result};
use crate::float;
use crate::kernel::{self, Bandwidth};

/// Which pairwise similarity fills the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimilarityKind {
    /// `exp(1 - CIM(y_i, y_j, σ))`, used by CAE.
    CimExp,
    /// `exp(Ĉ(y_i, y_j, σ))`, used by CAE_FC and CA+.
    CorrentropyExp,
}

/// Dense symmetric `m × m` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    side: usize,
    entries: Vec<f64>,
    kind: SimilarityKind,
}

impl SimilarityMatrix {
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn kind(&self) -> SimilarityKind {
        self.kind
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.side + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

pub fn similarity_matrix<V: AsRef<[f64]>>(
    nodes: &[V],
    sigma: Bandwidth,
    kind: SimilarityKind,
) -> Result<SimilarityMatrix> {
    let first = nodes.first().ok_or(Error::Empty("node set"))?.as_ref();
    let d = first.len();
    if d == 0 {
        return Err(Error::Empty("vector"));
    }
    for n in nodes {
        check_dim(d, n.as_ref().len())?;
    }
    let m = nodes.len();
    let mut entries = vec![0.0; m * m];
    for i in 0..m {
        for j in i..m {
            let c = kernel::correntropy_unchecked(nodes[i].as_ref(), nodes[j].as_ref(), sigma.get());
            let v = match kind {
                SimilarityKind::CimExp => float::exp(1.0 - float::sqrt((1.0 - c).max(0.0))),
                SimilarityKind::CorrentropyExp => float::exp(c),
            };
            entries[i * m + j] = v;
            entries[j * m + i] = v;
        }
    }
    Ok(SimilarityMatrix {
        side: m,
        entries,
        kind,
    })
}

/// Determinant of the similarity matrix. Near-duplicate nodes drive it to 0.
pub fn diversity(r: &SimilarityMatrix) -> f64 {
    determinant(r.side, &r.entries)
}

/// Determinant of a square row-major matrix via LU with partial pivoting.
/// Exactly singular input returns 0.
pub fn determinant(side: usize, entries: &[f64]) -> f64 {
    debug_assert_eq!(entries.len(), side * side);
    let mut a = entries.to_vec();
    let mut det = 1.0;
    for col in 0..side {
        let pivot = (col..side)
            .max_by(|&x, &y| a[x * side + col].abs().total_cmp(&a[y * side + col].abs()))
            .unwrap_or(col);
        let p = a[pivot * side + col];
        if p == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..side {
                a.swap(pivot * side + k, col * side + k);
            }
            det = -det;
        }
        det *= p;
        for row in col + 1..side {
            let f = a[row * side + col] / p;
            if f == 0.0 {
                continue;
            }
            for k in col..side {
                a[row * side + k] -= f * a[col * side + k];
            }
        }
    }
    det
}
