use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;

/// Counts indexed by (true class, predicted cluster) after relabeling both
/// sides to dense indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    pub counts: Vec<Vec<u64>>,
    pub row_sums: Vec<u64>,
    pub col_sums: Vec<u64>,
    pub n: u64,
}

fn dense(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut map = BTreeMap::new();
    let idx = labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect();
    (idx, map.len())
}

impl ContingencyTable {
    pub fn new(truth: &[usize], pred: &[usize]) -> Result<Self> {
        if truth.len() != pred.len() {
            return Err(Error::LengthMismatch {
                left: truth.len(),
                right: pred.len(),
            });
        }
        let (t, rows) = dense(truth);
        let (p, cols) = dense(pred);
        let mut counts = vec![vec![0u64; cols]; rows];
        for (i, j) in t.into_iter().zip(p) {
            counts[i][j] += 1;
        }
        let row_sums = counts.iter().map(|r| r.iter().sum()).collect();
        let col_sums = (0..cols).map(|j| counts.iter().map(|r| r[j]).sum()).collect();
        Ok(ContingencyTable {
            counts,
            row_sums,
            col_sums,
            n: truth.len() as u64,
        })
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, c)| (i, j, *c)))
    }
}

fn comb2(k: u64) -> f64 {
    let k = k as f64;
    k * (k - 1.0) / 2.0
}

fn check_len(truth: &[usize], pred: &[usize]) -> Result<()> {
    if truth.len() != pred.len() {
        return Err(Error::LengthMismatch {
            left: truth.len(),
            right: pred.len(),
        });
    }
    if truth.len() < 2 {
        return Err(Error::TooFew {
            what: "labels",
            needed: 2,
            found: truth.len(),
        });
    }
    Ok(())
}

/// Adjusted Rand index, `(index - expected) / (max - expected)` over pair
/// counts.
pub fn ari(truth: &[usize], pred: &[usize]) -> Result<f64> {
    check_len(truth, pred)?;
    let t = ContingencyTable::new(truth, pred)?;
    let index: f64 = t.cells().map(|(_, _, c)| comb2(c)).sum();
    let a: f64 = t.row_sums.iter().map(|&c| comb2(c)).sum();
    let b: f64 = t.col_sums.iter().map(|&c| comb2(c)).sum();
    let expected = a * b / comb2(t.n);
    let max = (a + b) / 2.0;
    if max == expected {
        // Both partitions trivial (all-in-one or all-singletons).
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

fn entropy(sums: &[u64], n: u64) -> f64 {
    let n = n as f64;
    sums.iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * float::ln(p)
        })
        .sum()
}

/// Mutual information in nats.
pub fn mutual_information(table: &ContingencyTable) -> f64 {
    let n = table.n as f64;
    table
        .cells()
        .filter(|(_, _, c)| *c > 0)
        .map(|(i, j, c)| {
            let c = c as f64;
            let outer = table.row_sums[i] as f64 * table.col_sums[j] as f64;
            c / n * float::ln(c * n / outer)
        })
        .sum::<f64>()
        .max(0.0)
}

/// Normalized mutual information with geometric-mean normalization.
pub fn nmi(truth: &[usize], pred: &[usize]) -> Result<f64> {
    check_len(truth, pred)?;
    let t = ContingencyTable::new(truth, pred)?;
    let ht = entropy(&t.row_sums, t.n);
    let hp = entropy(&t.col_sums, t.n);
    if ht == 0.0 && hp == 0.0 {
        return Ok(1.0);
    }
    if ht == 0.0 || hp == 0.0 {
        return Ok(0.0);
    }
    Ok((mutual_information(&t) / float::sqrt(ht * hp)).clamp(0.0, 1.0))
}

/// Expected mutual information under the hypergeometric model of random
/// labelings with fixed marginals.
pub(crate) fn expected_mutual_information(t: &ContingencyTable) -> f64 {
    let n = t.n;
    let nf = n as f64;
    let lg = |k: u64| float::lgamma(k as f64 + 1.0);
    let lg_n = lg(n);
    let mut emi = 0.0;
    for &a in &t.row_sums {
        for &b in &t.col_sums {
            let lo = (a + b).saturating_sub(n).max(1);
            let hi = a.min(b);
            let fixed = lg(a) + lg(b) + lg(n - a) + lg(n - b) - lg_n;
            for nij in lo..=hi {
                let term = nij as f64 / nf * float::ln(nf * nij as f64 / (a as f64 * b as f64));
                let log_p = fixed - lg(nij) - lg(a - nij) - lg(b - nij) - lg(n + nij - a - b);
                emi += term * float::exp(log_p);
            }
        }
    }
    emi
}

/// Adjusted mutual information with arithmetic-mean normalization.
pub fn ami(truth: &[usize], pred: &[usize]) -> Result<f64> {
    check_len(truth, pred)?;
    let t = ContingencyTable::new(truth, pred)?;
    let (rows, cols) = (t.row_sums.len(), t.col_sums.len());
    if rows == cols && (rows == 1 || rows as u64 == t.n) {
        return Ok(1.0);
    }
    let mi = mutual_information(&t);
    let emi = expected_mutual_information(&t);
    let norm = (entropy(&t.row_sums, t.n) + entropy(&t.col_sums, t.n)) / 2.0;
    let mut denom = norm - emi;
    if denom.abs() < f64::EPSILON {
        denom = f64::EPSILON.copysign(denom);
    }
    Ok((mi - emi) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Pair-counting ARI over all C(n, 2) pairs.
    fn ari_oracle(t: &[usize], p: &[usize]) -> f64 {
        let n = t.len();
        let (mut both, mut only_t, mut only_p, mut pairs) = (0.0, 0.0, 0.0, 0.0);
        for i in 0..n {
            for j in i + 1..n {
                let st = t[i] == t[j];
                let sp = p[i] == p[j];
                pairs += 1.0;
                if st && sp {
                    both += 1.0;
                }
                if st {
                    only_t += 1.0;
                }
                if sp {
                    only_p += 1.0;
                }
            }
        }
        let expected = only_t * only_p / pairs;
        let max = (only_t + only_p) / 2.0;
        if max == expected {
            return 1.0;
        }
        (both - expected) / (max - expected)
    }

    fn entropy_oracle(labels: &[usize]) -> f64 {
        let n = labels.len() as f64;
        let mut h = 0.0;
        let mut seen = Vec::new();
        for l in labels {
            if seen.contains(l) {
                continue;
            }
            seen.push(*l);
            let p = labels.iter().filter(|x| *x == l).count() as f64 / n;
            h -= p * p.ln();
        }
        h
    }

    fn mi_oracle(t: &[usize], p: &[usize]) -> f64 {
        let joint: Vec<usize> = t.iter().zip(p).map(|(a, b)| a * 1000 + b).collect();
        entropy_oracle(t) + entropy_oracle(p) - entropy_oracle(&joint)
    }

    fn factorial(k: u64) -> u128 {
        (1..=k as u128).product()
    }

    /// Exact hypergeometric expectation with integer factorials.
    fn emi_oracle(t: &[usize], p: &[usize]) -> f64 {
        let tab = ContingencyTable::new(t, p).unwrap();
        let n = tab.n;
        let mut emi = 0.0;
        for &a in &tab.row_sums {
            for &b in &tab.col_sums {
                for nij in 1..=a.min(b) {
                    if a + b > n + nij {
                        continue;
                    }
                    let num = factorial(a) * factorial(b) * factorial(n - a) * factorial(n - b);
                    let den = factorial(n)
                        * factorial(nij)
                        * factorial(a - nij)
                        * factorial(b - nij)
                        * factorial(n + nij - a - b);
                    let prob = num as f64 / den as f64;
                    let nf = n as f64;
                    emi += prob * nij as f64 / nf * (nf * nij as f64 / (a as f64 * b as f64)).ln();
                }
            }
        }
        emi
    }

    /// Average MI over every permutation of `p`: the expectation under
    /// random labelings with the same marginals.
    fn emi_by_permutation(t: &[usize], p: &[usize]) -> f64 {
        fn rec(k: usize, p: &mut Vec<usize>, t: &[usize], acc: &mut (f64, f64)) {
            if k == p.len() {
                acc.0 += mi_oracle(t, p);
                acc.1 += 1.0;
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                rec(k + 1, p, t, acc);
                p.swap(k, i);
            }
        }
        let mut acc = (0.0, 0.0);
        rec(0, &mut p.to_vec(), t, &mut acc);
        acc.0 / acc.1
    }

    #[test]
    fn ari_examples() {
        let t = [0, 0, 1, 1, 2, 2];
        assert_eq!(ari(&t, &t).unwrap(), 1.0);
        assert!((ari(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap() + 0.5).abs() < 1e-12);
        assert!((ari(&t, &[5, 5, 3, 3, 9, 9]).unwrap() - 1.0).abs() < 1e-12);
        assert!(ari(&[0, 1], &[0]).is_err());
        assert!(ari(&[0], &[0]).is_err());
    }

    #[test]
    fn nmi_examples() {
        let t = [0, 0, 1, 1, 2];
        assert!((nmi(&t, &t).unwrap() - 1.0).abs() < 1e-12);
        assert!(nmi(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap().abs() < 1e-12);
        assert_eq!(nmi(&[3, 3, 3], &[1, 1, 1]).unwrap(), 1.0);
        assert!(nmi(&[0, 1], &[0, 1, 1]).is_err());
    }

    #[test]
    fn ami_examples() {
        let t = [0, 0, 1, 1, 2, 2, 2];
        assert!((ami(&t, &t).unwrap() - 1.0).abs() < 1e-9);
        assert!(ami(&t, &[4; 7]).unwrap().abs() < 1e-12);
        assert!(ami(&[0], &[0]).is_err());
    }

    #[test]
    fn emi_matches_permutation_average() {
        let cases: [(&[usize], &[usize]); 3] = [
            (&[0, 0, 1, 1, 2, 2, 2], &[0, 1, 1, 0, 0, 2, 1]),
            (&[0, 0, 0, 1, 1, 1, 1, 1], &[0, 0, 1, 1, 2, 2, 3, 3]),
            (&[0, 1, 2, 0, 1], &[1, 1, 1, 0, 0]),
        ];
        for (t, p) in cases {
            let table = ContingencyTable::new(t, p).unwrap();
            let want = emi_by_permutation(t, p);
            assert!((expected_mutual_information(&table) - want).abs() < 1e-9);
        }
    }

    fn labelings(max_n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
        (2usize..=max_n).prop_flat_map(|n| {
            (
                prop::collection::vec(0usize..4, n),
                prop::collection::vec(0usize..5, n),
            )
        })
    }

    proptest! {
        #[test]
        fn ari_matches_pair_counting((t, p) in labelings(20)) {
            prop_assert!((ari(&t, &p).unwrap() - ari_oracle(&t, &p)).abs() < 1e-9);
        }

        #[test]
        fn nmi_matches_entropy_oracle((t, p) in labelings(20)) {
            let (ht, hp) = (entropy_oracle(&t), entropy_oracle(&p));
            let want = if ht == 0.0 && hp == 0.0 {
                1.0
            } else if ht == 0.0 || hp == 0.0 {
                0.0
            } else {
                mi_oracle(&t, &p) / (ht * hp).sqrt()
            };
            prop_assert!((nmi(&t, &p).unwrap() - want).abs() < 1e-9);
        }

        #[test]
        fn ami_matches_exact_emi((t, p) in labelings(12)) {
            let table = ContingencyTable::new(&t, &p).unwrap();
            let emi = emi_oracle(&t, &p);
            prop_assert!((expected_mutual_information(&table) - emi).abs() < 1e-9);
            let rows = table.row_sums.len();
            let cols = table.col_sums.len();
            prop_assume!(!(rows == cols && (rows == 1 || rows == t.len())));
            let norm = (entropy_oracle(&t) + entropy_oracle(&p)) / 2.0;
            let denom = norm - emi;
            prop_assume!(denom.abs() > 1e-6);
            let want = (mi_oracle(&t, &p) - emi) / denom;
            prop_assert!((ami(&t, &p).unwrap() - want).abs() < 1e-7);
        }

        #[test]
        fn metrics_invariant_under_relabeling((t, p) in labelings(20), shift in 1usize..50) {
            let relabel: Vec<usize> = p.iter().map(|x| (x * 7 + shift) % 101).collect();
            let trel: Vec<usize> = t.iter().map(|x| 100 - x).collect();
            prop_assert!((ari(&t, &p).unwrap() - ari(&trel, &relabel).unwrap()).abs() < 1e-12);
            prop_assert!((nmi(&t, &p).unwrap() - nmi(&trel, &relabel).unwrap()).abs() < 1e-12);
            prop_assert!((ami(&t, &p).unwrap() - ami(&trel, &relabel).unwrap()).abs() < 1e-12);
        }
    }
}
