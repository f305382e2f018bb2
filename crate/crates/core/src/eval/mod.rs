//! Clustering-quality metrics and the exact 1-Wasserstein distance.

mod metrics;
mod wasserstein;

pub use metrics::{ami, ari, mutual_information, nmi, ContingencyTable};
pub use wasserstein::{marginal_wasserstein1, min_cost_assignment, paired_distance, wasserstein1, MAX_EXACT_POINTS};

use crate::clusterer::ClusterLabeling;

/// Number of distinct non-empty clusters.
pub fn count_clusters(labeling: &ClusterLabeling) -> usize {
    labeling.count_clusters()
}
