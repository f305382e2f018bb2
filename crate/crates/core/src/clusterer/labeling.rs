use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::edges::EdgeSet;
use super::NodeId;

/// Node → cluster map. Cluster ids are dense, numbered in order of each
/// cluster's lowest node id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClusterLabeling {
    clusters: BTreeMap<NodeId, usize>,
    count: usize,
}

impl ClusterLabeling {
    /// Connected components of `edges` over `nodes` (ascending ids);
    /// isolated nodes become singleton clusters.
    pub fn from_components(nodes: &[NodeId], edges: &EdgeSet) -> Self {
        let mut clusters = BTreeMap::new();
        let mut count = 0;
        for &start in nodes {
            if clusters.contains_key(&start) {
                continue;
            }
            clusters.insert(start, count);
            let mut stack = vec![start];
            while let Some(n) = stack.pop() {
                for (m, _) in edges.neighbors(n) {
                    if let alloc::collections::btree_map::Entry::Vacant(e) = clusters.entry(m) {
                        e.insert(count);
                        stack.push(m);
                    }
                }
            }
            count += 1;
        }
        ClusterLabeling { clusters, count }
    }

    /// Every node is its own cluster.
    pub fn singletons(nodes: &[NodeId]) -> Self {
        ClusterLabeling {
            clusters: nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect(),
            count: nodes.len(),
        }
    }

    pub fn cluster_of(&self, node: NodeId) -> Option<usize> {
        self.clusters.get(&node).copied()
    }

    /// Number of distinct non-empty clusters.
    pub fn count_clusters(&self) -> usize {
        self.count
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, usize)> + '_ {
        self.clusters.iter().map(|(n, c)| (*n, *c))
    }

    /// Node ids grouped per cluster.
    pub fn members(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.count];
        for (n, c) in &self.clusters {
            out[*c].push(*n);
        }
        out
    }
}
