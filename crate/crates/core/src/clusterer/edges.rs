use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::NodeId;

/// Undirected edges with integer ages, stored as a symmetric adjacency map.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeSet {
    adj: BTreeMap<NodeId, BTreeMap<NodeId, u32>>,
    count: usize,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of undirected edges.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn age(&self, a: NodeId, b: NodeId) -> Option<u32> {
        self.adj.get(&a).and_then(|n| n.get(&b)).copied()
    }

    /// Creates the edge or resets its age. Self-edges are ignored.
    pub fn connect(&mut self, a: NodeId, b: NodeId, age: u32) {
        if a == b {
            return;
        }
        let fresh = self.adj.entry(a).or_default().insert(b, age).is_none();
        self.adj.entry(b).or_default().insert(a, age);
        if fresh {
            self.count += 1;
        }
    }

    pub fn remove(&mut self, a: NodeId, b: NodeId) -> Option<u32> {
        let age = self.adj.get_mut(&a)?.remove(&b)?;
        if let Some(n) = self.adj.get_mut(&b) {
            n.remove(&a);
        }
        self.drop_if_empty(a);
        self.drop_if_empty(b);
        self.count -= 1;
        Some(age)
    }

    fn drop_if_empty(&mut self, id: NodeId) {
        if self.adj.get(&id).is_some_and(BTreeMap::is_empty) {
            self.adj.remove(&id);
        }
    }

    pub fn increment_incident(&mut self, a: NodeId) {
        let Some(neigh) = self.adj.get_mut(&a) else {
            return;
        };
        let ids: Vec<NodeId> = neigh.keys().copied().collect();
        for age in neigh.values_mut() {
            *age += 1;
        }
        for b in ids {
            if let Some(age) = self.adj.get_mut(&b).and_then(|n| n.get_mut(&a)) {
                *age += 1;
            }
        }
    }

    /// Neighbours of `a` with edge ages, in ascending id order.
    pub fn neighbors(&self, a: NodeId) -> impl Iterator<Item = (NodeId, u32)> + '_ {
        self.adj
            .get(&a)
            .into_iter()
            .flat_map(|n| n.iter().map(|(k, v)| (*k, *v)))
    }

    pub fn degree(&self, a: NodeId) -> usize {
        self.adj.get(&a).map_or(0, BTreeMap::len)
    }

    /// Removes every edge touching `a`.
    pub fn remove_node(&mut self, a: NodeId) {
        if let Some(neigh) = self.adj.remove(&a) {
            for b in neigh.keys() {
                if let Some(n) = self.adj.get_mut(b) {
                    n.remove(&a);
                }
                self.drop_if_empty(*b);
                self.count -= 1;
            }
        }
    }

    /// Each undirected edge once, as `(low id, high id, age)`.
    pub fn iter(&self) -> impl Iterator<Item = (NodeId, NodeId, u32)> + '_ {
        self.adj.iter().flat_map(|(a, n)| {
            n.iter()
                .filter(move |(b, _)| a < *b)
                .map(move |(b, age)| (*a, *b, *age))
        })
    }
}
