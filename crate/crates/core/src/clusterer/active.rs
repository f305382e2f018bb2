use alloc::collections::VecDeque;

use super::NodeId;

/// Recently activated nodes, oldest at the front.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ActiveBuffer {
    order: VecDeque<NodeId>,
}

impl ActiveBuffer {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.order.contains(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.order.iter().copied()
    }

    /// Moves `id` to the newest slot, evicting the oldest entries beyond
    /// `capacity`.
    pub fn touch(&mut self, id: NodeId, capacity: Option<usize>) {
        self.remove(id);
        self.order.push_back(id);
        if let Some(cap) = capacity {
            while self.order.len() > cap {
                self.order.pop_front();
            }
        }
    }

    pub fn remove(&mut self, id: NodeId) {
        if let Some(pos) = self.order.iter().position(|&x| x == id) {
            self.order.remove(pos);
        }
    }
}
