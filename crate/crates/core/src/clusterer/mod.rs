//! ART-based online clustering with CIM similarity, a self-estimated
//! vigilance threshold and (optionally) an aged edge topology.
//!
//! One state machine covers three variants:
//!
//! | variant | similarity matrix | topology | neighbour divisor |
//! |---------|-------------------|----------|-------------------|
//! | CAE     | `exp(1 - CIM)`    | yes      | 10 (all neighbours of s1) |
//! | CAE_FC  | `exp(correntropy)`| yes      | 10 (all neighbours of s1) |
//! | CA+     | `exp(correntropy)`| no       | 100 (2nd winner only) |
//!
//! Every input is seen exactly once. Until the active-set size λ is known
//! (or after pruning drops the node count below λ/2) inputs become nodes
//! directly and the determinant of the active nodes' similarity matrix is
//! watched; once it collapses below [`DIVERSITY_THRESHOLD`], λ is fixed to
//! twice the active-set size and the vigilance threshold is derived from the
//! active nodes. After that, each input is classified against the two
//! nearest nodes and either creates a node (Case I), updates the winner
//! (Case II) or updates the winner plus its neighbourhood (Case III).

mod active;
mod edges;
mod labeling;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

pub use active::ActiveBuffer;
pub use edges::EdgeSet;
pub use labeling::ClusterLabeling;

use crate::error::{check_dim, Error, Result};
use crate::kernel::{self, Bandwidth};
use crate::matrix::{self, SimilarityKind};
use crate::stats;

/// Diversity below which the active node set counts as redundant.
pub const DIVERSITY_THRESHOLD: f64 = 1.0e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u64);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Variant {
    pub matrix_kind: SimilarityKind,
    pub topology: bool,
    /// Divisor applied to the neighbour (or 2nd-winner) learning rate.
    pub neighbor_divisor: u32,
}

impl Variant {
    pub const fn cae() -> Self {
        Variant {
            matrix_kind: SimilarityKind::CimExp,
            topology: true,
            neighbor_divisor: 10,
        }
    }

    pub const fn cae_fc() -> Self {
        Variant {
            matrix_kind: SimilarityKind::CorrentropyExp,
            topology: true,
            neighbor_divisor: 10,
        }
    }

    pub const fn ca_plus() -> Self {
        Variant {
            matrix_kind: SimilarityKind::CorrentropyExp,
            topology: false,
            neighbor_divisor: 100,
        }
    }

    pub fn name(&self) -> &'static str {
        match (self.matrix_kind, self.topology) {
            (SimilarityKind::CimExp, _) => "CAE",
            (SimilarityKind::CorrentropyExp, true) => "CAE_FC",
            (SimilarityKind::CorrentropyExp, false) => "CA+",
        }
    }
}

/// A learned prototype.
#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub weight: Vec<f64>,
    pub sigma: Bandwidth,
    /// Winning count `M`, at least 1.
    pub wins: u64,
}

/// Size of the active node set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lambda {
    Undefined,
    /// Diversity has not collapsed yet; direct insertion continues.
    Unbounded,
    Fixed(usize),
}

impl Lambda {
    pub fn fixed(self) -> Option<usize> {
        match self {
            Lambda::Fixed(l) => Some(l),
            _ => None,
        }
    }
}

/// Running summary of the ages of every deleted edge.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DeletedEdgeStats {
    pub count: u64,
    pub mean: f64,
}

impl DeletedEdgeStats {
    pub fn record(&mut self, age: u32) {
        self.count += 1;
        self.mean += (f64::from(age) - self.mean) / self.count as f64;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VigilanceCase {
    /// `threshold < V_s1`: create a new node.
    CaseI,
    /// `V_s1 <= threshold < V_s2`: update the 1st winner.
    CaseII,
    /// `V_s2 <= threshold`: update the 1st winner and its neighbourhood.
    CaseIII,
}

/// Three-way vigilance test. Requires `v_s1 <= v_s2`.
pub fn classify_vigilance(v_s1: f64, v_s2: f64, threshold: f64) -> Result<VigilanceCase> {
    if v_s1 > v_s2 {
        return Err(Error::invalid("v_s1", "1st winner similarity exceeds 2nd"));
    }
    Ok(if threshold < v_s1 {
        VigilanceCase::CaseI
    } else if threshold < v_s2 {
        VigilanceCase::CaseII
    } else {
        VigilanceCase::CaseIII
    })
}

/// Mean over nodes of the CIM to their nearest other node, with the CIM
/// bandwidth set to the mean of `bandwidths`.
pub fn compute_threshold<V: AsRef<[f64]>>(nodes: &[V], bandwidths: &[Bandwidth]) -> Result<f64> {
    if nodes.len() < 2 {
        return Err(Error::TooFew {
            what: "active nodes",
            needed: 2,
            found: nodes.len(),
        });
    }
    let sigma = Bandwidth::mean(bandwidths.iter().copied()).ok_or(Error::Empty("bandwidths"))?;
    let d = nodes[0].as_ref().len();
    for n in nodes {
        check_dim(d, n.as_ref().len())?;
    }
    let total: f64 = (0..nodes.len())
        .map(|i| {
            (0..nodes.len())
                .filter(|&j| j != i)
                .map(|j| kernel::cim_unchecked(nodes[i].as_ref(), nodes[j].as_ref(), sigma.get()))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / nodes.len() as f64)
}

/// The two nearest nodes to an input and their CIM values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Winners {
    pub s1: NodeId,
    pub s2: NodeId,
    pub v_s1: f64,
    pub v_s2: f64,
}

/// What a single `train_one` call did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// Direct insertion; `lambda_fixed` is set when diversity collapsed.
    Init { node: NodeId, lambda_fixed: bool },
    Created { node: NodeId },
    Updated { s1: NodeId },
    UpdatedWithNeighbors { s1: NodeId, s2: NodeId },
}

/// Full mutable state of one clusterer.
#[derive(Debug, Clone, PartialEq)]
pub struct Clusterer {
    variant: Variant,
    nodes: BTreeMap<NodeId, Node>,
    edges: EdgeSet,
    active: ActiveBuffer,
    lambda: Lambda,
    v_threshold: Option<f64>,
    deleted_edges: DeletedEdgeStats,
    inputs_seen: u64,
    next_id: u64,
    dim: Option<usize>,
}

impl Clusterer {
    pub fn new(variant: Variant) -> Self {
        Clusterer {
            variant,
            nodes: BTreeMap::new(),
            edges: EdgeSet::new(),
            active: ActiveBuffer::default(),
            lambda: Lambda::Undefined,
            v_threshold: None,
            deleted_edges: DeletedEdgeStats::default(),
            inputs_seen: 0,
            next_id: 0,
            dim: None,
        }
    }

    pub fn cae() -> Self {
        Self::new(Variant::cae())
    }

    pub fn cae_fc() -> Self {
        Self::new(Variant::cae_fc())
    }

    pub fn ca_plus() -> Self {
        Self::new(Variant::ca_plus())
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(&id)
    }

    /// Nodes in ascending id order.
    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &Node)> + '_ {
        self.nodes.iter().map(|(k, v)| (*k, v))
    }

    pub fn node_ids(&self) -> Vec<NodeId> {
        self.nodes.keys().copied().collect()
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn active(&self) -> &ActiveBuffer {
        &self.active
    }

    pub fn lambda(&self) -> Lambda {
        self.lambda
    }

    pub fn v_threshold(&self) -> Option<f64> {
        self.v_threshold
    }

    pub fn deleted_edges(&self) -> DeletedEdgeStats {
        self.deleted_edges
    }

    pub fn inputs_seen(&self) -> u64 {
        self.inputs_seen
    }

    /// Whether the next input takes the direct-insertion branch.
    pub fn in_init_phase(&self) -> bool {
        match (self.lambda, self.v_threshold) {
            (Lambda::Fixed(l), Some(_)) => self.nodes.len() < l / 2,
            _ => true,
        }
    }

    /// Presents one data point.
    pub fn train_one(&mut self, x: &[f64]) -> Result<Step> {
        match self.dim {
            Some(d) => check_dim(d, x.len())?,
            None if x.is_empty() => return Err(Error::Empty("input vector")),
            None => {}
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("x", "input must be finite"));
        }
        self.dim = Some(x.len());
        self.inputs_seen += 1;

        let step = if self.in_init_phase() {
            self.insert_during_init(x)?
        } else {
            let w = self.select_winners(x)?;
            let threshold = self.v_threshold.unwrap_or(0.0);
            let step = match classify_vigilance(w.v_s1, w.v_s2, threshold)? {
                VigilanceCase::CaseI => Step::Created {
                    node: self.create_node(x),
                },
                VigilanceCase::CaseII => {
                    self.apply_case_two(x, w.s1)?;
                    Step::Updated { s1: w.s1 }
                }
                VigilanceCase::CaseIII => {
                    self.apply_case_three(x, w.s1, w.s2)?;
                    Step::UpdatedWithNeighbors { s1: w.s1, s2: w.s2 }
                }
            };
            // Edge ages only grow in Cases II and III, so only then can the
            // deletion threshold be exceeded.
            if self.variant.topology && !matches!(step, Step::Created { .. }) {
                if let Ok(a_max) = self.edge_deletion_threshold(w.s1) {
                    self.prune_edges(w.s1, a_max);
                }
            }
            step
        };

        if self.variant.topology {
            if let Lambda::Fixed(l) = self.lambda {
                if self.inputs_seen.is_multiple_of(l as u64) {
                    self.prune_isolated_nodes();
                }
            }
        }
        Ok(step)
    }

    /// Presents every row once, in order.
    pub fn train<V: AsRef<[f64]>>(&mut self, data: &[V]) -> Result<()> {
        data.iter().try_for_each(|x| self.train_one(x.as_ref()).map(drop))
    }

    fn alloc_id(&mut self) -> NodeId {
        let id = NodeId(self.next_id);
        self.next_id += 1;
        id
    }

    fn insert_during_init(&mut self, x: &[f64]) -> Result<Step> {
        let id = self.alloc_id();
        self.nodes.insert(
            id,
            Node {
                weight: x.to_vec(),
                sigma: Bandwidth::floored(0.0),
                wins: 1,
            },
        );
        self.active.touch(id, None);

        let ids: Vec<NodeId> = self.active.iter().collect();
        let weights: Vec<&[f64]> = ids.iter().map(|i| self.nodes[i].weight.as_slice()).collect();
        let sigma = kernel::silverman_bandwidth(&weights)?;
        let r = matrix::similarity_matrix(&weights, sigma, self.variant.matrix_kind)?;
        let diversity = matrix::diversity(&r);
        for i in &ids {
            if let Some(n) = self.nodes.get_mut(i) {
                n.sigma = sigma;
            }
        }

        let lambda_fixed = diversity < DIVERSITY_THRESHOLD && ids.len() >= 2;
        if lambda_fixed {
            self.lambda = Lambda::Fixed(2 * ids.len());
            self.v_threshold = Some(self.active_threshold()?);
        } else {
            self.lambda = Lambda::Unbounded;
            self.v_threshold = None;
        }
        Ok(Step::Init {
            node: id,
            lambda_fixed,
        })
    }

    fn active_threshold(&self) -> Result<f64> {
        let nodes: Vec<&Node> = self.active.iter().map(|i| &self.nodes[&i]).collect();
        let weights: Vec<&[f64]> = nodes.iter().map(|n| n.weight.as_slice()).collect();
        let sigmas: Vec<Bandwidth> = nodes.iter().map(|n| n.sigma).collect();
        compute_threshold(&weights, &sigmas)
    }

    /// Mean bandwidth over all nodes.
    fn shared_sigma(&self) -> Bandwidth {
        Bandwidth::mean(self.nodes.values().map(|n| n.sigma)).unwrap_or(Bandwidth::floored(0.0))
    }

    /// Nearest and second-nearest nodes under CIM with the mean bandwidth.
    /// Ties go to the lower node id.
    pub fn select_winners(&self, x: &[f64]) -> Result<Winners> {
        if self.nodes.len() < 2 {
            return Err(Error::TooFew {
                what: "nodes",
                needed: 2,
                found: self.nodes.len(),
            });
        }
        if let Some(d) = self.dim {
            check_dim(d, x.len())?;
        }
        let sigma = self.shared_sigma().get();
        let mut best = (NodeId(0), f64::INFINITY);
        let mut second = (NodeId(0), f64::INFINITY);
        for (id, n) in &self.nodes {
            let v = kernel::cim_unchecked(x, &n.weight, sigma);
            if v < best.1 {
                second = best;
                best = (*id, v);
            } else if v < second.1 {
                second = (*id, v);
            }
        }
        Ok(Winners {
            s1: best.0,
            s2: second.0,
            v_s1: best.1,
            v_s2: second.1,
        })
    }

    /// Case I: `x` becomes a node whose bandwidth is estimated from the
    /// active node set.
    fn create_node(&mut self, x: &[f64]) -> NodeId {
        let active: Vec<&[f64]> = self
            .active
            .iter()
            .map(|i| self.nodes[&i].weight.as_slice())
            .collect();
        let sigma = if active.is_empty() {
            self.shared_sigma()
        } else {
            kernel::silverman_bandwidth(&active).unwrap_or_else(|_| self.shared_sigma())
        };
        let id = self.alloc_id();
        self.nodes.insert(
            id,
            Node {
                weight: x.to_vec(),
                sigma,
                wins: 1,
            },
        );
        self.active.touch(id, self.lambda.fixed());
        id
    }

    /// Case II: bump the winning count of `s1`, move it by `1/M` towards `x`,
    /// mark it active and age its edges.
    pub fn apply_case_two(&mut self, x: &[f64], s1: NodeId) -> Result<()> {
        let node = self.nodes.get_mut(&s1).ok_or(Error::UnknownNode(s1.0))?;
        check_dim(node.weight.len(), x.len())?;
        node.wins += 1;
        let rate = 1.0 / node.wins as f64;
        move_towards(&mut node.weight, x, rate);
        self.active.touch(s1, self.lambda.fixed());
        if self.variant.topology {
            self.edges.increment_incident(s1);
        }
        Ok(())
    }

    /// Case III: Case II, then either refresh the `(s1, s2)` edge and pull
    /// every neighbour of `s1`, or (without topology) pull only `s2`.
    pub fn apply_case_three(&mut self, x: &[f64], s1: NodeId, s2: NodeId) -> Result<()> {
        if s1 == s2 {
            return Err(Error::invalid("s2", "winners must differ"));
        }
        if !self.nodes.contains_key(&s2) {
            return Err(Error::UnknownNode(s2.0));
        }
        self.apply_case_two(x, s1)?;
        let divisor = f64::from(self.variant.neighbor_divisor);
        if self.variant.topology {
            self.edges.connect(s1, s2, 1);
            let neighbors: Vec<NodeId> = self.edges.neighbors(s1).map(|(k, _)| k).collect();
            for k in neighbors {
                if let Some(n) = self.nodes.get_mut(&k) {
                    let rate = 1.0 / (divisor * n.wins as f64);
                    move_towards(&mut n.weight, x, rate);
                }
            }
        } else if let Some(n) = self.nodes.get_mut(&s2) {
            let rate = 1.0 / (divisor * n.wins as f64);
            move_towards(&mut n.weight, x, rate);
        }
        Ok(())
    }

    /// Adaptive edge-age limit for the edges of `s1`: the percentile-plus-IQR
    /// outlier bound on the current ages, blended with the mean age of all
    /// deleted edges in proportion to how many there were.
    pub fn edge_deletion_threshold(&self, s1: NodeId) -> Result<f64> {
        let ages: Vec<f64> = self.edges.neighbors(s1).map(|(_, a)| f64::from(a)).collect();
        edge_age_limit(&ages, self.deleted_edges)
    }

    /// Deletes every edge of `s1` older than `a_max`.
    pub fn prune_edges(&mut self, s1: NodeId, a_max: f64) {
        let stale: Vec<(NodeId, u32)> = self
            .edges
            .neighbors(s1)
            .filter(|(_, age)| f64::from(*age) > a_max)
            .collect();
        for (k, age) in stale {
            self.edges.remove(s1, k);
            self.deleted_edges.record(age);
        }
    }

    /// Drops nodes without edges. Falls back to direct insertion when fewer
    /// than λ/2 nodes survive.
    pub fn prune_isolated_nodes(&mut self) {
        let isolated: Vec<NodeId> = self
            .nodes
            .keys()
            .copied()
            .filter(|id| self.edges.degree(*id) == 0)
            .collect();
        for id in isolated {
            self.nodes.remove(&id);
            self.active.remove(id);
        }
        if let Lambda::Fixed(l) = self.lambda {
            if self.nodes.len() < l / 2 {
                self.lambda = Lambda::Undefined;
                self.v_threshold = None;
            }
        }
    }

    /// Connected components for topological variants; one cluster per node
    /// otherwise.
    pub fn extract_clusters(&self) -> ClusterLabeling {
        let ids = self.node_ids();
        if self.variant.topology {
            ClusterLabeling::from_components(&ids, &self.edges)
        } else {
            ClusterLabeling::singletons(&ids)
        }
    }

    /// Node with the smallest CIM to `x` under the mean bandwidth. CIM
    /// saturates at 1 far from every node, so ties fall back to squared
    /// Euclidean distance and then to the lower id.
    pub fn nearest_node(&self, x: &[f64]) -> Result<NodeId> {
        if self.nodes.is_empty() {
            return Err(Error::Empty("clusterer"));
        }
        if let Some(d) = self.dim {
            check_dim(d, x.len())?;
        }
        let sigma = self.shared_sigma().get();
        let mut best = (NodeId(0), f64::INFINITY, f64::INFINITY);
        for (id, n) in &self.nodes {
            let v = kernel::cim_unchecked(x, &n.weight, sigma);
            if v > best.1 {
                continue;
            }
            let d2: f64 = x.iter().zip(&n.weight).map(|(a, b)| (a - b) * (a - b)).sum();
            if v < best.1 || d2 < best.2 {
                best = (*id, v, d2);
            }
        }
        Ok(best.0)
    }

    /// Cluster id of the nearest node.
    pub fn predict(&self, labeling: &ClusterLabeling, x: &[f64]) -> Result<usize> {
        let node = self.nearest_node(x)?;
        labeling.cluster_of(node).ok_or(Error::UnknownNode(node.0))
    }

    /// Cluster ids for every row, using the current topology.
    pub fn predict_all<V: AsRef<[f64]>>(&self, points: &[V]) -> Result<Vec<usize>> {
        let labeling = self.extract_clusters();
        points
            .iter()
            .map(|p| self.predict(&labeling, p.as_ref()))
            .collect()
    }

    /// Structural invariants; returns a description of the first violation.
    pub fn check_invariants(&self) -> core::result::Result<(), &'static str> {
        for (a, b, age) in self.edges.iter() {
            if a == b {
                return Err("self edge");
            }
            if !self.nodes.contains_key(&a) || !self.nodes.contains_key(&b) {
                return Err("edge endpoint missing");
            }
            if age < 1 {
                return Err("edge age below 1");
            }
        }
        if !self.variant.topology && !self.edges.is_empty() {
            return Err("edges without topology");
        }
        for id in self.active.iter() {
            if !self.nodes.contains_key(&id) {
                return Err("active node missing");
            }
        }
        if let Lambda::Fixed(l) = self.lambda {
            if self.active.len() > l {
                return Err("active buffer exceeds lambda");
            }
        }
        if self.v_threshold.is_some() != self.lambda.fixed().is_some() {
            return Err("threshold defined without fixed lambda");
        }
        for n in self.nodes.values() {
            if n.wins < 1 {
                return Err("winning count below 1");
            }
            if n.sigma.get() < kernel::SIGMA_FLOOR {
                return Err("bandwidth below floor");
            }
        }
        Ok(())
    }
}

fn move_towards(weight: &mut [f64], x: &[f64], rate: f64) {
    for (w, v) in weight.iter_mut().zip(x) {
        *w += rate * (v - *w);
    }
}

/// `a_max = mean_del · w + (p75(α) + IQR(α)) · (1 - w)` with
/// `w = |del| / (|del| + |α|)`.
pub fn edge_age_limit(ages: &[f64], deleted: DeletedEdgeStats) -> Result<f64> {
    if ages.is_empty() {
        return Err(Error::Empty("incident edge ages"));
    }
    let a_thr = stats::percentile(ages, 75.0)? + stats::iqr(ages)?;
    let del = deleted.count as f64;
    let w = del / (del + ages.len() as f64);
    Ok(deleted.mean * w + a_thr * (1.0 - w))
}
