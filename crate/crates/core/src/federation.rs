//! One-shot federated clustering: every client privatizes its local data,
//! trains its own CA+ state, and ships only node weights with winning counts.
//! The server orders the union of those nodes by winning count and trains a
//! CAE_FC state on them.
//!
//! The server never sees a [`ClientResult`] directly either: its only input
//! type is [`SortedStream`], which can only be produced by [`sort_nodes`].

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clusterer::{Clusterer, ClusterLabeling};
use crate::error::{check_dim, Error, Result};
use crate::privacy::{privatize_dataset, Epsilon, PrivacyParams};
use crate::stats;

/// The only message crossing the client → server boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct ClientResult {
    client_id: usize,
    nodes: Vec<Vec<f64>>,
    winning_counts: Vec<u64>,
}

impl ClientResult {
    /// Snapshot of a trained client state. Bandwidths and edges stay behind.
    pub fn from_clusterer(client_id: usize, state: &Clusterer) -> Self {
        let (nodes, winning_counts) = state.nodes().map(|(_, n)| (n.weight.clone(), n.wins)).unzip();
        ClientResult {
            client_id,
            nodes,
            winning_counts,
        }
    }

    /// Rebuilds a message from its wire fields.
    pub fn from_parts(client_id: usize, nodes: Vec<Vec<f64>>, winning_counts: Vec<u64>) -> Result<Self> {
        if nodes.len() != winning_counts.len() {
            return Err(Error::LengthMismatch {
                left: nodes.len(),
                right: winning_counts.len(),
            });
        }
        if winning_counts.contains(&0) {
            return Err(Error::invalid("winning_counts", "counts must be positive"));
        }
        if let Some(first) = nodes.first() {
            if first.is_empty() {
                return Err(Error::Empty("node weight"));
            }
            for n in &nodes {
                check_dim(first.len(), n.len())?;
                if n.iter().any(|v| !v.is_finite()) {
                    return Err(Error::invalid("nodes", "weights must be finite"));
                }
            }
        }
        Ok(ClientResult {
            client_id,
            nodes,
            winning_counts,
        })
    }

    pub fn client_id(&self) -> usize {
        self.client_id
    }

    pub fn nodes(&self) -> &[Vec<f64>] {
        &self.nodes
    }

    pub fn winning_counts(&self) -> &[u64] {
        &self.winning_counts
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.nodes.first().map(Vec::len)
    }

    /// Count of scalars carried: one weight vector plus one count per node.
    pub fn scalar_count(&self) -> usize {
        self.nodes.iter().map(|n| n.len() + 1).sum()
    }
}

/// Server input: high-winning-count nodes first, then the rest, each group
/// shuffled.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedStream {
    vectors: Vec<Vec<f64>>,
    high: usize,
}

impl SortedStream {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Length of the high-count prefix.
    pub fn high_len(&self) -> usize {
        self.high
    }
}

/// Orchestration settings. Holds no clusterer parameter: the clusterers
/// estimate everything they need from the data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FederationConfig {
    num_clients: usize,
    epsilon: Epsilon,
    rng_seed: u64,
    rounds: usize,
}

impl FederationConfig {
    pub fn new(num_clients: usize, epsilon: Epsilon, rng_seed: u64, rounds: usize) -> Result<Self> {
        if num_clients == 0 {
            return Err(Error::invalid("num_clients", "need at least one client"));
        }
        if rounds == 0 {
            return Err(Error::invalid("rounds", "need at least one round"));
        }
        Ok(FederationConfig {
            num_clients,
            epsilon,
            rng_seed,
            rounds,
        })
    }

    pub fn num_clients(&self) -> usize {
        self.num_clients
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    pub fn rng_seed(&self) -> u64 {
        self.rng_seed
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Seed shared by every random choice of round `round` (1-based).
    pub fn round_seed(&self, round: usize) -> u64 {
        derive_seed(self.rng_seed, round as u64)
    }

    /// Privacy-noise seed of one client; independent of scheduling.
    pub fn client_seed(&self, round: usize, client_id: usize) -> u64 {
        self.round_seed(round) ^ client_id as u64
    }

    pub fn sort_seed(&self, round: usize) -> u64 {
        splitmix64(self.round_seed(round).wrapping_add(0x9e37_79b9_7f4a_7c15))
    }

    /// Fresh client and server states for a whole run.
    pub fn initial_states(&self) -> (Vec<Clusterer>, Clusterer) {
        let clients = (0..self.num_clients).map(|_| Clusterer::ca_plus()).collect();
        (clients, Clusterer::cae_fc())
    }
}

/// Independent child seed for stream `tag` of `base`.
pub fn derive_seed(base: u64, tag: u64) -> u64 {
    splitmix64(base ^ splitmix64(tag))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Privatizes `local_data` with its own per-dimension sensitivity, streams
/// it once through the persistent CA+ `state`, and snapshots the result.
pub fn run_client<V: AsRef<[f64]>>(
    client_id: usize,
    local_data: &[V],
    epsilon: Epsilon,
    state: &mut Clusterer,
    seed: u64,
) -> Result<ClientResult> {
    if local_data.is_empty() {
        return Err(Error::Empty("client data"));
    }
    let params = PrivacyParams::for_data(epsilon, local_data)?;
    let noisy = privatize_dataset(local_data, &params, seed)?;
    state.train(&noisy)?;
    Ok(ClientResult::from_clusterer(client_id, state))
}

/// Splits each client's nodes at the 75th percentile of its own winning
/// counts (ties high), then emits all high nodes shuffled followed by all
/// low nodes shuffled.
pub fn sort_nodes(results: &[ClientResult], seed: u64) -> Result<SortedStream> {
    let mut high = Vec::new();
    let mut low = Vec::new();
    let mut dim = None;
    for r in results.iter().filter(|r| !r.is_empty()) {
        if let (Some(d), Some(rd)) = (dim, r.dim()) {
            check_dim(d, rd)?;
        }
        dim = dim.or(r.dim());
        let counts: Vec<f64> = r.winning_counts.iter().map(|&m| m as f64).collect();
        let cut = stats::percentile(&counts, 75.0)?;
        for (w, m) in r.nodes.iter().zip(&counts) {
            if *m >= cut {
                high.push(w.clone());
            } else {
                low.push(w.clone());
            }
        }
    }
    if high.is_empty() {
        return Err(Error::Empty("client results"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    high.shuffle(&mut rng);
    low.shuffle(&mut rng);
    let n_high = high.len();
    high.append(&mut low);
    Ok(SortedStream {
        vectors: high,
        high: n_high,
    })
}

/// Feeds every stream element to the persistent CAE_FC `state` once, in order.
pub fn run_server(state: &mut Clusterer, stream: &SortedStream) -> Result<()> {
    let first = stream.vectors.first().ok_or(Error::Empty("node stream"))?;
    if let Some(d) = state.dim() {
        check_dim(d, first.len())?;
    }
    state.train(&stream.vectors)
}

/// Record of what crossed the client → server boundary in one round.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransferAudit {
    /// Client → server messages.
    pub messages: usize,
    /// Server → client messages; the protocol has none.
    pub downlink: usize,
    /// Scalars carried across all messages.
    pub scalars: usize,
    /// Clients with no local data this round (no message sent).
    pub skipped: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct RoundOutcome {
    pub transfers: Vec<ClientResult>,
    pub stream_len: usize,
    pub labeling: ClusterLabeling,
    pub audit: TransferAudit,
}

/// Server half of a round, after the barrier on all clients.
pub fn server_phase(
    transfers: Vec<ClientResult>,
    skipped: Vec<usize>,
    server: &mut Clusterer,
    sort_seed: u64,
) -> Result<RoundOutcome> {
    let audit = TransferAudit {
        messages: transfers.len(),
        downlink: 0,
        scalars: transfers.iter().map(ClientResult::scalar_count).sum(),
        skipped,
    };
    let stream = sort_nodes(&transfers, sort_seed)?;
    run_server(server, &stream)?;
    Ok(RoundOutcome {
        stream_len: stream.len(),
        labeling: server.extract_clusters(),
        transfers,
        audit,
    })
}

/// One full round, clients run sequentially. `round` is 1-based and only
/// feeds seed derivation.
pub fn fcac_round<V: AsRef<[f64]>>(
    clients_data: &[Vec<V>],
    config: &FederationConfig,
    round: usize,
    client_states: &mut [Clusterer],
    server: &mut Clusterer,
) -> Result<RoundOutcome> {
    if clients_data.len() != config.num_clients || client_states.len() != config.num_clients {
        return Err(Error::LengthMismatch {
            left: config.num_clients,
            right: clients_data.len().min(client_states.len()),
        });
    }
    let mut transfers = Vec::with_capacity(clients_data.len());
    let mut skipped = Vec::new();
    for (c, (data, state)) in clients_data.iter().zip(client_states.iter_mut()).enumerate() {
        if data.is_empty() {
            skipped.push(c);
            continue;
        }
        transfers.push(run_client(c, data, config.epsilon, state, config.client_seed(round, c))?);
    }
    server_phase(transfers, skipped, server, config.sort_seed(round))
}
