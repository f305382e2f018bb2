//! Client phase on a rayon pool. Each client owns its state and seed, so the
//! result is identical to the sequential round for any thread count.

use fcac_core::federation::{run_client, server_phase, RoundOutcome};
use fcac_core::{ClientResult, Clusterer, FederationConfig};
use rayon::prelude::*;
use rayon::ThreadPool;

/// Thread cap from `FCAC_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("FCAC_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Pool with `threads` workers, else `FCAC_THREADS`, else rayon's default.
pub fn thread_pool(threads: Option<usize>) -> anyhow::Result<ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads.or_else(threads_from_env) {
        builder = builder.num_threads(n);
    }
    Ok(builder.build()?)
}

/// Trains every client with data; returns the messages in client order and
/// the ids of clients skipped for having no data.
pub fn client_phase(
    pool: &ThreadPool,
    clients_data: &[Vec<Vec<f64>>],
    config: &FederationConfig,
    round: usize,
    states: &mut [Clusterer],
) -> fcac_core::Result<(Vec<ClientResult>, Vec<usize>)> {
    if clients_data.len() != config.num_clients() || states.len() != config.num_clients() {
        return Err(fcac_core::Error::LengthMismatch {
            left: config.num_clients(),
            right: clients_data.len().min(states.len()),
        });
    }
    let outcomes: Vec<Option<fcac_core::Result<ClientResult>>> = pool.install(|| {
        states
            .par_iter_mut()
            .zip(clients_data.par_iter())
            .enumerate()
            .map(|(c, (state, data))| {
                (!data.is_empty())
                    .then(|| run_client(c, data, config.epsilon(), state, config.client_seed(round, c)))
            })
            .collect()
    });
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for (c, o) in outcomes.into_iter().enumerate() {
        match o {
            Some(r) => results.push(r?),
            None => skipped.push(c),
        }
    }
    Ok((results, skipped))
}

/// Parallel counterpart of [`fcac_core::federation::fcac_round`].
pub fn par_fcac_round(
    pool: &ThreadPool,
    clients_data: &[Vec<Vec<f64>>],
    config: &FederationConfig,
    round: usize,
    states: &mut [Clusterer],
    server: &mut Clusterer,
) -> fcac_core::Result<RoundOutcome> {
    let (results, skipped) = client_phase(pool, clients_data, config, round, states)?;
    server_phase(results, skipped, server, config.sort_seed(round))
}
