use std::time::Instant;

use fcac_core::data::{split_dirichlet, split_iid, LabeledDataset};
use fcac_core::federation::{derive_seed, server_phase};
use fcac_core::FederationConfig;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{dump_round, load_dataset, seconds_since, tags, RunOptions};
use crate::config::{EpsilonValue, ExperimentConfig, Scenario};
use crate::parallel::{client_phase, thread_pool};
use crate::report::{round_report, Report, Stat};

/// Final-round results aggregated over seeds for one budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub epsilon: EpsilonValue,
    pub scenario: String,
    pub seeds: usize,
    pub ari: Stat,
    pub ami: Stat,
    pub nmi: Stat,
    pub nodes: Stat,
    pub clusters: Stat,
    pub seconds: Stat,
}

#[derive(Debug, Clone)]
pub struct BenchmarkOutput {
    pub reports: Vec<Report>,
    pub summary: Vec<SummaryRow>,
}

/// Uniform subsample of `max` rows, or the whole set.
fn subsample(ds: LabeledDataset, max: Option<usize>, seed: u64) -> (LabeledDataset, Option<String>) {
    match max {
        Some(m) if m < ds.len() => {
            let mut idx: Vec<usize> = (0..ds.len()).collect();
            idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            idx.truncate(m);
            idx.sort_unstable();
            let note = format!("subsampled {m} of {} points", ds.len());
            (ds.subset(&idx), Some(note))
        }
        _ => (ds, None),
    }
}

/// Splits each client's rows into `rounds` consecutive chunks.
fn chunk(rows: &[usize], rounds: usize, round: usize) -> &[usize] {
    let size = rows.len().div_ceil(rounds);
    let start = (round * size).min(rows.len());
    &rows[start..(start + size).min(rows.len())]
}

/// Runs FCAC on a partitioned dataset for every (seed, budget). With more
/// than one round each client's rows are presented in consecutive chunks.
/// Metrics are computed on all (sub)sampled rows after each round.
pub fn run_benchmark(config: &ExperimentConfig, opts: &RunOptions) -> anyhow::Result<BenchmarkOutput> {
    let pool = thread_pool(opts.threads)?;
    let mut reports = Vec::new();
    for &seed in &config.seeds {
        let start = Instant::now();
        let (ds, note) = subsample(load_dataset(config, seed)?, config.max_points, derive_seed(seed, tags::SUBSAMPLE));
        let split_seed = derive_seed(seed, tags::SPLIT);
        let partition = match config.scenario {
            Scenario::Iid => split_iid(&ds.labels, config.clients, split_seed)?,
            Scenario::Dirichlet { alpha } => split_dirichlet(&ds.labels, config.clients, alpha, split_seed)?,
        };
        let data_time = seconds_since(start);
        for eps in &config.epsilons {
            let run_start = Instant::now();
            let mut report = Report::new(config, seed);
            report.epsilon = Some(*eps);
            report.notes.extend(note.clone());
            report.add_time("data", data_time);
            let dir = opts.dir(&[format!("seed_{seed}"), format!("eps_{}", eps.tag())])?;
            let fed = FederationConfig::new(config.clients, eps.0, derive_seed(seed, tags::FEDERATION), config.rounds)?;
            let (mut clients, mut server) = fed.initial_states();
            for r in 0..config.rounds {
                let round = r + 1;
                let parts: Vec<&[usize]> = partition.clients.iter().map(|rows| chunk(rows, config.rounds, r)).collect();
                let data: Vec<Vec<Vec<f64>>> = parts.iter().map(|ix| ds.subset(ix).points).collect();

                let t = Instant::now();
                let (results, skipped) = client_phase(&pool, &data, &fed, round, &mut clients)?;
                report.add_time("clients", seconds_since(t));
                let t = Instant::now();
                let outcome = server_phase(results, skipped, &mut server, fed.sort_seed(round))?;
                report.add_time("server", seconds_since(t));
                let t = Instant::now();
                let sizes: Vec<usize> = parts.iter().map(|p| p.len()).collect();
                report.rounds.push(round_report(round, &outcome, &clients, &sizes, &server, &ds.points, &ds.labels)?);
                report.add_time("metrics", seconds_since(t));
                dump_round(dir.as_deref(), opts, round, &clients, &server, &outcome.transfers)?;
            }
            report.add_time("total", seconds_since(run_start) + data_time);
            if let Some(dir) = &dir {
                report.write(&dir.join("report.json"))?;
            }
            reports.push(report);
        }
    }
    let summary: Vec<SummaryRow> = config
        .epsilons
        .iter()
        .map(|eps| {
            let runs: Vec<&Report> = reports.iter().filter(|r| r.epsilon == Some(*eps)).collect();
            let last = |f: fn(&crate::report::ServerReport) -> f64| {
                Stat::of(&runs.iter().map(|r| f(&r.rounds.last().expect("at least one round").server)).collect::<Vec<_>>())
            };
            SummaryRow {
                epsilon: *eps,
                scenario: config.scenario.to_string(),
                seeds: runs.len(),
                ari: last(|s| s.ari),
                ami: last(|s| s.ami),
                nmi: last(|s| s.nmi),
                nodes: last(|s| s.nodes as f64),
                clusters: last(|s| s.clusters as f64),
                seconds: Stat::of(&runs.iter().map(|r| r.timing["total"]).collect::<Vec<_>>()),
            }
        })
        .collect();
    if let Some(dir) = opts.dir(&[])? {
        std::fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    }
    Ok(BenchmarkOutput { reports, summary })
}
