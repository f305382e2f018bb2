use std::time::Instant;

use anyhow::ensure;
use fcac_core::data::ContinualSubsets;
use fcac_core::federation::derive_seed;
use fcac_core::FederationConfig;

use super::{dump_round, seconds_since, tags, RunOptions};
use crate::config::{DatasetSource, ExperimentConfig};
use crate::io::write_points_csv;
use crate::parallel::{client_phase, thread_pool};
use crate::report::{round_report, Report};

/// Two clients, three rounds, states carried across rounds. Server metrics
/// after round `r` cover every point presented in rounds `1..=r`, scored
/// against the Gaussian component labels. One report per (seed, budget).
pub fn run_continual(config: &ExperimentConfig, opts: &RunOptions) -> anyhow::Result<Vec<Report>> {
    let DatasetSource::ContinualGaussian { per_distribution } = config.dataset else {
        anyhow::bail!("continual-synthetic needs a continual-gaussian dataset");
    };
    let pool = thread_pool(opts.threads)?;
    let mut reports = Vec::new();
    for &seed in &config.seeds {
        let start = Instant::now();
        let subsets = ContinualSubsets::generate(per_distribution, seed)?;
        let data_time = seconds_since(start);
        for eps in &config.epsilons {
            let mut report = Report::new(config, seed);
            report.epsilon = Some(*eps);
            report.add_time("data", data_time);
            let dir = opts.dir(&[format!("seed_{seed}"), format!("eps_{}", eps.tag())])?;
            if let Some(dir) = &dir {
                write_points_csv(&dir.join("points_all.csv"), &subsets.data.points, &subsets.data.labels)?;
            }
            let fed = FederationConfig::new(2, eps.0, derive_seed(seed, tags::FEDERATION), 3)?;
            let (mut clients, mut server) = fed.initial_states();
            let mut seen: Vec<usize> = Vec::new();
            let mut presented = [0u64; 2];
            for (r, parts) in subsets.schedule().iter().enumerate() {
                let round = r + 1;
                let data: Vec<Vec<Vec<f64>>> = parts.iter().map(|ix| subsets.data.subset(ix).points).collect();

                let t = Instant::now();
                let (results, skipped) = client_phase(&pool, &data, &fed, round, &mut clients)?;
                report.add_time("clients", seconds_since(t));
                let t = Instant::now();
                let outcome = fcac_core::federation::server_phase(results, skipped, &mut server, fed.sort_seed(round))?;
                report.add_time("server", seconds_since(t));

                for (c, part) in parts.iter().enumerate() {
                    presented[c] += part.len() as u64;
                    ensure!(clients[c].inputs_seen() == presented[c], "client {c} state was reset");
                }
                seen.extend(parts.iter().flatten());
                let t = Instant::now();
                let eval = subsets.data.subset(&seen);
                let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
                report.rounds.push(round_report(round, &outcome, &clients, &sizes, &server, &eval.points, &eval.labels)?);
                report.add_time("metrics", seconds_since(t));
                dump_round(dir.as_deref(), opts, round, &clients, &server, &outcome.transfers)?;
            }
            report.add_time("total", seconds_since(start));
            if let Some(dir) = &dir {
                report.write(&dir.join("report.json"))?;
            }
            reports.push(report);
        }
    }
    Ok(reports)
}
