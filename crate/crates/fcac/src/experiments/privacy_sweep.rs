use std::time::Instant;

use fcac_core::eval::{marginal_wasserstein1, paired_distance, wasserstein1};
use fcac_core::federation::derive_seed;
use fcac_core::privacy::{privatize_dataset, PrivacyParams};
use serde::{Deserialize, Serialize};

use super::{load_dataset, seconds_since, tags, RunOptions};
use crate::config::{EpsilonValue, ExperimentConfig};
use crate::io::write_points_csv;
use crate::report::{PrivacyPoint, Report, Stat};

/// Mean and spread of each distance over seeds, per budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub epsilon: EpsilonValue,
    pub seeds: usize,
    pub dws: Stat,
    pub dws_exact: Stat,
    pub paired: Stat,
}

/// Privatizes the generated dataset once per budget and measures how far
/// the noisy copy moved. The noise draws are shared across budgets of one
/// seed, so the budgets differ only in scale.
pub fn run_privacy_sweep(config: &ExperimentConfig, opts: &RunOptions) -> anyhow::Result<(Vec<Report>, Vec<SweepSummary>)> {
    let mut reports = Vec::new();
    for &seed in &config.seeds {
        let start = Instant::now();
        let mut report = Report::new(config, seed);
        let ds = load_dataset(config, seed)?;
        report.add_time("data", seconds_since(start));
        let dir = opts.dir(&[format!("seed_{seed}")])?;
        if let Some(dir) = &dir {
            write_points_csv(&dir.join("points_original.csv"), &ds.points, &ds.labels)?;
        }
        for eps in &config.epsilons {
            let t = Instant::now();
            let params = PrivacyParams::for_data(eps.0, &ds.points)?;
            let noisy = privatize_dataset(&ds.points, &params, derive_seed(seed, tags::NOISE))?;
            report.add_time("privatize", seconds_since(t));
            let t = Instant::now();
            report.privacy.push(PrivacyPoint {
                epsilon: *eps,
                dws: marginal_wasserstein1(&ds.points, &noisy)?,
                dws_exact: wasserstein1(&ds.points, &noisy)?,
                paired: paired_distance(&ds.points, &noisy)?,
            });
            report.add_time("distance", seconds_since(t));
            if let Some(dir) = &dir {
                write_points_csv(&dir.join(format!("points_eps_{}.csv", eps.tag())), &noisy, &ds.labels)?;
            }
        }
        report.add_time("total", seconds_since(start));
        if let Some(dir) = &dir {
            report.write(&dir.join("report.json"))?;
        }
        reports.push(report);
    }
    let summary = config
        .epsilons
        .iter()
        .enumerate()
        .map(|(i, eps)| {
            let col = |f: fn(&PrivacyPoint) -> f64| Stat::of(&reports.iter().map(|r| f(&r.privacy[i])).collect::<Vec<_>>());
            SweepSummary {
                epsilon: *eps,
                seeds: reports.len(),
                dws: col(|p| p.dws),
                dws_exact: col(|p| p.dws_exact),
                paired: col(|p| p.paired),
            }
        })
        .collect::<Vec<_>>();
    if let Some(dir) = opts.dir(&[])? {
        std::fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    }
    Ok((reports, summary))
}
