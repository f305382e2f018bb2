//! Experiment drivers. Each returns its reports in memory and, when an
//! output directory is set, writes them (and optional dumps) under
//! seed-scoped subdirectories.

mod benchmark;
mod continual;
mod privacy_sweep;

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use fcac_core::data::{gen_gaussian_mixture, LabeledDataset};
use fcac_core::{ClientResult, Clusterer};

pub use benchmark::{run_benchmark, BenchmarkOutput, SummaryRow};
pub use continual::run_continual;
pub use privacy_sweep::{run_privacy_sweep, SweepSummary};

use crate::config::{DatasetSource, ExperimentConfig};
use crate::io::{load_csv, write_nodes_csv};
use crate::wire;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub out_dir: Option<PathBuf>,
    pub dump_nodes: bool,
    pub dump_transfer: bool,
    /// Worker threads for the client phase; `None` defers to `FCAC_THREADS`.
    pub threads: Option<usize>,
}

impl RunOptions {
    /// Creates and returns `out_dir/<parts...>` when an output directory is set.
    fn dir(&self, parts: &[String]) -> anyhow::Result<Option<PathBuf>> {
        let Some(root) = &self.out_dir else {
            return Ok(None);
        };
        let dir = parts.iter().fold(root.clone(), |d, p| d.join(p));
        std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Some(dir))
    }
}

/// Optional per-round dumps of node sets and transferred messages.
fn dump_round(
    dir: Option<&Path>,
    opts: &RunOptions,
    round: usize,
    clients: &[Clusterer],
    server: &Clusterer,
    transfers: &[ClientResult],
) -> anyhow::Result<()> {
    let Some(dir) = dir else {
        return Ok(());
    };
    if opts.dump_nodes {
        for (c, state) in clients.iter().enumerate() {
            write_nodes_csv(&dir.join(format!("nodes_round{round}_client{c}.csv")), state, &state.extract_clusters())?;
        }
        write_nodes_csv(&dir.join(format!("nodes_round{round}_server.csv")), server, &server.extract_clusters())?;
    }
    if opts.dump_transfer {
        let file = std::fs::File::create(dir.join(format!("transfer_round{round}.csv")))?;
        wire::write_csv(std::io::BufWriter::new(file), transfers)?;
        std::fs::write(dir.join(format!("transfer_round{round}.json")), wire::to_json(transfers)?)?;
    }
    Ok(())
}

/// Loads or generates the configured dataset, scaled to the configured range.
pub fn load_dataset(config: &ExperimentConfig, seed: u64) -> anyhow::Result<LabeledDataset> {
    let (lo, hi) = config.scale_range();
    match &config.dataset {
        DatasetSource::Csv { path, has_header } => Ok(load_csv(path, *has_header)?.scaled(lo, hi)?),
        DatasetSource::Gaussian { components } => {
            let comps = components.iter().map(|c| c.to_component()).collect::<anyhow::Result<Vec<_>>>()?;
            Ok(gen_gaussian_mixture(&comps, (lo, hi), seed)?)
        }
        DatasetSource::ContinualGaussian { .. } => {
            anyhow::bail!("continual-gaussian data is generated by the continual experiment")
        }
    }
}

fn seconds_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

/// Seed streams of one experiment seed.
mod tags {
    pub const NOISE: u64 = 1;
    pub const SPLIT: u64 = 2;
    pub const SUBSAMPLE: u64 = 3;
    pub const FEDERATION: u64 = 4;
}
