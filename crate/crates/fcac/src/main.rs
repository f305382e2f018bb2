use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use fcac::config::{ExperimentConfig, ExperimentKind};
use fcac::experiments::{run_benchmark, run_continual, run_privacy_sweep, RunOptions};

#[derive(Parser)]
#[command(name = "fcac", version = fcac::VERSION, about = "Federated continual clustering experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between a dataset and its privatized copies, per budget.
    PrivacySweep(Common),
    /// Two clients, three rounds of the eight-subset Gaussian stream.
    Continual(Common),
    /// FCAC on a partitioned dataset over seeds and budgets.
    Benchmark(Common),
}

#[derive(Args)]
struct Common {
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Run this single seed instead of the configured list.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (overrides the config's out_dir).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write every client→server message per round as CSV and JSON.
    #[arg(long)]
    dump_transfer: bool,
    /// Write client and server node sets per round as CSV.
    #[arg(long)]
    dump_nodes: bool,
    /// Subsample the dataset to at most this many points.
    #[arg(long)]
    max_points: Option<usize>,
}

impl Common {
    fn resolve(&self, expected: ExperimentKind) -> anyhow::Result<(ExperimentConfig, RunOptions)> {
        let mut config = ExperimentConfig::from_path(&self.config)?;
        if config.kind != expected {
            bail!("{} describes a {:?} experiment", self.config.display(), config.kind);
        }
        if let Some(seed) = self.seed {
            config.seeds = vec![seed];
        }
        if let Some(m) = self.max_points {
            config.max_points = Some(m);
        }
        if let Some(out) = &self.out {
            config.out_dir = Some(out.clone());
        }
        config.validate()?;
        let opts = RunOptions {
            out_dir: config.out_dir.clone(),
            dump_nodes: self.dump_nodes,
            dump_transfer: self.dump_transfer,
            threads: None,
        };
        Ok((config, opts))
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::PrivacySweep(c) => {
            let (config, opts) = c.resolve(ExperimentKind::PrivacySweep)?;
            let (_, summary) = run_privacy_sweep(&config, &opts).context("privacy sweep")?;
            print_json(&summary)
        }
        Command::Continual(c) => {
            let (config, opts) = c.resolve(ExperimentKind::ContinualSynthetic)?;
            let reports = run_continual(&config, &opts).context("continual experiment")?;
            for r in &reports {
                for round in &r.rounds {
                    for s in &round.transfer.skipped {
                        eprintln!("warning: seed {} round {}: client {s} had no data", r.seed, round.round);
                    }
                    println!(
                        "seed {} eps {} round {}: server nodes {} clusters {} ARI {:.4} AMI {:.4} NMI {:.4}",
                        r.seed,
                        r.epsilon.map_or_else(String::new, |e| e.tag()),
                        round.round,
                        round.server.nodes,
                        round.server.clusters,
                        round.server.ari,
                        round.server.ami,
                        round.server.nmi
                    );
                }
            }
            Ok(())
        }
        Command::Benchmark(c) => {
            let (config, opts) = c.resolve(ExperimentKind::FederatedBenchmark)?;
            let out = run_benchmark(&config, &opts).context("benchmark")?;
            for r in &out.reports {
                for round in &r.rounds {
                    for s in &round.transfer.skipped {
                        eprintln!("warning: seed {} round {}: client {s} had no data", r.seed, round.round);
                    }
                }
            }
            print_json(&out.summary)
        }
    }
}
