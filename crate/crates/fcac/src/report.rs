//! JSON report schema shared by every experiment.

use std::collections::BTreeMap;
use std::path::Path;

use fcac_core::eval::{ami, ari, nmi};
use fcac_core::federation::RoundOutcome;
use fcac_core::Clusterer;
use serde::{Deserialize, Serialize};

use crate::config::{EpsilonValue, ExperimentConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: ExperimentConfig,
    pub seed: u64,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<EpsilonValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rounds: Vec<RoundReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub privacy: Vec<PrivacyPoint>,
    /// Deviations from the full protocol, such as subsampling.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Wall-clock seconds per phase.
    pub timing: BTreeMap<String, f64>,
}

impl Report {
    /// The stored config omits `out_dir`; a report does not record where it
    /// was written.
    pub fn new(config: &ExperimentConfig, seed: u64) -> Self {
        Report {
            config: ExperimentConfig {
                out_dir: None,
                ..config.clone()
            },
            seed,
            version: crate::VERSION.to_owned(),
            epsilon: None,
            rounds: Vec::new(),
            privacy: Vec::new(),
            notes: Vec::new(),
            timing: BTreeMap::new(),
        }
    }

    pub fn add_time(&mut self, phase: &str, seconds: f64) {
        *self.timing.entry(phase.to_owned()).or_default() += seconds;
    }

    /// The report without timing, for reproducibility comparisons.
    pub fn metrics_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("report is an object").remove("timing");
        serde_json::to_string(&v).expect("value serializes")
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundReport {
    pub round: usize,
    pub per_client: Vec<ClientReport>,
    pub server: ServerReport,
    pub transfer: TransferReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClientReport {
    pub client: usize,
    /// Local points presented this round.
    pub points: usize,
    pub nodes: usize,
    /// Cumulative over all rounds; equals the total points ever presented
    /// as long as the state was never reset.
    pub inputs_seen: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ServerReport {
    pub nodes: usize,
    pub clusters: usize,
    /// Node vectors received this round.
    pub received: usize,
    pub inputs_seen: u64,
    /// Points the metrics were computed on.
    pub evaluated: usize,
    pub ari: f64,
    pub ami: f64,
    pub nmi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferReport {
    pub messages: usize,
    pub downlink: usize,
    pub scalars: usize,
    pub skipped: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrivacyPoint {
    pub epsilon: EpsilonValue,
    /// Mean over dimensions of the 1-D marginal 1-Wasserstein distance.
    pub dws: f64,
    /// Exact 1-Wasserstein distance under the Euclidean ground cost.
    pub dws_exact: f64,
    /// Mean displacement of each point (identity matching).
    pub paired: f64,
}

/// Mean and sample standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    pub fn of(values: &[f64]) -> Stat {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Stat { mean, std }
    }
}

/// Assembles the per-round record; metrics compare `truth` with the
/// server's nearest-node predictions on `points`.
pub fn round_report(
    round: usize,
    outcome: &RoundOutcome,
    clients: &[Clusterer],
    points_per_client: &[usize],
    server: &Clusterer,
    points: &[Vec<f64>],
    truth: &[usize],
) -> anyhow::Result<RoundReport> {
    let pred = server.predict_all(points)?;
    Ok(RoundReport {
        round,
        per_client: clients
            .iter()
            .zip(points_per_client)
            .enumerate()
            .map(|(c, (state, &n))| ClientReport {
                client: c,
                points: n,
                nodes: state.len(),
                inputs_seen: state.inputs_seen(),
            })
            .collect(),
        server: ServerReport {
            nodes: server.len(),
            clusters: outcome.labeling.count_clusters(),
            received: outcome.stream_len,
            inputs_seen: server.inputs_seen(),
            evaluated: points.len(),
            ari: ari(truth, &pred)?,
            ami: ami(truth, &pred)?,
            nmi: nmi(truth, &pred)?,
        },
        transfer: TransferReport {
            messages: outcome.audit.messages,
            downlink: outcome.audit.downlink,
            scalars: outcome.audit.scalars,
            skipped: outcome.audit.skipped.clone(),
        },
    })
}
