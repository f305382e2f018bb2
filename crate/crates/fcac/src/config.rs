//! JSON experiment configuration. Unknown keys are rejected and every field
//! is validated before any computation starts.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context};
use fcac_core::data::GaussianComponent;
use fcac_core::Epsilon;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    PrivacySweep,
    ContinualSynthetic,
    FederatedBenchmark,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DatasetSource {
    /// Numeric columns followed by an integer label column.
    Csv {
        path: PathBuf,
        #[serde(default)]
        has_header: bool,
    },
    Gaussian { components: Vec<ComponentSpec> },
    /// Three 2-D Gaussians cut into the eight continual-learning subsets.
    ContinualGaussian { per_distribution: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub mean: Vec<f64>,
    /// Full `d × d` covariance, row by row.
    pub cov: Vec<Vec<f64>>,
    pub n: usize,
}

impl ComponentSpec {
    pub fn to_component(&self) -> anyhow::Result<GaussianComponent> {
        let d = self.mean.len();
        ensure!(d > 0, "component mean is empty");
        ensure!(
            self.cov.len() == d && self.cov.iter().all(|r| r.len() == d),
            "covariance must be {d} x {d}"
        );
        Ok(GaussianComponent {
            mean: self.mean.clone(),
            cov: self.cov.concat(),
            count: self.n,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Scenario {
    Iid,
    Dirichlet { alpha: f64 },
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scenario::Iid => write!(f, "iid"),
            Scenario::Dirichlet { alpha } => write!(f, "dirichlet({alpha})"),
        }
    }
}

/// Privacy budget as written in JSON: a positive number or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonValue(pub Epsilon);

impl EpsilonValue {
    pub fn tag(&self) -> String {
        if self.0.is_infinite() {
            "inf".into()
        } else {
            self.0.get().to_string()
        }
    }
}

impl Serialize for EpsilonValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0.get())
        }
    }
}

impl<'de> Deserialize<'de> for EpsilonValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        let value = match Raw::deserialize(d)? {
            Raw::Number(v) => v,
            Raw::Text(t) if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity") => f64::INFINITY,
            Raw::Text(t) => return Err(serde::de::Error::custom(format!("invalid epsilon {t:?}"))),
        };
        Epsilon::new(value).map(EpsilonValue).map_err(serde::de::Error::custom)
    }
}

fn default_rounds() -> usize {
    1
}

fn default_scenario() -> Scenario {
    Scenario::Iid
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub dataset: DatasetSource,
    /// Min-max target range; defaults to `[-1, 1]` for the privacy sweep and
    /// `[0, 1]` otherwise.
    #[serde(default)]
    pub scale: Option<[f64; 2]>,
    pub clients: usize,
    pub epsilons: Vec<EpsilonValue>,
    #[serde(default = "default_scenario")]
    pub scenario: Scenario,
    #[serde(default = "default_rounds")]
    pub rounds: usize,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub max_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Parses, resolves a relative CSV path against the config's directory,
    /// and validates.
    pub fn from_path(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut config: ExperimentConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if let DatasetSource::Csv { path: csv, .. } = &mut config.dataset {
            if csv.is_relative() {
                if let Some(dir) = path.parent() {
                    *csv = dir.join(&*csv);
                }
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn scale_range(&self) -> (f64, f64) {
        match (self.scale, self.kind) {
            (Some([lo, hi]), _) => (lo, hi),
            (None, ExperimentKind::PrivacySweep) => (-1.0, 1.0),
            (None, _) => (0.0, 1.0),
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        ensure!(self.clients >= 1, "clients must be at least 1");
        ensure!(!self.seeds.is_empty(), "seeds must not be empty");
        ensure!(!self.epsilons.is_empty(), "epsilons must not be empty");
        ensure!(self.rounds >= 1, "rounds must be at least 1");
        if let Some([lo, hi]) = self.scale {
            ensure!(lo < hi && lo.is_finite() && hi.is_finite(), "scale must be [lo, hi] with lo < hi");
        }
        if let Scenario::Dirichlet { alpha } = self.scenario {
            ensure!(alpha > 0.0 && alpha.is_finite(), "dirichlet alpha must be positive");
            ensure!(self.clients >= 2, "dirichlet scenario needs at least 2 clients");
        }
        if let Some(m) = self.max_points {
            ensure!(m >= self.clients, "max_points must be at least the client count");
        }
        match &self.dataset {
            DatasetSource::Gaussian { components } => {
                ensure!(!components.is_empty(), "gaussian dataset needs at least one component");
                for c in components {
                    c.to_component()?;
                }
            }
            DatasetSource::ContinualGaussian { per_distribution } => {
                ensure!(*per_distribution >= 4, "per_distribution must be at least 4");
            }
            DatasetSource::Csv { .. } => {}
        }
        match self.kind {
            ExperimentKind::PrivacySweep => {
                if !matches!(self.dataset, DatasetSource::Gaussian { .. }) {
                    bail!("privacy-sweep needs a gaussian dataset");
                }
            }
            ExperimentKind::ContinualSynthetic => {
                if !matches!(self.dataset, DatasetSource::ContinualGaussian { .. }) {
                    bail!("continual-synthetic needs a continual-gaussian dataset");
                }
                ensure!(self.clients == 2, "continual-synthetic runs exactly 2 clients");
                ensure!(self.rounds == 3, "continual-synthetic runs exactly 3 rounds");
            }
            ExperimentKind::FederatedBenchmark => {
                if matches!(self.dataset, DatasetSource::ContinualGaussian { .. }) {
                    bail!("federated-benchmark needs a csv or gaussian dataset");
                }
            }
        }
        Ok(())
    }
}
