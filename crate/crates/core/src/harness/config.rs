//! Experiment configuration, loadable from TOML.
//!
//! ```toml
//! strategy = "noisy"
//! p = 0.75
//! delta = 0.1
//! trials = 400
//! seed = 7
//! targets = { sample = 1 }
//!
//! [graph]
//! family = "path"
//! n = 512
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{generate, GeneratorSpec};
use crate::graph::Graph;
use crate::oracle::{CorrectPolicy, LiePolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyName {
    Deterministic,
    AlmostUndirected,
    DistanceInformed,
    Noisy,
    NoisyAmortized,
    TreeEdge,
    FollowEdge,
    MajorityTree,
}

impl StrategyName {
    pub const ALL: [StrategyName; 8] = [
        StrategyName::Deterministic,
        StrategyName::AlmostUndirected,
        StrategyName::DistanceInformed,
        StrategyName::Noisy,
        StrategyName::NoisyAmortized,
        StrategyName::TreeEdge,
        StrategyName::FollowEdge,
        StrategyName::MajorityTree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyName::Deterministic => "deterministic",
            StrategyName::AlmostUndirected => "almost-undirected",
            StrategyName::DistanceInformed => "distance-informed",
            StrategyName::Noisy => "noisy",
            StrategyName::NoisyAmortized => "noisy-amortized",
            StrategyName::TreeEdge => "tree-edge",
            StrategyName::FollowEdge => "follow-edge",
            StrategyName::MajorityTree => "majority-tree",
        }
    }

    /// Strategies whose guarantee is probabilistic.
    pub fn is_randomized(self) -> bool {
        matches!(self, StrategyName::Noisy | StrategyName::NoisyAmortized | StrategyName::MajorityTree)
    }
}

impl FromStr for StrategyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Self::ALL.iter().map(|x| x.name()).collect();
            Error::Config(format!("unknown strategy `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

impl fmt::Display for StrategyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where the instance comes from: a graph file or a generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSource {
    File { file: PathBuf },
    Generated(GeneratorSpec),
}

impl GraphSource {
    /// Stable identifier used in reports and seed derivation.
    pub fn id(&self) -> String {
        match self {
            GraphSource::File { file } => file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| file.display().to_string()),
            GraphSource::Generated(spec) => spec.id(),
        }
    }

    pub fn load(&self) -> Result<Graph> {
        match self {
            GraphSource::File { file } => Graph::read_file(file),
            GraphSource::Generated(spec) => generate(spec),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetSelection {
    All,
    /// `count` distinct targets drawn from the master seed (all if `count ≥ n`).
    Sample(usize),
}

impl FromStr for TargetSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(TargetSelection::All);
        }
        s.parse::<usize>()
            .ok()
            .filter(|&c| c >= 1)
            .map(TargetSelection::Sample)
            .ok_or_else(|| Error::Config(format!("targets must be `all` or a positive count, got `{s}`")))
    }
}

fn default_trials() -> usize {
    1
}

fn default_parallel() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    pub strategy: StrategyName,
    #[serde(default = "CorrectPolicy::default_policy")]
    pub correct_policy: CorrectPolicy,
    #[serde(default = "LiePolicy::default_policy")]
    pub lie_policy: LiePolicy,
    /// Probability the searcher assumes (noisy strategies).
    #[serde(default)]
    pub p: Option<f64>,
    /// Probability the simulated oracle answers correctly; defaults to `p`.
    #[serde(default)]
    pub oracle_p: Option<f64>,
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default = "default_targets")]
    pub targets: TargetSelection,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_parallel")]
    pub parallel: bool,
    #[serde(default)]
    pub json_out: Option<PathBuf>,
    #[serde(default)]
    pub csv_out: Option<PathBuf>,
}

fn default_targets() -> TargetSelection {
    TargetSelection::All
}

impl CorrectPolicy {
    fn default_policy() -> Self {
        CorrectPolicy::MinEdgeId
    }
}

impl LiePolicy {
    fn default_policy() -> Self {
        LiePolicy::UniformResponse
    }
}

impl ExperimentConfig {
    pub fn new(graph: GraphSource, strategy: StrategyName) -> Self {
        ExperimentConfig {
            graph,
            strategy,
            correct_policy: CorrectPolicy::MinEdgeId,
            lie_policy: LiePolicy::UniformResponse,
            p: None,
            oracle_p: None,
            delta: None,
            targets: TargetSelection::All,
            trials: 1,
            seed: 0,
            parallel: true,
            json_out: None,
            csv_out: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Checks the fields that do not depend on the graph.
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.targets == TargetSelection::Sample(0) {
            return Err(Error::Config("sample count must be at least 1".into()));
        }
        if self.strategy.is_randomized() {
            let p = self.p.ok_or_else(|| Error::Config(format!("strategy {} needs p", self.strategy)))?;
            if !(p > 0.5 && p < 1.0) {
                return Err(Error::Config(format!("p = {p} must lie in (1/2, 1)")));
            }
            let d = self.delta.ok_or_else(|| Error::Config(format!("strategy {} needs delta", self.strategy)))?;
            if !(d > 0.0 && d <= 1.0) {
                return Err(Error::Config(format!("delta = {d} must lie in (0, 1]")));
            }
        }
        if let Some(q) = self.oracle_p {
            if !(q > 0.5 && q <= 1.0) {
                return Err(Error::Config(format!("oracle_p = {q} must lie in (1/2, 1]")));
            }
        }
        Ok(())
    }
}
