use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::checkpoint_grid;
use crate::environments::{
    AdversarialSpec, ContaminatedSpec, EnvironmentSpec, LossMatrix, SinusoidalGenerator, StochasticFamily,
    StochasticSpec, SwitchingGenerator,
};
use crate::error::{Error, Result};
use crate::gap_estimator::XiRule;
use crate::policies::{Exp3, Exp3pp, Exp3ppConfig, LcbGreedy, Policy};

/// Experiment description as read from a JSON file.
///
/// ```json
/// {
///   "name": "two-arm",
///   "K": 2,
///   "horizon": 100000,
///   "env": { "type": "bernoulli", "means": [0.4, 0.6] },
///   "policies": [{ "kind": "exp3pp" }, { "kind": "exp3" }],
///   "replicates": 20,
///   "seed": 7,
///   "checkpoints": { "per_decade": 4 },
///   "diagnostics": false
/// }
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(rename = "K")]
    pub num_arms: usize,
    pub horizon: u64,
    pub env: EnvConfig,
    pub policies: Vec<PolicyConfig>,
    #[serde(default = "default_replicates")]
    pub replicates: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub checkpoints: Checkpoints,
    #[serde(default)]
    pub diagnostics: bool,
}

fn default_replicates() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum EnvConfig {
    Bernoulli {
        means: Vec<f64>,
    },
    ClippedUniform {
        means: Vec<f64>,
        half_width: f64,
    },
    /// Bernoulli losses whose first `budget` rounds favour `bad_arm`.
    Contaminated {
        means: Vec<f64>,
        budget: u64,
        bad_arm: usize,
    },
    /// Defaults: arm 0 at 0.2 and the rest at 0.8, reversed from the middle
    /// of the horizon on.
    Switching {
        #[serde(default)]
        before: Option<Vec<f64>>,
        #[serde(default)]
        t_switch: Option<u64>,
    },
    Sinusoidal {
        #[serde(default = "default_period")]
        period: f64,
        #[serde(default = "default_amplitude")]
        amplitude: f64,
    },
    /// Loss matrix file; relative paths resolve against the config file's
    /// directory.
    Matrix {
        path: PathBuf,
    },
}

fn default_period() -> f64 {
    1000.0
}

fn default_amplitude() -> f64 {
    0.4
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PolicyConfig {
    Exp3pp {
        #[serde(default)]
        name: Option<String>,
        #[serde(default = "default_alpha")]
        alpha: f64,
        #[serde(default = "default_beta")]
        beta: f64,
    },
    Exp3 {
        #[serde(default)]
        name: Option<String>,
    },
    LcbGreedy {
        #[serde(default)]
        name: Option<String>,
        #[serde(default = "default_alpha")]
        alpha: f64,
    },
}

fn default_alpha() -> f64 {
    3.0
}

fn default_beta() -> f64 {
    256.0
}

impl PolicyConfig {
    /// Label used in result files; defaults to the policy kind.
    pub fn name(&self) -> &str {
        match self {
            PolicyConfig::Exp3pp { name, .. } => name.as_deref().unwrap_or("exp3pp"),
            PolicyConfig::Exp3 { name } => name.as_deref().unwrap_or("exp3"),
            PolicyConfig::LcbGreedy { name, .. } => name.as_deref().unwrap_or("lcb_greedy"),
        }
    }

    pub fn build(&self, num_arms: usize) -> Result<Box<dyn Policy>> {
        Ok(match *self {
            PolicyConfig::Exp3pp { alpha, beta, .. } => Box::new(Exp3pp::new(
                num_arms,
                Exp3ppConfig {
                    alpha,
                    beta,
                    xi: XiRule::GapEstimate,
                    eta_scale: 1.0,
                },
            )?),
            PolicyConfig::Exp3 { .. } => Box::new(Exp3::new(num_arms)?),
            PolicyConfig::LcbGreedy { alpha, .. } => Box::new(LcbGreedy::new(num_arms, alpha)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Checkpoints {
    List(Vec<u64>),
    Grid { per_decade: u32 },
}

impl Default for Checkpoints {
    fn default() -> Self {
        Checkpoints::Grid { per_decade: 4 }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a config file and resolves a relative matrix path against the
    /// file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = Self::from_json(&text)?;
        if let EnvConfig::Matrix { path: m } = &mut config.env {
            if m.is_relative() {
                if let Some(dir) = path.parent() {
                    *m = dir.join(&*m);
                }
            }
        }
        Ok(config)
    }

    pub fn build_environment(&self) -> Result<EnvironmentSpec> {
        let k = self.num_arms;
        let env = match &self.env {
            EnvConfig::Bernoulli { means } => EnvironmentSpec::Stochastic(StochasticSpec::bernoulli(means.clone())?),
            EnvConfig::ClippedUniform { means, half_width } => EnvironmentSpec::Stochastic(StochasticSpec::new(
                means.clone(),
                StochasticFamily::ClippedUniform {
                    half_width: *half_width,
                },
            )?),
            EnvConfig::Contaminated { means, budget, bad_arm } => EnvironmentSpec::Contaminated(
                ContaminatedSpec::new(StochasticSpec::bernoulli(means.clone())?, *budget, *bad_arm)?,
            ),
            EnvConfig::Switching { before, t_switch } => {
                let g = match before {
                    Some(row) => SwitchingGenerator::new(row.clone(), t_switch.unwrap_or(self.horizon / 2 + 1))?,
                    None => {
                        let g = SwitchingGenerator::halfway(k, self.horizon)?;
                        match t_switch {
                            Some(ts) => SwitchingGenerator::new(g.before().to_vec(), *ts)?,
                            None => g,
                        }
                    }
                };
                EnvironmentSpec::Adversarial(AdversarialSpec::Switching(g))
            }
            EnvConfig::Sinusoidal { period, amplitude } => EnvironmentSpec::Adversarial(AdversarialSpec::Sinusoidal(
                SinusoidalGenerator::new(k, *period, *amplitude)?,
            )),
            EnvConfig::Matrix { path } => EnvironmentSpec::Adversarial(AdversarialSpec::Matrix(LossMatrix::load(path)?)),
        };
        if env.num_arms() != k {
            return Err(Error::Config(format!(
                "K = {k} but the environment has {} arms",
                env.num_arms()
            )));
        }
        if let Some(h) = env.horizon() {
            if h < self.horizon {
                return Err(Error::Config(format!(
                    "loss matrix has {h} rounds, horizon is {}",
                    self.horizon
                )));
            }
        }
        Ok(env)
    }

    /// Checkpoint rounds in increasing order. A geometric grid drops points
    /// below `K + 1`; an explicit list must already lie in `[K + 1, T]`.
    pub fn checkpoint_rounds(&self) -> Result<Vec<u64>> {
        let lo = self.num_arms as u64 + 1;
        match &self.checkpoints {
            Checkpoints::Grid { per_decade } => {
                let grid: Vec<u64> = checkpoint_grid(self.horizon, *per_decade)?
                    .into_iter()
                    .filter(|&t| t >= lo)
                    .collect();
                Ok(grid)
            }
            Checkpoints::List(list) => {
                if list.is_empty() {
                    return Err(Error::Config("checkpoint list is empty".into()));
                }
                if list.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Config("checkpoints must be strictly increasing".into()));
                }
                if let Some(t) = list.iter().find(|&&t| t < lo || t > self.horizon) {
                    return Err(Error::Config(format!(
                        "checkpoint {t} outside [{lo}, {}]",
                        self.horizon
                    )));
                }
                Ok(list.clone())
            }
        }
    }

    /// Checks everything that can be checked without simulating, including
    /// building the environment and every policy once.
    pub fn validate(&self) -> Result<()> {
        if self.num_arms < 2 {
            return Err(Error::Config(format!("K must be at least 2, got {}", self.num_arms)));
        }
        if self.horizon < self.num_arms as u64 {
            return Err(Error::Config(format!(
                "horizon {} is shorter than K = {}",
                self.horizon, self.num_arms
            )));
        }
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be at least 1".into()));
        }
        if self.policies.is_empty() {
            return Err(Error::Config("no policies given".into()));
        }
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(Error::Config(format!("`{}` is not usable as a file name", self.name)));
        }
        let mut seen = HashSet::new();
        for p in &self.policies {
            if !seen.insert(p.name()) {
                return Err(Error::Config(format!("duplicate policy name `{}`", p.name())));
            }
            p.build(self.num_arms)?;
        }
        self.checkpoint_rounds()?;
        self.build_environment()?;
        Ok(())
    }
}
