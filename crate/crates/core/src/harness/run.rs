use rayon::prelude::*;

use super::{pseudo_regret, ExperimentConfig, Game};
use crate::environments::EnvironmentSpec;
use crate::error::{Error, Result};
use crate::stream::{derive_stream_seed, ENVIRONMENT_STREAM};

/// Regret state of one (policy, replicate) pair at a checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretRecord {
    pub policy: String,
    pub replicate: u64,
    pub t: u64,
    /// `sum_a N_t(a) gap(a)`; `None` for adversarial environments.
    pub pseudo_regret: Option<f64>,
    pub realized_loss: f64,
    pub hindsight_best_loss: f64,
}

impl RegretRecord {
    pub fn hindsight_regret(&self) -> f64 {
        self.realized_loss - self.hindsight_best_loss
    }
}

/// Per-arm policy state at a checkpoint: `n = N_t(a)`, `dlcb = DLCB_t(a)`,
/// and the exploration rate the policy will use in round `t + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticRecord {
    pub policy: String,
    pub replicate: u64,
    pub t: u64,
    pub arm: usize,
    pub n: u64,
    pub dlcb: Option<f64>,
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentOutput {
    /// Ordered by policy (config order), then replicate, then round.
    pub records: Vec<RegretRecord>,
    /// Empty unless diagnostics were requested.
    pub diagnostics: Vec<DiagnosticRecord>,
}

/// Plays one replicate of one policy and records every checkpoint.
///
/// The loss stream depends only on `(seed, replicate)`, so all policies of a
/// replicate face the same losses. The policy's draws use its index in the
/// config as stream id.
pub fn simulate_replicate(
    config: &ExperimentConfig,
    env: &EnvironmentSpec,
    policy_index: usize,
    replicate: u64,
    checkpoints: &[u64],
) -> Result<ExperimentOutput> {
    let spec = config
        .policies
        .get(policy_index)
        .ok_or_else(|| Error::param("policy_index", format!("no policy at index {policy_index}")))?;
    let name = spec.name();
    let gaps = match env.ground_truth() {
        Ok(g) => Some(g.gaps),
        Err(Error::NotStochastic) => None,
        Err(e) => return Err(e),
    };
    let env_seed = derive_stream_seed(config.seed, ENVIRONMENT_STREAM, replicate);
    let policy_seed = derive_stream_seed(config.seed, policy_index as u64, replicate);
    let mut game = Game::new(env, spec.build(config.num_arms)?, env_seed, policy_seed)?;

    let mut out = ExperimentOutput::default();
    for &t in checkpoints {
        game.run_until(t)?;
        out.records.push(RegretRecord {
            policy: name.to_string(),
            replicate,
            t,
            pseudo_regret: gaps.as_deref().map(|g| pseudo_regret(game.counts(), g)).transpose()?,
            realized_loss: game.realized_loss(),
            hindsight_best_loss: game.hindsight_best_loss(),
        });
        if config.diagnostics {
            let d = game.policy().diagnostics();
            for (arm, &n) in game.counts().iter().enumerate() {
                out.diagnostics.push(DiagnosticRecord {
                    policy: name.to_string(),
                    replicate,
                    t,
                    arm,
                    n,
                    dlcb: d.dlcb.as_ref().map(|v| v[arm]),
                    epsilon: d.epsilon.as_ref().map(|v| v[arm]),
                });
            }
        }
    }
    Ok(out)
}

/// Validates `config`, then runs every (policy, replicate) pair on a pool of
/// `parallelism` threads. Output order does not depend on scheduling.
pub fn run_experiment(config: &ExperimentConfig, parallelism: usize) -> Result<ExperimentOutput> {
    config.validate()?;
    if parallelism == 0 {
        return Err(Error::param("parallelism", "must be >= 1"));
    }
    let env = config.build_environment()?;
    let checkpoints = config.checkpoint_rounds()?;
    let tasks: Vec<(usize, u64)> = (0..config.policies.len())
        .flat_map(|p| (0..config.replicates).map(move |r| (p, r)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::param("parallelism", e.to_string()))?;
    let parts: Vec<ExperimentOutput> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(p, r)| simulate_replicate(config, &env, p, r, &checkpoints))
            .collect::<Result<_>>()
    })?;
    let mut out = ExperimentOutput::default();
    for part in parts {
        out.records.extend(part.records);
        out.diagnostics.extend(part.diagnostics);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(text: &str) -> ExperimentConfig {
        ExperimentConfig::from_json(text).unwrap()
    }

    #[test]
    fn records_follow_task_order() {
        let c = config(
            r#"{"name": "o", "K": 2, "horizon": 100, "env": {"type": "bernoulli", "means": [0.3, 0.7]},
                "policies": [{"kind": "exp3pp"}, {"kind": "exp3"}], "replicates": 3,
                "checkpoints": [10, 100], "diagnostics": true}"#,
        );
        let out = run_experiment(&c, 2).unwrap();
        let keys: Vec<(&str, u64, u64)> = out.records.iter().map(|r| (r.policy.as_str(), r.replicate, r.t)).collect();
        assert_eq!(keys.len(), 12);
        assert_eq!(keys[0], ("exp3pp", 0, 10));
        assert_eq!(keys[1], ("exp3pp", 0, 100));
        assert_eq!(keys[6], ("exp3", 0, 10));
        assert_eq!(out.diagnostics.len(), 24);
        let d = &out.diagnostics[0];
        assert!(d.dlcb.is_some() && d.epsilon.is_some());
        let e = out.diagnostics.iter().find(|d| d.policy == "exp3").unwrap();
        assert!(e.dlcb.is_none() && e.epsilon == Some(0.0));
    }

    #[test]
    fn pseudo_regret_is_nondecreasing() {
        let c = config(
            r#"{"name": "m", "K": 3, "horizon": 5000, "env": {"type": "bernoulli", "means": [0.2, 0.5, 0.6]},
                "policies": [{"kind": "exp3pp"}, {"kind": "exp3"}, {"kind": "lcb_greedy"}], "replicates": 4,
                "checkpoints": {"per_decade": 5}}"#,
        );
        let out = run_experiment(&c, 1).unwrap();
        for w in out.records.windows(2) {
            if w[0].policy == w[1].policy && w[0].replicate == w[1].replicate {
                assert!(w[1].pseudo_regret.unwrap() >= w[0].pseudo_regret.unwrap());
            }
        }
    }

    #[test]
    fn adversarial_runs_have_no_pseudo_regret() {
        let c = config(
            r#"{"name": "a", "K": 2, "horizon": 200, "env": {"type": "switching"},
                "policies": [{"kind": "exp3"}], "checkpoints": [100, 200]}"#,
        );
        let out = run_experiment(&c, 1).unwrap();
        assert!(out.records.iter().all(|r| r.pseudo_regret.is_none()));
        // 100 rounds at 0.2 and 100 at 0.8 for either arm.
        assert!((out.records[1].hindsight_best_loss - 100.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_config_fails_before_simulation() {
        let c = config(
            r#"{"name": "bad", "K": 2, "horizon": 100, "env": {"type": "bernoulli", "means": [0.3, 0.7]},
                "policies": [{"kind": "exp3"}], "replicates": 0}"#,
        );
        assert!(matches!(run_experiment(&c, 1), Err(Error::Config(_))));
    }
}
