use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::{DiagnosticRecord, EnvConfig, ExperimentConfig, ExperimentOutput, RegretRecord};
use crate::environments::EnvironmentSpec;
use crate::error::{Error, Result};

pub const RESULTS_HEADER: [&str; 6] = ["policy", "replicate", "t", "pseudo_regret", "realized_loss", "hindsight_best_loss"];
pub const DIAGNOSTICS_HEADER: [&str; 7] = ["policy", "replicate", "t", "arm", "n", "dlcb", "epsilon"];

fn num(x: f64) -> String {
    format!("{x}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn write_results_csv<W: Write>(out: W, records: &[RegretRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULTS_HEADER)?;
    for r in records {
        w.write_record([
            r.policy.clone(),
            r.replicate.to_string(),
            r.t.to_string(),
            opt(r.pseudo_regret),
            num(r.realized_loss),
            num(r.hindsight_best_loss),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_diagnostics_csv<W: Write>(out: W, records: &[DiagnosticRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(DIAGNOSTICS_HEADER)?;
    for r in records {
        w.write_record([
            r.policy.clone(),
            r.replicate.to_string(),
            r.t.to_string(),
            r.arm.to_string(),
            r.n.to_string(),
            opt(r.dlcb),
            opt(r.epsilon),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Sidecar describing a run for downstream plotting: arm count, horizon,
/// policies, checkpoints and, for stochastic environments, means and gaps.
/// Contains nothing that varies between identical runs.
pub fn metadata(config: &ExperimentConfig, env: &EnvironmentSpec, checkpoints: &[u64]) -> Value {
    let env_type = serde_json::to_value(&config.env)
        .ok()
        .and_then(|v| v.get("type").cloned())
        .unwrap_or(Value::Null);
    let mut meta = json!({
        "name": config.name,
        "K": config.num_arms,
        "horizon": config.horizon,
        "replicates": config.replicates,
        "seed": config.seed,
        "env": config.env,
        "env_type": env_type,
        "stochastic": env.is_stochastic(),
        "policies": config.policies.iter().map(|p| p.name()).collect::<Vec<_>>(),
        "checkpoints": checkpoints,
        "results_csv": format!("{}.csv", config.name),
    });
    if let Ok(truth) = env.ground_truth() {
        meta["gaps"] = json!(truth.gaps);
        meta["best_arm"] = json!(truth.best_arm.index());
        meta["min_gap"] = json!(truth.min_positive_gap());
    }
    if let EnvConfig::Bernoulli { means } | EnvConfig::ClippedUniform { means, .. } | EnvConfig::Contaminated { means, .. } =
        &config.env
    {
        meta["means"] = json!(means);
    }
    if config.diagnostics {
        meta["diagnostics_csv"] = json!(format!("{}.diagnostics.csv", config.name));
    }
    meta
}

/// Paths written by [`ExperimentOutput::write_to_dir`].
#[derive(Debug, Clone, PartialEq)]
pub struct OutputFiles {
    pub results: PathBuf,
    pub diagnostics: Option<PathBuf>,
    pub metadata: PathBuf,
}

impl ExperimentOutput {
    /// Writes `<name>.csv`, `<name>.meta.json` and, when diagnostics were
    /// requested, `<name>.diagnostics.csv` into `dir`.
    pub fn write_to_dir(&self, config: &ExperimentConfig, dir: &Path) -> Result<OutputFiles> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let create = |path: &Path| File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e));

        let results = dir.join(format!("{}.csv", config.name));
        write_results_csv(create(&results)?, &self.records)?;

        let diagnostics = if config.diagnostics {
            let path = dir.join(format!("{}.diagnostics.csv", config.name));
            write_diagnostics_csv(create(&path)?, &self.diagnostics)?;
            Some(path)
        } else {
            None
        };

        let meta_path = dir.join(format!("{}.meta.json", config.name));
        let env = config.build_environment()?;
        let meta = metadata(config, &env, &config.checkpoint_rounds()?);
        let mut text = serde_json::to_string_pretty(&meta)?;
        text.push('\n');
        std::fs::write(&meta_path, text).map_err(|e| Error::io(&meta_path, e))?;

        Ok(OutputFiles {
            results,
            diagnostics,
            metadata: meta_path,
        })
    }
}
