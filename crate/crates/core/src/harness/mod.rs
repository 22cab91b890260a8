//! Experiment driver: configuration, simulation of (policy, replicate) grids,
//! regret accounting and result files.

mod config;
mod game;
mod output;
mod run;
mod stats;

pub use config::{Checkpoints, EnvConfig, ExperimentConfig, PolicyConfig};
pub use game::Game;
pub use output::{metadata, write_diagnostics_csv, write_results_csv, OutputFiles, DIAGNOSTICS_HEADER, RESULTS_HEADER};
pub use run::{run_experiment, simulate_replicate, DiagnosticRecord, ExperimentOutput, RegretRecord};
pub use stats::{log_log_slope, summarize, CurvePoint, MeanSe};

use crate::error::{Error, Result};

/// `sum_a counts(a) gaps(a)`.
pub fn pseudo_regret(counts: &[u64], gaps: &[f64]) -> Result<f64> {
    if counts.len() != gaps.len() {
        return Err(Error::LengthMismatch {
            left: counts.len(),
            right: gaps.len(),
        });
    }
    if let Some(g) = gaps.iter().find(|g| !(**g >= 0.0)) {
        return Err(Error::param("gaps", format!("{g} is negative")));
    }
    Ok(counts.iter().zip(gaps).map(|(&n, &g)| n as f64 * g).sum())
}

/// Policy loss minus the smallest per-arm cumulative loss.
pub fn hindsight_regret(cumulative_policy_loss: f64, column_sums: &[f64]) -> Result<f64> {
    let best = column_sums
        .iter()
        .copied()
        .min_by(f64::total_cmp)
        .ok_or(Error::EmptyDistribution)?;
    Ok(cumulative_policy_loss - best)
}

/// Geometric grid `round(10^(1 + k / per_decade))` on `[10, horizon]`, with
/// `horizon` always included.
pub fn checkpoint_grid(horizon: u64, per_decade: u32) -> Result<Vec<u64>> {
    if horizon < 10 {
        return Err(Error::param("horizon", format!("must be >= 10, got {horizon}")));
    }
    if per_decade == 0 {
        return Err(Error::param("per_decade", "must be >= 1"));
    }
    let mut grid = Vec::new();
    for k in 0.. {
        let exponent = 1.0 + k as f64 / per_decade as f64;
        let t = 10f64.powf(exponent).round();
        if t > horizon as f64 {
            break;
        }
        let t = t as u64;
        if grid.last() != Some(&t) {
            grid.push(t);
        }
    }
    if grid.last() != Some(&horizon) {
        grid.push(horizon);
    }
    Ok(grid)
}
