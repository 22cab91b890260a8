use serde_json::json;

use super::{CheckRow, Relation, SuiteReport};
use crate::environments::{EnvironmentSpec, StochasticSpec};
use crate::error::{Error, Result};
use crate::harness::{Game, MeanSe};
use crate::policies::{Exp3pp, Exp3ppConfig};
use crate::stream::{derive_stream_seed, ENVIRONMENT_STREAM};

fn exp3pp_game(env: &EnvironmentSpec, alpha: f64, beta: f64, seed: u64, replicate: u64) -> Result<Game<'_, Exp3pp>> {
    let config = Exp3ppConfig {
        alpha,
        beta,
        ..Exp3ppConfig::default()
    };
    let policy = Exp3pp::new(env.num_arms(), config)?;
    Game::new(
        env,
        policy,
        derive_stream_seed(seed, ENVIRONMENT_STREAM, replicate),
        derive_stream_seed(seed, 0, replicate),
    )
}

/// Frequency with which `DLCB_t(a)` overshoots the true gap while EXP3++
/// plays a Bernoulli environment. For suboptimal arms the event is
/// `DLCB_t(a) >= gap(a)`; for the best arm, whose gap is zero, it is
/// `DLCB_t(a) > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperParams {
    pub means: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
    pub rounds: Vec<u64>,
    pub replicates: u64,
}

impl Default for UpperParams {
    fn default() -> Self {
        Self {
            means: vec![0.4, 0.6],
            alpha: 3.0,
            beta: 256.0,
            rounds: vec![100, 1000],
            replicates: 10_000,
        }
    }
}

pub fn proposition1_upper(p: &UpperParams, seed: u64) -> Result<SuiteReport> {
    const SUITE: &str = "proposition1-upper";
    let env = EnvironmentSpec::Stochastic(StochasticSpec::bernoulli(p.means.clone())?);
    let gaps = env.ground_truth()?.gaps;
    let k = gaps.len();
    if p.rounds.windows(2).any(|w| w[0] >= w[1]) || p.rounds.first().is_some_and(|&t| t <= k as u64) {
        return Err(Error::param("rounds", "must be increasing and above K"));
    }
    let mut hits = vec![vec![0u64; k]; p.rounds.len()];
    for r in 0..p.replicates {
        let mut game = exp3pp_game(&env, p.alpha, p.beta, seed, r)?;
        for (i, &t) in p.rounds.iter().enumerate() {
            game.run_until(t)?;
            let dlcb = game.policy().gap_estimator().settled_dlcb()?;
            for a in 0..k {
                let over = if gaps[a] > 0.0 { dlcb[a] >= gaps[a] } else { dlcb[a] > 0.0 };
                hits[i][a] += over as u64;
            }
        }
    }
    let mut rows = Vec::new();
    for (i, &t) in p.rounds.iter().enumerate() {
        let bound = (t as f64).powf(-(p.alpha - 1.0));
        for a in 0..k {
            let freq = MeanSe::proportion(hits[i][a], p.replicates);
            let params = json!({
                "means": p.means, "arm": a, "gap": gaps[a], "t": t, "alpha": p.alpha, "beta": p.beta,
                "replicates": p.replicates,
                "event": if gaps[a] > 0.0 { "dlcb >= gap" } else { "dlcb > 0" },
            });
            rows.push(CheckRow::new(SUITE, params, Relation::AtMost, bound, freq.mean, freq.stderr));
        }
    }
    Ok(SuiteReport {
        suite: SUITE.into(),
        rows,
    })
}

/// Fraction of replicates whose gap estimate of the worst arm lands in
/// `[gap / 2, gap]` at the horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichParams {
    pub means: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
    pub horizon: u64,
    pub replicates: u64,
    pub required_fraction: f64,
}

impl Default for SandwichParams {
    fn default() -> Self {
        Self {
            means: vec![0.05, 0.95],
            alpha: 3.0,
            beta: 256.0,
            horizon: 1_000_000,
            replicates: 200,
            required_fraction: 0.95,
        }
    }
}

pub fn proposition1_sandwich(p: &SandwichParams, seed: u64) -> Result<SuiteReport> {
    const SUITE: &str = "proposition1-sandwich";
    let env = EnvironmentSpec::Stochastic(StochasticSpec::bernoulli(p.means.clone())?);
    let gaps = env.ground_truth()?.gaps;
    let (arm, gap) = gaps
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0), |best, (a, g)| if g > best.1 { (a, g) } else { best });
    if gap == 0.0 {
        return Err(Error::param("means", "need at least one suboptimal arm"));
    }
    let mut inside = 0u64;
    let mut estimates = Vec::with_capacity(p.replicates as usize);
    for r in 0..p.replicates {
        let mut game = exp3pp_game(&env, p.alpha, p.beta, seed, r)?;
        game.run_until(p.horizon)?;
        let d = game.policy().gap_estimator().settled_dlcb()?[arm];
        inside += (0.5 * gap <= d && d <= gap) as u64;
        estimates.push(d);
    }
    let freq = MeanSe::proportion(inside, p.replicates);
    let tmin = crate::gap_estimator::tmin_literal(gap, gaps.len(), p.beta)?;
    let dlcb = MeanSe::from_samples(&estimates);
    let params = json!({
        "means": p.means, "arm": arm, "gap": gap, "t": p.horizon, "alpha": p.alpha, "beta": p.beta,
        "replicates": p.replicates, "tmin_literal": tmin, "mean_dlcb": dlcb.mean,
        "event": "gap/2 <= dlcb <= gap",
    });
    let rows = vec![CheckRow::new(
        SUITE,
        params,
        Relation::AtLeast,
        p.required_fraction,
        freq.mean,
        freq.stderr,
    )];
    Ok(SuiteReport {
        suite: SUITE.into(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_branch_small_run() {
        let r = proposition1_upper(
            &UpperParams {
                replicates: 300,
                ..UpperParams::default()
            },
            3,
        )
        .unwrap();
        assert_eq!(r.rows.len(), 4);
        assert!(r.passed(), "{:#?}", r.rows);
    }

    #[test]
    fn sandwich_small_run() {
        // 20000 rounds is far below tmin for this gap; the estimate is still
        // a lower bound but typically below gap / 2.
        let r = proposition1_sandwich(
            &SandwichParams {
                horizon: 20_000,
                replicates: 5,
                ..SandwichParams::default()
            },
            3,
        )
        .unwrap();
        let mean = r.rows[0].params["mean_dlcb"].as_f64().unwrap();
        assert!((0.0..=0.9).contains(&mean));
    }
}
