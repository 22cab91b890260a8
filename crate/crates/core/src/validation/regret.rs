use serde_json::json;

use super::{CheckRow, Relation, SuiteReport};
use crate::error::{Error, Result};
use crate::harness::{
    log_log_slope, run_experiment, summarize, Checkpoints, CurvePoint, EnvConfig, ExperimentConfig, PolicyConfig,
};

/// EXP3++ against the shipped adversarial generators: mean hindsight regret
/// against `4 sqrt(K t ln K)` at every checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct AdversarialParams {
    pub arms: Vec<usize>,
    pub horizon: u64,
    pub replicates: u64,
    pub per_decade: u32,
}

impl Default for AdversarialParams {
    fn default() -> Self {
        Self {
            arms: vec![2, 10],
            horizon: 10_000,
            replicates: 100,
            per_decade: 4,
        }
    }
}

/// `4 sqrt(K t ln K)`.
pub fn adversarial_regret_bound(num_arms: usize, t: u64) -> f64 {
    let k = num_arms as f64;
    4.0 * (k * t as f64 * k.ln()).sqrt()
}

fn exp3pp_only() -> Vec<PolicyConfig> {
    vec![PolicyConfig::Exp3pp {
        name: None,
        alpha: 3.0,
        beta: 256.0,
    }]
}

pub fn theorem1_adversarial(p: &AdversarialParams, seed: u64, parallelism: usize) -> Result<SuiteReport> {
    const SUITE: &str = "theorem1-adversarial";
    let generators = [
        (
            "switching",
            EnvConfig::Switching {
                before: None,
                t_switch: None,
            },
        ),
        (
            "sinusoidal",
            EnvConfig::Sinusoidal {
                period: 1000.0,
                amplitude: 0.4,
            },
        ),
    ];
    let mut rows = Vec::new();
    for &k in &p.arms {
        for (label, env) in &generators {
            let config = ExperimentConfig {
                name: format!("{SUITE}-{label}-k{k}"),
                num_arms: k,
                horizon: p.horizon,
                env: env.clone(),
                policies: exp3pp_only(),
                replicates: p.replicates,
                seed,
                checkpoints: Checkpoints::Grid {
                    per_decade: p.per_decade,
                },
                diagnostics: false,
            };
            let out = run_experiment(&config, parallelism)?;
            for point in summarize(&out.records) {
                let params = json!({
                    "generator": label, "K": k, "t": point.t, "horizon": p.horizon,
                    "replicates": p.replicates, "policy": point.policy,
                });
                let bound = adversarial_regret_bound(k, point.t);
                let r = point.hindsight_regret;
                rows.push(CheckRow::new(SUITE, params, Relation::AtMost, bound, r.mean, r.stderr));
            }
        }
    }
    Ok(SuiteReport {
        suite: SUITE.into(),
        rows,
    })
}

/// Growth of mean pseudo-regret of EXP3++ and EXP3 on a two-armed Bernoulli
/// environment, measured as the log-log slope between two late checkpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthParams {
    pub means: Vec<f64>,
    pub replicates: u64,
    /// Slope window; the horizon is the second point.
    pub window: (u64, u64),
    pub max_exp3pp_slope: f64,
    pub min_exp3_slope: f64,
    pub max_final_ratio: f64,
}

impl Default for GrowthParams {
    fn default() -> Self {
        Self {
            means: vec![0.4, 0.6],
            replicates: 100,
            window: (100_000, 1_000_000),
            max_exp3pp_slope: 0.25,
            min_exp3_slope: 0.4,
            max_final_ratio: 0.5,
        }
    }
}

/// Slope between two curve points and its delta-method standard error.
fn slope(a: &CurvePoint, b: &CurvePoint) -> Result<(f64, f64)> {
    let (ra, rb) = match (a.pseudo_regret, b.pseudo_regret) {
        (Some(ra), Some(rb)) => (ra, rb),
        _ => return Err(Error::NotStochastic),
    };
    let s = log_log_slope(a.t as f64, ra.mean, b.t as f64, rb.mean);
    let rel = ((ra.stderr / ra.mean).powi(2) + (rb.stderr / rb.mean).powi(2)).sqrt();
    Ok((s, rel / ((b.t as f64).ln() - (a.t as f64).ln())))
}

pub fn theorem2_growth(p: &GrowthParams, seed: u64, parallelism: usize) -> Result<SuiteReport> {
    const SUITE: &str = "theorem2-growth";
    let (t0, t1) = p.window;
    let config = ExperimentConfig {
        name: SUITE.into(),
        num_arms: p.means.len(),
        horizon: t1,
        env: EnvConfig::Bernoulli { means: p.means.clone() },
        policies: vec![
            PolicyConfig::Exp3pp {
                name: None,
                alpha: 3.0,
                beta: 256.0,
            },
            PolicyConfig::Exp3 { name: None },
        ],
        replicates: p.replicates,
        seed,
        checkpoints: Checkpoints::List(vec![t0, t1]),
        diagnostics: false,
    };
    let out = run_experiment(&config, parallelism)?;
    let curve = summarize(&out.records);
    let find = |policy: &str, t: u64| {
        curve
            .iter()
            .find(|c| c.policy == policy && c.t == t)
            .ok_or_else(|| Error::param("window", format!("no checkpoint {t} for {policy}")))
    };
    let (pp0, pp1, e0, e1) = (find("exp3pp", t0)?, find("exp3pp", t1)?, find("exp3", t0)?, find("exp3", t1)?);
    let (s_pp, se_pp) = slope(pp0, pp1)?;
    let (s_e, se_e) = slope(e0, e1)?;
    let (fpp, fe) = (pp1.pseudo_regret.unwrap_or(pp1.hindsight_regret), e1.pseudo_regret.unwrap_or(e1.hindsight_regret));
    let ratio = fpp.mean / fe.mean;
    let ratio_se = ratio * ((fpp.stderr / fpp.mean).powi(2) + (fe.stderr / fe.mean).powi(2)).sqrt();

    let base = json!({
        "means": p.means, "replicates": p.replicates, "window": [t0, t1],
        "exp3pp_regret": [pp0.pseudo_regret.map(|r| r.mean), fpp.mean],
        "exp3_regret": [e0.pseudo_regret.map(|r| r.mean), fe.mean],
    });
    let with = |quantity: &str| {
        let mut v = base.clone();
        v["quantity"] = json!(quantity);
        v
    };
    let rows = vec![
        CheckRow::new(SUITE, with("exp3pp log-log slope"), Relation::AtMost, p.max_exp3pp_slope, s_pp, se_pp),
        CheckRow::new(SUITE, with("exp3 log-log slope"), Relation::AtLeast, p.min_exp3_slope, s_e, se_e),
        CheckRow::new(
            SUITE,
            with("final regret ratio exp3pp / exp3"),
            Relation::AtMost,
            p.max_final_ratio,
            ratio,
            ratio_se,
        ),
    ];
    Ok(SuiteReport {
        suite: SUITE.into(),
        rows,
    })
}
