use serde::Serialize;

use super::RegretRecord;

/// Sample mean and its standard error (sample standard deviation over
/// `sqrt(n)`; zero for a single sample).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanSe {
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
}

impl MeanSe {
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len();
        if n == 0 {
            return Self {
                mean: f64::NAN,
                stderr: f64::NAN,
                n,
            };
        }
        let mean = xs.iter().sum::<f64>() / n as f64;
        let stderr = if n < 2 {
            0.0
        } else {
            let ss: f64 = xs.iter().map(|x| (x - mean).powi(2)).sum();
            (ss / (n - 1) as f64 / n as f64).sqrt()
        };
        Self { mean, stderr, n }
    }

    /// Frequency of `hits` among `n` trials with the binomial standard error.
    pub fn proportion(hits: u64, n: u64) -> Self {
        let p = hits as f64 / n as f64;
        Self {
            mean: p,
            stderr: (p * (1.0 - p) / n as f64).sqrt(),
            n: n as usize,
        }
    }
}

/// Replicate average of one policy at one checkpoint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub policy: String,
    pub t: u64,
    pub pseudo_regret: Option<MeanSe>,
    pub hindsight_regret: MeanSe,
}

/// Averages records over replicates. Policies keep their order of first
/// appearance; checkpoints are sorted.
pub fn summarize(records: &[RegretRecord]) -> Vec<CurvePoint> {
    let mut policies: Vec<&str> = Vec::new();
    for r in records {
        if !policies.contains(&r.policy.as_str()) {
            policies.push(&r.policy);
        }
    }
    let mut out = Vec::new();
    for policy in policies {
        let mut ts: Vec<u64> = records.iter().filter(|r| r.policy == policy).map(|r| r.t).collect();
        ts.sort_unstable();
        ts.dedup();
        for t in ts {
            let rows: Vec<&RegretRecord> = records.iter().filter(|r| r.policy == policy && r.t == t).collect();
            let pseudo: Option<Vec<f64>> = rows.iter().map(|r| r.pseudo_regret).collect();
            let hindsight: Vec<f64> = rows.iter().map(|r| r.hindsight_regret()).collect();
            out.push(CurvePoint {
                policy: policy.to_string(),
                t,
                pseudo_regret: pseudo.map(|p| MeanSe::from_samples(&p)),
                hindsight_regret: MeanSe::from_samples(&hindsight),
            });
        }
    }
    out
}

/// Slope of `log y` against `log t` between two points.
pub fn log_log_slope(t0: f64, y0: f64, t1: f64, y1: f64) -> f64 {
    (y1.ln() - y0.ln()) / (t1.ln() - t0.ln())
}
