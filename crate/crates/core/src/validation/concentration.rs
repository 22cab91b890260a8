use rand::RngCore;
use serde_json::json;

use super::{CheckRow, Relation, SuiteReport};
use crate::confidence::{
    bernoulli_lower_tail_bound, bernstein_tail, lcb, reciprocal_power_sum, ucb, ArmStats, ConfidenceParams,
};
use crate::error::{Error, Result};
use crate::harness::MeanSe;
use crate::stream::{derive_stream_seed, stream_rng, unit_f64, Stream};

const COVERAGE_LANE: u64 = 1;
const THM_SB_LANE: u64 = 2;
const BERNSTEIN_LANE: u64 = 3;

fn rng(seed: u64, lane: u64, case: u64) -> Stream {
    stream_rng(derive_stream_seed(seed, lane, case))
}

#[inline]
fn unit(rng: &mut Stream) -> f64 {
    unit_f64(rng.next_u64())
}

/// Coverage of the upper and lower confidence bounds at round `t`.
///
/// Each replicate draws `t` fresh i.i.d. Bernoulli losses and counts a miss
/// if the bound computed from the first `s` of them fails for some
/// `s in 1..=t`, i.e. for whatever count the arm might have at round `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageParams {
    pub num_arms: usize,
    pub alpha: f64,
    pub means: Vec<f64>,
    pub rounds: Vec<u64>,
    pub replicates: u64,
}

impl Default for CoverageParams {
    fn default() -> Self {
        Self {
            num_arms: 2,
            alpha: 3.0,
            means: vec![0.5, 0.2],
            rounds: vec![10, 100],
            replicates: 100_000,
        }
    }
}

pub fn confidence_coverage(p: &CoverageParams, seed: u64) -> Result<SuiteReport> {
    const SUITE: &str = "confidence-coverage";
    let params = ConfidenceParams::new(p.alpha, p.num_arms)?;
    let mut rows = Vec::new();
    let mut case = 0;
    for &mu in &p.means {
        for &t in &p.rounds {
            if t < p.num_arms as u64 {
                return Err(Error::param("rounds", format!("t = {t} is below K")));
            }
            let mut rng = rng(seed, COVERAGE_LANE, case);
            case += 1;
            let (mut ucb_miss, mut lcb_miss) = (0u64, 0u64);
            for _ in 0..p.replicates {
                let (mut sum, mut low, mut high) = (0.0, false, false);
                for s in 1..=t {
                    sum += if unit(&mut rng) < mu { 1.0 } else { 0.0 };
                    let stats = ArmStats::from_parts(sum, s);
                    low |= ucb(stats, t, &params) <= mu;
                    high |= lcb(stats, t, &params) >= mu;
                }
                ucb_miss += low as u64;
                lcb_miss += high as u64;
            }
            let bound = 1.0 / (p.num_arms as f64 * (t as f64).powf(p.alpha - 1.0));
            for (event, misses) in [("ucb <= mu", ucb_miss), ("lcb >= mu", lcb_miss)] {
                let freq = MeanSe::proportion(misses, p.replicates);
                let params = json!({
                    "event": event, "mu": mu, "t": t, "K": p.num_arms, "alpha": p.alpha,
                    "replicates": p.replicates,
                });
                rows.push(CheckRow::new(SUITE, params, Relation::AtMost, bound, freq.mean, freq.stderr));
            }
        }
    }
    Ok(SuiteReport {
        suite: SUITE.into(),
        rows,
    })
}

/// Partial sums `sum_{k=m}^{n} k^-alpha` against `2 / m^(alpha-1)` and the
/// smaller constant `1 / (2 m^(alpha-1))`, which does not hold.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaSumParams {
    /// The single `(m, n, alpha)` case reported with its exact sum.
    pub example: (u64, u64, f64),
    pub alphas: Vec<f64>,
    pub max_m: u64,
    pub max_n: u64,
}

impl Default for LemmaSumParams {
    fn default() -> Self {
        Self {
            example: (2, 1000, 3.0),
            alphas: vec![2.0, 2.5, 3.0, 4.0],
            max_m: 100,
            max_n: 1_000_000,
        }
    }
}

pub fn lemma_sum(p: &LemmaSumParams) -> Result<SuiteReport> {
    const SUITE: &str = "lemma-sum";
    if p.max_m == 0 || p.max_n < p.max_m {
        return Err(Error::param("max_m", "need 1 <= max_m <= max_n"));
    }
    let mut rows = Vec::new();
    let (m, n, alpha) = p.example;
    let exact = reciprocal_power_sum(m, n, alpha)?;
    let scale = (m as f64).powf(alpha - 1.0);
    let params = json!({"m": m, "n": n, "alpha": alpha, "constant": "1/(2 m^(alpha-1))"});
    rows.push(CheckRow::new(SUITE, params, Relation::AtMost, 0.5 / scale, exact, 0.0).informational());
    let params = json!({"m": m, "n": n, "alpha": alpha, "constant": "2/m^(alpha-1)"});
    rows.push(CheckRow::new(SUITE, params, Relation::AtMost, 2.0 / scale, exact, 0.0));

    // Terms are positive, so n = max_n is the worst case for every m. Sums
    // for smaller m extend the tail by one term at a time.
    for &alpha in &p.alphas {
        let mut tail = reciprocal_power_sum(p.max_m, p.max_n, alpha)?;
        let mut worst = 0.0f64;
        for m in (1..=p.max_m).rev() {
            if m < p.max_m {
                tail += (m as f64).powf(-alpha);
            }
            worst = worst.max(tail * (m as f64).powf(alpha - 1.0));
        }
        for (constant, c, asserted) in [("1/(2 m^(alpha-1))", 0.5, false), ("2/m^(alpha-1)", 2.0, true)] {
            let params = json!({
                "alpha": alpha, "m_max": p.max_m, "n_max": p.max_n, "constant": constant,
                "empirical": "max over m of sum * m^(alpha-1)",
            });
            let row = CheckRow::new(SUITE, params, Relation::AtMost, c, worst, 0.0);
            rows.push(if asserted { row } else { row.informational() });
        }
    }
    Ok(SuiteReport {
        suite: SUITE.into(),
        rows,
    })
}

/// `P(Bin(n, p) <= k)` by summing the probability mass function upward.
pub fn binomial_lower_tail(n: u64, p: f64, k: u64) -> f64 {
    if p <= 0.0 {
        return 1.0;
    }
    if p >= 1.0 {
        return if k >= n { 1.0 } else { 0.0 };
    }
    let ratio = p / (1.0 - p);
    let mut term = (n as f64 * (1.0 - p).ln()).exp();
    let mut total = term;
    for i in 0..k.min(n) {
        term *= (n - i) as f64 / (i + 1) as f64 * ratio;
        total += term;
    }
    total.min(1.0)
}

/// Lower tail of a sum of `n` Bernoulli variables whose conditional success
/// probabilities are all at least `gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThmSbParams {
    pub n: u64,
    pub gamma: f64,
    pub replicates: u64,
}

impl Default for ThmSbParams {
    fn default() -> Self {
        Self {
            n: 200,
            gamma: 0.05,
            replicates: 100_000,
        }
    }
}

pub fn thm_sb(p: &ThmSbParams, seed: u64) -> Result<SuiteReport> {
    const SUITE: &str = "thm-sb";
    if p.n == 0 || !(p.gamma > 0.0 && p.gamma <= 1.0) {
        return Err(Error::param("gamma", "need n >= 1 and 0 < gamma <= 1"));
    }
    let bound = bernoulli_lower_tail_bound(p.n, p.gamma);
    let threshold = p.n as f64 * p.gamma / 2.0;
    let exact = binomial_lower_tail(p.n, p.gamma, threshold.floor() as u64);

    // i.i.d. case, and an adapted case where success probability doubles
    // right after a success (still never below gamma).
    let mut rows = Vec::new();
    for (case, adapted) in [false, true].into_iter().enumerate() {
        let mut rng = rng(seed, THM_SB_LANE, case as u64);
        let mut hits = 0u64;
        for _ in 0..p.replicates {
            let (mut sum, mut prob) = (0.0, p.gamma);
            for _ in 0..p.n {
                let x = unit(&mut rng) < prob;
                sum += x as u64 as f64;
                if adapted {
                    prob = if x { (2.0 * p.gamma).min(1.0) } else { p.gamma };
                }
            }
            hits += (sum <= threshold) as u64;
        }
        let freq = MeanSe::proportion(hits, p.replicates);
        let mut params = json!({
            "n": p.n, "gamma": p.gamma, "replicates": p.replicates,
            "sequence": if adapted { "adapted" } else { "iid" },
        });
        if !adapted {
            params["exact_tail"] = json!(exact);
        }
        rows.push(CheckRow::new(SUITE, params, Relation::AtMost, bound, freq.mean, freq.stderr));
    }
    let params = json!({"n": p.n, "gamma": p.gamma, "sequence": "iid", "empirical": "exact binomial tail"});
    rows.push(CheckRow::new(SUITE, params, Relation::AtMost, bound, exact, 0.0));
    Ok(SuiteReport {
        suite: SUITE.into(),
        rows,
    })
}

/// Upper deviations of a sum of i.i.d. uniform `[-1, 1]` increments, whose
/// variance sum is `n / 3` and range bound is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinParams {
    pub n: u64,
    pub deltas: Vec<f64>,
    pub replicates: u64,
}

impl Default for BernsteinParams {
    fn default() -> Self {
        Self {
            n: 100,
            deltas: vec![0.1, 0.01],
            replicates: 100_000,
        }
    }
}

pub fn bernstein(p: &BernsteinParams, seed: u64) -> Result<SuiteReport> {
    const SUITE: &str = "bernstein";
    let nu = p.n as f64 / 3.0;
    let mut rows = Vec::new();
    for (case, &delta) in p.deltas.iter().enumerate() {
        let threshold = bernstein_tail(nu, 1.0, delta)?;
        let mut rng = rng(seed, BERNSTEIN_LANE, case as u64);
        let mut hits = 0u64;
        for _ in 0..p.replicates {
            let s: f64 = (0..p.n).map(|_| 2.0 * unit(&mut rng) - 1.0).sum();
            hits += (s >= threshold) as u64;
        }
        let freq = MeanSe::proportion(hits, p.replicates);
        let params = json!({
            "n": p.n, "nu": nu, "c": 1.0, "delta": delta, "threshold": threshold,
            "replicates": p.replicates,
        });
        rows.push(CheckRow::new(SUITE, params, Relation::AtMost, delta, freq.mean, freq.stderr));
    }
    Ok(SuiteReport {
        suite: SUITE.into(),
        rows,
    })
}
