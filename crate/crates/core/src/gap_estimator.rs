//! Gap estimation from unweighted losses.
//!
//! The estimator plays alongside any randomized playing strategy. It first
//! needs one observation of every arm; afterwards, at round `t`, it turns the
//! per-arm statistics into gap lower bounds `DLCB_t(a)` and exploration rates
//!
//! ```text
//! xi_t(a)  = beta * ln t / (t * DLCB_t(a)^2)          (+inf when DLCB = 0)
//! eps_t(a) = min(1/(2K), 0.5 * sqrt(ln K / (t K)), xi_t(a))
//! ```
//!
//! All round-`t` quantities use statistics from rounds `1..t-1` only.

use crate::arms::{ArmId, Loss};
use crate::confidence::{dlcb_into, ArmStats, ConfidenceParams};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapEstimatorParams {
    confidence: ConfidenceParams,
    beta: f64,
}

impl GapEstimatorParams {
    /// Requires `alpha >= 3`, `beta >= 64 (alpha + 1)` and at least two arms.
    pub fn new(alpha: f64, beta: f64, num_arms: usize) -> Result<Self> {
        let confidence = ConfidenceParams::new(alpha, num_arms)?;
        let min_beta = 64.0 * (alpha + 1.0);
        if !(beta >= min_beta) || !beta.is_finite() {
            return Err(Error::param(
                "beta",
                format!("must be finite and >= 64 (alpha + 1) = {min_beta}, got {beta}"),
            ));
        }
        Ok(Self { confidence, beta })
    }

    /// `alpha = 3`, `beta = 256`.
    pub fn standard(num_arms: usize) -> Result<Self> {
        Self::new(3.0, 256.0, num_arms)
    }

    pub fn alpha(&self) -> f64 {
        self.confidence.alpha()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn num_arms(&self) -> usize {
        self.confidence.num_arms()
    }

    pub fn confidence(&self) -> &ConfidenceParams {
        &self.confidence
    }

    pub fn tmin_literal(&self, gap: f64) -> Result<u64> {
        tmin_literal(gap, self.num_arms(), self.beta)
    }

    pub fn tmin_crossing(&self, gap: f64) -> Result<u64> {
        tmin_crossing(gap, self.num_arms(), self.beta)
    }
}

/// How `xi_t(a)` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum XiRule {
    /// `beta ln t / (t DLCB_t(a)^2)` from the gap estimates.
    #[default]
    GapEstimate,
    /// The same value for every arm and round; any nonnegative value,
    /// including `+inf`, is allowed.
    Fixed(f64),
}

/// Unweighted loss bookkeeping for every arm.
#[derive(Debug, Clone)]
pub struct GapEstimator {
    params: GapEstimatorParams,
    sum_loss: Vec<f64>,
    counts: Vec<u64>,
    rounds: u64,
    uninitialized: usize,
}

impl GapEstimator {
    pub fn new(params: GapEstimatorParams) -> Self {
        let k = params.num_arms();
        Self {
            params,
            sum_loss: vec![0.0; k],
            counts: vec![0; k],
            rounds: 0,
            uninitialized: k,
        }
    }

    pub fn params(&self) -> &GapEstimatorParams {
        &self.params
    }

    pub fn num_arms(&self) -> usize {
        self.counts.len()
    }

    /// Rounds observed so far.
    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    /// Index of the round the estimates are computed for.
    pub fn next_round(&self) -> u64 {
        self.rounds + 1
    }

    pub fn is_initialized(&self) -> bool {
        self.uninitialized == 0
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn sum_losses(&self) -> &[f64] {
        &self.sum_loss
    }

    pub fn arm_stats(&self, arm: ArmId) -> Option<ArmStats> {
        let a = arm.index();
        (self.counts[a] > 0).then(|| ArmStats::from_parts(self.sum_loss[a], self.counts[a]))
    }

    pub fn observe(&mut self, arm: ArmId, loss: Loss) -> Result<()> {
        let a = arm.index();
        if a >= self.num_arms() {
            return Err(Error::ArmOutOfRange {
                index: a,
                num_arms: self.num_arms(),
            });
        }
        if self.counts[a] == 0 {
            self.uninitialized -= 1;
        }
        self.counts[a] += 1;
        self.sum_loss[a] += loss.value();
        self.rounds += 1;
        Ok(())
    }

    fn check_ready(&self, round: u64) -> Result<()> {
        if let Some(a) = self.counts.iter().position(|&n| n == 0) {
            return Err(Error::Uninitialized(a));
        }
        if round != self.next_round() {
            return Err(Error::RoundMismatch {
                expected: self.next_round(),
                got: round,
            });
        }
        Ok(())
    }

    /// `DLCB_round(a)` for every arm.
    pub fn dlcb(&self, round: u64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.num_arms()];
        self.dlcb_into(round, &mut out)?;
        Ok(out)
    }

    pub fn dlcb_into(&self, round: u64, out: &mut [f64]) -> Result<()> {
        self.check_ready(round)?;
        let half_log = self.params.confidence.half_log_term(round);
        dlcb_into(&self.sum_loss, &self.counts, half_log, out);
        Ok(())
    }

    /// `DLCB_t(a)` from the `t` rounds observed so far, with the confidence
    /// radius evaluated at `t` itself.
    pub fn settled_dlcb(&self) -> Result<Vec<f64>> {
        if let Some(a) = self.counts.iter().position(|&n| n == 0) {
            return Err(Error::Uninitialized(a));
        }
        let mut out = vec![0.0; self.num_arms()];
        let half_log = self.params.confidence.half_log_term(self.rounds);
        dlcb_into(&self.sum_loss, &self.counts, half_log, &mut out);
        Ok(out)
    }

    pub fn xi(&self, arm: ArmId, round: u64) -> Result<f64> {
        let dlcb = self.dlcb(round)?;
        let a = arm.index();
        if a >= dlcb.len() {
            return Err(Error::ArmOutOfRange {
                index: a,
                num_arms: dlcb.len(),
            });
        }
        Ok(xi_from_gap(self.params.beta, round, dlcb[a]))
    }

    /// `eps_round(a)` for every arm with the gap-estimate rule.
    pub fn epsilon(&self, round: u64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.num_arms()];
        self.epsilon_with(round, XiRule::GapEstimate, &mut out)?;
        Ok(out)
    }

    /// Fills `out` with exploration rates. Returns their sum.
    pub fn epsilon_with(&self, round: u64, rule: XiRule, out: &mut [f64]) -> Result<f64> {
        self.check_ready(round)?;
        let k = self.num_arms();
        let cap = exploration_cap(k, round);
        let mut total = 0.0;
        match rule {
            XiRule::Fixed(xi) => {
                let e = cap.min(xi.max(0.0));
                out.iter_mut().for_each(|o| *o = e);
                total = e * k as f64;
            }
            XiRule::GapEstimate => {
                let half_log = self.params.confidence.half_log_term(round);
                dlcb_into(&self.sum_loss, &self.counts, half_log, out);
                let scale = self.params.beta * (round as f64).ln() / round as f64;
                for o in out.iter_mut() {
                    // DLCB = 0 gives +inf, which drops out of the min.
                    let e = cap.min(scale / (*o * *o));
                    *o = e;
                    total += e;
                }
            }
        }
        Ok(total)
    }
}

/// `beta ln t / (t dlcb^2)`, `+inf` when `dlcb = 0`.
pub fn xi_from_gap(beta: f64, t: u64, dlcb: f64) -> f64 {
    if dlcb == 0.0 {
        return f64::INFINITY;
    }
    beta * (t as f64).ln() / (t as f64 * dlcb * dlcb)
}

/// `min(1/(2K), 0.5 sqrt(ln K / (t K)))`, the gap-independent part of the
/// exploration rate.
#[inline]
pub fn exploration_cap(num_arms: usize, t: u64) -> f64 {
    let k = num_arms as f64;
    (0.5 / k).min(0.5 * (k.ln() / (t as f64 * k)).sqrt())
}

/// `min(1/(2K), 0.5 sqrt(ln K / (t K)), xi)`.
pub fn exploration_rate(num_arms: usize, t: u64, xi: f64) -> f64 {
    exploration_cap(num_arms, t).min(xi)
}

fn check_tmin_inputs(gap: f64, num_arms: usize, beta: f64) -> Result<()> {
    if !(gap > 0.0 && gap <= 1.0) {
        return Err(Error::param("gap", format!("must lie in (0, 1], got {gap}")));
    }
    if num_arms < 2 {
        return Err(Error::TooFewArms(num_arms));
    }
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::param("beta", format!("must be positive, got {beta}")));
    }
    Ok(())
}

/// Smallest `t >= 2` with `t >= 4 K beta (ln t)^2 / (gap^4 ln K)`.
pub fn tmin_literal(gap: f64, num_arms: usize, beta: f64) -> Result<u64> {
    check_tmin_inputs(gap, num_arms, beta)?;
    let k = num_arms as f64;
    let c = 4.0 * k * beta / (gap.powi(4) * k.ln());
    Ok(first_true_from_two(|t| {
        let x = t as f64;
        let l = x.ln();
        x >= c * l * l
    }))
}

/// Smallest `t >= 2` with `beta ln t / (t gap^2) <= 0.5 sqrt(ln K / (t K))`,
/// the first round in which the gap-driven term undercuts the
/// gap-independent exploration cap.
pub fn tmin_crossing(gap: f64, num_arms: usize, beta: f64) -> Result<u64> {
    check_tmin_inputs(gap, num_arms, beta)?;
    Ok(first_true_from_two(|t| crossing_holds(gap, num_arms, beta, t)))
}

/// The crossing inequality evaluated exactly as stated.
pub fn crossing_holds(gap: f64, num_arms: usize, beta: f64, t: u64) -> bool {
    let x = t as f64;
    let k = num_arms as f64;
    beta * x.ln() / (x * gap * gap) <= 0.5 * (k.ln() / (x * k)).sqrt()
}

/// First integer `t >= 2` where `holds` is true.
///
/// Both t_min predicates compare a slowly growing function against one that
/// first falls and then rises; if the predicate is false at 2 it stays false
/// until a single crossing and true afterwards. That makes geometric
/// bracketing followed by bisection exact.
fn first_true_from_two(holds: impl Fn(u64) -> bool) -> u64 {
    if holds(2) {
        return 2;
    }
    let mut lo = 2u64; // false
    let mut hi = 4u64;
    while !holds(hi) {
        lo = hi;
        hi = hi.checked_mul(2).expect("t_min search overflowed u64");
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
