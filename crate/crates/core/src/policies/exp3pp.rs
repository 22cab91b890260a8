use super::{expect_round, gibbs_into, mix_into, Policy, PolicyDiagnostics};
use crate::arms::{ArmId, Loss};
use crate::error::{Error, Result};
use crate::gap_estimator::{GapEstimator, GapEstimatorParams, XiRule};
use crate::prob::ProbVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exp3ppConfig {
    pub alpha: f64,
    pub beta: f64,
    pub xi: XiRule,
    /// Multiplier on the learning rate `0.5 sqrt(ln K / (t K))`.
    pub eta_scale: f64,
}

impl Default for Exp3ppConfig {
    fn default() -> Self {
        Self {
            alpha: 3.0,
            beta: 256.0,
            xi: XiRule::GapEstimate,
            eta_scale: 1.0,
        }
    }
}

/// EXP3++ with exploration driven by the unweighted gap estimator.
///
/// Rounds `1..=K` play arm `t - 1` with probability one so the gap estimator
/// sees every arm once; those plays also enter the importance-weighted
/// losses with weight 1. From round `K + 1` on the distribution is the Gibbs
/// distribution over importance-weighted cumulative losses, mixed with the
/// per-arm exploration floor `eps_t(a)`.
#[derive(Debug, Clone)]
pub struct Exp3pp {
    config: Exp3ppConfig,
    cumulative: Vec<f64>,
    gap: GapEstimator,
    eta_base: f64,
    eps: Vec<f64>,
    dist: ProbVector,
    dist_round: u64,
}

impl Exp3pp {
    pub fn new(num_arms: usize, config: Exp3ppConfig) -> Result<Self> {
        let params = GapEstimatorParams::new(config.alpha, config.beta, num_arms)?;
        if !(config.eta_scale > 0.0) || !config.eta_scale.is_finite() {
            return Err(Error::param("eta_scale", "must be finite and positive"));
        }
        if let XiRule::Fixed(x) = config.xi {
            if !(x >= 0.0) {
                return Err(Error::param("xi", format!("must be >= 0, got {x}")));
            }
        }
        let k = num_arms as f64;
        Ok(Self {
            config,
            cumulative: vec![0.0; num_arms],
            gap: GapEstimator::new(params),
            eta_base: config.eta_scale * 0.5 * (k.ln() / k).sqrt(),
            eps: vec![0.0; num_arms],
            dist: ProbVector::uniform(num_arms),
            dist_round: 0,
        })
    }

    /// Standard parametrization `alpha = 3`, `beta = 256`.
    pub fn standard(num_arms: usize) -> Result<Self> {
        Self::new(num_arms, Exp3ppConfig::default())
    }

    pub fn config(&self) -> &Exp3ppConfig {
        &self.config
    }

    /// Importance-weighted cumulative losses.
    pub fn cumulative_losses(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn gap_estimator(&self) -> &GapEstimator {
        &self.gap
    }

    /// Exploration rates of the last distribution handed out by `act`
    /// (zeros during initialization).
    pub fn last_epsilon(&self) -> &[f64] {
        &self.eps
    }

    fn compute(&mut self, round: u64) -> Result<()> {
        let k = self.num_arms();
        if round <= k as u64 {
            let probs = self.dist.as_mut_slice();
            probs.iter_mut().for_each(|p| *p = 0.0);
            probs[(round - 1) as usize] = 1.0;
            self.eps.iter_mut().for_each(|e| *e = 0.0);
        } else {
            let eps_total = self.gap.epsilon_with(round, self.config.xi, &mut self.eps)?;
            let eta = self.eta_base / (round as f64).sqrt();
            let probs = self.dist.as_mut_slice();
            gibbs_into(&self.cumulative, eta, probs);
            mix_into(probs, &self.eps, eps_total);
        }
        self.dist.debug_check();
        self.dist_round = round;
        Ok(())
    }
}

impl Policy for Exp3pp {
    fn num_arms(&self) -> usize {
        self.cumulative.len()
    }

    fn act(&mut self, round: u64) -> Result<&ProbVector> {
        expect_round(self.gap.next_round(), round)?;
        if self.dist_round != round {
            self.compute(round)?;
        }
        Ok(&self.dist)
    }

    fn update(&mut self, round: u64, arm: ArmId, loss: Loss) -> Result<()> {
        expect_round(self.gap.next_round(), round)?;
        let a = arm.index();
        if a >= self.num_arms() {
            return Err(Error::ArmOutOfRange {
                index: a,
                num_arms: self.num_arms(),
            });
        }
        if self.dist_round != round {
            self.compute(round)?;
        }
        let p = self.dist[a];
        if !(p > 0.0) {
            return Err(Error::ZeroProbability { arm: a, round });
        }
        self.cumulative[a] += loss.value() / p;
        self.gap.observe(arm, loss)
    }

    fn diagnostics(&self) -> PolicyDiagnostics {
        if !self.gap.is_initialized() {
            return PolicyDiagnostics::default();
        }
        let mut eps = vec![0.0; self.num_arms()];
        let next = self.gap.next_round();
        let ok = self.gap.epsilon_with(next, self.config.xi, &mut eps).is_ok();
        PolicyDiagnostics {
            dlcb: self.gap.settled_dlcb().ok(),
            epsilon: ok.then_some(eps),
        }
    }
}
