use super::{expect_round, gibbs_into, Policy, PolicyDiagnostics};
use crate::arms::{ArmId, Loss};
use crate::error::{Error, Result};
use crate::prob::ProbVector;

/// EXP3 on losses: Gibbs weights over importance-weighted cumulative losses
/// with learning rate `sqrt(ln K / (t K))` and no exploration term.
#[derive(Debug, Clone)]
pub struct Exp3 {
    cumulative: Vec<f64>,
    rounds: u64,
    eta_base: f64,
    dist: ProbVector,
    dist_round: u64,
}

impl Exp3 {
    pub fn new(num_arms: usize) -> Result<Self> {
        Self::from_cumulative_losses(vec![0.0; num_arms], 0)
    }

    /// Resumes from given importance-weighted cumulative losses after
    /// `rounds` rounds.
    pub fn from_cumulative_losses(cumulative: Vec<f64>, rounds: u64) -> Result<Self> {
        let k = cumulative.len();
        if k < 2 {
            return Err(Error::TooFewArms(k));
        }
        if cumulative.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::param("cumulative", "entries must be finite and >= 0"));
        }
        let kf = k as f64;
        Ok(Self {
            cumulative,
            rounds,
            eta_base: (kf.ln() / kf).sqrt(),
            dist: ProbVector::uniform(k),
            dist_round: 0,
        })
    }

    pub fn cumulative_losses(&self) -> &[f64] {
        &self.cumulative
    }

    fn compute(&mut self, round: u64) {
        let eta = self.eta_base / (round as f64).sqrt();
        gibbs_into(&self.cumulative, eta, self.dist.as_mut_slice());
        self.dist.debug_check();
        self.dist_round = round;
    }
}

impl Policy for Exp3 {
    fn num_arms(&self) -> usize {
        self.cumulative.len()
    }

    fn act(&mut self, round: u64) -> Result<&ProbVector> {
        expect_round(self.rounds + 1, round)?;
        if self.dist_round != round {
            self.compute(round);
        }
        Ok(&self.dist)
    }

    fn update(&mut self, round: u64, arm: ArmId, loss: Loss) -> Result<()> {
        expect_round(self.rounds + 1, round)?;
        let a = arm.index();
        if a >= self.num_arms() {
            return Err(Error::ArmOutOfRange {
                index: a,
                num_arms: self.num_arms(),
            });
        }
        if self.dist_round != round {
            self.compute(round);
        }
        let p = self.dist[a];
        if !(p > 0.0) {
            return Err(Error::ZeroProbability { arm: a, round });
        }
        self.cumulative[a] += loss.value() / p;
        self.rounds += 1;
        Ok(())
    }

    fn diagnostics(&self) -> PolicyDiagnostics {
        PolicyDiagnostics {
            dlcb: None,
            epsilon: Some(vec![0.0; self.num_arms()]),
        }
    }
}
