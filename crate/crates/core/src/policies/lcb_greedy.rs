use super::{expect_round, Policy, PolicyDiagnostics};
use crate::arms::{ArmId, Loss};
use crate::confidence::{dlcb_into, ConfidenceParams};
use crate::error::{Error, Result};
use crate::prob::ProbVector;

/// Optimism for losses: after one pull of each arm, play the arm with the
/// smallest lower confidence bound (lowest index on ties).
#[derive(Debug, Clone)]
pub struct LcbGreedy {
    params: ConfidenceParams,
    sum_loss: Vec<f64>,
    counts: Vec<u64>,
    rounds: u64,
    dist: ProbVector,
    dist_round: u64,
}

impl LcbGreedy {
    pub fn new(num_arms: usize, alpha: f64) -> Result<Self> {
        Ok(Self {
            params: ConfidenceParams::new(alpha, num_arms)?,
            sum_loss: vec![0.0; num_arms],
            counts: vec![0; num_arms],
            rounds: 0,
            dist: ProbVector::point_mass(num_arms, 0),
            dist_round: 0,
        })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Arm played at `round`, from the statistics of earlier rounds.
    pub fn choose(&self, round: u64) -> usize {
        let k = self.counts.len();
        if round <= k as u64 {
            return (round - 1) as usize;
        }
        let half_log = self.params.half_log_term(round);
        let mut best = 0;
        let mut best_lcb = f64::INFINITY;
        for (a, (&s, &n)) in self.sum_loss.iter().zip(&self.counts).enumerate() {
            let n = n as f64;
            let l = (s / n - (half_log / n).sqrt()).max(0.0);
            if l < best_lcb {
                best_lcb = l;
                best = a;
            }
        }
        best
    }
}

impl Policy for LcbGreedy {
    fn num_arms(&self) -> usize {
        self.counts.len()
    }

    fn act(&mut self, round: u64) -> Result<&ProbVector> {
        expect_round(self.rounds + 1, round)?;
        if self.dist_round != round {
            let a = self.choose(round);
            let probs = self.dist.as_mut_slice();
            probs.iter_mut().for_each(|p| *p = 0.0);
            probs[a] = 1.0;
            self.dist_round = round;
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
        self.sum_loss[a] += loss.value();
        self.counts[a] += 1;
        self.rounds += 1;
        Ok(())
    }

    fn diagnostics(&self) -> PolicyDiagnostics {
        if self.counts.contains(&0) {
            return PolicyDiagnostics::default();
        }
        let played: u64 = self.counts.iter().sum();
        let mut d = vec![0.0; self.num_arms()];
        dlcb_into(&self.sum_loss, &self.counts, self.params.half_log_term(played), &mut d);
        PolicyDiagnostics {
            dlcb: Some(d),
            epsilon: None,
        }
    }
}
