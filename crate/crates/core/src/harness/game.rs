use crate::arms::{ArmId, Loss};
use crate::environments::{EnvironmentSpec, LossStream};
use crate::error::{Error, Result};
use crate::policies::Policy;
use crate::prob::sample_arm;
use crate::stream::{stream_rng, Stream};

/// One policy playing one environment, round by round.
///
/// The full loss vector of every round is generated, so the game tracks
/// per-arm cumulative losses for hindsight regret alongside the policy's own
/// realized loss and play counts.
pub struct Game<'e, P> {
    env: &'e EnvironmentSpec,
    policy: P,
    stream: LossStream,
    rng: Stream,
    losses: Vec<f64>,
    counts: Vec<u64>,
    column_sums: Vec<f64>,
    realized: f64,
    round: u64,
}

impl<'e, P: Policy> Game<'e, P> {
    /// `env_seed` keys the loss stream, `policy_seed` the arm draws.
    pub fn new(env: &'e EnvironmentSpec, policy: P, env_seed: u64, policy_seed: u64) -> Result<Self> {
        let k = env.num_arms();
        if policy.num_arms() != k {
            return Err(Error::LengthMismatch {
                left: policy.num_arms(),
                right: k,
            });
        }
        Ok(Self {
            env,
            policy,
            stream: LossStream::new(env_seed),
            rng: stream_rng(policy_seed),
            losses: vec![0.0; k],
            counts: vec![0; k],
            column_sums: vec![0.0; k],
            realized: 0.0,
            round: 0,
        })
    }

    /// Plays the next round and returns the arm drawn.
    pub fn step(&mut self) -> Result<ArmId> {
        let t = self.round + 1;
        self.env.losses_at(t, &mut self.stream, &mut self.losses)?;
        let arm = sample_arm(self.policy.act(t)?, &mut self.rng);
        let loss = self.losses[arm.index()];
        self.policy.update(t, arm, Loss::from_unit(loss))?;
        self.counts[arm.index()] += 1;
        self.realized += loss;
        for (s, &l) in self.column_sums.iter_mut().zip(&self.losses) {
            *s += l;
        }
        self.round = t;
        Ok(arm)
    }

    /// Plays until `round` rounds have been completed.
    pub fn run_until(&mut self, round: u64) -> Result<()> {
        while self.round < round {
            self.step()?;
        }
        Ok(())
    }

    /// Rounds played so far.
    pub fn round(&self) -> u64 {
        self.round
    }

    pub fn policy(&self) -> &P {
        &self.policy
    }

    /// Play counts `N_t(a)`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Per-arm cumulative losses over the rounds played.
    pub fn column_sums(&self) -> &[f64] {
        &self.column_sums
    }

    pub fn realized_loss(&self) -> f64 {
        self.realized
    }

    pub fn hindsight_best_loss(&self) -> f64 {
        self.column_sums.iter().copied().fold(f64::INFINITY, f64::min)
    }
}
