//! Oblivious loss generators.
//!
//! Every environment produces the full loss vector of a round, for all arms,
//! as a function of the round index and a keyed random stream only. Policies
//! never influence what the environment emits.

mod adversarial;
mod matrix;
mod stochastic;

pub use adversarial::{AdversarialSpec, SinusoidalGenerator, SwitchingGenerator};
pub use matrix::LossMatrix;
pub use stochastic::{ContaminatedSpec, StochasticFamily, StochasticSpec};

use rand::RngCore;
use rand_chacha::ChaCha8Rng;

use crate::arms::ArmId;
use crate::error::{Error, Result};
use crate::stream::{stream_rng, unit_f64};

#[derive(Debug, Clone, PartialEq)]
pub enum EnvironmentSpec {
    Stochastic(StochasticSpec),
    Adversarial(AdversarialSpec),
    Contaminated(ContaminatedSpec),
}

/// True gaps and best arm of a stochastic environment.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub gaps: Vec<f64>,
    pub best_arm: ArmId,
}

impl GroundTruth {
    pub(crate) fn from_means(means: &[f64]) -> Self {
        let best = (0..means.len()).fold(0, |b, a| if means[a] < means[b] { a } else { b });
        GroundTruth {
            gaps: means.iter().map(|&m| m - means[best]).collect(),
            best_arm: ArmId::from_index(best),
        }
    }

    /// Smallest positive gap, if any arm is suboptimal.
    pub fn min_positive_gap(&self) -> Option<f64> {
        self.gaps
            .iter()
            .copied()
            .filter(|&g| g > 0.0)
            .min_by(|a, b| a.total_cmp(b))
    }
}

impl EnvironmentSpec {
    pub fn num_arms(&self) -> usize {
        match self {
            EnvironmentSpec::Stochastic(s) => s.num_arms(),
            EnvironmentSpec::Adversarial(a) => a.num_arms(),
            EnvironmentSpec::Contaminated(c) => c.base().num_arms(),
        }
    }

    /// Last round the environment can produce, if bounded.
    pub fn horizon(&self) -> Option<u64> {
        match self {
            EnvironmentSpec::Adversarial(AdversarialSpec::Matrix(m)) => Some(m.horizon()),
            _ => None,
        }
    }

    pub fn is_stochastic(&self) -> bool {
        !matches!(self, EnvironmentSpec::Adversarial(_))
    }

    /// Full loss vector of round `t` (rounds start at 1).
    pub fn losses_at(&self, t: u64, stream: &mut LossStream, out: &mut [f64]) -> Result<()> {
        if t == 0 {
            return Err(Error::param("t", "rounds are numbered from 1"));
        }
        if out.len() != self.num_arms() {
            return Err(Error::LengthMismatch {
                left: out.len(),
                right: self.num_arms(),
            });
        }
        match self {
            EnvironmentSpec::Stochastic(s) => {
                stream.seek(t, out.len());
                s.fill(stream, out);
            }
            EnvironmentSpec::Adversarial(a) => a.fill(t, out)?,
            EnvironmentSpec::Contaminated(c) => {
                stream.seek(t, out.len());
                c.fill(t, stream, out);
            }
        }
        Ok(())
    }

    /// Convenience wrapper around [`losses_at`](Self::losses_at).
    pub fn loss_vector(&self, t: u64, stream: &mut LossStream) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.num_arms()];
        self.losses_at(t, stream, &mut out)?;
        Ok(out)
    }

    pub fn ground_truth(&self) -> Result<GroundTruth> {
        match self {
            EnvironmentSpec::Stochastic(s) => Ok(GroundTruth::from_means(s.means())),
            EnvironmentSpec::Contaminated(c) => Ok(GroundTruth::from_means(c.base().means())),
            EnvironmentSpec::Adversarial(_) => Err(Error::NotStochastic),
        }
    }
}

/// Random-access uniform stream: the draw for `(t, a)` is the
/// `((t-1) K + a)`-th 64-bit word of a ChaCha8 keystream. Sequential rounds
/// read the keystream in order without seeking.
#[derive(Debug, Clone)]
pub struct LossStream {
    rng: ChaCha8Rng,
}

impl LossStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: stream_rng(seed),
        }
    }

    fn seek(&mut self, t: u64, num_arms: usize) {
        // Word positions count 32-bit words; each draw consumes two.
        let pos = 2 * (t as u128 - 1) * num_arms as u128;
        if self.rng.get_word_pos() != pos {
            self.rng.set_word_pos(pos);
        }
    }

    #[inline]
    pub(crate) fn next_unit(&mut self) -> f64 {
        unit_f64(self.rng.next_u64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bernoulli(means: &[f64]) -> EnvironmentSpec {
        EnvironmentSpec::Stochastic(StochasticSpec::new(means.to_vec(), StochasticFamily::Bernoulli).unwrap())
    }

    #[test]
    fn degenerate_bernoulli() {
        let env = bernoulli(&[0.0, 1.0]);
        let mut s = LossStream::new(1);
        for t in 1..1000 {
            assert_eq!(env.loss_vector(t, &mut s).unwrap(), vec![0.0, 1.0]);
        }
    }

    #[test]
    fn bernoulli_mean() {
        // 3σ binomial interval at p = 0.4 over 10^6 draws is ±0.00147.
        let env = bernoulli(&[0.4, 0.5]);
        let mut s = LossStream::new(77);
        let mut out = [0.0; 2];
        let mut total = 0.0;
        let n = 1_000_000;
        for t in 1..=n {
            env.losses_at(t, &mut s, &mut out).unwrap();
            total += out[0];
        }
        let mean = total / n as f64;
        assert!((mean - 0.4).abs() <= 0.0015, "mean {mean}");
    }

    #[test]
    fn random_access_matches_sequential() {
        let env = bernoulli(&[0.3, 0.5, 0.7]);
        let mut seq = LossStream::new(5);
        let rows: Vec<Vec<f64>> = (1..=200).map(|t| env.loss_vector(t, &mut seq).unwrap()).collect();
        let mut fresh = LossStream::new(5);
        for t in [150u64, 3, 77, 200, 1, 1] {
            assert_eq!(env.loss_vector(t, &mut fresh).unwrap(), rows[t as usize - 1]);
        }
    }

    #[test]
    fn draws_are_uncorrelated_across_rounds() {
        let env = EnvironmentSpec::Stochastic(
            StochasticSpec::new(vec![0.5, 0.5], StochasticFamily::ClippedUniform { half_width: 0.5 }).unwrap(),
        );
        let mut s = LossStream::new(3);
        let x: Vec<f64> = (1..=100_000).map(|t| env.loss_vector(t, &mut s).unwrap()[1]).collect();
        let m = x.iter().sum::<f64>() / x.len() as f64;
        let var = x.iter().map(|v| (v - m).powi(2)).sum::<f64>();
        let cov = x.windows(2).map(|w| (w[0] - m) * (w[1] - m)).sum::<f64>();
        assert!((cov / var).abs() < 0.01, "lag-1 autocorrelation {}", cov / var);
    }

    #[test]
    fn ground_truth_examples() {
        let g = bernoulli(&[0.4, 0.6]).ground_truth().unwrap();
        assert_eq!(g.best_arm.index(), 0);
        assert!((g.gaps[1] - 0.2).abs() < 1e-15 && g.gaps[0] == 0.0);
        let g = bernoulli(&[0.5, 0.5, 0.5]).ground_truth().unwrap();
        assert_eq!(g.gaps, vec![0.0; 3]);
        assert_eq!(g.best_arm.index(), 0);
        assert_eq!(g.min_positive_gap(), None);
        let g = bernoulli(&[0.05, 0.95]).ground_truth().unwrap();
        assert!((g.gaps[1] - 0.9).abs() < 1e-15);
        let adv = EnvironmentSpec::Adversarial(AdversarialSpec::Switching(
            SwitchingGenerator::new(vec![0.2, 0.8], 10).unwrap(),
        ));
        assert!(matches!(adv.ground_truth(), Err(Error::NotStochastic)));
    }
}
