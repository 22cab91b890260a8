use serde::{Deserialize, Serialize};

use super::LossStream;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum StochasticFamily {
    /// Loss 1 with probability `mu`, else 0.
    Bernoulli,
    /// Uniform on `[mu - h, mu + h]` with `h = min(half_width, mu, 1 - mu)`,
    /// so the support stays inside `[0, 1]` and the mean stays `mu`.
    ClippedUniform { half_width: f64 },
}

/// I.i.d. losses with per-arm means.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticSpec {
    means: Vec<f64>,
    family: StochasticFamily,
    widths: Vec<f64>,
}

impl StochasticSpec {
    pub fn new(means: Vec<f64>, family: StochasticFamily) -> Result<Self> {
        if means.len() < 2 {
            return Err(Error::TooFewArms(means.len()));
        }
        if let Some(m) = means.iter().find(|m| !(0.0..=1.0).contains(*m)) {
            return Err(Error::param("means", format!("{m} is outside [0, 1]")));
        }
        let widths = match family {
            StochasticFamily::Bernoulli => vec![0.0; means.len()],
            StochasticFamily::ClippedUniform { half_width } => {
                if !(half_width >= 0.0) {
                    return Err(Error::param("half_width", "must be >= 0"));
                }
                means.iter().map(|&m| half_width.min(m).min(1.0 - m)).collect()
            }
        };
        Ok(Self {
            means,
            family,
            widths,
        })
    }

    pub fn bernoulli(means: Vec<f64>) -> Result<Self> {
        Self::new(means, StochasticFamily::Bernoulli)
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn family(&self) -> StochasticFamily {
        self.family
    }

    pub fn num_arms(&self) -> usize {
        self.means.len()
    }

    #[inline]
    pub(super) fn fill(&self, stream: &mut LossStream, out: &mut [f64]) {
        match self.family {
            StochasticFamily::Bernoulli => {
                for (o, &m) in out.iter_mut().zip(&self.means) {
                    *o = if stream.next_unit() < m { 1.0 } else { 0.0 };
                }
            }
            StochasticFamily::ClippedUniform { .. } => {
                for ((o, &m), &h) in out.iter_mut().zip(&self.means).zip(&self.widths) {
                    *o = (m - h + 2.0 * h * stream.next_unit()).clamp(0.0, 1.0);
                }
            }
        }
    }
}

/// A stochastic environment whose first `budget` rounds are corrupted: the
/// best arm's loss is set to 1 and `bad_arm`'s loss to 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ContaminatedSpec {
    base: StochasticSpec,
    budget: u64,
    best_arm: usize,
    bad_arm: usize,
}

impl ContaminatedSpec {
    pub fn new(base: StochasticSpec, budget: u64, bad_arm: usize) -> Result<Self> {
        let best_arm = super::GroundTruth::from_means(base.means()).best_arm.index();
        if bad_arm >= base.num_arms() {
            return Err(Error::ArmOutOfRange {
                index: bad_arm,
                num_arms: base.num_arms(),
            });
        }
        if bad_arm == best_arm {
            return Err(Error::param("bad_arm", "must differ from the best arm"));
        }
        Ok(Self {
            base,
            budget,
            best_arm,
            bad_arm,
        })
    }

    pub fn base(&self) -> &StochasticSpec {
        &self.base
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn bad_arm(&self) -> usize {
        self.bad_arm
    }

    pub fn is_corrupted(&self, t: u64) -> bool {
        t <= self.budget
    }

    pub(super) fn fill(&self, t: u64, stream: &mut LossStream, out: &mut [f64]) {
        self.base.fill(stream, out);
        if self.is_corrupted(t) {
            out[self.best_arm] = 1.0;
            out[self.bad_arm] = 0.0;
        }
    }
}
