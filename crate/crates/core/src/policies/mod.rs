//! Playing strategies behind a common [`Policy`] interface.
//!
//! A round is driven in a fixed order: `act(t)` returns the sampling
//! distribution, the caller draws an arm from it, reveals that arm's loss and
//! calls `update(t, arm, loss)` exactly once.

mod exp3;
mod exp3pp;
mod lcb_greedy;

pub use exp3::Exp3;
pub use exp3pp::{Exp3pp, Exp3ppConfig};
pub use lcb_greedy::LcbGreedy;

use crate::arms::{ArmId, Loss};
use crate::error::{Error, Result};
use crate::prob::ProbVector;

pub trait Policy: Send {
    fn num_arms(&self) -> usize;

    /// Sampling distribution for `round`. Learning state is left untouched;
    /// `&mut` only lets the policy reuse its output buffer.
    fn act(&mut self, round: u64) -> Result<&ProbVector>;

    /// Feeds back the loss of the arm drawn from `act(round)`.
    fn update(&mut self, round: u64, arm: ArmId, loss: Loss) -> Result<()>;

    /// Per-arm diagnostics after the last update: gap estimates from all
    /// rounds played so far and the exploration rates of the next round.
    /// `None` for quantities the policy does not track.
    fn diagnostics(&self) -> PolicyDiagnostics {
        PolicyDiagnostics::default()
    }
}

impl<P: Policy + ?Sized> Policy for Box<P> {
    fn num_arms(&self) -> usize {
        (**self).num_arms()
    }

    fn act(&mut self, round: u64) -> Result<&ProbVector> {
        (**self).act(round)
    }

    fn update(&mut self, round: u64, arm: ArmId, loss: Loss) -> Result<()> {
        (**self).update(round, arm, loss)
    }

    fn diagnostics(&self) -> PolicyDiagnostics {
        (**self).diagnostics()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PolicyDiagnostics {
    pub dlcb: Option<Vec<f64>>,
    pub epsilon: Option<Vec<f64>>,
}

/// Learning rate `0.5 sqrt(ln K / (t K))`.
pub fn eta(t: u64, num_arms: usize) -> Result<f64> {
    if num_arms < 2 {
        return Err(Error::TooFewArms(num_arms));
    }
    if t == 0 {
        return Err(Error::param("t", "rounds are numbered from 1"));
    }
    let k = num_arms as f64;
    Ok(0.5 * (k.ln() / (t as f64 * k)).sqrt())
}

/// Exponential weights `exp(-eta L(a)) / sum_b exp(-eta L(b))`.
pub fn gibbs_distribution(cumulative: &[f64], eta: f64) -> Result<ProbVector> {
    if cumulative.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    if !(eta >= 0.0) || !eta.is_finite() {
        return Err(Error::param("eta", format!("must be finite and >= 0, got {eta}")));
    }
    if let Some(i) = cumulative.iter().position(|x| !x.is_finite()) {
        return Err(Error::param("cumulative", format!("entry {i} is not finite")));
    }
    let mut out = ProbVector::uniform(cumulative.len());
    gibbs_into(cumulative, eta, out.as_mut_slice());
    out.debug_check();
    Ok(out)
}

/// Writes the Gibbs weights into `out`. Exponents are shifted by the minimum
/// cumulative loss so the largest weight is exactly 1.
#[inline]
pub(crate) fn gibbs_into(cumulative: &[f64], eta: f64, out: &mut [f64]) {
    let min = cumulative.iter().copied().fold(f64::INFINITY, f64::min);
    let mut total = 0.0;
    for (o, &l) in out.iter_mut().zip(cumulative) {
        let w = (-eta * (l - min)).exp();
        *o = w;
        total += w;
    }
    let inv = 1.0 / total;
    out.iter_mut().for_each(|o| *o *= inv);
}

/// `(1 - sum_b eps(b)) rho(a) + eps(a)`.
pub fn mix_with_floor(rho: &ProbVector, eps: &[f64]) -> Result<ProbVector> {
    if rho.len() != eps.len() {
        return Err(Error::LengthMismatch {
            left: rho.len(),
            right: eps.len(),
        });
    }
    let total: f64 = eps.iter().sum();
    if eps.iter().any(|&e| !(e >= 0.0)) || total > 1.0 {
        return Err(Error::param("eps", "entries must be >= 0 with sum <= 1"));
    }
    let mut out = rho.clone();
    mix_into(out.as_mut_slice(), eps, total);
    Ok(out)
}

#[inline]
pub(crate) fn mix_into(rho: &mut [f64], eps: &[f64], eps_total: f64) {
    let keep = 1.0 - eps_total;
    for (r, &e) in rho.iter_mut().zip(eps) {
        *r = keep * *r + e;
    }
}

/// Importance-weighted loss vector: `loss / prob` at the played arm, zero
/// elsewhere.
pub fn importance_weighted(num_arms: usize, arm: ArmId, loss: Loss, prob: f64) -> Result<Vec<f64>> {
    if arm.index() >= num_arms {
        return Err(Error::ArmOutOfRange {
            index: arm.index(),
            num_arms,
        });
    }
    if !(prob > 0.0) {
        return Err(Error::ZeroProbability {
            arm: arm.index(),
            round: 0,
        });
    }
    let mut v = vec![0.0; num_arms];
    v[arm.index()] = loss.value() / prob;
    Ok(v)
}

fn expect_round(expected: u64, got: u64) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::RoundMismatch { expected, got })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn eta_values() {
        assert_abs_diff_eq!(eta(50, 2).unwrap(), 0.041628, epsilon = 1e-6);
        assert_abs_diff_eq!(eta(1, 2).unwrap(), 0.294353, epsilon = 1e-6);
        assert!(eta(10, 1).is_err());
        let mut prev = f64::INFINITY;
        for t in [1, 10, 100, 10_000, 1_000_000] {
            let e = eta(t, 5).unwrap();
            assert!(e < prev);
            prev = e;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn gibbs_examples() {
        let p = gibbs_distribution(&[0.0, 0.0, 0.0], 0.7).unwrap();
        for &x in p.as_slice() {
            assert_abs_diff_eq!(x, 1.0 / 3.0, epsilon = 1e-15);
        }
        let p = gibbs_distribution(&[0.0, 10.0], 0.1).unwrap();
        assert_abs_diff_eq!(p[0], 0.731059, epsilon = 1e-6);
        assert_abs_diff_eq!(p[1], 0.268941, epsilon = 1e-6);
    }

    #[test]
    fn gibbs_survives_huge_losses() {
        let p = gibbs_distribution(&[1e9, 1e9 + 1.0, 2e9], 1.0).unwrap();
        assert!(p.as_slice().iter().all(|x| x.is_finite()));
        assert_abs_diff_eq!(p[0], 1.0 / (1.0 + (-1.0f64).exp()), epsilon = 1e-12);
    }

    #[test]
    fn mixing_example() {
        let rho = ProbVector::point_mass(2, 0);
        let rho = mix_with_floor(&rho, &[0.0, 0.0]).unwrap();
        assert_eq!(rho.as_slice(), &[1.0, 0.0]);
        let rho = crate::prob::validate_distribution(&[0.9, 0.1]).unwrap();
        let mixed = mix_with_floor(&rho, &[0.03, 0.03]).unwrap();
        assert_abs_diff_eq!(mixed[0], 0.876, epsilon = 1e-12);
        assert_abs_diff_eq!(mixed[1], 0.124, epsilon = 1e-12);
        let uni = mix_with_floor(&ProbVector::uniform(4), &[0.1; 4]).unwrap();
        for &x in uni.as_slice() {
            assert_abs_diff_eq!(x, 0.25, epsilon = 1e-15);
        }
    }

    #[test]
    fn importance_weight_example() {
        let arm = ArmId::new(1, 2).unwrap();
        let v = importance_weighted(2, arm, Loss::new(0.8).unwrap(), 0.4).unwrap();
        assert_eq!(v[0], 0.0);
        assert_abs_diff_eq!(v[1], 2.0, epsilon = 1e-15);
        let z = importance_weighted(2, arm, Loss::ZERO, 0.4).unwrap();
        assert_eq!(z, vec![0.0, 0.0]);
    }

    proptest! {
        #[test]
        fn gibbs_shift_invariance(
            ticks in proptest::collection::vec(0u32..1_024_000, 2..12),
            eta in 0.0f64..0.5,
            up in proptest::bool::ANY,
        ) {
            // Losses on a 1/1024 grid so adding 1e6 is exact in f64.
            let l: Vec<f64> = ticks.iter().map(|&k| k as f64 / 1024.0).collect();
            let c = if up { 1e6 } else { -1e6 };
            let shifted: Vec<f64> = l.iter().map(|x| x + c).collect();
            let a = gibbs_distribution(&l, eta).unwrap();
            let b = gibbs_distribution(&shifted, eta).unwrap();
            for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
                prop_assert!((x - y).abs() <= 1e-12);
            }
        }

        #[test]
        fn mixing_keeps_floor_and_sum(
            raw in proptest::collection::vec(0.001f64..1.0, 2..10),
            e in 0.0f64..0.05,
        ) {
            let total: f64 = raw.iter().sum();
            let rho: Vec<f64> = raw.iter().map(|x| x / total).collect();
            let rho = crate::prob::validate_distribution(&rho).unwrap();
            let eps = vec![e; raw.len()];
            let mixed = mix_with_floor(&rho, &eps).unwrap();
            prop_assert!((mixed.as_slice().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            prop_assert!(mixed.as_slice().iter().all(|&p| p >= e));
        }

        /// Summing the importance-weighted vector over which arm was drawn,
        /// weighted by the draw probability, recovers the full loss vector.
        #[test]
        fn importance_weighting_is_unbiased(
            raw in proptest::collection::vec(0.001f64..1.0, 2..10),
            losses in proptest::collection::vec(0.0f64..=1.0, 10),
        ) {
            let k = raw.len();
            let total: f64 = raw.iter().sum();
            let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
            let mut expectation = vec![0.0; k];
            for a in 0..k {
                let est = importance_weighted(k, ArmId::new(a, k).unwrap(), Loss::new(losses[a]).unwrap(), p[a]).unwrap();
                for b in 0..k {
                    expectation[b] += p[a] * est[b];
                }
            }
            for b in 0..k {
                prop_assert!((expectation[b] - losses[b]).abs() <= 1e-12);
            }
        }
    }
}
