//! Probability vectors over arms and inverse-CDF sampling.

use rand::RngCore;

use crate::arms::ArmId;
use crate::error::{Error, Result};
use crate::stream::unit_f64;

/// Absolute tolerance on the sum of a probability vector.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// A distribution over `K` arms: nonnegative entries summing to one within
/// [`SUM_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    /// Uniform distribution over `num_arms` arms.
    pub fn uniform(num_arms: usize) -> Self {
        ProbVector(vec![1.0 / num_arms as f64; num_arms])
    }

    /// All mass on `arm`.
    pub fn point_mass(num_arms: usize, arm: usize) -> Self {
        let mut probs = vec![0.0; num_arms];
        probs[arm] = 1.0;
        ProbVector(probs)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, arm: ArmId) -> f64 {
        self.0[arm.index()]
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Write access for policies that refill a cached vector every round.
    /// The caller restores the invariant before handing the vector out.
    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub(crate) fn debug_check(&self) {
        debug_assert!(
            check(&self.0).is_ok(),
            "invalid distribution {:?}: {:?}",
            self.0,
            check(&self.0)
        );
    }
}

impl std::ops::Index<usize> for ProbVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

fn check(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    for (index, &value) in p.iter().enumerate() {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::InvalidProbability { index, value });
        }
    }
    let sum: f64 = p.iter().sum();
    let deviation = (sum - 1.0).abs();
    if deviation > SUM_TOLERANCE {
        return Err(Error::BadProbabilitySum { sum, deviation });
    }
    Ok(())
}

/// Checks nonnegativity and the sum invariant, reporting the first offending
/// index or the deviation of the sum.
pub fn validate_distribution(p: &[f64]) -> Result<ProbVector> {
    check(p)?;
    Ok(ProbVector(p.to_vec()))
}

/// Draws an arm by inverse CDF over arm index order.
pub fn sample_arm<R: RngCore + ?Sized>(p: &ProbVector, rng: &mut R) -> ArmId {
    ArmId::from_index(sample_index(p.as_slice(), unit_f64(rng.next_u64())))
}

/// Inverse CDF at `u ∈ [0, 1)`. If rounding leaves `u` past the accumulated
/// mass, the last arm with positive probability is returned.
pub(crate) fn sample_index(p: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (i, &pi) in p.iter().enumerate() {
        acc += pi;
        if u < acc {
            return i;
        }
    }
    p.iter().rposition(|&pi| pi > 0.0).unwrap_or(p.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::stream_rng;
    use proptest::prelude::*;

    #[test]
    fn accepts_valid_vectors() {
        assert!(validate_distribution(&[0.5, 0.5]).is_ok());
        assert!(validate_distribution(&[1.0, 0.0]).is_ok());
    }

    #[test]
    fn rejects_bad_sum() {
        match validate_distribution(&[0.6, 0.6]) {
            Err(Error::BadProbabilitySum { sum, .. }) => assert!((sum - 1.2).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_negative_entry_with_index() {
        match validate_distribution(&[1.5, -0.5]) {
            Err(Error::InvalidProbability { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            validate_distribution(&[]),
            Err(Error::EmptyDistribution)
        ));
    }

    #[test]
    fn point_masses_are_deterministic() {
        let mut rng = stream_rng(7);
        let first = validate_distribution(&[1.0, 0.0, 0.0]).unwrap();
        let second = validate_distribution(&[0.0, 1.0]).unwrap();
        for _ in 0..10_000 {
            assert_eq!(sample_arm(&first, &mut rng).index(), 0);
            assert_eq!(sample_arm(&second, &mut rng).index(), 1);
        }
    }

    #[test]
    fn fair_coin_frequency() {
        // 3σ binomial interval for 10^6 draws at p = 0.5 is ±0.0015.
        let p = ProbVector::uniform(2);
        let mut rng = stream_rng(2024);
        let draws = 1_000_000;
        let zeros = (0..draws)
            .filter(|_| sample_arm(&p, &mut rng).index() == 0)
            .count();
        let freq = zeros as f64 / draws as f64;
        assert!((0.498..=0.502).contains(&freq), "frequency {freq}");
    }

    #[test]
    fn frequencies_within_four_sigma() {
        let probs = [0.1, 0.25, 0.05, 0.6];
        let p = validate_distribution(&probs).unwrap();
        let mut rng = stream_rng(99);
        let draws = 1_000_000usize;
        let mut counts = [0usize; 4];
        for _ in 0..draws {
            counts[sample_arm(&p, &mut rng).index()] += 1;
        }
        for (a, &c) in counts.iter().enumerate() {
            let sd = (probs[a] * (1.0 - probs[a]) / draws as f64).sqrt();
            let freq = c as f64 / draws as f64;
            assert!((freq - probs[a]).abs() <= 4.0 * sd, "arm {a}: {freq}");
        }
    }

    #[test]
    fn rounding_fallback_skips_zero_tail() {
        assert_eq!(sample_index(&[0.3, 0.7 - 1e-13, 0.0], 0.999_999_999_999_99), 1);
    }

    proptest! {
        #[test]
        fn normalized_vectors_validate(raw in proptest::collection::vec(0.0f64..10.0, 1..50)) {
            let total: f64 = raw.iter().sum();
            prop_assume!(total > 1e-6);
            let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
            let v = validate_distribution(&p).unwrap();
            prop_assert!(v.as_slice().iter().all(|&x| x >= 0.0));
            prop_assert!((v.as_slice().iter().sum::<f64>() - 1.0).abs() <= SUM_TOLERANCE);
        }
    }
}
