//! Confidence bounds on mean losses and the concentration bounds used by the
//! validation suites.
//!
//! The bounds here work on unweighted sample statistics. For an arm with
//! `count` observations summing to `sum_loss`, at round `t`:
//!
//! ```text
//! radius = sqrt((alpha * ln t + ln K) / (2 * count))
//! UCB    = min(1, mean + radius)
//! LCB    = max(0, mean - radius)
//! DLCB_a = max(0, LCB_a - min_b UCB_b)
//! ```
//!
//! `alpha * ln t + ln K` is `alpha * ln(t * K^(1/alpha))` with the power taken
//! out of the logarithm.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceParams {
    alpha: f64,
    num_arms: usize,
    ln_arms: f64,
}

impl ConfidenceParams {
    pub fn new(alpha: f64, num_arms: usize) -> Result<Self> {
        if !(alpha >= 3.0) || !alpha.is_finite() {
            return Err(Error::param("alpha", format!("must be finite and >= 3, got {alpha}")));
        }
        if num_arms < 2 {
            return Err(Error::TooFewArms(num_arms));
        }
        Ok(Self {
            alpha,
            num_arms,
            ln_arms: (num_arms as f64).ln(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn num_arms(&self) -> usize {
        self.num_arms
    }

    /// `alpha * ln t + ln K / 2`, the per-round numerator shared by all arms;
    /// divide by `count` and take the square root to get the radius.
    #[inline]
    pub(crate) fn half_log_term(&self, t: u64) -> f64 {
        0.5 * (self.alpha * (t as f64).ln() + self.ln_arms)
    }
}

/// Unweighted statistics of one arm: cumulative loss and play count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmStats {
    sum_loss: f64,
    count: u64,
}

impl ArmStats {
    pub fn new(sum_loss: f64, count: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::param("count", "must be at least 1"));
        }
        if !(0.0..=count as f64).contains(&sum_loss) {
            return Err(Error::param(
                "sum_loss",
                format!("{sum_loss} not in [0, {count}]"),
            ));
        }
        Ok(Self { sum_loss, count })
    }

    pub(crate) fn from_parts(sum_loss: f64, count: u64) -> Self {
        debug_assert!(count >= 1);
        Self { sum_loss, count }
    }

    pub fn sum_loss(&self) -> f64 {
        self.sum_loss
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.sum_loss / self.count as f64
    }
}

/// Hoeffding deviation `sqrt(ln(1/delta) / (2n))` for `n` samples in `[0,1]`.
pub fn hoeffding_radius(n: u64, delta: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::param("n", "must be at least 1"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param("delta", format!("must lie in (0, 1), got {delta}")));
    }
    Ok(((1.0 / delta).ln() / (2.0 * n as f64)).sqrt())
}

/// Round-`t` confidence radius of an arm. `t` must be at least 1.
pub fn confidence_radius(stats: ArmStats, t: u64, params: &ConfidenceParams) -> f64 {
    debug_assert!(t >= 1);
    (params.half_log_term(t) / stats.count as f64).sqrt()
}

pub fn ucb(stats: ArmStats, t: u64, params: &ConfidenceParams) -> f64 {
    (stats.mean() + confidence_radius(stats, t, params)).min(1.0)
}

pub fn lcb(stats: ArmStats, t: u64, params: &ConfidenceParams) -> f64 {
    (stats.mean() - confidence_radius(stats, t, params)).max(0.0)
}

/// Gap lower confidence bounds for all arms at round `t`.
pub fn dlcb_vector(all_stats: &[ArmStats], t: u64, params: &ConfidenceParams) -> Result<Vec<f64>> {
    if all_stats.len() != params.num_arms {
        return Err(Error::LengthMismatch {
            left: all_stats.len(),
            right: params.num_arms,
        });
    }
    let mut out = vec![0.0; all_stats.len()];
    let half_log = params.half_log_term(t);
    let sums: Vec<f64> = all_stats.iter().map(|s| s.sum_loss).collect();
    let counts: Vec<u64> = all_stats.iter().map(|s| s.count).collect();
    dlcb_into(&sums, &counts, half_log, &mut out);
    Ok(out)
}

/// `max(0, LCB_a - min_b UCB_b)` for given bound vectors.
pub fn gap_lower_bounds(lcbs: &[f64], ucbs: &[f64]) -> Result<Vec<f64>> {
    if lcbs.len() != ucbs.len() || lcbs.is_empty() {
        return Err(Error::LengthMismatch {
            left: lcbs.len(),
            right: ucbs.len(),
        });
    }
    let min_ucb = ucbs.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(lcbs.iter().map(|&l| (l - min_ucb).max(0.0)).collect())
}

/// Allocation-free core of [`dlcb_vector`]; every count must be positive.
#[inline]
pub(crate) fn dlcb_into(sums: &[f64], counts: &[u64], half_log: f64, out: &mut [f64]) {
    let mut min_ucb = f64::INFINITY;
    for ((lcb_slot, &sum), &count) in out.iter_mut().zip(sums).zip(counts) {
        let n = count as f64;
        let mean = sum / n;
        let radius = (half_log / n).sqrt();
        min_ucb = min_ucb.min((mean + radius).min(1.0));
        *lcb_slot = (mean - radius).max(0.0);
    }
    for slot in out.iter_mut() {
        *slot = (*slot - min_ucb).max(0.0);
    }
}

/// `sum_{k=m}^{n} k^(-alpha)` by direct Neumaier-compensated summation,
/// smallest terms first.
pub fn reciprocal_power_sum(m: u64, n: u64, alpha: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::param("m", "must be at least 1"));
    }
    if n < m {
        return Err(Error::param("n", format!("must be >= m = {m}, got {n}")));
    }
    let mut sum = 0.0f64;
    let mut compensation = 0.0f64;
    for k in (m..=n).rev() {
        let term = (k as f64).powf(-alpha);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            compensation += (sum - t) + term;
        } else {
            compensation += (term - t) + sum;
        }
        sum = t;
    }
    Ok(sum + compensation)
}

/// `exp(-n * gamma / 8)`: bound on the probability that `n` Bernoulli
/// variables with conditional means at least `gamma` sum to at most `n*gamma/2`.
pub fn bernoulli_lower_tail_bound(n: u64, gamma: f64) -> f64 {
    (-(n as f64) * gamma / 8.0).exp()
}

/// Deviation threshold `sqrt(2 nu ln(1/delta)) + c ln(1/delta) / 3` of the
/// martingale Bernstein inequality.
pub fn bernstein_tail(nu: f64, c: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param("delta", format!("must lie in (0, 1), got {delta}")));
    }
    if !(nu >= 0.0) {
        return Err(Error::param("nu", format!("must be >= 0, got {nu}")));
    }
    if !(c > 0.0) {
        return Err(Error::param("c", format!("must be > 0, got {c}")));
    }
    let log_term = (1.0 / delta).ln();
    Ok((2.0 * nu * log_term).sqrt() + c * log_term / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn params() -> ConfidenceParams {
        ConfidenceParams::new(3.0, 2).unwrap()
    }

    fn stats(sum: f64, count: u64) -> ArmStats {
        ArmStats::new(sum, count).unwrap()
    }

    #[test]
    fn param_validation() {
        assert!(ConfidenceParams::new(2.9, 2).is_err());
        assert!(ConfidenceParams::new(3.0, 1).is_err());
        assert!(ArmStats::new(0.0, 0).is_err());
        assert!(ArmStats::new(5.5, 5).is_err());
    }

    #[test]
    fn hoeffding_values() {
        assert_abs_diff_eq!(hoeffding_radius(2, (-1.0f64).exp()).unwrap(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(hoeffding_radius(50, 0.01).unwrap(), 0.214597, epsilon = 1e-6);
        assert!(hoeffding_radius(1, 1.0 - 1e-15).unwrap() < 1e-7);
        assert!(hoeffding_radius(0, 0.5).is_err());
        assert!(hoeffding_radius(3, 0.0).is_err());
        assert!(hoeffding_radius(3, 1.0).is_err());
    }

    #[test]
    fn radius_matches_unsimplified_form() {
        let r = confidence_radius(stats(30.0, 100), 100, &params());
        assert_abs_diff_eq!(r, 0.269338, epsilon = 1e-6);
        let direct = (3.0 * (100.0 * 2f64.powf(1.0 / 3.0)).ln() / 200.0).sqrt();
        assert_abs_diff_eq!(r, direct, epsilon = 1e-12);
    }

    #[test]
    fn radius_monotonicity() {
        let p = params();
        let mut prev = f64::INFINITY;
        for count in [1u64, 2, 10, 100, 10_000, 1_000_000] {
            let r = confidence_radius(stats(0.0, count), 100, &p);
            assert!(r < prev);
            prev = r;
        }
        assert!(prev < 0.01);
        assert!(
            confidence_radius(stats(1.0, 10), 200, &p) > confidence_radius(stats(1.0, 10), 100, &p)
        );
    }

    #[test]
    fn ucb_examples() {
        let p = params();
        assert_abs_diff_eq!(ucb(stats(30.0, 100), 100, &p), 0.569338, epsilon = 1e-6);
        assert_abs_diff_eq!(confidence_radius(stats(3.0, 10), 100, &p), 0.851724, epsilon = 1e-6);
        assert_eq!(ucb(stats(3.0, 10), 100, &p), 1.0);
        assert_eq!(ucb(stats(100.0, 100), 100, &p), 1.0);
    }

    #[test]
    fn lcb_examples() {
        let p = params();
        assert_abs_diff_eq!(lcb(stats(30.0, 100), 100, &p), 0.030662, epsilon = 1e-6);
        assert_eq!(lcb(stats(0.0, 100), 100, &p), 0.0);
    }

    #[test]
    fn dlcb_from_given_bounds() {
        let d = gap_lower_bounds(&[0.55, 0.10], &[0.90, 0.30]).unwrap();
        assert_abs_diff_eq!(d[0], 0.25, epsilon = 1e-12);
        assert_eq!(d[1], 0.0);
        // LCB(0) = 0.2 below min UCB 0.5 clamps to zero.
        assert_eq!(gap_lower_bounds(&[0.2, 0.0], &[0.9, 0.5]).unwrap()[0], 0.0);
        assert!(gap_lower_bounds(&[0.1], &[0.2, 0.3]).is_err());
    }

    #[test]
    fn dlcb_vector_matches_bound_composition() {
        let p = params();
        let s = [stats(60.0, 100), stats(5.0, 40)];
        let l: Vec<f64> = s.iter().map(|&x| lcb(x, 300, &p)).collect();
        let u: Vec<f64> = s.iter().map(|&x| ucb(x, 300, &p)).collect();
        assert_eq!(dlcb_vector(&s, 300, &p).unwrap(), gap_lower_bounds(&l, &u).unwrap());
    }

    #[test]
    fn dlcb_identical_stats_are_zero() {
        let s = vec![stats(40.0, 100); 4];
        let p = ConfidenceParams::new(3.0, 4).unwrap();
        assert!(dlcb_vector(&s, 500, &p).unwrap().iter().all(|&d| d == 0.0));
    }

    #[test]
    fn dlcb_rejects_missing_arms() {
        assert!(dlcb_vector(&[stats(1.0, 2)], 10, &params()).is_err());
    }

    #[test]
    fn reciprocal_sums() {
        assert_eq!(reciprocal_power_sum(1, 1, 2.0).unwrap(), 1.0);
        let s = reciprocal_power_sum(2, 1000, 3.0).unwrap();
        assert_abs_diff_eq!(s, 0.202056, epsilon = 1e-6);
        assert!(s <= 0.5 && s > 0.125);
        // Brute force in the opposite order.
        let forward: f64 = (2..=1000u64).map(|k| 1.0 / (k as f64).powi(3)).sum();
        assert_abs_diff_eq!(s, forward, epsilon = 1e-14);
        assert!(reciprocal_power_sum(0, 3, 2.0).is_err());
        assert!(reciprocal_power_sum(4, 3, 2.0).is_err());
    }

    #[test]
    fn bernoulli_tail_values() {
        assert_abs_diff_eq!(bernoulli_lower_tail_bound(200, 0.05), 0.286505, epsilon = 1e-6);
        assert_abs_diff_eq!(bernoulli_lower_tail_bound(1, 1e-12), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(bernoulli_lower_tail_bound(1000, 0.1), 3.7267e-6, epsilon = 1e-9);
    }

    #[test]
    fn bernstein_values() {
        assert_abs_diff_eq!(bernstein_tail(100.0, 2.0, 0.01).unwrap(), 33.4186, epsilon = 1e-4);
        assert!(bernstein_tail(5.0, 1.0, 1.0 - 1e-15).unwrap() < 1e-6);
        assert_abs_diff_eq!(
            bernstein_tail(0.0, 3.0, (-1.0f64).exp()).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert!(bernstein_tail(1.0, 1.0, 1.5).is_err());
    }

    proptest! {
        #[test]
        fn bound_ordering(count in 1u64..10_000, frac in 0.0f64..=1.0, t in 1u64..10_000_000, alpha in 3.0f64..8.0) {
            let p = ConfidenceParams::new(alpha, 3).unwrap();
            let s = ArmStats::new(frac * count as f64, count).unwrap();
            let (l, u) = (lcb(s, t, &p), ucb(s, t, &p));
            let m = s.mean().clamp(0.0, 1.0);
            prop_assert!(0.0 <= l && l <= m && m <= u && u <= 1.0);
        }

        #[test]
        fn dlcb_in_unit_interval_and_min_ucb_arm_zero(
            raw in proptest::collection::vec((1u64..500, 0.0f64..=1.0), 2..8),
            t in 2u64..100_000,
        ) {
            let p = ConfidenceParams::new(3.0, raw.len()).unwrap();
            let s: Vec<ArmStats> = raw.iter().map(|&(c, f)| ArmStats::new(f * c as f64, c).unwrap()).collect();
            let d = dlcb_vector(&s, t, &p).unwrap();
            prop_assert!(d.iter().all(|&x| (0.0..=1.0).contains(&x)));
            let ucbs: Vec<f64> = s.iter().map(|&x| ucb(x, t, &p)).collect();
            let best = (0..ucbs.len()).fold(0, |b, i| if ucbs[i] < ucbs[b] { i } else { b });
            prop_assert_eq!(d[best], 0.0);
        }
    }

    #[test]
    fn corrected_constant_holds_on_grid() {
        for alpha in [2.0, 2.5, 3.0, 4.0] {
            for m in [1u64, 2, 3, 10, 50, 100] {
                let s = reciprocal_power_sum(m, 20_000, alpha).unwrap();
                assert!(s <= 2.0 / (m as f64).powf(alpha - 1.0), "alpha {alpha} m {m}");
            }
        }
    }
}
