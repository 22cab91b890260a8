use super::LossMatrix;
use crate::error::{Error, Result};

/// Deterministic loss sequences fixed before play.
#[derive(Debug, Clone, PartialEq)]
pub enum AdversarialSpec {
    Matrix(LossMatrix),
    Switching(SwitchingGenerator),
    Sinusoidal(SinusoidalGenerator),
}

impl AdversarialSpec {
    pub fn num_arms(&self) -> usize {
        match self {
            AdversarialSpec::Matrix(m) => m.num_arms(),
            AdversarialSpec::Switching(s) => s.before.len(),
            AdversarialSpec::Sinusoidal(s) => s.num_arms,
        }
    }

    pub(super) fn fill(&self, t: u64, out: &mut [f64]) -> Result<()> {
        match self {
            AdversarialSpec::Matrix(m) => out.copy_from_slice(m.row(t)?),
            AdversarialSpec::Switching(s) => s.fill(t, out),
            AdversarialSpec::Sinusoidal(s) => s.fill(t, out),
        }
        Ok(())
    }

    /// Materializes rounds `1..=horizon` as an explicit matrix.
    pub fn to_matrix(&self, horizon: u64) -> Result<LossMatrix> {
        let k = self.num_arms();
        let mut values = Vec::with_capacity(k * horizon as usize);
        let mut row = vec![0.0; k];
        for t in 1..=horizon {
            self.fill(t, &mut row)?;
            values.extend_from_slice(&row);
        }
        LossMatrix::from_flat(k, values)
    }
}

/// Plays `before` until round `t_switch - 1`, then the same row reversed, so
/// the best arm moves from one end to the other.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchingGenerator {
    before: Vec<f64>,
    t_switch: u64,
}

impl SwitchingGenerator {
    pub fn new(before: Vec<f64>, t_switch: u64) -> Result<Self> {
        if before.len() < 2 {
            return Err(Error::TooFewArms(before.len()));
        }
        if let Some(x) = before.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::LossOutOfRange(*x));
        }
        Ok(Self { before, t_switch })
    }

    /// Arm 0 at 0.2, the rest at 0.8, switching halfway through `horizon`.
    pub fn halfway(num_arms: usize, horizon: u64) -> Result<Self> {
        let mut row = vec![0.8; num_arms];
        if let Some(first) = row.first_mut() {
            *first = 0.2;
        }
        Self::new(row, horizon / 2 + 1)
    }

    pub fn before(&self) -> &[f64] {
        &self.before
    }

    pub fn t_switch(&self) -> u64 {
        self.t_switch
    }

    fn fill(&self, t: u64, out: &mut [f64]) {
        if t < self.t_switch {
            out.copy_from_slice(&self.before);
        } else {
            for (o, &x) in out.iter_mut().zip(self.before.iter().rev()) {
                *o = x;
            }
        }
    }
}

/// Oscillating per-arm mean `0.5 + amplitude sin(2π (t / period + a / K))`,
/// turned into a 0/1 loss by comparing against a golden-ratio dither
/// sequence. The running average of each arm tracks its mean curve and the
/// sequence is a fixed function of `(t, a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SinusoidalGenerator {
    num_arms: usize,
    period: f64,
    amplitude: f64,
}

const GOLDEN_FRACTION: f64 = 0.618_033_988_749_894_9;

impl SinusoidalGenerator {
    pub fn new(num_arms: usize, period: f64, amplitude: f64) -> Result<Self> {
        if num_arms < 2 {
            return Err(Error::TooFewArms(num_arms));
        }
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::param("period", "must be finite and positive"));
        }
        if !(0.0..=0.5).contains(&amplitude) {
            return Err(Error::param("amplitude", "must lie in [0, 0.5]"));
        }
        Ok(Self {
            num_arms,
            period,
            amplitude,
        })
    }

    pub fn mean(&self, t: u64, arm: usize) -> f64 {
        let phase = t as f64 / self.period + arm as f64 / self.num_arms as f64;
        0.5 + self.amplitude * (std::f64::consts::TAU * phase).sin()
    }

    fn fill(&self, t: u64, out: &mut [f64]) {
        let k = self.num_arms as u64;
        for (a, o) in out.iter_mut().enumerate() {
            let n = (t * k + a as u64) as f64;
            let dither = (n * GOLDEN_FRACTION).fract();
            *o = if dither < self.mean(t, a) { 1.0 } else { 0.0 };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{EnvironmentSpec, LossStream};
    use super::*;

    #[test]
    fn switching_example() {
        let env = EnvironmentSpec::Adversarial(AdversarialSpec::Switching(
            SwitchingGenerator::new(vec![0.2, 0.8], 50).unwrap(),
        ));
        let mut s = LossStream::new(0);
        assert_eq!(env.loss_vector(1, &mut s).unwrap(), vec![0.2, 0.8]);
        assert_eq!(env.loss_vector(49, &mut s).unwrap(), vec![0.2, 0.8]);
        assert_eq!(env.loss_vector(50, &mut s).unwrap(), vec![0.8, 0.2]);
        assert_eq!(env.loss_vector(1000, &mut s).unwrap(), vec![0.8, 0.2]);
    }

    #[test]
    fn adversarial_losses_ignore_stream() {
        let env = EnvironmentSpec::Adversarial(AdversarialSpec::Sinusoidal(
            SinusoidalGenerator::new(3, 100.0, 0.4).unwrap(),
        ));
        let (mut a, mut b) = (LossStream::new(1), LossStream::new(2));
        for t in 1..500 {
            assert_eq!(env.loss_vector(t, &mut a).unwrap(), env.loss_vector(t, &mut b).unwrap());
        }
    }

    #[test]
    fn sinusoidal_tracks_mean_over_a_window() {
        let g = SinusoidalGenerator::new(2, 1000.0, 0.4).unwrap();
        let env = EnvironmentSpec::Adversarial(AdversarialSpec::Sinusoidal(g.clone()));
        let mut s = LossStream::new(0);
        // Window around the peak of arm 0 (phase 1/4).
        let (lo, hi) = (200u64, 300u64);
        let realized: f64 = (lo..hi).map(|t| env.loss_vector(t, &mut s).unwrap()[0]).sum();
        let expected: f64 = (lo..hi).map(|t| g.mean(t, 0)).sum();
        assert!((realized - expected).abs() < 3.0, "{realized} vs {expected}");
    }

    #[test]
    fn materialized_matrix_matches_generator() {
        let spec = AdversarialSpec::Switching(SwitchingGenerator::halfway(3, 10).unwrap());
        let m = spec.to_matrix(10).unwrap();
        assert_eq!(m.horizon(), 10);
        assert_eq!(m.row(1).unwrap(), &[0.2, 0.8, 0.8]);
        assert_eq!(m.row(6).unwrap(), &[0.8, 0.8, 0.2]);
    }
}
