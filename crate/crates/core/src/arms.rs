//! Arm identifiers, bounded losses and play traces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an arm, validated against the arm count it was created for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArmId(usize);

impl ArmId {
    pub fn new(index: usize, num_arms: usize) -> Result<Self> {
        if num_arms < 2 {
            return Err(Error::TooFewArms(num_arms));
        }
        if index >= num_arms {
            return Err(Error::ArmOutOfRange { index, num_arms });
        }
        Ok(ArmId(index))
    }

    /// Skips the range check; callers guarantee `index < num_arms`.
    pub(crate) fn from_index(index: usize) -> Self {
        ArmId(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl std::fmt::Display for ArmId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A loss in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Loss(f64);

impl Loss {
    pub const ZERO: Loss = Loss(0.0);
    pub const ONE: Loss = Loss(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Loss(value))
        } else {
            Err(Error::LossOutOfRange(value))
        }
    }

    pub(crate) fn from_unit(value: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&value), "loss {value} outside [0,1]");
        Loss(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// One round of play: the round index, the arm drawn and the loss it revealed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlayRecord {
    pub round: u64,
    pub arm: ArmId,
    pub loss: Loss,
}

/// Sequence of plays with strictly increasing round numbers.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PlayTrace {
    records: Vec<PlayRecord>,
}

impl PlayTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: PlayRecord) -> Result<()> {
        if record.round == 0 {
            return Err(Error::param("round", "rounds are numbered from 1"));
        }
        if let Some(last) = self.records.last() {
            if record.round <= last.round {
                return Err(Error::RoundMismatch {
                    expected: last.round + 1,
                    got: record.round,
                });
            }
        }
        self.records.push(record);
        Ok(())
    }

    pub fn records(&self) -> &[PlayRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Total loss suffered over the trace.
    pub fn cumulative_loss(&self) -> f64 {
        self.records.iter().map(|r| r.loss.value()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arm_id_checks_range() {
        assert_eq!(ArmId::new(1, 2).unwrap().index(), 1);
        assert!(matches!(
            ArmId::new(2, 2),
            Err(Error::ArmOutOfRange { index: 2, num_arms: 2 })
        ));
        assert!(matches!(ArmId::new(0, 1), Err(Error::TooFewArms(1))));
    }

    #[test]
    fn loss_bounds() {
        assert!(Loss::new(0.0).is_ok());
        assert!(Loss::new(1.0).is_ok());
        assert!(Loss::new(-1e-9).is_err());
        assert!(Loss::new(1.0 + 1e-9).is_err());
        assert!(Loss::new(f64::NAN).is_err());
    }

    #[test]
    fn trace_rounds_strictly_increase() {
        let arm = ArmId::new(0, 2).unwrap();
        let mut trace = PlayTrace::new();
        trace
            .push(PlayRecord { round: 1, arm, loss: Loss::ONE })
            .unwrap();
        trace
            .push(PlayRecord { round: 3, arm, loss: Loss::ZERO })
            .unwrap();
        assert!(trace
            .push(PlayRecord { round: 3, arm, loss: Loss::ZERO })
            .is_err());
        assert_eq!(trace.len(), 2);
        assert_eq!(trace.cumulative_loss(), 1.0);
    }
}
