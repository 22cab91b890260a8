//! EXP3++ and baseline multi-armed bandit policies, the gap estimator they
//! share, stochastic and adversarial loss environments, a reproducible
//! experiment harness and validation suites for the concentration and regret
//! bounds the algorithm relies on.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod arms;
pub mod confidence;
pub mod environments;
pub mod error;
pub mod gap_estimator;
pub mod harness;
pub mod policies;
pub mod prob;
pub mod stream;
pub mod validation;
