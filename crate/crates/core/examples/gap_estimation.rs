// Feeds a gap estimator with uniformly random plays on a three-armed
// Bernoulli environment and prints how the gap lower bounds and exploration
// rates evolve.

use gapbandit::arms::Loss;
use gapbandit::environments::{EnvironmentSpec, LossStream, StochasticSpec};
use gapbandit::gap_estimator::{GapEstimator, GapEstimatorParams};
use gapbandit::prob::{sample_arm, ProbVector};
use gapbandit::stream::stream_rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let means = vec![0.2, 0.5, 0.8];
    let env = EnvironmentSpec::Stochastic(StochasticSpec::bernoulli(means.clone())?);
    let truth = env.ground_truth()?;
    let params = GapEstimatorParams::standard(means.len())?;
    let mut gap = GapEstimator::new(params);
    let mut stream = LossStream::new(1);
    let mut rng = stream_rng(2);
    let uniform = ProbVector::uniform(means.len());

    println!("true gaps {:?}", truth.gaps);
    let horizon = 100_000;
    let mut next_report = 10;
    for t in 1..=horizon {
        let losses = env.loss_vector(t, &mut stream)?;
        let arm = sample_arm(&uniform, &mut rng);
        gap.observe(arm, Loss::new(losses[arm.index()])?)?;
        if t == next_report && gap.is_initialized() {
            let round = gap.next_round();
            let fmt = |v: Vec<f64>| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ");
            println!("t={t:>6}  dlcb [{}]  eps [{}]", fmt(gap.dlcb(round)?), fmt(gap.epsilon(round)?));
            next_report *= 10;
        }
    }
    for &g in truth.gaps.iter().filter(|&&g| g > 0.0) {
        println!(
            "gap {g:.1}: tmin_literal {}  tmin_crossing {}",
            params.tmin_literal(g)?,
            params.tmin_crossing(g)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
