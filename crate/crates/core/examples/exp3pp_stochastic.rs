// EXP3++ against EXP3 and a confidence-bound greedy policy on a stochastic
// two-armed Bernoulli environment. All three face the same loss sequence.

use gapbandit::environments::{EnvironmentSpec, StochasticSpec};
use gapbandit::harness::{pseudo_regret, Game};
use gapbandit::policies::{Exp3, Exp3pp, LcbGreedy, Policy};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let env = EnvironmentSpec::Stochastic(StochasticSpec::bernoulli(vec![0.4, 0.6])?);
    let gaps = env.ground_truth()?.gaps;
    let horizon = 20_000;
    let policies: Vec<(&str, Box<dyn Policy>)> = vec![
        ("exp3pp", Box::new(Exp3pp::standard(2)?)),
        ("exp3", Box::new(Exp3::new(2)?)),
        ("lcb_greedy", Box::new(LcbGreedy::new(2, 3.0)?)),
    ];
    for (seed, (name, policy)) in policies.into_iter().enumerate() {
        let mut game = Game::new(&env, policy, 7, seed as u64)?;
        print!("{name:<11}");
        for t in [100, 1000, 10_000, horizon] {
            game.run_until(t)?;
            print!("  R({t}) = {:>7.1}", pseudo_regret(game.counts(), &gaps)?);
        }
        println!("  plays {:?}", game.counts());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
