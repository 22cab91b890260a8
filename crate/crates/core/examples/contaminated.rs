// A stochastic environment whose first rounds are corrupted in favour of a
// bad arm. Prints how long each policy keeps paying for the corruption.

use gapbandit::environments::{ContaminatedSpec, EnvironmentSpec, StochasticSpec};
use gapbandit::harness::{pseudo_regret, Game};
use gapbandit::policies::{Exp3pp, LcbGreedy, Policy};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let base = StochasticSpec::bernoulli(vec![0.3, 0.7])?;
    let env = EnvironmentSpec::Contaminated(ContaminatedSpec::new(base, 2000, 1)?);
    let gaps = env.ground_truth()?.gaps;
    let policies: Vec<(&str, Box<dyn Policy>)> = vec![
        ("exp3pp", Box::new(Exp3pp::standard(2)?)),
        ("lcb_greedy", Box::new(LcbGreedy::new(2, 3.0)?)),
    ];
    for (seed, (name, policy)) in policies.into_iter().enumerate() {
        let mut game = Game::new(&env, policy, 3, seed as u64)?;
        print!("{name:<11}");
        for t in [1000, 2000, 5000, 20_000] {
            game.run_until(t)?;
            print!("  R({t}) = {:>7.1}", pseudo_regret(game.counts(), &gaps)?);
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
