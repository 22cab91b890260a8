// EXP3++ on an oblivious adversary whose best arm flips halfway through,
// compared with the worst-case regret bound `4 sqrt(K t ln K)`.

use gapbandit::environments::{AdversarialSpec, EnvironmentSpec, SwitchingGenerator};
use gapbandit::harness::{hindsight_regret, Game};
use gapbandit::policies::Exp3pp;
use gapbandit::validation::adversarial_regret_bound;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (k, horizon) = (3, 10_000);
    let env = EnvironmentSpec::Adversarial(AdversarialSpec::Switching(SwitchingGenerator::halfway(k, horizon)?));
    let mut game = Game::new(&env, Exp3pp::standard(k)?, 0, 1)?;
    for t in [1000, 5000, 6000, 8000, horizon] {
        game.run_until(t)?;
        let regret = hindsight_regret(game.realized_loss(), game.column_sums())?;
        println!(
            "t={t:>6}  regret {regret:>8.1}  bound {:>7.1}  plays {:?}",
            adversarial_regret_bound(k, t),
            game.counts()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
