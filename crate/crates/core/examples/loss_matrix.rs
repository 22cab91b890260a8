// Materializes a sinusoidal adversary as an explicit loss matrix, saves it,
// loads it back and plays EXP3++ against the loaded copy.

use gapbandit::environments::{AdversarialSpec, EnvironmentSpec, LossMatrix, SinusoidalGenerator};
use gapbandit::harness::{hindsight_regret, Game};
use gapbandit::policies::Exp3pp;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let horizon = 5000;
    let spec = AdversarialSpec::Sinusoidal(SinusoidalGenerator::new(4, 500.0, 0.4)?);
    let path = std::env::temp_dir().join("gapbandit-sinusoidal.csv");
    spec.to_matrix(horizon)?.save(&path)?;

    let matrix = LossMatrix::load(&path)?;
    println!("loaded {} rounds x {} arms from {}", matrix.horizon(), matrix.num_arms(), path.display());
    let env = EnvironmentSpec::Adversarial(AdversarialSpec::Matrix(matrix));
    let mut game = Game::new(&env, Exp3pp::standard(4)?, 0, 5)?;
    game.run_until(horizon)?;
    println!(
        "regret after {horizon} rounds: {:.1}",
        hindsight_regret(game.realized_loss(), game.column_sums())?
    );
    println!("rounds beyond the matrix are rejected: {}", game.step().is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
