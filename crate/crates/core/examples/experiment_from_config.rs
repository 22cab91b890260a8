// Loads a JSON experiment config, runs it on two threads and writes the
// results CSV, diagnostics CSV and metadata sidecar.

use std::path::Path;

use gapbandit::harness::{run_experiment, summarize, ExperimentConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/two_arm_bernoulli.json");
    let mut config = ExperimentConfig::load(&path)?;
    config.horizon = 20_000;
    config.replicates = 8;
    config.diagnostics = true;
    let output = run_experiment(&config, 2)?;
    let files = output.write_to_dir(&config, &std::env::temp_dir().join("gapbandit-config-example"))?;
    for point in summarize(&output.records) {
        if let Some(r) = point.pseudo_regret {
            println!("{:<8} t={:>6}  {:>8.2} ± {:.2}", point.policy, point.t, r.mean, r.stderr);
        }
    }
    println!("{}", files.results.display());
    println!("{}", files.metadata.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
