use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gapbandit::environments::{AdversarialSpec, SinusoidalGenerator, SwitchingGenerator};
use gapbandit::error::Result;
use gapbandit::harness::{run_experiment, summarize, ExperimentConfig};
use gapbandit::validation::{validate_suite, SuiteOptions, SUITES};

#[derive(Parser)]
#[command(name = "gapbandit", version, about = "EXP3++ bandit experiments and bound checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config and write result CSVs plus a metadata sidecar.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the config's replicate count.
        #[arg(long)]
        reps: Option<u64>,
        /// Worker threads (default: available cores).
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// Run a validation suite and write its JSON report.
    Validate {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// Write an adversarial loss matrix file.
    Envgen {
        #[arg(long = "type", value_enum)]
        kind: Generator,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 2)]
        arms: usize,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
        /// First round of the reversed losses (switching; default: middle).
        #[arg(long)]
        t_switch: Option<u64>,
        #[arg(long, default_value_t = 1000.0)]
        period: f64,
        #[arg(long, default_value_t = 0.4)]
        amplitude: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    Switching,
    Sinusoidal,
}

fn default_parallelism() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run {
            config,
            out,
            seed,
            reps,
            parallel,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(r) = reps {
                cfg.replicates = r;
            }
            let output = run_experiment(&cfg, parallel.unwrap_or_else(default_parallelism))?;
            let files = output.write_to_dir(&cfg, &out)?;
            let last = cfg.checkpoint_rounds()?.last().copied();
            println!("{:<16} {:>10} {:>22} {:>22}", "policy", "t", "pseudo_regret", "hindsight_regret");
            for p in summarize(&output.records).iter().filter(|p| Some(p.t) == last) {
                let pseudo = p
                    .pseudo_regret
                    .map_or("-".to_string(), |r| format!("{:.3} ± {:.3}", r.mean, r.stderr));
                let h = p.hindsight_regret;
                println!(
                    "{:<16} {:>10} {:>22} {:>22}",
                    p.policy,
                    p.t,
                    pseudo,
                    format!("{:.3} ± {:.3}", h.mean, h.stderr)
                );
            }
            println!("wrote {}", files.results.display());
            if let Some(d) = files.diagnostics {
                println!("wrote {}", d.display());
            }
            println!("wrote {}", files.metadata.display());
            Ok(true)
        }
        Command::Validate {
            suite,
            out,
            seed,
            parallel,
        } => {
            let mut options = SuiteOptions::default();
            if let Some(s) = seed {
                options.seed = s;
            }
            if let Some(p) = parallel {
                options.parallelism = p;
            }
            let report = validate_suite(&suite, &options, out.as_deref())?;
            for row in &report.rows {
                let tag = if row.asserted { "" } else { " (informational)" };
                println!(
                    "{:?}{tag}: {:.6} {} {:.6} (stderr {:.2e}) {}",
                    row.verdict,
                    row.empirical,
                    serde_json::to_string(&row.relation)?.trim_matches('"'),
                    row.claimed_bound,
                    row.stderr,
                    row.params
                );
            }
            let passed = report.passed();
            println!("{suite}: {}", if passed { "HOLDS" } else { "VIOLATED" });
            Ok(passed)
        }
        Command::Envgen {
            kind,
            out,
            arms,
            horizon,
            t_switch,
            period,
            amplitude,
        } => {
            let spec = match kind {
                Generator::Switching => {
                    let g = SwitchingGenerator::halfway(arms, horizon)?;
                    let g = match t_switch {
                        Some(t) => SwitchingGenerator::new(g.before().to_vec(), t)?,
                        None => g,
                    };
                    AdversarialSpec::Switching(g)
                }
                Generator::Sinusoidal => AdversarialSpec::Sinusoidal(SinusoidalGenerator::new(arms, period, amplitude)?),
            };
            spec.to_matrix(horizon)?.save(&out)?;
            println!("wrote {} ({horizon} rounds, {arms} arms)", out.display());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
