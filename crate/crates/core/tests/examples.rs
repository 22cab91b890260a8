//! Every example must keep running against the current library.

mod gap_estimation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gap_estimation.rs"));
}

mod exp3pp_stochastic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exp3pp_stochastic.rs"));
}

mod adversarial_switching {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/adversarial_switching.rs"));
}

mod contaminated {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/contaminated.rs"));
}

mod confidence_bounds {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/confidence_bounds.rs"));
}

mod validation_suite {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/validation_suite.rs"));
}

mod experiment_from_config {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/experiment_from_config.rs"));
}

mod loss_matrix {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/loss_matrix.rs"));
}

#[test]
fn gap_estimation_runs() {
    gap_estimation::run_example().expect("gap_estimation example failed");
}

#[test]
fn exp3pp_stochastic_runs() {
    exp3pp_stochastic::run_example().expect("exp3pp_stochastic example failed");
}

#[test]
fn adversarial_switching_runs() {
    adversarial_switching::run_example().expect("adversarial_switching example failed");
}

#[test]
fn contaminated_runs() {
    contaminated::run_example().expect("contaminated example failed");
}

#[test]
fn confidence_bounds_runs() {
    confidence_bounds::run_example().expect("confidence_bounds example failed");
}

#[test]
fn validation_suite_runs() {
    validation_suite::run_example().expect("validation_suite example failed");
}

#[test]
fn experiment_from_config_runs() {
    experiment_from_config::run_example().expect("experiment_from_config example failed");
}

#[test]
fn loss_matrix_runs() {
    loss_matrix::run_example().expect("loss_matrix example failed");
}
