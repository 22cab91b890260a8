// The closed-form pieces: confidence intervals and gap lower bounds from
// arm statistics, the reciprocal-power sum, and the two tail bounds.

use gapbandit::confidence::{
    bernoulli_lower_tail_bound, bernstein_tail, confidence_radius, dlcb_vector, hoeffding_radius, lcb,
    reciprocal_power_sum, ucb, ArmStats, ConfidenceParams,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = ConfidenceParams::new(3.0, 2)?;
    let t = 10_000;
    let stats = [ArmStats::new(2000.0, 5000)?, ArmStats::new(3000.0, 5000)?];
    for (a, s) in stats.iter().enumerate() {
        println!(
            "arm {a}: mean {:.3}  radius {:.4}  [{:.4}, {:.4}]",
            s.mean(),
            confidence_radius(*s, t, &params),
            lcb(*s, t, &params),
            ucb(*s, t, &params)
        );
    }
    println!("gap lower bounds {:?}", dlcb_vector(&stats, t, &params)?);
    println!("hoeffding radius n=50 delta=0.01: {:.6}", hoeffding_radius(50, 0.01)?);
    println!("sum_(k=2..1000) k^-3 = {:.9}", reciprocal_power_sum(2, 1000, 3.0)?);
    println!("bernoulli tail bound n=200 gamma=0.05: {:.6}", bernoulli_lower_tail_bound(200, 0.05));
    println!("bernstein threshold nu=100 c=2 delta=0.01: {:.4}", bernstein_tail(100.0, 2.0, 0.01)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
