// Runs reduced versions of the validation suites and writes their JSON
// reports. `gapbandit validate --suite NAME` runs the full-size versions.

use gapbandit::validation::{
    bernstein, lemma_sum, proposition1_upper, thm_sb, BernsteinParams, LemmaSumParams, ThmSbParams, UpperParams,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::temp_dir().join("gapbandit-validation-example");
    let reports = [
        lemma_sum(&LemmaSumParams {
            max_n: 100_000,
            ..LemmaSumParams::default()
        })?,
        thm_sb(
            &ThmSbParams {
                replicates: 20_000,
                ..ThmSbParams::default()
            },
            1,
        )?,
        bernstein(
            &BernsteinParams {
                replicates: 20_000,
                ..BernsteinParams::default()
            },
            1,
        )?,
        proposition1_upper(
            &UpperParams {
                replicates: 500,
                ..UpperParams::default()
            },
            1,
        )?,
    ];
    for report in &reports {
        let path = report.write(&out)?;
        println!("{:<20} passed={}  {}", report.suite, report.passed(), path.display());
        for row in &report.rows {
            let note = if row.asserted { "" } else { "  (documented, not asserted)" };
            println!("    {:?}: {:.6} vs {:.6}{note}", row.verdict, row.empirical, row.claimed_bound);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
