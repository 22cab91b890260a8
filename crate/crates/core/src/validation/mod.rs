//! Monte-Carlo and exact checks of the probabilistic statements behind the
//! algorithm: confidence-bound coverage, gap-estimate accuracy, adversarial
//! regret, the reciprocal-power sum bound and two concentration inequalities.
//!
//! Every check produces [`CheckRow`]s comparing an empirical value against a
//! claimed bound with a fixed slack of three standard errors.

mod concentration;
mod gap;
mod regret;

pub use concentration::{
    bernstein, binomial_lower_tail, confidence_coverage, lemma_sum, thm_sb, BernsteinParams, CoverageParams,
    LemmaSumParams, ThmSbParams,
};
pub use gap::{proposition1_sandwich, proposition1_upper, SandwichParams, UpperParams};
pub use regret::{adversarial_regret_bound, theorem1_adversarial, theorem2_growth, AdversarialParams, GrowthParams};

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Slack, in standard errors, applied to every statistical verdict.
pub const SLACK_SE: f64 = 3.0;

pub const SUITES: [&str; 8] = [
    "confidence-coverage",
    "proposition1-upper",
    "proposition1-sandwich",
    "theorem1-adversarial",
    "lemma-sum",
    "thm-sb",
    "bernstein",
    "theorem2-growth",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "HOLDS")]
    Holds,
    #[serde(rename = "VIOLATED")]
    Violated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// The empirical value must not exceed the bound.
    #[serde(rename = "<=")]
    AtMost,
    /// The empirical value must reach the bound.
    #[serde(rename = ">=")]
    AtLeast,
}

/// One bound check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub suite: String,
    pub params: Value,
    pub claimed_bound: f64,
    pub empirical: f64,
    pub stderr: f64,
    pub verdict: Verdict,
    pub relation: Relation,
    /// Rows with `asserted = false` document a bound known not to hold and
    /// do not affect [`SuiteReport::passed`].
    pub asserted: bool,
    pub slack_se: f64,
}

impl CheckRow {
    pub fn new(suite: &str, params: Value, relation: Relation, claimed_bound: f64, empirical: f64, stderr: f64) -> Self {
        let holds = match relation {
            Relation::AtMost => empirical <= claimed_bound + SLACK_SE * stderr,
            Relation::AtLeast => empirical >= claimed_bound - SLACK_SE * stderr,
        };
        Self {
            suite: suite.to_string(),
            params,
            claimed_bound,
            empirical,
            stderr,
            verdict: if holds { Verdict::Holds } else { Verdict::Violated },
            relation,
            asserted: true,
            slack_se: SLACK_SE,
        }
    }

    pub fn informational(mut self) -> Self {
        self.asserted = false;
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub rows: Vec<CheckRow>,
}

impl SuiteReport {
    /// True when every asserted row holds.
    pub fn passed(&self) -> bool {
        self.rows.iter().filter(|r| r.asserted).all(CheckRow::holds)
    }

    /// Writes the rows as a JSON array to `<dir>/<suite>.json`.
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(format!("{}.json", self.suite));
        let mut text = serde_json::to_string_pretty(&self.rows)?;
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }
}

/// Settings shared by all suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Worker threads for suites that simulate full experiments.
    pub parallelism: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: 20_140_101,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

/// Runs a registered suite with its default parameters and, if `out_dir` is
/// given, writes its report there.
pub fn validate_suite(name: &str, options: &SuiteOptions, out_dir: Option<&Path>) -> Result<SuiteReport> {
    let seed = options.seed;
    let report = match name {
        "confidence-coverage" => confidence_coverage(&CoverageParams::default(), seed)?,
        "proposition1-upper" => proposition1_upper(&UpperParams::default(), seed)?,
        "proposition1-sandwich" => proposition1_sandwich(&SandwichParams::default(), seed)?,
        "theorem1-adversarial" => theorem1_adversarial(&AdversarialParams::default(), seed, options.parallelism)?,
        "lemma-sum" => lemma_sum(&LemmaSumParams::default())?,
        "thm-sb" => thm_sb(&ThmSbParams::default(), seed)?,
        "bernstein" => bernstein(&BernsteinParams::default(), seed)?,
        "theorem2-growth" => theorem2_growth(&GrowthParams::default(), seed, options.parallelism)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    if let Some(dir) = out_dir {
        report.write(dir)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn verdicts_use_three_standard_errors() {
        let r = CheckRow::new("s", json!({}), Relation::AtMost, 0.1, 0.12, 0.01);
        assert!(r.holds());
        let r = CheckRow::new("s", json!({}), Relation::AtMost, 0.1, 0.14, 0.01);
        assert!(!r.holds());
        let r = CheckRow::new("s", json!({}), Relation::AtLeast, 0.95, 0.93, 0.01);
        assert!(r.holds());
        let r = CheckRow::new("s", json!({}), Relation::AtLeast, 0.95, 0.91, 0.01);
        assert!(!r.holds());
    }

    #[test]
    fn informational_rows_do_not_fail_a_report() {
        let report = SuiteReport {
            suite: "s".into(),
            rows: vec![
                CheckRow::new("s", json!({}), Relation::AtMost, 0.125, 0.2, 0.0).informational(),
                CheckRow::new("s", json!({}), Relation::AtMost, 0.5, 0.2, 0.0),
            ],
        };
        assert!(report.passed());
    }

    #[test]
    fn report_json_layout() {
        let dir = tempfile::tempdir().unwrap();
        let report = SuiteReport {
            suite: "demo".into(),
            rows: vec![CheckRow::new("demo", json!({"n": 3}), Relation::AtMost, 1.0, 0.5, 0.0)],
        };
        let path = report.write(dir.path()).unwrap();
        let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        let row = &v[0];
        for key in ["suite", "params", "claimed_bound", "empirical", "stderr", "verdict"] {
            assert!(row.get(key).is_some(), "missing {key}");
        }
        assert_eq!(row["verdict"], "HOLDS");
        assert_eq!(row["relation"], "<=");
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            validate_suite("nope", &SuiteOptions::default(), None),
            Err(Error::UnknownSuite(_))
        ));
    }
}
