use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Explicit loss matrix: one row per round, one column per arm.
///
/// Text form: one round per line, `K` values in `[0, 1]` separated by commas,
/// semicolons, tabs or spaces. Blank lines and lines starting with `#` are
/// skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct LossMatrix {
    num_arms: usize,
    values: Vec<f64>,
}

impl LossMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.first().map_or(0, Vec::len);
        let mut values = Vec::with_capacity(k * rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::MatrixParse {
                    line: i + 1,
                    reason: format!("expected {k} values, found {}", row.len()),
                });
            }
            values.extend_from_slice(row);
        }
        Self::from_flat(k, values)
    }

    pub(crate) fn from_flat(num_arms: usize, values: Vec<f64>) -> Result<Self> {
        if num_arms < 2 {
            return Err(Error::TooFewArms(num_arms));
        }
        if values.is_empty() {
            return Err(Error::MatrixParse {
                line: 0,
                reason: "matrix has no rows".into(),
            });
        }
        if let Some(i) = values.iter().position(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::MatrixParse {
                line: i / num_arms + 1,
                reason: format!("loss {} outside [0, 1]", values[i]),
            });
        }
        Ok(Self { num_arms, values })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut num_arms = None;
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
                .filter(|f| !f.is_empty())
                .map(|f| {
                    f.parse::<f64>().map_err(|e| Error::MatrixParse {
                        line: i + 1,
                        reason: format!("`{f}`: {e}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            match num_arms {
                None => num_arms = Some(row.len()),
                Some(k) if k != row.len() => {
                    return Err(Error::MatrixParse {
                        line: i + 1,
                        reason: format!("expected {k} values, found {}", row.len()),
                    })
                }
                _ => {}
            }
            if let Some(x) = row.iter().find(|x| !(0.0..=1.0).contains(*x)) {
                return Err(Error::MatrixParse {
                    line: i + 1,
                    reason: format!("loss {x} outside [0, 1]"),
                });
            }
            values.extend(row);
        }
        Self::from_flat(num_arms.unwrap_or(0), values)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// Comma-separated text, one round per line.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.values.len() * 6);
        for row in self.values.chunks(self.num_arms) {
            for (i, x) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{x}");
            }
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn num_arms(&self) -> usize {
        self.num_arms
    }

    pub fn horizon(&self) -> u64 {
        (self.values.len() / self.num_arms) as u64
    }

    pub fn row(&self, t: u64) -> Result<&[f64]> {
        if t == 0 || t > self.horizon() {
            return Err(Error::BeyondHorizon {
                round: t,
                horizon: self.horizon(),
            });
        }
        let start = (t as usize - 1) * self.num_arms;
        Ok(&self.values[start..start + self.num_arms])
    }
}
