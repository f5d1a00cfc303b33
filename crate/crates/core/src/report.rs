//! Verification reports and their JSON / CSV forms.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::{GridRun, Skipped};
use crate::record::CheckRecord;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    /// Grid points left out because they are outside an identity's domain
    /// or fewer than two routes apply there.
    pub skipped: usize,
}

/// A remark attached to one identity, e.g. a domain restriction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Note {
    pub identity: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    /// RFC 3339.
    pub timestamp: String,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
    pub skipped: Vec<Skipped>,
    pub notes: Vec<Note>,
}

impl Report {
    pub fn new(records: Vec<CheckRecord>, skipped: Vec<Skipped>, notes: Vec<Note>) -> Self {
        let mut r = Report {
            tool_version: TOOL_VERSION.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            records,
            summary: Summary {
                total: 0,
                pass: 0,
                fail: 0,
                skipped: 0,
            },
            skipped,
            notes,
        };
        r.summary = r.tally();
        r
    }

    pub fn from_runs(runs: Vec<GridRun>) -> Self {
        let mut records = Vec::new();
        let mut skipped = Vec::new();
        let mut notes = Vec::new();
        for run in runs {
            if let Some(text) = run.note {
                notes.push(Note {
                    identity: run.identity.clone(),
                    text,
                });
            }
            records.extend(run.records);
            skipped.extend(run.skipped);
        }
        Report::new(records, skipped, notes)
    }

    /// Counts recomputed from the record and skip lists.
    pub fn tally(&self) -> Summary {
        let pass = self.records.iter().filter(|r| r.pass).count();
        Summary {
            total: self.records.len(),
            pass,
            fail: self.records.len() - pass,
            skipped: self.skipped.len(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("report: {e}")))
    }

    /// Columns `identity, param_1..param_k, lhs, rhs, abs_diff, rel_diff, pass`.
    /// Parameter cells read `name=value`; a transform pair is the last
    /// parameter, as `pair=power(r=0)`. Shorter rows are padded with empty cells.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let cells = |r: &CheckRecord| -> Vec<String> {
            let mut v: Vec<String> = r.params.iter().map(|p| format!("{}={}", p.name, p.value)).collect();
            if let Some(case) = &r.case {
                v.push(format!("pair={case}"));
            }
            v
        };
        let k = self.records.iter().map(|r| cells(r).len()).max().unwrap_or(0);
        let io = |e: csv::Error| Error::Io(e.to_string());

        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["identity".to_string()];
        header.extend((1..=k).map(|i| format!("param_{i}")));
        header.extend(["lhs", "rhs", "abs_diff", "rel_diff", "pass"].map(String::from));
        w.write_record(&header).map_err(io)?;
        for r in &self.records {
            let mut row = vec![r.identity.clone()];
            let mut c = cells(r);
            c.resize(k, String::new());
            row.extend(c);
            row.extend([
                csv_number(r.lhs_value),
                csv_number(r.rhs_value),
                csv_number(r.abs_diff),
                csv_number(r.rel_diff),
                r.pass.to_string(),
            ]);
            w.write_record(&row).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Io(e.to_string()))
    }
}

/// Shortest round-trip text, in exponent form outside [1e-4, 1e16).
fn csv_number(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}
