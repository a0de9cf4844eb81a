//! Machine-readable run reports.
//!
//! One JSON document per run. Exact rationals serialize as "p/q" strings so
//! no precision is lost; records sort by instance digest so the report is
//! canonical regardless of processing order; every record embeds the full
//! serialized instance, which, together with the experiment descriptor, is
//! enough to replay both sides of the adjudication.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::lp::Rational;

/// Renders a rational as "numerator/denominator", always with the explicit
/// slash so consumers never have to guess the form.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Canonical digest of one adjudicated instance: the problem name, the
/// serialized instance, and the parameters it ran with.
pub fn instance_digest(problem: &str, instance: &str, k: Option<u32>, r: Option<u64>) -> String {
    let mut hasher = Sha256::new();
    hasher.update(problem.as_bytes());
    hasher.update(b"\n");
    hasher.update(instance.as_bytes());
    hasher.update(b"\n");
    hasher.update(format!("k={k:?} r={r:?}").as_bytes());
    hex::encode(hasher.finalize())
}

/// What was run: problem, instance source, parameters, and variant switches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentDescriptor {
    pub problem: String,
    pub source: String,
    pub k: Option<u32>,
    pub r: Option<u64>,
    pub pairing: String,
    pub beta_settlement: String,
}

/// The algorithm side of one adjudication. Fields not meaningful for a
/// given problem stay `None`/empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgorithmRecord {
    /// "yes"/"no" for decision problems.
    pub answer: Option<String>,
    /// Computed quantity for value problems (maximum clique size,
    /// interdicted flow value).
    pub value: Option<String>,
    /// Which route produced the answer: "relaxation" or a degenerate
    /// short-circuit.
    pub path: Option<String>,
    pub lp_status: Option<String>,
    /// Relaxation optimum as an exact "p/q" string.
    pub slp_optimum: Option<String>,
    pub settlement_passed: Option<bool>,
    /// Covering rows the rounded assignment violates (diagnostics).
    pub violated_rows: Vec<String>,
    /// Branch-and-bound nodes, where an integer program was solved.
    pub node_count: Option<u64>,
}

/// The oracle side of one adjudication.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub answer: Option<String>,
    pub value: Option<String>,
    /// Witness when the answer is yes: vertex list, assignment bits, or arc
    /// indices, depending on the problem.
    pub witness: Option<serde_json::Value>,
    pub work_count: Option<u64>,
}

/// One adjudicated instance: both verdicts plus everything needed to rerun
/// them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub digest: String,
    pub problem: String,
    /// Full serialized instance (DIMACS graph, DIMACS CNF, or network dump).
    pub instance: String,
    pub k: Option<u32>,
    pub r: Option<u64>,
    pub algorithm: AlgorithmRecord,
    pub oracle: OracleRecord,
    /// `None` when either side failed operationally (e.g. a guard tripped).
    pub agreement: Option<bool>,
    pub error: Option<String>,
    pub elapsed_micros: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    /// Instances examined (for searches this counts the whole scan, which
    /// may exceed the records kept).
    pub instances: u64,
    pub agreements: u64,
    pub disagreements: u64,
    pub errors: u64,
    /// Digest of the disagreement that sorts first, if any.
    pub first_disagreement: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: ExperimentDescriptor,
    pub records: Vec<InstanceRecord>,
    pub summary: Summary,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("failed to access {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed report: {0}")]
    Malformed(#[from] serde_json::Error),
}

impl Report {
    /// Assembles a report: records sort into canonical digest order and the
    /// summary is computed from them.
    pub fn assemble(experiment: ExperimentDescriptor, mut records: Vec<InstanceRecord>) -> Self {
        records.sort_by(|a, b| a.digest.cmp(&b.digest));
        let summary = summarize(&records, records.len() as u64);
        Report {
            experiment,
            records,
            summary,
        }
    }

    /// Like [`Report::assemble`] but for searches that keep only a subset
    /// of the scanned instances: the summary counts the whole scan.
    pub fn assemble_with_scan(
        experiment: ExperimentDescriptor,
        mut records: Vec<InstanceRecord>,
        scanned: u64,
        agreements: u64,
        errors: u64,
    ) -> Self {
        records.sort_by(|a, b| a.digest.cmp(&b.digest));
        let mut summary = summarize(&records, scanned);
        summary.agreements = agreements;
        summary.errors = errors;
        Report {
            experiment,
            records,
            summary,
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("report types always serialize");
        text.push('\n');
        text
    }

    pub fn from_json_str(text: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write_to(&self, path: &Path) -> Result<(), ReportError> {
        std::fs::write(path, self.to_json_string()).map_err(|source| ReportError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn read_from(path: &Path) -> Result<Self, ReportError> {
        let text = std::fs::read_to_string(path).map_err(|source| ReportError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    /// Copy with all timings zeroed, for golden-file comparisons.
    pub fn with_zeroed_timings(mut self) -> Self {
        for record in &mut self.records {
            record.elapsed_micros = 0;
        }
        self
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &InstanceRecord> {
        self.records
            .iter()
            .filter(|r| r.agreement == Some(false))
    }
}

fn summarize(records: &[InstanceRecord], instances: u64) -> Summary {
    let mut summary = Summary {
        instances,
        ..Summary::default()
    };
    for record in records {
        match record.agreement {
            Some(true) => summary.agreements += 1,
            Some(false) => {
                summary.disagreements += 1;
                if summary.first_disagreement.is_none() {
                    // Records are already in digest order.
                    summary.first_disagreement = Some(record.digest.clone());
                }
            }
            None => summary.errors += 1,
        }
    }
    summary
}
