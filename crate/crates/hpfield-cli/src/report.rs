//! Versioned JSON report envelope. Identical configs and seeds produce
//! byte-identical files apart from the `generated_at` timestamp: payloads
//! are plain structs with a fixed field order and carry no wall-clock data.

use std::path::{Path, PathBuf};

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub schema_version: u32,
    pub generated_at: String,
    pub command: String,
    pub seed: u64,
    pub report: T,
}

/// One check row shared by the verification and analysis reports.
#[derive(Serialize)]
pub struct CheckRow {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    pub samples: usize,
    pub max_residual: f64,
    pub status: String,
}

impl CheckRow {
    pub fn new(check: impl Into<String>, samples: usize, max_residual: f64, pass: bool) -> Self {
        CheckRow {
            check: check.into(),
            r: None,
            s: None,
            samples,
            max_residual,
            status: status(pass).to_string(),
        }
    }

    pub fn with_bidegree(mut self, r: usize, s: usize) -> Self {
        self.r = Some(r);
        self.s = Some(s);
        self
    }
}

pub fn status(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

/// Writes the payload under the envelope and returns the file path.
pub fn write<T: Serialize>(
    out: &Path,
    name: &str,
    command: &str,
    seed: u64,
    payload: T,
) -> anyhow::Result<PathBuf> {
    std::fs::create_dir_all(out)?;
    let report = Report {
        schema_version: SCHEMA_VERSION,
        generated_at: chrono::Utc::now().to_rfc3339(),
        command: command.to_string(),
        seed,
        report: payload,
    };
    let path = out.join(name);
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    std::fs::write(&path, json)?;
    Ok(path)
}
