//! Machine-readable run documents and their human-readable rendering.

use fefferman_core::tensor::TensorField;
use fefferman_core::verify::{ResidualSummary, Status, VerificationReport, FORMAT_VERSION};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Everything one `verify` or `kostant` invocation produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunDocument {
    pub format_version: u32,
    pub command: String,
    pub subject: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub reports: Vec<VerificationReport>,
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("not a report document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("report format_version {found} is not supported (expected {FORMAT_VERSION})")]
    Version { found: u32 },
}

impl RunDocument {
    pub fn new(command: &str, subject: String, notes: Vec<String>, reports: Vec<VerificationReport>) -> Self {
        RunDocument { format_version: FORMAT_VERSION, command: command.into(), subject, notes, reports }
    }

    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(VerificationReport::all_pass)
    }

    /// Pretty JSON with a trailing newline; re-rendering a parsed document
    /// reproduces it byte for byte.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: RunDocument = serde_json::from_str(text)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(DocumentError::Version { found: doc.format_version });
        }
        Ok(doc)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.command, self.subject);
        for note in &self.notes {
            let _ = writeln!(out, "  {note}");
        }
        let (mut pass, mut fail, mut na) = (0, 0, 0);
        for r in &self.reports {
            let seed = r.seed.map(|s| format!(", seed {s}")).unwrap_or_default();
            let _ = writeln!(out, "\n[{}] {} (n = {}{seed})", r.suite, r.descriptor, r.n);
            let width = r.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
            for c in &r.checks {
                let tag = match c.status {
                    Status::Pass => {
                        pass += 1;
                        "PASS"
                    }
                    Status::Fail => {
                        fail += 1;
                        "FAIL"
                    }
                    Status::NotApplicable => {
                        na += 1;
                        "N/A "
                    }
                };
                let pad = width - c.name.chars().count();
                let _ = write!(out, "  {tag}  {}{}  {:>22}  {:>10.3} ms", c.name, " ".repeat(pad), residual(&c.residual), c.wall_ms);
                if let Some(d) = &c.detail {
                    let _ = write!(out, "  {d}");
                }
                out.push('\n');
            }
        }
        let _ = writeln!(out, "\n{pass} passed, {fail} failed, {na} not applicable");
        if fail > 0 {
            let names: Vec<&str> =
                self.reports.iter().flat_map(|r| r.failing().map(|c| c.name.as_str())).collect();
            let _ = writeln!(out, "failing checks: {}", names.join("; "));
        }
        out
    }
}

fn residual(r: &ResidualSummary) -> String {
    match r {
        ResidualSummary::Exact { terms, nonzero } => format!("{nonzero}/{terms} nonzero"),
        ResidualSummary::Numeric { max_abs, points } => format!("max {max_abs:.2e} @ {points}"),
        ResidualSummary::None => "-".into(),
    }
}

/// Nonzero components as `(label, value)` with indices named by `index_names`
/// and expressions in the chart variables `vars`.
pub fn components(symbol: &str, t: &TensorField, index_names: &[String], vars: &[String]) -> Vec<(String, String)> {
    t.normalize()
        .format_components(vars)
        .into_iter()
        .map(|(idx, value)| {
            let labels: Vec<&str> = idx.iter().map(|&i| index_names[i].as_str()).collect();
            (format!("{symbol}[{}]", labels.join(",")), value)
        })
        .collect()
}

pub fn component_block(title: &str, entries: &[(String, String)]) -> String {
    let mut out = format!("{title}\n");
    if entries.is_empty() {
        out.push_str("  (identically zero)\n");
    }
    for (k, v) in entries {
        let _ = writeln!(out, "  {k} = {v}");
    }
    out
}
