//! Report entries shared by the `verify` and `sweep` subcommands, their two
//! output formats, and the exit-code contract.
//!
//! The records format is line-delimited JSON with a fixed field order and
//! must be byte-reproducible across runs, so the elapsed time (which is not)
//! appears only in the human-readable text format.

use std::collections::BTreeMap;

use serde::Serialize;

use qident::{IdentityCheck, IdentityError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    pub tag: String,
    pub params: BTreeMap<String, u32>,
    pub trunc: usize,
    pub status: Status,
    pub first_mismatch: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip)]
    pub elapsed_ms: u128,
    /// Mismatching coefficient values, text format only.
    #[serde(skip)]
    pub detail: Option<(String, String)>,
}

impl ReportEntry {
    pub fn from_check(check: &IdentityCheck, elapsed_ms: u128) -> ReportEntry {
        ReportEntry {
            tag: check.tag.name().to_string(),
            params: check.params.iter().map(|(k, v)| (k.to_string(), v)).collect(),
            trunc: check.truncation,
            status: if check.passed { Status::Pass } else { Status::Fail },
            first_mismatch: check.first_mismatch.as_ref().map(|m| m.power),
            message: None,
            elapsed_ms,
            detail: check
                .first_mismatch
                .as_ref()
                .map(|m| (m.lhs.to_string(), m.rhs.to_string())),
        }
    }

    pub fn from_error(
        tag: &str,
        params: BTreeMap<String, u32>,
        trunc: usize,
        err: &IdentityError,
        elapsed_ms: u128,
    ) -> ReportEntry {
        ReportEntry {
            tag: tag.to_string(),
            params,
            trunc,
            status: Status::Error,
            first_mismatch: None,
            message: Some(err.to_string()),
            elapsed_ms,
            detail: None,
        }
    }

    pub fn record_line(&self) -> String {
        serde_json::to_string(self).expect("report entries serialize")
    }

    pub fn text_line(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        };
        let mut line = format!(
            "{:<16} {:<18} trunc={:<4} {status}",
            self.tag,
            if params.is_empty() { "-" } else { &params },
            self.trunc
        );
        if let Some(power) = self.first_mismatch {
            line.push_str(&format!("  first_mismatch=q^{power}"));
            if let Some((lhs, rhs)) = &self.detail {
                line.push_str(&format!("  lhs=[{lhs}]  rhs=[{rhs}]"));
            }
        }
        if let Some(message) = &self.message {
            line.push_str(&format!("  {message}"));
        }
        line.push_str(&format!("  [{} ms]", self.elapsed_ms));
        line
    }
}

/// 0 when every entry passed, 1 when some identity failed, 2 when any cell
/// errored (usage or internal).
pub fn exit_code(entries: &[ReportEntry]) -> i32 {
    let mut code = 0;
    for e in entries {
        match e.status {
            Status::Error => return 2,
            Status::Fail => code = code.max(1),
            Status::Pass => {}
        }
    }
    code
}
