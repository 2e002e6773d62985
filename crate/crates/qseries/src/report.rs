//! Verification reports and their text, JSON, and CSV renderings.

use serde::{Deserialize, Serialize};

/// Outcome of checking one claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The truncation order was too small to check even one coefficient.
    Vacuous,
}

/// First position where a claim broke, both sides in decimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstFailure {
    pub index: i64,
    pub left: String,
    pub right: String,
}

/// Result of checking one claim at one truncation order.  `checked_count`
/// is the number of exact coefficient comparisons that backed the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case_id: String,
    pub claim: String,
    #[serde(rename = "N")]
    pub order: i64,
    pub checked_count: u64,
    pub status: CheckStatus,
    pub first_failure: Option<FirstFailure>,
}

impl VerificationReport {
    pub fn pass(case_id: impl Into<String>, claim: impl Into<String>, order: i64, checked_count: u64) -> Self {
        VerificationReport {
            case_id: case_id.into(),
            claim: claim.into(),
            order,
            checked_count,
            status: CheckStatus::Pass,
            first_failure: None,
        }
    }

    pub fn fail(
        case_id: impl Into<String>,
        claim: impl Into<String>,
        order: i64,
        checked_count: u64,
        failure: FirstFailure,
    ) -> Self {
        VerificationReport {
            case_id: case_id.into(),
            claim: claim.into(),
            order,
            checked_count,
            status: CheckStatus::Fail,
            first_failure: Some(failure),
        }
    }

    pub fn vacuous(case_id: impl Into<String>, claim: impl Into<String>, order: i64) -> Self {
        VerificationReport {
            case_id: case_id.into(),
            claim: claim.into(),
            order,
            checked_count: 0,
            status: CheckStatus::Vacuous,
            first_failure: None,
        }
    }

    /// True unless the claim outright failed (vacuous counts as not-failed).
    pub fn ok(&self) -> bool {
        self.status != CheckStatus::Fail
    }

    /// One JSON object on one line.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }
}

fn status_str(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Vacuous => "vacuous",
    }
}

/// Fixed-width human-readable table, one row per report.
pub fn render_table(reports: &[VerificationReport]) -> String {
    let id_w = reports.iter().map(|r| r.case_id.len()).max().unwrap_or(4).max(4);
    let mut out = String::new();
    out.push_str(&format!(
        "{:<id_w$}  {:<7}  {:>7}  {:>8}  CLAIM\n",
        "CASE", "STATUS", "N", "CHECKED"
    ));
    for r in reports {
        out.push_str(&format!(
            "{:<id_w$}  {:<7}  {:>7}  {:>8}  {}\n",
            r.case_id,
            status_str(r.status),
            r.order,
            r.checked_count,
            r.claim
        ));
        if let Some(f) = &r.first_failure {
            out.push_str(&format!(
                "{:<id_w$}  first failure at index {}: left = {}, right = {}\n",
                "", f.index, f.left, f.right
            ));
        }
    }
    out
}

fn csv_quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn csv_header() -> &'static str {
    "case_id,status,N,checked_count,claim,failure_index,failure_left,failure_right"
}

/// One CSV row matching [`csv_header`].
pub fn to_csv_row(r: &VerificationReport) -> String {
    let (fi, fl, fr) = match &r.first_failure {
        Some(f) => (f.index.to_string(), f.left.clone(), f.right.clone()),
        None => (String::new(), String::new(), String::new()),
    };
    let status = match r.status {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Vacuous => "vacuous",
    };
    format!(
        "{},{},{},{},{},{},{},{}",
        csv_quote(&r.case_id),
        status,
        r.order,
        r.checked_count,
        csv_quote(&r.claim),
        fi,
        csv_quote(&fl),
        csv_quote(&fr)
    )
}
