use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepReport {
    pub index: usize,
    pub op: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
    /// `actual - expected` for failed polynomial comparisons.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub certificates: BTreeMap<String, Value>,
}

impl StepReport {
    pub fn new(index: usize, op: &str) -> Self {
        StepReport {
            index,
            op: op.to_string(),
            status: Status::Pass,
            note: None,
            expected: None,
            actual: None,
            diff: None,
            certificates: BTreeMap::new(),
        }
    }

    pub fn certify(&mut self, key: &str, value: impl Serialize) {
        self.certificates.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    /// Records an exact comparison; fails the step on mismatch.
    pub fn compare(&mut self, expected: impl ToString, actual: impl ToString, equal: bool) {
        self.expected = Some(expected.to_string());
        self.actual = Some(actual.to_string());
        if !equal {
            self.status = Status::Fail;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub skipped: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub name: String,
    pub seed: u64,
    pub precision: u32,
    pub steps: Vec<StepReport>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(name: &str, seed: u64, precision: u32, steps: Vec<StepReport>) -> Self {
        let mut summary = Summary::default();
        for s in &steps {
            match s.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Error => summary.errors += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        summary.ok = summary.failed == 0 && summary.errors == 0 && summary.skipped == 0;
        Report { schema_version: SCHEMA_VERSION, name: name.to_string(), seed, precision, steps, summary, timing_ms: None }
    }

    pub fn ok(&self) -> bool {
        self.summary.ok
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (seed {}, precision {})", self.name, self.seed, self.precision);
        for s in &self.steps {
            let _ = write!(out, "  [{}] {:>3} {}", s.status.as_str(), s.index, s.op);
            if let Some(n) = &s.note {
                let _ = write!(out, " - {n}");
            }
            out.push('\n');
            if s.status == Status::Fail || s.status == Status::Error {
                if let Some(e) = &s.expected {
                    let _ = writeln!(out, "        expected: {e}");
                }
                if let Some(a) = &s.actual {
                    let _ = writeln!(out, "        actual:   {a}");
                }
                if let Some(d) = &s.diff {
                    let _ = writeln!(out, "        diff:     {d}");
                }
            }
        }
        let m = &self.summary;
        let _ = writeln!(
            out,
            "{}: {} passed, {} failed, {} errors, {} skipped",
            if m.ok { "PASS" } else { "FAIL" },
            m.passed,
            m.failed,
            m.errors,
            m.skipped
        );
        out
    }
}

/// Several reports under one roof (e.g. `verify all`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportSet {
    pub schema_version: u32,
    pub reports: Vec<Report>,
    pub ok: bool,
}

impl ReportSet {
    pub fn new(reports: Vec<Report>) -> Self {
        let ok = reports.iter().all(Report::ok);
        ReportSet { schema_version: SCHEMA_VERSION, reports, ok }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self) -> String {
        self.reports.iter().map(Report::render).collect::<Vec<_>>().join("\n")
    }
}
