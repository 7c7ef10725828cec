//! JSON scenarios: a seed chart and a list of engine operations and exact
//! assertions, replayed step by step into a [`Report`].

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use singlab_core::branch::{discriminant_split, full_split_cubic, quadratic_branches, ramify, split_profile, BranchCount, RAMIFIED};
use singlab_core::catalog::SingLabel;
use singlab_core::chart::{BlowupCenter, Chart, LedgerEntry};
use singlab_core::detect::{classify, neighborhood_scan};
use singlab_core::{AlgNum, MPoly};
use thiserror::Error;

use crate::parse::{parse_poly_with, ParseError};
use crate::report::{Report, Status, StepReport};

pub const DEFAULT_PRECISION: u32 = 12;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid scenario: {0}")]
    Schema(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error("seed chart: {0}")]
    Seed(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub name: String,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_precision")]
    pub precision: u32,
    pub chart: SeedSpec,
    pub steps: Vec<StepSpec>,
}

fn default_precision() -> u32 {
    DEFAULT_PRECISION
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSpec {
    #[serde(default = "default_vars")]
    pub vars: Vec<String>,
    pub f: String,
    #[serde(default)]
    pub ledger: Vec<DivisorSpec>,
}

fn default_vars() -> Vec<String> {
    ["w", "x", "y", "z"].iter().map(|s| s.to_string()).collect()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorSpec {
    pub divisor: String,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, Deserialize)]
pub struct StepSpec {
    #[serde(flatten)]
    pub action: Action,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Action {
    Blowup {
        center: Vec<String>,
        sel: String,
    },
    Clean {
        center: Vec<String>,
        sel: String,
    },
    ChangeCoords {
        bindings: BTreeMap<String, String>,
    },
    Localize {
        var: String,
    },
    CompletePower {
        var: String,
        degree: u32,
    },
    Ramify {
        var: String,
        k: u32,
        new_var: String,
    },
    /// Classifies the current chart (or `poly`); `expect` is optional.
    Detect {
        #[serde(default)]
        poly: Option<String>,
        #[serde(default)]
        expect: Option<String>,
    },
    /// The chart equation equals `expect` exactly.
    AssertEqual {
        expect: String,
    },
    /// The ledger equals `expect` as a multiset of (divisor, multiplicity).
    AssertLedger {
        expect: Vec<DivisorSpec>,
    },
    AssertLabel {
        #[serde(default)]
        poly: Option<String>,
        expect: String,
    },
    AssertBranches {
        #[serde(default)]
        poly: Option<String>,
        #[serde(default = "default_z")]
        z: String,
        #[serde(default = "default_w")]
        w: String,
        /// A branch count or "indeterminate".
        expect: String,
        #[serde(default)]
        k: Option<u32>,
        /// Expected discriminant-square verdict per ramification index, either
        /// a full tag such as `Obstructed(7)` or just the verdict name.
        #[serde(default)]
        delta: BTreeMap<String, String>,
    },
    AssertIdentity {
        lhs: String,
        rhs: String,
    },
    Scan {
        axis: String,
        samples: Vec<i64>,
        expect: String,
    },
    /// Replaying the history from the seed reproduces the current chart.
    Replay,
}

fn default_z() -> String {
    "z".into()
}

fn default_w() -> String {
    "w".into()
}

impl Action {
    pub fn name(&self) -> &'static str {
        match self {
            Action::Blowup { .. } => "blowup",
            Action::Clean { .. } => "clean",
            Action::ChangeCoords { .. } => "change_coords",
            Action::Localize { .. } => "localize",
            Action::CompletePower { .. } => "complete_power",
            Action::Ramify { .. } => "ramify",
            Action::Detect { .. } => "detect",
            Action::AssertEqual { .. } => "assert_equal",
            Action::AssertLedger { .. } => "assert_ledger",
            Action::AssertLabel { .. } => "assert_label",
            Action::AssertBranches { .. } => "assert_branches",
            Action::AssertIdentity { .. } => "assert_identity",
            Action::Scan { .. } => "scan",
            Action::Replay => "replay",
        }
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io { path: path.display().to_string(), source })?;
    parse_scenario(&text)
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let s: Scenario = serde_json::from_str(text)?;
    if s.schema_version != 1 {
        return Err(ScenarioError::Version(s.schema_version));
    }
    Ok(s)
}

pub fn run_scenario(path: &Path) -> Result<Report, ScenarioError> {
    run(&load_scenario(path)?)
}

/// Hard errors inside a step: the step is reported as `error` and the rest
/// are skipped.
#[derive(Debug, Error)]
enum StepError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Chart(#[from] singlab_core::ChartError),
    #[error("{0}")]
    Other(String),
}

pub fn seed_chart(spec: &SeedSpec) -> Result<Chart, ScenarioError> {
    let f = parse_poly_with(&spec.f, &spec.vars).map_err(|e| ScenarioError::Seed(e.to_string()))?;
    let mut ledger = Vec::new();
    for d in &spec.ledger {
        let p = parse_poly_with(&d.divisor, &spec.vars).map_err(|e| ScenarioError::Seed(e.to_string()))?;
        ledger.push(LedgerEntry::new(p, d.multiplicity));
    }
    Chart::new(&spec.vars, f, ledger).map_err(|e| ScenarioError::Seed(e.to_string()))
}

pub fn run(s: &Scenario) -> Result<Report, ScenarioError> {
    let mut chart = seed_chart(&s.chart)?;
    let mut steps = Vec::new();
    let mut halted = false;
    for (index, spec) in s.steps.iter().enumerate() {
        let mut rep = StepReport::new(index, spec.action.name());
        rep.note = spec.note.clone();
        if halted {
            rep.status = Status::Skipped;
        } else if let Err(e) = execute(&spec.action, &mut chart, s.precision, &mut rep) {
            rep.status = Status::Error;
            rep.actual = Some(e.to_string());
            halted = true;
        }
        steps.push(rep);
    }
    Ok(Report::new(&s.name, s.seed, s.precision, steps))
}

fn parse_in(chart: &Chart, text: &str) -> Result<MPoly, StepError> {
    Ok(parse_poly_with(text, &chart.vars)?)
}

fn center(vars: &[String]) -> Result<BlowupCenter, StepError> {
    Ok(BlowupCenter::new(vars)?)
}

fn label(name: &str) -> Result<SingLabel, StepError> {
    SingLabel::from_name(name).ok_or_else(|| StepError::Other(format!("unknown label {name}")))
}

fn compare_poly(rep: &mut StepReport, expected: &MPoly, actual: &MPoly) {
    rep.compare(expected, actual, expected == actual);
    if expected != actual {
        rep.diff = Some((actual - expected).to_string());
    }
}

fn ledger_string(entries: &[(MPoly, u32)]) -> String {
    let parts: Vec<String> = entries.iter().map(|(d, m)| format!("({d})^{m}")).collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}

fn execute(action: &Action, chart: &mut Chart, precision: u32, rep: &mut StepReport) -> Result<(), StepError> {
    match action {
        Action::Blowup { center: c, sel } => {
            *chart = chart.blowup(&center(c)?, sel)?;
            rep.actual = Some(chart.f.to_string());
        }
        Action::Clean { center: c, sel } => {
            *chart = chart.clean(&center(c)?, sel)?;
            rep.actual = Some(chart.f.to_string());
        }
        Action::ChangeCoords { bindings } => {
            let mut b = BTreeMap::new();
            for (v, e) in bindings {
                b.insert(v.clone(), parse_in(chart, e)?);
            }
            *chart = chart.change_coords(&b)?;
            rep.actual = Some(chart.f.to_string());
        }
        Action::Localize { var } => {
            *chart = chart.localize(var)?;
            rep.actual = Some(chart.f.to_string());
        }
        Action::CompletePower { var, degree } => {
            *chart = chart.complete_power(var, *degree)?;
            rep.actual = Some(chart.f.to_string());
        }
        Action::Ramify { var, k, new_var } => {
            *chart = chart.ramify(var, *k, new_var)?;
            rep.actual = Some(chart.f.to_string());
        }
        Action::Detect { poly, expect } => {
            let f = match poly {
                Some(p) => parse_in(chart, p)?,
                None => chart.f.clone(),
            };
            let d = classify(&f);
            rep.certify("detect", &d.certificates);
            match expect {
                Some(e) => {
                    let want = label(e)?;
                    rep.compare(&want, &d.label, want.same_kind(&d.label));
                }
                None => rep.actual = Some(d.label.to_string()),
            }
        }
        Action::AssertEqual { expect } => {
            let want = parse_in(chart, expect)?;
            compare_poly(rep, &want, &chart.f);
        }
        Action::AssertLedger { expect } => {
            let mut want = Vec::new();
            for d in expect {
                want.push((parse_in(chart, &d.divisor)?, d.multiplicity));
            }
            let mut have: Vec<(MPoly, u32)> = chart.ledger.iter().map(|e| (e.divisor.clone(), e.multiplicity)).collect();
            let key = |e: &(MPoly, u32)| (e.0.to_string(), e.1);
            want.sort_by_key(key);
            have.sort_by_key(key);
            rep.compare(ledger_string(&want), ledger_string(&have), want == have);
        }
        Action::AssertLabel { poly, expect } => {
            let f = match poly {
                Some(p) => parse_in(chart, p)?,
                None => chart.f.clone(),
            };
            let want = label(expect)?;
            let d = classify(&f);
            rep.certify("detect", &d.certificates);
            rep.compare(&want, &d.label, want.same_kind(&d.label));
        }
        Action::AssertBranches { poly, z, w, expect, k, delta } => {
            let f = match poly {
                Some(p) => parse_in(chart, p)?,
                None => chart.f.clone(),
            };
            let report = split_profile(&f, z, w, precision);
            rep.certify("branches", &report);
            let want = match expect.as_str() {
                "indeterminate" => BranchCount::Indeterminate,
                n => BranchCount::Count(n.parse().map_err(|_| StepError::Other(format!("bad branch count {n}")))?),
            };
            let mut ok = report.branch_count == want;
            if let Some(k) = k {
                ok &= report.k == Some(*k);
            }
            let mut got_delta = BTreeMap::new();
            for (key, verdict) in delta {
                let kk: u32 = key.parse().map_err(|_| StepError::Other(format!("bad ramification index {key}")))?;
                let got = report.attempts.iter().find(|a| a.k == kk).map(|a| a.delta_verdict.clone()).unwrap_or_default();
                // a bare verdict name matches any parameter, e.g. "Obstructed"
                ok &= &got == verdict || got.strip_prefix(verdict.as_str()).is_some_and(|r| r.starts_with('('));
                got_delta.insert(kk, got);
            }
            let expected = format!("{expect} (k={k:?}, delta={delta:?})");
            let actual = format!("{} (k={:?}, delta={got_delta:?})", count_str(report.branch_count), report.k);
            rep.compare(expected, actual, ok);
        }
        Action::AssertIdentity { lhs, rhs } => {
            let (l, r) = (parse_in(chart, lhs)?, parse_in(chart, rhs)?);
            compare_poly(rep, &l, &r);
        }
        Action::Scan { axis, samples, expect } => {
            let want = label(expect)?;
            let points: Vec<AlgNum> = samples.iter().map(|&a| AlgNum::from_int(a)).collect();
            let got = neighborhood_scan(chart, axis, &points);
            let labels: Vec<String> = got.iter().map(|(a, l)| format!("{axis}={a}: {l}")).collect();
            let ok = got.iter().all(|(_, l)| l.same_kind(&want));
            rep.compare(format!("{want} at every sample"), labels.join(", "), ok);
        }
        Action::Replay => {
            let again = chart.replay()?;
            rep.compare(&chart.f, &again.f, again == *chart);
        }
    }
    Ok(())
}

pub fn count_str(c: BranchCount) -> String {
    match c {
        BranchCount::Count(n) => n.to_string(),
        BranchCount::Indeterminate => "indeterminate".into(),
    }
}

/// Branch analysis for the CLI: the full profile, or a single ramification
/// index when `ramify` is given. Quadratics in `z` use the square test.
pub fn branches(f: &MPoly, z: &str, w: &str, ramify_k: Option<u32>, precision: u32) -> (String, serde_json::Value) {
    match f.degree_in(z) {
        Some(2) => match quadratic_branches(f, z, precision) {
            Ok(q) => {
                let text = match q.count {
                    BranchCount::Count(1) => "1 branch".to_string(),
                    BranchCount::Count(n) => format!("{n} branches"),
                    BranchCount::Indeterminate => "indeterminate".to_string(),
                };
                (text, serde_json::to_value(&q).unwrap_or_default())
            }
            Err(e) => (format!("error: {e}"), serde_json::Value::Null),
        },
        _ => match ramify_k {
            Some(k) => {
                let g = ramify(f, w, k);
                match full_split_cubic(&g, z, precision, Some(RAMIFIED)) {
                    Ok(Some(fs)) => {
                        let bodies: Vec<String> = fs.iter().map(|j| j.to_string()).collect();
                        (format!("full split at k={k}"), serde_json::json!({ "k": k, "factors": bodies }))
                    }
                    Ok(None) => (format!("no full split at k={k}"), serde_json::json!({ "k": k })),
                    Err(e) => (format!("error: {e}"), serde_json::Value::Null),
                }
            }
            None => {
                let report = split_profile(f, z, w, precision);
                let mut value = serde_json::to_value(&report).unwrap_or_default();
                if let (Some(split), Some(obj)) = (discriminant_split(f, z), value.as_object_mut()) {
                    obj.insert("discriminant".into(), serde_json::to_value(split).unwrap_or_default());
                }
                (report.summary(), value)
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXC: &str = r#"{
        "schema_version": 1,
        "name": "exc",
        "chart": { "f": "z^2 + y*(w*y + x^2)^2" },
        "steps": [
            { "op": "blowup", "center": ["w", "x", "y", "z"], "sel": "w" },
            { "op": "assert_equal", "expect": "z^2 + w^3*y*(y + x^2)^2" },
            { "op": "assert_ledger", "expect": [{ "divisor": "w", "multiplicity": 2 }] },
            { "op": "assert_equal", "expect": "z^2", "note": "deliberately wrong" },
            { "op": "clean", "center": ["z", "w"], "sel": "w" },
            { "op": "assert_equal", "expect": "z^2 + w*y*(y + x^2)^2" },
            { "op": "replay" }
        ]
    }"#;

    #[test]
    fn failures_are_recorded_and_execution_continues() {
        let r = run(&parse_scenario(EXC).unwrap()).unwrap();
        let st: Vec<Status> = r.steps.iter().map(|s| s.status).collect();
        assert_eq!(st[3], Status::Fail);
        assert!(r.steps[3].diff.is_some());
        assert!(st.iter().enumerate().all(|(i, s)| i == 3 || *s == Status::Pass), "{}", r.render());
        assert!(!r.ok());
    }

    #[test]
    fn hard_errors_skip_the_rest() {
        let text = EXC.replace(r#""center": ["z", "w"]"#, r#""center": ["q", "w"]"#);
        let r = run(&parse_scenario(&text).unwrap()).unwrap();
        assert_eq!(r.steps[4].status, Status::Error);
        assert!(r.steps[5..].iter().all(|s| s.status == Status::Skipped));
    }

    #[test]
    fn schema_errors_are_distinguished() {
        assert!(matches!(parse_scenario("{"), Err(ScenarioError::Schema(_))));
        let bad_op = EXC.replace("\"replay\"", "\"explode\"");
        assert!(matches!(parse_scenario(&bad_op), Err(ScenarioError::Schema(_))));
        let v2 = EXC.replace("\"schema_version\": 1", "\"schema_version\": 2");
        assert!(matches!(parse_scenario(&v2), Err(ScenarioError::Version(2))));
    }
}
