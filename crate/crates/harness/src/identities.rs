//! The built-in checks behind `verify all`: closed-form identities computed
//! here, plus the chart chains shipped as scenario files.

use singlab_core::branch::{depress_cubic, split_profile, BranchCount};
use singlab_core::catalog::{
    catalog_equation, construct_cp2_via_dft, construct_cp3_via_dft, cp3_equation, dft_roundtrip, generate_instance, phi_is_z3_invariant, Family,
    FamilyParams, SingLabel,
};
use singlab_core::detect::classify;
use singlab_core::MPoly;

use crate::parse::parse_poly;
use crate::report::{Report, Status, StepReport};
use crate::scenario::{parse_scenario, run};

/// Scenario files compiled into the binary, by file name.
pub const BUILTIN_SCENARIOS: [(&str, &str); 7] = [
    ("exc_chain.json", include_str!("../../../scenarios/exc_chain.json")),
    ("cp3_localized.json", include_str!("../../../scenarios/cp3_localized.json")),
    ("cp3_chain.json", include_str!("../../../scenarios/cp3_chain.json")),
    ("prod_chain.json", include_str!("../../../scenarios/prod_chain.json")),
    ("prod_w_chart.json", include_str!("../../../scenarios/prod_w_chart.json")),
    ("outcomes.json", include_str!("../../../scenarios/outcomes.json")),
    ("branches.json", include_str!("../../../scenarios/branches.json")),
];

struct Steps(Vec<StepReport>);

impl Steps {
    fn check(&mut self, op: &str, note: &str, expected: impl ToString, actual: impl ToString, equal: bool) {
        let mut s = StepReport::new(self.0.len(), op);
        s.note = Some(note.to_string());
        s.compare(expected, actual, equal);
        self.0.push(s);
    }

    fn poly(&mut self, note: &str, expected: &MPoly, actual: &MPoly) {
        self.check("assert_identity", note, expected, actual, expected == actual);
        if expected != actual {
            if let Some(s) = self.0.last_mut() {
                s.diff = Some((actual - expected).to_string());
            }
        }
    }

    fn error(&mut self, op: &str, note: &str, msg: String) {
        let mut s = StepReport::new(self.0.len(), op);
        s.note = Some(note.to_string());
        s.status = Status::Error;
        s.actual = Some(msg);
        self.0.push(s);
    }
}

fn p(text: &str) -> MPoly {
    parse_poly(text).expect("built-in expression parses")
}

fn constructions() -> Report {
    let mut s = Steps(Vec::new());
    s.check("assert_identity", "inverse transform undoes the forward one", true, dft_roundtrip(), dft_roundtrip());
    s.check("assert_identity", "XYZ is invariant under (y1, y2) -> (eps y1, eps^2 y2)", true, phi_is_z3_invariant(), phi_is_z3_invariant());
    match construct_cp3_via_dft() {
        Ok(f) => s.poly("XYZ at (z, v y, v^2 x) with v^3 = w", &cp3_equation(), &f),
        Err(e) => s.error("assert_identity", "XYZ at (z, v y, v^2 x) with v^3 = w", e.to_string()),
    }
    match construct_cp2_via_dft() {
        Ok(f) => {
            s.poly("XY at (z, v y) with v^2 = w", &p("z^2 - w*y^2"), &f);
            let l = classify(&f).label;
            s.check("assert_label", "the order-2 construction is a pinch point", SingLabel::Pp, &l, l == SingLabel::Pp);
        }
        Err(e) => s.error("assert_identity", "XY at (z, v y) with v^2 = w", e.to_string()),
    }
    Report::new("constructions", 0, 0, s.0)
}

fn discriminant() -> Report {
    let mut s = Steps(Vec::new());
    // roots w, x, y of a cubic in z
    let f = p("(z - w)*(z - x)*(z - y)");
    match depress_cubic(&f, "z") {
        Ok(dc) => {
            let shifted = f.substitute_one("z", &(&MPoly::var("z") - &dc.shift));
            s.poly("depressed form is the cubic after z -> z - shift", &shifted, &dc.reconstruct());
            let lhs = dc.discriminant().scale(&singlab_core::AlgNum::from_int(-27));
            s.poly("-27 (C^2 - 4 B^3) is the product of squared root differences", &p("((w - x)*(w - y)*(x - y))^2"), &lhs);
        }
        Err(e) => s.error("assert_identity", "depression", e.to_string()),
    }
    Report::new("discriminant", 0, 0, s.0)
}

fn catalog() -> Report {
    let mut s = Steps(Vec::new());
    for label in SingLabel::CATALOG {
        match catalog_equation(&label) {
            Ok(f) => {
                let got = classify(&f).label;
                s.check("assert_label", &format!("normal form {f}"), &label, &got, got == label);
            }
            Err(e) => s.error("assert_label", label.name(), e.to_string()),
        }
    }
    match generate_instance(&FamilyParams::new(Family::Three)) {
        Ok(f) => s.poly("family three at alpha = beta = 1, gamma = 0, eta = 0", &cp3_equation(), &f),
        Err(e) => s.error("assert_identity", "family three specialization", e.to_string()),
    }
    let r = split_profile(&cp3_equation(), "z", "w", 12);
    s.check("assert_branches", "one branch, split only after w = v^3", "1 (k=Some(3))", format!("{} (k={:?})", r.branch_count, r.k), r.branch_count == BranchCount::Count(1) && r.k == Some(3));
    Report::new("catalog", 0, 12, s.0)
}

pub fn verify_all() -> Vec<Report> {
    let mut out = vec![constructions(), discriminant(), catalog()];
    for (file, text) in BUILTIN_SCENARIOS {
        let report = parse_scenario(text).and_then(|sc| run(&sc)).unwrap_or_else(|e| {
            let mut s = Steps(Vec::new());
            s.error("load", file, e.to_string());
            Report::new(file, 0, 0, s.0)
        });
        out.push(report);
    }
    out
}
