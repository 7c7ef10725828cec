//! Family sweeps: branch counts against ground truth, plus the label the
//! detector assigns to each instance.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use singlab_core::batch::{evaluate, map_ordered, InstanceOutcome};
use singlab_core::catalog::{generate_instance, Family, FamilyParams};
use singlab_core::detect::classify;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteTally {
    pub family: String,
    pub seed: u64,
    pub count: u64,
    pub precision: u32,
    pub agreed: u64,
    pub labels: BTreeMap<String, u64>,
    /// Instances whose branch count or split index disagrees with the family.
    pub disagreements: Vec<InstanceOutcome>,
}

impl SuiteTally {
    pub fn ok(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "family {} seeds {}..{} precision {}", self.family, self.seed, self.seed + self.count, self.precision);
        let _ = writeln!(out, "  branch counts agree: {}/{}", self.agreed, self.count);
        for (l, n) in &self.labels {
            let _ = writeln!(out, "  detected {l}: {n}");
        }
        for d in &self.disagreements {
            let _ = writeln!(out, "  seed {}: got {} (k={:?}), want {} (k={}) {}", d.seed, d.branch_count, d.k, d.expected_branches, d.expected_k, d.error.as_deref().unwrap_or(&d.polynomial));
        }
        let _ = writeln!(out, "{}", if self.ok() { "PASS" } else { "FAIL" });
        out
    }
}

pub fn run(family: Family, seed: u64, count: u64, precision: u32) -> SuiteTally {
    let seeds: Vec<u64> = (seed..seed + count).collect();
    let outcomes = evaluate(family, &seeds, precision);
    let labels = map_ordered(&seeds, |&s| match generate_instance(&FamilyParams::random(family, s)) {
        Ok(f) => classify(&f).label.name().to_string(),
        Err(_) => "error".to_string(),
    });
    let mut hist = BTreeMap::new();
    for l in labels {
        *hist.entry(l).or_insert(0) += 1;
    }
    let agreed = outcomes.iter().filter(|o| o.agrees()).count() as u64;
    SuiteTally {
        family: family.name().to_string(),
        seed,
        count,
        precision,
        agreed,
        labels: hist,
        disagreements: outcomes.into_iter().filter(|o| !o.agrees()).collect(),
    }
}
