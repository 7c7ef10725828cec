//! Batch evaluation of generated family instances. Data-parallel over seeds
//! with the `parallel` feature, sequential otherwise; results are in seed
//! order either way.

use serde::Serialize;

use crate::branch::{split_profile, BranchCount};
use crate::catalog::{generate_instance, Family, FamilyParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceOutcome {
    pub family: String,
    pub seed: u64,
    pub expected_branches: u32,
    pub expected_k: u32,
    pub branch_count: BranchCount,
    pub k: Option<u32>,
    pub polynomial: String,
    pub error: Option<String>,
}

impl InstanceOutcome {
    pub fn agrees(&self) -> bool {
        self.error.is_none() && self.branch_count == BranchCount::Count(self.expected_branches) && self.k == Some(self.expected_k)
    }
}

pub fn evaluate_instance(family: Family, seed: u64, precision: u32) -> InstanceOutcome {
    let params = FamilyParams::random(family, seed);
    let mut out = InstanceOutcome {
        family: family.name().to_string(),
        seed,
        expected_branches: family.expected_branches(),
        expected_k: family.expected_k(),
        branch_count: BranchCount::Indeterminate,
        k: None,
        polynomial: String::new(),
        error: None,
    };
    match generate_instance(&params) {
        Ok(f) => {
            let report = split_profile(&f, "z", "w", precision);
            out.polynomial = f.to_string();
            out.branch_count = report.branch_count;
            out.k = report.k;
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

pub fn evaluate_sequential(family: Family, seeds: &[u64], precision: u32) -> Vec<InstanceOutcome> {
    seeds.iter().map(|&s| evaluate_instance(family, s, precision)).collect()
}

#[cfg(feature = "parallel")]
pub fn evaluate_parallel(family: Family, seeds: &[u64], precision: u32) -> Vec<InstanceOutcome> {
    use rayon::prelude::*;
    seeds.par_iter().map(|&s| evaluate_instance(family, s, precision)).collect()
}

/// Parallel when the `parallel` feature is on.
pub fn evaluate(family: Family, seeds: &[u64], precision: u32) -> Vec<InstanceOutcome> {
    #[cfg(feature = "parallel")]
    {
        evaluate_parallel(family, seeds, precision)
    }
    #[cfg(not(feature = "parallel"))]
    {
        evaluate_sequential(family, seeds, precision)
    }
}

/// Order-preserving map over a slice, parallel when the feature is on.
pub fn map_ordered<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
