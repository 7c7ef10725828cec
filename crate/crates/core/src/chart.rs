//! Affine blow-up charts: strict and total transforms, the exceptional
//! divisor ledger, coordinate changes and localization.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::ChartError;
use crate::field::AlgNum;
use crate::linalg;
use crate::poly::{sort_vars, MPoly, Order};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub divisor: MPoly,
    pub multiplicity: u32,
}

impl LedgerEntry {
    pub fn new(divisor: MPoly, multiplicity: u32) -> Self {
        LedgerEntry { divisor, multiplicity }
    }
}

/// Coordinate subspace `V(center_vars)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupCenter {
    pub center_vars: Vec<String>,
}

impl BlowupCenter {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Self, ChartError> {
        let mut center_vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        sort_vars(&mut center_vars);
        if center_vars.len() < 2 {
            return Err(ChartError::InvalidCenter("a centre needs at least two coordinates".into()));
        }
        Ok(BlowupCenter { center_vars })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChartMap {
    Blowup { center: Vec<String>, sel: String, cleaning: bool, multiplicity: u32 },
    Change { bindings: BTreeMap<String, MPoly> },
    CompletePower { var: String, degree: u32, shift: MPoly },
    Localize { var: String },
    Ramify { var: String, k: u32, new_var: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedChart {
    pub vars: Vec<String>,
    pub f: MPoly,
    pub ledger: Vec<LedgerEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub vars: Vec<String>,
    pub f: MPoly,
    pub ledger: Vec<LedgerEntry>,
    /// Constant collected from divisors that became units; keeps the total
    /// transform equal to the pullback.
    pub scale: AlgNum,
    pub history: Vec<ChartMap>,
    pub seed: SeedChart,
}

impl Chart {
    pub fn new<S: AsRef<str>>(vars: &[S], f: MPoly, ledger: Vec<LedgerEntry>) -> Result<Self, ChartError> {
        let mut vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        sort_vars(&mut vars);
        if f.is_zero() {
            return Err(ChartError::UnsupportedShape("zero equation".into()));
        }
        for v in f.vars().iter().chain(ledger.iter().flat_map(|e| e.divisor.vars())) {
            if !vars.contains(v) {
                return Err(ChartError::UnknownVariable(v.clone()));
            }
        }
        let seed = SeedChart { vars: vars.clone(), f: f.clone(), ledger: ledger.clone() };
        Ok(Chart { vars, f, ledger, scale: AlgNum::one(), history: Vec::new(), seed })
    }

    /// Chart in the standard coordinates `w, x, y, z`.
    pub fn standard(f: MPoly, ledger: Vec<LedgerEntry>) -> Result<Self, ChartError> {
        Chart::new(&["w", "x", "y", "z"], f, ledger)
    }

    pub fn order(&self) -> Order {
        self.f.ord()
    }

    pub fn multiplicity_of(&self, divisor: &MPoly) -> Option<u32> {
        self.ledger.iter().find(|e| &e.divisor == divisor).map(|e| e.multiplicity)
    }

    pub fn total_transform(&self) -> MPoly {
        let mut acc = self.f.scale(&self.scale);
        for e in &self.ledger {
            acc = &acc * &e.divisor.pow(e.multiplicity);
        }
        acc
    }

    fn check_var(&self, v: &str) -> Result<(), ChartError> {
        if self.vars.iter().any(|x| x == v) {
            Ok(())
        } else {
            Err(ChartError::UnknownVariable(v.to_string()))
        }
    }

    /// Applies a substitution to `f` and the ledger; `sel` (if given) has its
    /// power factored out of every divisor, which is returned alongside.
    fn pull_ledger(&self, bindings: &BTreeMap<String, MPoly>, sel: Option<&str>) -> (Vec<LedgerEntry>, AlgNum, u32) {
        let mut ledger = Vec::new();
        let mut scale = self.scale.clone();
        let mut extra = 0;
        for e in &self.ledger {
            let mut d = e.divisor.substitute(bindings);
            if let Some(s) = sel {
                let (k, rest) = d.factor_out_variable(s);
                extra += k * e.multiplicity;
                d = rest;
            }
            match d.as_constant() {
                Some(c) => scale = &scale * &c.pow(e.multiplicity),
                None => ledger.push(LedgerEntry::new(d, e.multiplicity)),
            }
        }
        (ledger, scale, extra)
    }

    fn blowup_impl(&self, center: &BlowupCenter, sel: &str, cleaning: bool) -> Result<Chart, ChartError> {
        for v in &center.center_vars {
            self.check_var(v)?;
        }
        if !center.center_vars.iter().any(|v| v == sel) {
            return Err(ChartError::InvalidCenter(format!("chart variable {sel} is not in the centre")));
        }
        let s = MPoly::var(sel);
        let bindings: BTreeMap<String, MPoly> =
            center.center_vars.iter().filter(|v| *v != sel).map(|v| (v.clone(), &s * &MPoly::var(v))).collect();
        let (m, strict) = self.f.substitute(&bindings).factor_out_variable(sel);
        let (mut ledger, scale, extra) = self.pull_ledger(&bindings, Some(sel));
        let total = m + extra;
        if total > 0 {
            match ledger.iter_mut().find(|e| e.divisor == s) {
                Some(e) => e.multiplicity += total,
                None => ledger.push(LedgerEntry::new(s.clone(), total)),
            }
        }
        if cleaning {
            if m == 0 {
                return Err(ChartError::CleaningIneffective(format!("no power of {sel} divides the pullback")));
            }
            if strict.ord() > self.f.ord() {
                return Err(ChartError::CleaningIneffective("order increased".into()));
            }
        }
        let mut out = self.clone();
        out.f = strict;
        out.ledger = ledger;
        out.scale = scale;
        out.history.push(ChartMap::Blowup { center: center.center_vars.clone(), sel: sel.to_string(), cleaning, multiplicity: m });
        Ok(out)
    }

    pub fn blowup(&self, center: &BlowupCenter, sel: &str) -> Result<Chart, ChartError> {
        self.blowup_impl(center, sel, false)
    }

    pub fn clean(&self, center: &BlowupCenter, sel: &str) -> Result<Chart, ChartError> {
        self.blowup_impl(center, sel, true)
    }

    /// Simultaneous substitution `var -> image`, required to be a formal
    /// coordinate change (invertible linear part at the origin).
    pub fn change_coords(&self, bindings: &BTreeMap<String, MPoly>) -> Result<Chart, ChartError> {
        for (v, image) in bindings {
            self.check_var(v)?;
            for u in image.vars() {
                self.check_var(u)?;
            }
        }
        let jac: Vec<Vec<AlgNum>> = self
            .vars
            .iter()
            .map(|v| {
                let image = bindings.get(v).cloned().unwrap_or_else(|| MPoly::var(v));
                self.vars.iter().map(|u| image.linear_coeff(u)).collect()
            })
            .collect();
        if linalg::rank(&jac) < self.vars.len() {
            return Err(ChartError::NotInvertible);
        }
        let f = self.f.substitute(bindings);
        let (ledger, scale, _) = self.pull_ledger(bindings, None);
        let mut out = self.clone();
        out.f = f;
        out.ledger = ledger;
        out.scale = scale;
        out.history.push(ChartMap::Change { bindings: bindings.clone() });
        Ok(out)
    }

    /// Removes the subleading coefficient in `var` by the shift
    /// `var -> var - a_{d-1} / (d a_d)`.
    pub fn complete_power(&self, var: &str, degree: u32) -> Result<Chart, ChartError> {
        self.check_var(var)?;
        if !(2..=3).contains(&degree) || self.f.degree_in(var) != Some(degree) {
            return Err(ChartError::UnsupportedShape(format!("not of degree {degree} in {var}")));
        }
        let lead = self
            .f
            .coeff_in(var, degree)
            .as_constant()
            .ok_or_else(|| ChartError::UnsupportedShape(format!("leading coefficient in {var} is not constant")))?;
        let denom = (&lead * &AlgNum::from_int(degree as i64)).inverse().map_err(|_| ChartError::NotInvertible)?;
        let shift = self.f.coeff_in(var, degree - 1).scale(&denom);
        let mut b = BTreeMap::new();
        b.insert(var.to_string(), &MPoly::var(var) - &shift);
        let mut out = self.change_coords(&b)?;
        out.history.pop();
        out.history.push(ChartMap::CompletePower { var: var.to_string(), degree, shift });
        Ok(out)
    }

    /// Sets `var = 1` and drops it: analysis at a generic point of the
    /// `var`-axis. Irreversible.
    pub fn localize(&self, var: &str) -> Result<Chart, ChartError> {
        self.check_var(var)?;
        let mut b = BTreeMap::new();
        b.insert(var.to_string(), MPoly::one());
        let f = self.f.substitute(&b);
        if f.is_zero() {
            return Err(ChartError::UnsupportedShape("equation vanishes".into()));
        }
        let (ledger, scale, _) = self.pull_ledger(&b, None);
        let mut out = self.clone();
        out.vars.retain(|v| v != var);
        out.f = f;
        out.ledger = ledger;
        out.scale = scale;
        out.history.push(ChartMap::Localize { var: var.to_string() });
        Ok(out)
    }

    /// Substitutes `var -> new_var^k`.
    pub fn ramify(&self, var: &str, k: u32, new_var: &str) -> Result<Chart, ChartError> {
        self.check_var(var)?;
        if k == 0 || (new_var != var && self.vars.iter().any(|v| v == new_var)) {
            return Err(ChartError::UnsupportedShape("invalid ramification".into()));
        }
        let mut b = BTreeMap::new();
        b.insert(var.to_string(), MPoly::var(new_var).pow(k));
        let f = self.f.substitute(&b);
        let (ledger, scale, _) = self.pull_ledger(&b, None);
        let mut out = self.clone();
        for v in out.vars.iter_mut() {
            if v == var {
                *v = new_var.to_string();
            }
        }
        sort_vars(&mut out.vars);
        out.f = f;
        out.ledger = ledger;
        out.scale = scale;
        out.history.push(ChartMap::Ramify { var: var.to_string(), k, new_var: new_var.to_string() });
        Ok(out)
    }

    /// Applies one recorded map.
    pub fn apply(&self, map: &ChartMap) -> Result<Chart, ChartError> {
        match map {
            ChartMap::Blowup { center, sel, cleaning, .. } => {
                let c = BlowupCenter::new(center)?;
                self.blowup_impl(&c, sel, *cleaning)
            }
            ChartMap::Change { bindings } => self.change_coords(bindings),
            ChartMap::CompletePower { var, degree, .. } => self.complete_power(var, *degree),
            ChartMap::Localize { var } => self.localize(var),
            ChartMap::Ramify { var, k, new_var } => self.ramify(var, *k, new_var),
        }
    }

    /// Re-applies the history to the seed chart.
    pub fn replay(&self) -> Result<Chart, ChartError> {
        let seed = Chart::new(&self.seed.vars, self.seed.f.clone(), self.seed.ledger.clone())?;
        run_chain(&seed, &self.history)
    }
}

/// Runs the steps in order, reporting the index of the first failure.
pub fn run_chain(seed: &Chart, steps: &[ChartMap]) -> Result<Chart, ChartError> {
    let mut c = seed.clone();
    for (index, step) in steps.iter().enumerate() {
        c = c.apply(step).map_err(|e| ChartError::Step { index, source: Box::new(e) })?;
    }
    Ok(c)
}

/// Blow-up step helper for chains.
pub fn blowup_step<S: AsRef<str>>(center: &[S], sel: &str) -> ChartMap {
    ChartMap::Blowup { center: center.iter().map(|v| v.as_ref().to_string()).collect(), sel: sel.to_string(), cleaning: false, multiplicity: 0 }
}

pub fn clean_step<S: AsRef<str>>(center: &[S], sel: &str) -> ChartMap {
    ChartMap::Blowup { center: center.iter().map(|v| v.as_ref().to_string()).collect(), sel: sel.to_string(), cleaning: true, multiplicity: 0 }
}
