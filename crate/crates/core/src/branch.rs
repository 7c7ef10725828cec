//! Cubic branch analysis: depression, discriminant, and the ramified
//! splitting test (full split after w -> v^k for k = 1, 2, 3).

use std::fmt;

use serde::Serialize;

use crate::error::BranchError;
use crate::field::AlgNum;
use crate::gcd;
use crate::jet::Jet;
use crate::poly::{MPoly, Order};
use crate::roots::{series_cbrt, series_sqrt, RootVerdict};

pub const DEFAULT_PRECISION: u32 = 12;

/// Name of the ramified variable introduced by [`ramify`].
pub const RAMIFIED: &str = "v";

/// `z^3 - 3 B z + C`, obtained from the input by `z -> z - shift`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepressedCubic {
    pub b: MPoly,
    pub c: MPoly,
    pub z: String,
    pub shift: MPoly,
}

impl DepressedCubic {
    pub fn reconstruct(&self) -> MPoly {
        let z = MPoly::var(&self.z);
        &(&z.pow(3) - &(&self.b * &z).scale(&AlgNum::from_int(3))) + &self.c
    }

    pub fn discriminant(&self) -> MPoly {
        &self.c.pow(2) - &self.b.pow(3).scale(&AlgNum::from_int(4))
    }
}

/// Splits `f` as a polynomial in `z` into `(lead, monic coefficients)` if it
/// has the given degree and a nonzero constant leading coefficient.
fn monic_in(f: &MPoly, z: &str, degree: u32) -> Result<Vec<MPoly>, BranchError> {
    if f.degree_in(z) != Some(degree) {
        return Err(BranchError::UnsupportedShape(format!("degree in {z} is not {degree}")));
    }
    let coeffs = f.coefficients_in(z);
    let lead = coeffs[degree as usize]
        .as_constant()
        .ok_or_else(|| BranchError::UnsupportedShape(format!("leading coefficient in {z} is not constant")))?;
    let inv = lead.inverse()?;
    Ok(coeffs.iter().map(|c| c.scale(&inv)).collect())
}

pub fn depress_cubic(f: &MPoly, z: &str) -> Result<DepressedCubic, BranchError> {
    let c = monic_in(f, z, 3)?;
    let third = AlgNum::from_ratio(1, 3);
    let shift = c[2].scale(&third);
    let g = f.substitute_one(z, &(&MPoly::var(z) - &shift));
    let g = monic_in(&g, z, 3)?;
    Ok(DepressedCubic { b: g[1].scale(&AlgNum::from_ratio(-1, 3)), c: g[0].clone(), z: z.to_string(), shift })
}

pub fn discriminant(dc: &DepressedCubic) -> MPoly {
    dc.discriminant()
}

/// Substitutes `w -> v^k`; for `k = 1` this is a renaming.
pub fn ramify(f: &MPoly, w: &str, k: u32) -> MPoly {
    f.substitute_one(w, &MPoly::var(RAMIFIED).pow(k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BranchCount {
    Count(u32),
    Indeterminate,
}

impl fmt::Display for BranchCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchCount::Count(c) => write!(f, "{c}"),
            BranchCount::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

/// Certificates gathered while attempting a full split at one ramification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitAttempt {
    pub k: u32,
    pub delta_verdict: String,
    pub cube_verdicts: Vec<String>,
    pub error: Option<String>,
    #[serde(skip)]
    pub factors: Option<Vec<Jet>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    pub k: Option<u32>,
    pub branch_count: BranchCount,
    pub factors: Vec<Jet>,
    pub attempts: Vec<SplitAttempt>,
    pub ord_b3: Order,
    pub ord_c2: Order,
    pub precision: u32,
}

impl BranchReport {
    pub fn summary(&self) -> String {
        match (self.branch_count, self.k) {
            (BranchCount::Count(1), Some(k)) => format!("1 branch (split at k={k})"),
            (BranchCount::Count(c), Some(k)) => format!("{c} branches (split at k={k})"),
            _ => "indeterminate (no split for k in 1..3)".to_string(),
        }
    }
}

fn attempt(f: &MPoly, z: &str, ramified: Option<&str>, n: u32, k: u32) -> SplitAttempt {
    let mut out = SplitAttempt { k, delta_verdict: String::new(), cube_verdicts: Vec::new(), error: None, factors: None };
    let dc = match depress_cubic(f, z) {
        Ok(dc) => dc,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    let lead = f.coeff_in(z, 3).as_constant().unwrap_or_else(AlgNum::one);
    let monic = f.scale(&lead.inverse().unwrap_or_else(|_| AlgNum::one()));
    let delta = dc.discriminant();
    let ord_b = dc.b.ord().finite().or(dc.c.ord().finite().map(|d| d.div_ceil(3))).unwrap_or(0);
    let lift = n + 2 * ord_b + 2;
    let va = series_sqrt(&Jet::exact(&delta, lift), ramified);
    out.delta_verdict = va.tag();
    if va == RootVerdict::NeedsFieldExtension {
        out.error = Some(BranchError::NeedsFieldExtension.to_string());
    }
    let Some(a) = va.certified().cloned() else {
        return out;
    };
    let c = Jet::exact(&dc.c, lift);
    let b = Jet::exact(&dc.b, lift);
    let half = AlgNum::from_ratio(1, 2);
    let eps = AlgNum::eps();
    for sign in [1i64, -1] {
        let a_s = a.scale(&AlgNum::from_int(sign));
        let p = c.add(&a_s).scale(&half);
        let q = c.sub(&a_s).scale(&half);
        let v1 = series_cbrt(&p, ramified);
        let v2 = series_cbrt(&q, ramified);
        out.cube_verdicts.push(v1.tag());
        out.cube_verdicts.push(v2.tag());
        let (Some(e1), Some(e2)) = (v1.certified(), v2.certified()) else {
            continue;
        };
        let mut twist = Jet::exact(&MPoly::one(), 0);
        for _ in 0..3 {
            let e2t = e2.mul(&twist);
            let prod = e1.mul(&e2t);
            let m = prod.precision().min(b.precision());
            if prod.agrees_with(b.body(), m) && (m >= n || (prod.is_exact() && prod.body() == b.body())) {
                let factors = cube_factors(z, &dc.shift, e1, &e2t, n);
                if verify(&factors, &monic, n) {
                    out.factors = Some(factors);
                    return out;
                }
            }
            twist = twist.scale(&eps);
        }
    }
    out
}

fn cube_factors(z: &str, shift: &MPoly, e1: &Jet, e2: &Jet, n: u32) -> Vec<Jet> {
    let eps = AlgNum::eps();
    let base = Jet::exact(&(&MPoly::var(z) + shift), 1);
    (0..3u32)
        .map(|i| {
            let t = base.add(&e1.scale(&eps.pow(i))).add(&e2.scale(&eps.pow(2 * i)));
            if t.is_exact() {
                t
            } else {
                t.truncate(n)
            }
        })
        .collect()
}

fn verify(factors: &[Jet], f: &MPoly, n: u32) -> bool {
    let prod = factors.iter().skip(1).fold(factors[0].clone(), |acc, g| acc.mul(g));
    if prod.is_exact() {
        prod.body() == f
    } else {
        prod.agrees_with(f, n)
    }
}

/// Three linear-in-`z` factors of `f` if the discriminant is a square and both
/// cube roots exist; `None` otherwise.
pub fn full_split_cubic(f: &MPoly, z: &str, n: u32, ramified: Option<&str>) -> Result<Option<Vec<Jet>>, BranchError> {
    depress_cubic(f, z)?;
    let a = attempt(f, z, ramified, n, 1);
    if a.delta_verdict == "NeedsFieldExtension" || a.cube_verdicts.iter().any(|v| v == "NeedsFieldExtension") {
        if a.factors.is_none() {
            return Err(BranchError::NeedsFieldExtension);
        }
    }
    Ok(a.factors)
}

/// Tries `k = 1, 2, 3` in order; the first full split of `f(v^k, ...)` gives
/// 3, 2 resp. 1 branches.
/// `Delta = const * phi^2 * psi` with `psi` square-free; `None` when the
/// cubic cannot be depressed or `Delta` vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantSplit {
    pub delta: MPoly,
    pub phi: MPoly,
    pub psi: MPoly,
}

pub fn discriminant_split(f: &MPoly, z: &str) -> Option<DiscriminantSplit> {
    let delta = depress_cubic(f, z).ok()?.discriminant();
    if delta.is_zero() {
        return None;
    }
    let (psi, phi) = gcd::squarefree(&delta).square_split();
    Some(DiscriminantSplit { delta, phi, psi })
}

pub fn split_profile(f: &MPoly, z: &str, w: &str, n: u32) -> BranchReport {
    let mut report = BranchReport {
        k: None,
        branch_count: BranchCount::Indeterminate,
        factors: Vec::new(),
        attempts: Vec::new(),
        ord_b3: Order::Infinity,
        ord_c2: Order::Infinity,
        precision: n,
    };
    if let Ok(dc) = depress_cubic(f, z) {
        report.ord_b3 = dc.b.pow(3).ord();
        report.ord_c2 = dc.c.pow(2).ord();
    }
    for k in 1..=3 {
        let g = ramify(f, w, k);
        let a = attempt(&g, z, Some(RAMIFIED), n, k);
        let done = a.factors.clone();
        report.attempts.push(a);
        if let Some(factors) = done {
            report.k = Some(k);
            report.branch_count = BranchCount::Count(4 - k);
            report.factors = factors;
            break;
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticReport {
    pub count: BranchCount,
    pub factors: Vec<Jet>,
    pub verdict: String,
    /// `f = (z + shift)^2 - d` up to the leading constant.
    pub d: MPoly,
}

/// Branch count of a quadratic in `z` via the square test on its
/// discriminant part.
pub fn quadratic_branches(f: &MPoly, z: &str, n: u32) -> Result<QuadraticReport, BranchError> {
    let c = monic_in(f, z, 2)?;
    let shift = c[1].scale(&AlgNum::from_ratio(1, 2));
    let d = &shift.pow(2) - &c[0];
    let v = series_sqrt(&Jet::exact(&d, n), None);
    let verdict = v.tag();
    let base = Jet::exact(&(&MPoly::var(z) + &shift), 1);
    let (count, factors) = match &v {
        RootVerdict::SquareCertified(h) => {
            let t = |j: Jet| if j.is_exact() { j } else { j.truncate(n) };
            (BranchCount::Count(2), vec![t(base.sub(h)), t(base.add(h))])
        }
        RootVerdict::Obstructed(_) => (BranchCount::Count(1), Vec::new()),
        RootVerdict::NeedsFieldExtension => return Err(BranchError::NeedsFieldExtension),
        _ => (BranchCount::Indeterminate, Vec::new()),
    };
    Ok(QuadraticReport { count, factors, verdict, d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, var};

    fn cp3() -> MPoly {
        let (w, x, y, z) = (var("w"), var("x"), var("y"), var("z"));
        z.pow(3) + &w * &y.pow(3) + w.pow(2) * x.pow(3) - int(3) * w * x * y * z
    }

    #[test]
    fn depress_cp3() {
        let dc = depress_cubic(&cp3(), "z").unwrap();
        assert_eq!(dc.b, var("w") * var("x") * var("y"));
        assert!(dc.shift.is_zero());
        assert_eq!(dc.reconstruct(), cp3());
        let (w, x, y) = (var("w"), var("x"), var("y"));
        assert_eq!(dc.discriminant(), w.pow(2) * (y.pow(3) - &w * &x.pow(3)).pow(2));
    }

    #[test]
    fn non_monic_cubic_splits() {
        let (x, y, z) = (var("x"), var("y"), var("z"));
        let f = (&z * &(&(&z + &x) * &(&z + &y))).scale(&AlgNum::from_int(-8));
        assert!(full_split_cubic(&f, "z", 12, None).unwrap().is_some());
    }

    #[test]
    fn depress_shifted_and_split() {
        let (x, y, z) = (var("x"), var("y"), var("z"));
        let f = &z * &(&(&z + &x) * &(&z + &y));
        let dc = depress_cubic(&f, "z").unwrap();
        assert_eq!(dc.shift, (&x + &y).scale(&AlgNum::from_ratio(1, 3)));
        assert_eq!(dc.reconstruct().substitute_one("z", &(&z + &dc.shift)), f);
        let factors = full_split_cubic(&f, "z", 12, None).unwrap().unwrap();
        let mut got: Vec<MPoly> = factors.iter().map(|j| j.body().clone()).collect();
        got.sort_by_key(|p| p.to_string());
        let mut want = vec![z.clone(), &z + &x, &z + &y];
        want.sort_by_key(|p| p.to_string());
        assert_eq!(got, want);
        assert!(depress_cubic(&(&z + &int(1)).pow(3), "z").unwrap().b.is_zero());
    }

    #[test]
    fn cp3_splits_only_after_cube_ramification() {
        assert!(full_split_cubic(&cp3(), "z", 12, Some("w")).unwrap().is_none());
        let r = split_profile(&cp3(), "z", "w", 12);
        assert_eq!(r.branch_count, BranchCount::Count(1));
        assert_eq!(r.k, Some(3));
        assert_eq!(r.summary(), "1 branch (split at k=3)");
        let v = var("v");
        let (x, y, z) = (var("x"), var("y"), var("z"));
        let eps = MPoly::constant(AlgNum::eps());
        let e2 = &eps * &eps;
        let want = vec![
            &(&z + &(&v * &y)) + &(&v.pow(2) * &x),
            &(&z + &(&(&e2 * &v) * &y)) + &(&(&eps * &v.pow(2)) * &x),
            &(&z + &(&(&eps * &v) * &y)) + &(&(&e2 * &v.pow(2)) * &x),
        ];
        let got: Vec<MPoly> = r.factors.iter().map(|j| j.body().clone()).collect();
        for w in &want {
            assert!(got.contains(w), "missing factor {w}");
        }
    }

    #[test]
    fn counterexample_is_indeterminate() {
        let (w, x, y, z) = (var("w"), var("x"), var("y"), var("z"));
        let f = (&z + &x) * (z.pow(2) + (&w + &y) * y.pow(2));
        let r = split_profile(&f, "z", "w", 12);
        assert_eq!(r.branch_count, BranchCount::Indeterminate);
        assert_eq!(r.attempts.len(), 3);
        assert!(r.attempts[1].delta_verdict.starts_with("Obstructed"));
    }

    #[test]
    fn family_two_example() {
        let (w, x, y, z) = (var("w"), var("x"), var("y"), var("z"));
        let f = (&z + &(&w * &x)) * (z.pow(2) + w.pow(3) * (&x + &(&w * &y)).pow(2));
        let r = split_profile(&f, "z", "w", 12);
        assert_eq!((r.branch_count, r.k), (BranchCount::Count(2), Some(2)));
    }

    #[test]
    fn ramify_examples() {
        let (w, x, y, z) = (var("w"), var("x"), var("y"), var("z"));
        let v = var("v");
        let f = &x * &(z.pow(2) + &w * &y.pow(2));
        assert_eq!(ramify(&f, "w", 2), &x * &(z.pow(2) + v.pow(2) * y.pow(2)));
        assert_eq!(ramify(&f, "w", 1), &x * &(z.pow(2) + &v * &y.pow(2)));
    }

    #[test]
    fn quadratic_examples() {
        let (w, y, z) = (var("w"), var("y"), var("z"));
        let q = quadratic_branches(&(z.pow(2) + &w * &y.pow(2)), "z", 12).unwrap();
        assert_eq!(q.count, BranchCount::Count(1));
        let q = quadratic_branches(&(z.pow(2) + y.pow(2)), "z", 12).unwrap();
        assert_eq!(q.count, BranchCount::Count(2));
        let prod = q.factors[0].mul(&q.factors[1]);
        assert_eq!(prod.body(), &(z.pow(2) + y.pow(2)));
        let q = quadratic_branches(&(z.pow(2) + w.pow(2) * y.pow(2)), "z", 12).unwrap();
        assert_eq!(q.count, BranchCount::Count(2));
    }
}
