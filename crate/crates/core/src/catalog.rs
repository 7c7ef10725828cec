//! The catalog of normal forms, the cyclic-point construction and random
//! generators for the three-branch / two-branch / irreducible families.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CatalogError;
use crate::field::AlgNum;
use crate::poly::{int, var, MPoly};

pub type Certificates = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SingLabel {
    Smooth,
    Nc2,
    Nc3,
    Nc4,
    Pp,
    Dpp,
    Prod,
    Cp3,
    Exc,
    Unrecognized(Certificates),
}

impl SingLabel {
    pub const CATALOG: [SingLabel; 8] =
        [SingLabel::Nc2, SingLabel::Nc3, SingLabel::Nc4, SingLabel::Pp, SingLabel::Dpp, SingLabel::Prod, SingLabel::Cp3, SingLabel::Exc];

    pub fn name(&self) -> &'static str {
        match self {
            SingLabel::Smooth => "smooth",
            SingLabel::Nc2 => "nc2",
            SingLabel::Nc3 => "nc3",
            SingLabel::Nc4 => "nc4",
            SingLabel::Pp => "pp",
            SingLabel::Dpp => "dpp",
            SingLabel::Prod => "prod",
            SingLabel::Cp3 => "cp3",
            SingLabel::Exc => "exc",
            SingLabel::Unrecognized(_) => "unrecognized",
        }
    }

    pub fn from_name(s: &str) -> Option<SingLabel> {
        let l = match s {
            "smooth" => SingLabel::Smooth,
            "nc2" => SingLabel::Nc2,
            "nc3" => SingLabel::Nc3,
            "nc4" => SingLabel::Nc4,
            "pp" => SingLabel::Pp,
            "dpp" => SingLabel::Dpp,
            "prod" => SingLabel::Prod,
            "cp3" => SingLabel::Cp3,
            "exc" => SingLabel::Exc,
            "unrecognized" => SingLabel::Unrecognized(Certificates::new()),
            _ => return None,
        };
        Some(l)
    }

    /// Equality of label kinds (certificates ignored).
    pub fn same_kind(&self, other: &SingLabel) -> bool {
        self.name() == other.name()
    }
}

impl fmt::Display for SingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn wxyz() -> (MPoly, MPoly, MPoly, MPoly) {
    (var("w"), var("x"), var("y"), var("z"))
}

pub fn cp3_equation() -> MPoly {
    let (w, x, y, z) = wxyz();
    z.pow(3) + &w * &y.pow(3) + w.pow(2) * x.pow(3) - int(3) * &w * &x * &y * &z
}

pub fn catalog_equation(label: &SingLabel) -> Result<MPoly, CatalogError> {
    let (w, x, y, z) = wxyz();
    let f = match label {
        SingLabel::Nc2 => &x * &y,
        SingLabel::Nc3 => &(&x * &y) * &z,
        SingLabel::Nc4 => &(&w * &x) * &(&y * &z),
        SingLabel::Pp => z.pow(2) + &x * &y.pow(2),
        SingLabel::Dpp => z.pow(2) + (&y + &(int(2) * x.pow(2))) * (&y - &x.pow(2)).pow(2),
        SingLabel::Prod => &x * &(z.pow(2) + &w * &y.pow(2)),
        SingLabel::Cp3 => cp3_equation(),
        SingLabel::Exc => z.pow(2) + &y * &(&(&w * &y) + &x.pow(2)).pow(2),
        SingLabel::Smooth | SingLabel::Unrecognized(_) => return Err(CatalogError::NoEquation(label.name().into())),
    };
    Ok(f)
}

/// `(y0, y1, y2)` in terms of `(X, Y, Z)` by the discrete Fourier transform.
pub fn dft_forward() -> [MPoly; 3] {
    let (xx, yy, zz) = (var("X"), var("Y"), var("Z"));
    let e = MPoly::constant(AlgNum::eps());
    let e2 = &e * &e;
    let third = AlgNum::from_ratio(1, 3);
    [
        (&(&xx + &yy) + &zz).scale(&third),
        (&(&xx + &(&e * &yy)) + &(&e2 * &zz)).scale(&third),
        (&(&xx + &(&e2 * &yy)) + &(&e * &zz)).scale(&third),
    ]
}

/// `(X, Y, Z)` in terms of `(y0, y1, y2)`.
pub fn dft_inverse() -> [MPoly; 3] {
    let (y0, y1, y2) = (var("y0"), var("y1"), var("y2"));
    let e = MPoly::constant(AlgNum::eps());
    let e2 = &e * &e;
    [
        &(&y0 + &y1) + &y2,
        &(&y0 + &(&e2 * &y1)) + &(&e * &y2),
        &(&y0 + &(&e * &y1)) + &(&e2 * &y2),
    ]
}

/// Whether the inverse transform undoes the forward one on `(X, Y, Z)`.
pub fn dft_roundtrip() -> bool {
    let fwd = dft_forward();
    let b: BTreeMap<String, MPoly> = ["y0", "y1", "y2"].iter().map(|s| s.to_string()).zip(fwd).collect();
    let back: Vec<MPoly> = dft_inverse().iter().map(|p| p.substitute(&b)).collect();
    back == vec![var("X"), var("Y"), var("Z")]
}

/// `Phi(y0, y1, y2) = XYZ`.
pub fn phi() -> MPoly {
    let [a, b, c] = dft_inverse();
    &(&a * &b) * &c
}

/// `Phi(y0, eps y1, eps^2 y2) == Phi(y0, y1, y2)`.
pub fn phi_is_z3_invariant() -> bool {
    let e = MPoly::constant(AlgNum::eps());
    let mut b = BTreeMap::new();
    b.insert("y1".to_string(), &e * &var("y1"));
    b.insert("y2".to_string(), &(&e * &e) * &var("y2"));
    phi().substitute(&b) == phi()
}

/// `Phi(z, v y, v^2 x)` rewritten with `v^3 = w`.
pub fn construct_cp3_via_dft() -> Result<MPoly, CatalogError> {
    let (v, x, y, z) = (var("v"), var("x"), var("y"), var("z"));
    let mut b = BTreeMap::new();
    b.insert("y0".to_string(), z);
    b.insert("y1".to_string(), &v * &y);
    b.insert("y2".to_string(), &v.pow(2) * &x);
    let in_v = phi().substitute(&b);
    let f = in_v
        .compress_power("v", 3, "w")
        .ok_or_else(|| CatalogError::Construction("a v-exponent is not divisible by 3".into()))?;
    if f != cp3_equation() {
        return Err(CatalogError::Construction(format!("got {f}")));
    }
    Ok(f)
}

/// The order-2 analogue: `Phi(z, v y)` with `v^2 = w` for `Phi = XY`.
pub fn construct_cp2_via_dft() -> Result<MPoly, CatalogError> {
    let (v, y, z) = (var("v"), var("y"), var("z"));
    let phi2 = (&z + &(&v * &y)) * (&z - &(&v * &y));
    phi2.compress_power("v", 2, "w").ok_or_else(|| CatalogError::Construction("odd v-exponent".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
pub enum Family {
    One,
    TwoA,
    TwoB,
    Three,
    ThreeRaw,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::One, Family::TwoA, Family::TwoB, Family::Three, Family::ThreeRaw];

    pub fn name(self) -> &'static str {
        match self {
            Family::One => "one",
            Family::TwoA => "two-a",
            Family::TwoB => "two-b",
            Family::Three => "three",
            Family::ThreeRaw => "three-raw",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Ground-truth branch count.
    pub fn expected_branches(self) -> u32 {
        match self {
            Family::One => 3,
            Family::TwoA | Family::TwoB => 2,
            Family::Three | Family::ThreeRaw => 1,
        }
    }

    /// Ramification at which the first full split occurs.
    pub fn expected_k(self) -> u32 {
        4 - self.expected_branches()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub family: Family,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub m: u32,
    pub n: u32,
    pub xi: MPoly,
    pub eta: MPoly,
    pub zeta1: MPoly,
    pub zeta2: MPoly,
    pub seed: u64,
}

impl FamilyParams {
    pub fn new(family: Family) -> Self {
        FamilyParams {
            family,
            alpha: 1,
            beta: 1,
            gamma: 0,
            m: 0,
            n: 0,
            xi: MPoly::zero(),
            eta: MPoly::zero(),
            zeta1: var("y"),
            zeta2: var("x"),
            seed: 0,
        }
    }

    /// Random parameters: exponents from small ranges, series parameters of
    /// degree at most one with coefficients in {0, +-1, +-2}.
    pub fn random(family: Family, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = FamilyParams::new(family);
        p.seed = seed;
        match family {
            Family::One => {
                p.alpha = rng.gen_range(1..=2);
                p.beta = rng.gen_range(0..=2);
                p.xi = random_jet(&mut rng, &["w", "x", "y"], true);
            }
            Family::TwoA | Family::TwoB => {
                p.alpha = rng.gen_range(0..=1);
                p.beta = rng.gen_range(0..=1);
                p.xi = random_jet(&mut rng, &["w", "x", "y"], true);
                p.eta = random_jet(&mut rng, &["w", "x", "y"], true);
            }
            Family::Three => {
                let (a, b) = [(1, 1), (1, 2), (2, 2)][rng.gen_range(0..3)];
                p.alpha = a;
                p.beta = b;
                p.gamma = rng.gen_range(0..=1);
                p.eta = random_jet(&mut rng, &["w", "x", "y"], true);
            }
            Family::ThreeRaw => {
                p.m = rng.gen_range(0..=1);
                p.n = rng.gen_range(0..=1);
                p.zeta1 = loop {
                    let l = random_jet(&mut rng, &["x", "y"], false);
                    if !l.is_zero() {
                        break l;
                    }
                };
                p.zeta2 = loop {
                    let base = random_jet(&mut rng, &["x", "y"], false);
                    let extra = random_jet(&mut rng, &["w", "x", "y"], false);
                    let z2 = &base + &(&extra * &var(if rng.gen_bool(0.5) { "x" } else { "y" }));
                    if !z2.is_zero() {
                        break z2;
                    }
                };
            }
        }
        p
    }

    pub fn check(&self) -> Result<(), CatalogError> {
        if self.family == Family::Three {
            if 2 * self.alpha >= 3 * self.beta {
                return Err(CatalogError::Constraint(format!("need 2*alpha < 3*beta, got alpha={} beta={}", self.alpha, self.beta)));
            }
            if self.alpha % 3 == 0 {
                return Err(CatalogError::Constraint(format!("alpha={} is divisible by 3", self.alpha)));
            }
        }
        if self.family == Family::ThreeRaw {
            if self.zeta1.ord() != crate::poly::Order::Finite(1) || !in_xy_ideal(&self.zeta1) {
                return Err(CatalogError::Constraint("zeta1 must have order 1 in (x, y)".into()));
            }
            if !in_xy_ideal(&self.zeta2) {
                return Err(CatalogError::Constraint("zeta2 must lie in the ideal (x, y)".into()));
            }
        }
        Ok(())
    }
}

fn in_xy_ideal(f: &MPoly) -> bool {
    f.term_list().iter().all(|(mono, _)| mono.iter().any(|(v, _)| v == "x" || v == "y"))
}

/// Constant plus linear part (when `with_constant`) or linear form only.
fn random_jet(rng: &mut ChaCha8Rng, vars: &[&str], with_constant: bool) -> MPoly {
    const COEFFS: [i64; 5] = [0, 1, -1, 2, -2];
    let mut f = MPoly::zero();
    if with_constant {
        f = int(COEFFS[rng.gen_range(0..5)]);
    }
    for v in vars {
        let c = COEFFS[rng.gen_range(0..5)];
        f = &f + &var(v).scale(&AlgNum::from_int(c));
    }
    f
}

pub fn generate_instance(p: &FamilyParams) -> Result<MPoly, CatalogError> {
    p.check()?;
    let (w, x, y, z) = wxyz();
    let wp = |k: u32| w.pow(k);
    let f = match p.family {
        Family::One => {
            let a = &z + &(&wp(p.alpha) * &x);
            let b = &z + &(&wp(p.alpha) * &(&(&x * &p.xi) + &(&wp(p.beta) * &y)));
            &(&z * &a) * &b
        }
        Family::TwoA => {
            let a = &z + &(&wp(p.alpha) * &x);
            let s = &(&x * &p.xi) + &(&wp(p.beta) * &y);
            &a * &(&z.pow(2) + &(&wp(2 * p.alpha + 1) * &s.pow(2)))
        }
        Family::TwoB => {
            let a = &z + &(&wp(p.alpha) * &(&(&y * &p.eta) + &(&wp(p.beta) * &x)));
            &a * &(&z.pow(2) + &(&wp(2 * p.alpha + 1) * &y.pow(2)))
        }
        Family::Three => {
            let t = &(&y * &p.eta) + &(&wp(p.gamma) * &x);
            let mid = &(&wp(p.beta) * &y) * &t;
            &(&(&z.pow(3) - &(&mid * &z).scale(&AlgNum::from_int(3))) + &(&wp(p.alpha) * &y.pow(3))) + &(&wp(3 * p.beta - p.alpha) * &t.pow(3))
        }
        Family::ThreeRaw => {
            let (z1, z2) = (&p.zeta1, &p.zeta2);
            let cross = &(&wp(p.m + p.n + 1) * &(z1 * z2)) * &z;
            &(&(&z.pow(3) + &(&wp(3 * p.n + 1) * &z2.pow(3))) + &(&wp(3 * p.m + 2) * &z1.pow(3))) - &cross.scale(&AlgNum::from_int(3))
        }
    };
    Ok(f)
}

/// Seeded invertible linear change preserving `(w = 0)`:
/// `w -> ±w`, `(x, y) -> M (x, y) + c w` with `det M != 0`, and
/// `z -> d z + l(w, x, y)` with `d != 0`.
pub fn w_preserving_change(seed: u64) -> BTreeMap<String, MPoly> {
    const COEFFS: [i64; 5] = [0, 1, -1, 2, -2];
    const UNITS: [i64; 4] = [1, -1, 2, -2];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pick = |set: &[i64]| set[rng.gen_range(0..set.len())];
    let (w, x, y, z) = wxyz();
    let lambda = pick(&[1, -1]);
    let (a, b, c, d) = loop {
        let m = (pick(&COEFFS), pick(&COEFFS), pick(&COEFFS), pick(&COEFFS));
        if m.0 * m.3 - m.1 * m.2 != 0 {
            break m;
        }
    };
    let comb = |cs: &[i64], vs: &[&MPoly]| cs.iter().zip(vs).fold(MPoly::zero(), |acc, (k, v)| &acc + &v.scale(&AlgNum::from_int(*k)));
    let nx = comb(&[a, b, pick(&COEFFS)], &[&x, &y, &w]);
    let ny = comb(&[c, d, pick(&COEFFS)], &[&x, &y, &w]);
    let nz = comb(&[pick(&UNITS), pick(&COEFFS), pick(&COEFFS), pick(&COEFFS)], &[&z, &w, &x, &y]);
    BTreeMap::from([
        ("w".to_string(), w.scale(&AlgNum::from_int(lambda))),
        ("x".to_string(), nx),
        ("y".to_string(), ny),
        ("z".to_string(), nz),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dft_construction() {
        assert!(dft_roundtrip());
        assert!(phi_is_z3_invariant());
        assert_eq!(construct_cp3_via_dft().unwrap(), cp3_equation());
        let (w, y, z) = (var("w"), var("y"), var("z"));
        assert_eq!(construct_cp2_via_dft().unwrap(), z.pow(2) - &w * &y.pow(2));
    }

    #[test]
    fn family_specializations() {
        let (w, x, y, z) = wxyz();
        let mut p = FamilyParams::new(Family::One);
        p.alpha = 1;
        p.beta = 1;
        assert_eq!(generate_instance(&p).unwrap(), &(&z * &(&z + &(&w * &x))) * &(&z + &(w.pow(2) * y.clone())));
        let p = FamilyParams::new(Family::Three);
        assert_eq!(generate_instance(&p).unwrap(), cp3_equation());
        let mut bad = FamilyParams::new(Family::Three);
        bad.alpha = 3;
        bad.beta = 3;
        assert!(matches!(generate_instance(&bad), Err(CatalogError::Constraint(_))));
        let _ = x;
    }

    #[test]
    fn random_params_are_deterministic() {
        for fam in Family::ALL {
            assert_eq!(FamilyParams::random(fam, 7), FamilyParams::random(fam, 7));
            for s in 0..20 {
                let p = FamilyParams::random(fam, s);
                assert!(generate_instance(&p).is_ok(), "{fam} seed {s}");
            }
        }
    }
}
