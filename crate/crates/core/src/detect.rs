//! Certificate-based recognition of the catalog singularities at the origin
//! of a chart.
//!
//! The battery is tried in order: smooth, normal crossings, quadrics in one
//! variable (pp / dpp / exc), a smooth sheet times a pinch point (prod), and
//! the cubic splitting test (cp3). It is a recogniser for shapes reachable
//! from catalog forms, not a general equivalence test.

use serde::Serialize;

use crate::branch::{depress_cubic, split_profile, BranchCount, DEFAULT_PRECISION};
use crate::catalog::{Certificates, SingLabel};
use crate::chart::Chart;
use crate::field::AlgNum;
use crate::gcd;
use crate::hensel::{hensel_lift, hensel_lift_independent, linear_coeffs, linear_factors};
use crate::linalg;
use crate::poly::{sort_vars, MPoly, Order};

/// The distinguished divisor variable used by the cubic test.
pub const DIVISOR_VAR: &str = "w";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Detection {
    pub label: SingLabel,
    pub certificates: Certificates,
}

pub fn detect(chart: &Chart) -> SingLabel {
    classify(&chart.f).label
}

pub fn detect_with_certificates(chart: &Chart) -> Detection {
    classify(&chart.f)
}

/// Runs the battery on `f` at the origin.
pub fn classify(f: &MPoly) -> Detection {
    let mut certs = Certificates::new();
    let ord = match f.ord() {
        Order::Infinity => {
            certs.insert("ord".into(), "inf".into());
            return unrecognized(certs);
        }
        Order::Finite(d) => d,
    };
    certs.insert("ord".into(), ord.to_string());
    if ord <= 1 {
        return Detection { label: SingLabel::Smooth, certificates: certs };
    }
    let cone = f.leading_form(ord);
    certs.insert("cone".into(), cone.to_string());
    let Some((_, lines)) = linear_factors(&cone) else {
        certs.insert("cone.split".into(), "no linear factorization".into());
        return try_quadric(f, ord, certs);
    };
    let groups = group_lines(&lines);
    let mults: Vec<u32> = groups.iter().map(|(_, e)| *e).collect();
    certs.insert("cone.multiplicities".into(), format!("{mults:?}"));

    // (b) normal crossings
    if mults.iter().all(|&e| e == 1) && (2..=4).contains(&ord) {
        let ls: Vec<MPoly> = groups.iter().map(|(l, _)| l.clone()).collect();
        match hensel_lift_independent(f, &ls, DEFAULT_PRECISION) {
            Ok(_) => {
                let label = match ord {
                    2 => SingLabel::Nc2,
                    3 => SingLabel::Nc3,
                    _ => SingLabel::Nc4,
                };
                certs.insert("lift".into(), "independent branches".into());
                return Detection { label, certificates: certs };
            }
            Err(e) => {
                certs.insert("lift".into(), e.to_string());
            }
        }
    }
    match (ord, mults.as_slice()) {
        (2, [2]) => try_quadric(f, ord, certs),
        (3, [_, _]) => try_prod(f, &groups, certs),
        (3, [3]) => try_cubic(f, certs),
        _ => unrecognized(certs),
    }
}

/// Samples points `axis = a` (others zero) and classifies after translating
/// each to the origin.
pub fn neighborhood_scan(chart: &Chart, axis: &str, samples: &[AlgNum]) -> Vec<(AlgNum, SingLabel)> {
    samples
        .iter()
        .map(|a| {
            let shifted = chart.f.substitute_one(axis, &(&MPoly::var(axis) + &MPoly::constant(a.clone())));
            (a.clone(), classify(&shifted).label)
        })
        .collect()
}

fn unrecognized(certs: Certificates) -> Detection {
    Detection { label: SingLabel::Unrecognized(certs.clone()), certificates: certs }
}

/// Merges proportional linear forms, keeping the first representative.
fn group_lines(lines: &[MPoly]) -> Vec<(MPoly, u32)> {
    let mut groups: Vec<(MPoly, u32)> = Vec::new();
    for l in lines {
        match groups.iter_mut().find(|(g, _)| proportional(g, l)) {
            Some(entry) => entry.1 += 1,
            None => groups.push((l.clone(), 1)),
        }
    }
    groups
}

fn proportional(a: &MPoly, b: &MPoly) -> bool {
    gcd::normalize(a) == gcd::normalize(b)
}

fn joint_vars(polys: &[&MPoly]) -> Vec<String> {
    let mut vs: Vec<String> = polys.iter().flat_map(|p| p.vars().iter().cloned()).collect();
    sort_vars(&mut vs);
    vs.dedup();
    vs
}

/// Rank of the linear parts.
fn differential_rank(polys: &[&MPoly]) -> usize {
    let vars = joint_vars(polys);
    let m: Vec<Vec<AlgNum>> = polys.iter().map(|p| linear_coeffs(&p.linear_part(), &vars)).collect();
    linalg::rank(&m)
}

#[derive(Clone, Debug)]
struct Quadric {
    label: SingLabel,
    /// Linear parts spanning the normal form coordinates: the squared
    /// variable, then `A`, then `B`.
    parts: Vec<MPoly>,
}

/// (c) `f = U v^2 + P v + R` with `U(0) != 0`; classifies `D = P^2 - 4UR = c A^2 B`.
fn quadric_shape(f: &MPoly, certs: &mut Certificates, prefix: &str) -> Option<Quadric> {
    for v in f.vars().to_vec() {
        if f.degree_in(&v) != Some(2) {
            continue;
        }
        let c = f.coefficients_in(&v);
        let (r, p, u) = (&c[0], &c[1], &c[2]);
        if u.constant_term().is_zero() {
            continue;
        }
        let d = &p.pow(2) - &(u * r).scale(&AlgNum::from_int(4));
        if d.is_zero() {
            continue;
        }
        let key = |k: &str| format!("{prefix}{k}");
        certs.insert(key("var"), v.clone());
        certs.insert(key("D"), d.to_string());
        let sq = gcd::squarefree(&d);
        let nonunits: Vec<&(MPoly, u32)> = sq.factors.iter().filter(|(g, _)| g.constant_term().is_zero()).collect();
        let shape: Vec<u32> = nonunits.iter().map(|(_, e)| *e).collect();
        certs.insert(key("D.exponents"), format!("{shape:?}"));
        let (Some(a), Some(b)) = (
            nonunits.iter().find(|(_, e)| *e == 2).map(|(g, _)| g),
            nonunits.iter().find(|(_, e)| *e == 1).map(|(g, _)| g),
        ) else {
            continue;
        };
        if nonunits.len() != 2 {
            continue;
        }
        let (oa, ob) = (a.ord(), b.ord());
        certs.insert(key("A"), a.to_string());
        certs.insert(key("B"), b.to_string());
        // coordinate of the squared variable after completing the square
        let sv = &MPoly::var(&v).scale(&(&u.constant_term() * &AlgNum::from_int(2))) + &p.linear_part();
        let label = match (oa, ob) {
            (Order::Finite(1), Order::Finite(1)) => {
                if differential_rank(&[a, b]) == 2 {
                    SingLabel::Pp
                } else {
                    let la = a.linear_part();
                    let lb = b.linear_part();
                    let vars = joint_vars(&[&la, &lb]);
                    let (ca, cb) = (linear_coeffs(&la, &vars), linear_coeffs(&lb, &vars));
                    let k = ca.iter().position(|c| !c.is_zero())?;
                    let lambda = &ca[k] * &cb[k].inverse().ok()?;
                    let contact = (a - &b.scale(&lambda)).ord();
                    certs.insert(key("contact"), contact.to_string());
                    if contact != Order::Finite(2) {
                        continue;
                    }
                    SingLabel::Dpp
                }
            }
            (Order::Finite(2), Order::Finite(1)) => {
                let lb = b.linear_part();
                let a2 = a.homogeneous_part(2);
                let restricted = restrict_to_hyperplane(&a2, &lb);
                certs.insert(key("A|B=0"), restricted.to_string());
                if restricted.is_zero() {
                    continue;
                }
                SingLabel::Exc
            }
            _ => continue,
        };
        certs.insert(key("shape"), label.name().into());
        return Some(Quadric { label, parts: vec![sv, a.linear_part(), b.linear_part()] });
    }
    None
}

/// Restricts a form to the hyperplane `l = 0` by solving `l` for its first
/// variable.
fn restrict_to_hyperplane(form: &MPoly, l: &MPoly) -> MPoly {
    let Some(v) = l.vars().first().cloned() else {
        return form.clone();
    };
    let c = l.linear_coeff(&v);
    let rest = l - &MPoly::var(&v).scale(&c);
    let Ok(inv) = c.inverse() else {
        return form.clone();
    };
    form.substitute_one(&v, &(-&rest).scale(&inv))
}

fn try_quadric(f: &MPoly, ord: u32, mut certs: Certificates) -> Detection {
    if ord == 2 {
        if let Some(q) = quadric_shape(f, &mut certs, "quadric.") {
            return Detection { label: q.label, certificates: certs };
        }
    }
    unrecognized(certs)
}

/// (d) Cone `l1 * l2^2`: lift to a smooth sheet times a quadric, which must
/// be a pinch point transverse to the sheet.
fn try_prod(f: &MPoly, groups: &[(MPoly, u32)], mut certs: Certificates) -> Detection {
    let mut cones = groups.to_vec();
    cones.sort_by_key(|(_, e)| *e);
    if cones.iter().map(|(_, e)| *e).collect::<Vec<_>>() != [1, 2] {
        return unrecognized(certs);
    }
    // a polynomial factor v - phi has deg phi <= deg f; the sheet is known
    // through degree bound - 2 (its cofactor has degree 2)
    let bound = f.total_degree().unwrap_or(0) + 2;
    let factors = match hensel_lift(f, &cones, bound) {
        Ok(fs) => fs,
        Err(e) => {
            certs.insert("lift".into(), e.to_string());
            return unrecognized(certs);
        }
    };
    let (sheet, quad) = if factors.iter().all(|j| j.is_exact()) {
        (factors[0].body().clone(), factors[1].body().clone())
    } else if let Some(pair) = polynomial_sheet(f, factors[0].body()) {
        pair
    } else {
        // a truncated quadric says nothing about the square-free shape of its
        // discriminant
        certs.insert("prod.exact".into(), "false".into());
        certs.insert("prod".into(), "no polynomial factorization along the smooth sheet".into());
        return unrecognized(certs);
    };
    certs.insert("prod.sheet".into(), sheet.to_string());
    certs.insert("prod.quadric".into(), quad.to_string());
    certs.insert("prod.exact".into(), "true".into());
    if let Some(q) = quadric_shape(&quad, &mut certs, "prod.") {
        let mut parts: Vec<&MPoly> = vec![&sheet];
        parts.extend(q.parts.iter());
        let rank = differential_rank(&parts);
        certs.insert("prod.rank".into(), rank.to_string());
        if q.label == SingLabel::Pp && rank == 4 {
            return Detection { label: SingLabel::Prod, certificates: certs };
        }
    }
    unrecognized(certs)
}

/// The lift fixes factors only up to units. Solves the lifted sheet for one
/// of its linear variables, `v = phi`, and accepts `v - phi` when it divides
/// `f` exactly.
fn polynomial_sheet(f: &MPoly, sheet: &MPoly) -> Option<(MPoly, MPoly)> {
    let bound = f.total_degree()?;
    for v in sheet.vars() {
        let c = sheet.linear_coeff(v);
        if c.is_zero() {
            continue;
        }
        let inv = c.inverse().ok()?;
        let lin = MPoly::var(v).scale(&c);
        let mut phi = MPoly::zero();
        for _ in 0..=bound {
            let rest = &sheet.substitute_one(v, &phi) - &lin.substitute_one(v, &phi);
            phi = rest.scale(&(-&inv)).truncate(bound);
        }
        let candidate = &MPoly::var(v) - &phi;
        if let Ok(q) = f.exact_divide(&candidate) {
            return Some((candidate, q));
        }
    }
    None
}

/// (e) Cone `l^3`: cubic with constant leading coefficient in some variable
/// splitting only after `w -> v^3`, with the cp3 exponent pattern
/// `alpha = beta = 1`, `gamma = 0` read off the depressed form.
fn try_cubic(f: &MPoly, mut certs: Certificates) -> Detection {
    if !f.has_var(DIVISOR_VAR) {
        certs.insert("cubic".into(), format!("no divisor variable {DIVISOR_VAR}"));
        return unrecognized(certs);
    }
    let Some(z) = f
        .vars()
        .iter()
        .find(|v| v.as_str() != DIVISOR_VAR && f.degree_in(v) == Some(3) && f.coeff_in(v, 3).is_constant())
        .cloned()
    else {
        certs.insert("cubic".into(), "no variable with constant cubic coefficient".into());
        return unrecognized(certs);
    };
    certs.insert("cubic.var".into(), z.clone());
    let dc = match depress_cubic(f, &z) {
        Ok(dc) => dc,
        Err(e) => {
            certs.insert("cubic".into(), e.to_string());
            return unrecognized(certs);
        }
    };
    let report = split_profile(f, &z, DIVISOR_VAR, DEFAULT_PRECISION);
    certs.insert("split".into(), report.summary());
    for a in &report.attempts {
        certs.insert(format!("split.k{}.delta", a.k), a.delta_verdict.clone());
        if let Some(e) = &a.error {
            certs.insert(format!("split.k{}.error", a.k), e.clone());
        }
    }
    let (beta, b1) = dc.b.factor_out_variable(DIVISOR_VAR);
    let (alpha, c1) = dc.c.factor_out_variable(DIVISOR_VAR);
    certs.insert("cubic.beta".into(), beta.to_string());
    certs.insert("cubic.alpha".into(), alpha.to_string());
    if report.branch_count != BranchCount::Count(1) || report.k != Some(3) || alpha != 1 || beta != 1 {
        return unrecognized(certs);
    }
    let b1 = b1.eval(DIVISOR_VAR, &AlgNum::zero());
    let c1 = c1.eval(DIVISOR_VAR, &AlgNum::zero());
    let gamma_zero = cp3_pattern(&b1, &c1);
    certs.insert("cubic.gamma".into(), if gamma_zero { "0".into() } else { ">0".into() });
    if gamma_zero {
        Detection { label: SingLabel::Cp3, certificates: certs }
    } else {
        unrecognized(certs)
    }
}

/// `B/w` has a cone of two independent lines and `C/w` has the cube of one
/// of them as its cone.
fn cp3_pattern(b1: &MPoly, c1: &MPoly) -> bool {
    if b1.ord() != Order::Finite(2) || c1.ord() != Order::Finite(3) {
        return false;
    }
    let Some((_, bl)) = linear_factors(&b1.leading_form(2)) else { return false };
    let Some((_, cl)) = linear_factors(&c1.leading_form(3)) else { return false };
    let bg = group_lines(&bl);
    let cg = group_lines(&cl);
    bg.len() == 2
        && differential_rank(&[&bg[0].0, &bg[1].0]) == 2
        && cg.len() == 1
        && bg.iter().any(|(l, _)| proportional(l, &cg[0].0))
}

/// Convenience for sample lists of small integers.
pub fn integer_samples(values: &[i64]) -> Vec<AlgNum> {
    values.iter().map(|&v| AlgNum::from_int(v)).collect()
}
