//! Multivariate gcd by recursive primitive remainder sequences, and
//! square-free decomposition.

use std::collections::BTreeMap;

use crate::field::AlgNum;
use crate::poly::MPoly;

/// Scales so the lex-leading coefficient is one (zero stays zero).
pub fn normalize(f: &MPoly) -> MPoly {
    f.monic().1
}

fn div(f: &MPoly, g: &MPoly) -> MPoly {
    f.exact_divide(g).expect("exact division inside gcd")
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `var`.
pub fn content(f: &MPoly, var: &str) -> MPoly {
    let mut acc = MPoly::zero();
    for c in f.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return MPoly::one();
        }
    }
    acc
}

fn primitive_part(f: &MPoly, var: &str) -> MPoly {
    if f.is_zero() {
        return MPoly::zero();
    }
    div(f, &content(f, var))
}

fn pseudo_rem(a: &MPoly, b: &MPoly, var: &str) -> MPoly {
    let db = b.degree_in(var).unwrap_or(0);
    let lb = b.coeff_in(var, db);
    let x = MPoly::var(var);
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(var) {
        if r.is_zero() || dr < db {
            break;
        }
        let lr = r.coeff_in(var, dr);
        r = &(&lb * &r) - &(&(&lr * &x.pow(dr - db)) * b);
    }
    r
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return normalize(g);
    }
    if g.is_zero() {
        return normalize(f);
    }
    if f.is_constant() || g.is_constant() {
        return MPoly::one();
    }
    if f.num_terms() == 1 && g.num_terms() == 1 {
        return monomial_gcd(f, g);
    }
    if let Some(v) = g.vars().iter().find(|v| !f.has_var(v)) {
        return gcd(f, &content(g, v));
    }
    if let Some(v) = f.vars().iter().find(|v| !g.has_var(v)) {
        return gcd(&content(f, v), g);
    }
    let var = main_variable(f, Some(g));
    let cf = content(f, &var);
    let cg = content(g, &var);
    let c = gcd(&cf, &cg);
    let mut a = div(f, &cf);
    let mut b = div(g, &cg);
    if image_coprime(&a, &b, &var) {
        return normalize(&c);
    }
    if a.degree_in(&var) < b.degree_in(&var) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, &var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(&var) == Some(0) {
            b = MPoly::one();
            break;
        }
        a = b;
        b = primitive_part(&r, &var);
    }
    normalize(&(&c * &primitive_part(&b, &var)))
}

/// Specialises every other variable to small integers and checks the
/// univariate images for coprimality. With both leading coefficients
/// surviving, coprime images force a trivial primitive gcd.
fn image_coprime(a: &MPoly, b: &MPoly, var: &str) -> bool {
    const POINTS: [i64; 8] = [2, 3, -5, 7, -11, 13, 17, -19];
    for shift in 0..3 {
        let point = |v: &str| -> AlgNum {
            let k = a.vars().iter().chain(b.vars()).position(|u| u == v).unwrap_or(0);
            AlgNum::from_int(POINTS[(k + shift) % POINTS.len()] + shift as i64)
        };
        let (ia, ib) = (univariate_image(a, var, &point), univariate_image(b, var, &point));
        let deg = |p: &[AlgNum]| p.len().saturating_sub(1);
        if ia.len() != a.degree_in(var).unwrap_or(0) as usize + 1 || ib.len() != b.degree_in(var).unwrap_or(0) as usize + 1 {
            continue;
        }
        return deg(&univariate_gcd(ia, ib)) == 0;
    }
    false
}

/// Dense coefficients (ascending) of `f` with all variables but `var`
/// evaluated; trailing zeros trimmed.
fn univariate_image(f: &MPoly, var: &str, point: &dyn Fn(&str) -> AlgNum) -> Vec<AlgNum> {
    let vals: Vec<Option<AlgNum>> = f.vars().iter().map(|v| if v == var { None } else { Some(point(v)) }).collect();
    let mut out: Vec<AlgNum> = Vec::new();
    for (e, c) in f.terms() {
        let mut t = c.clone();
        let mut d = 0usize;
        for (k, val) in e.iter().zip(&vals) {
            match val {
                None => d = *k as usize,
                Some(x) => {
                    for _ in 0..*k {
                        t *= x;
                    }
                }
            }
        }
        if out.len() <= d {
            out.resize(d + 1, AlgNum::zero());
        }
        out[d] += &t;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn univariate_gcd(mut a: Vec<AlgNum>, mut b: Vec<AlgNum>) -> Vec<AlgNum> {
    while !b.is_empty() {
        let inv = b.last().unwrap().inverse().expect("nonzero leading coefficient");
        while a.len() >= b.len() {
            let q = a.last().unwrap() * &inv;
            let off = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                let t = &q * bj;
                a[off + j] -= &t;
            }
            a.pop();
            while a.last().is_some_and(|c| c.is_zero()) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Variable of smallest degree (ties: canonical order); keeps remainder
/// sequences short.
fn main_variable(f: &MPoly, g: Option<&MPoly>) -> String {
    f.vars()
        .iter()
        .min_by_key(|v| f.degree_in(v).unwrap_or(0).max(g.and_then(|g| g.degree_in(v)).unwrap_or(0)))
        .cloned()
        .expect("nonconstant polynomial")
}

fn monomial_gcd(f: &MPoly, g: &MPoly) -> MPoly {
    let (ef, _) = f.leading_term().unwrap();
    let (eg, _) = g.leading_term().unwrap();
    let powers: Vec<(&str, u32)> = f
        .vars()
        .iter()
        .zip(ef)
        .map(|(v, &k)| (v.as_str(), k.min(g.exponent_of(eg, v))))
        .collect();
    MPoly::monomial(AlgNum::one(), &powers)
}

pub fn gcd_all<'a>(fs: impl IntoIterator<Item = &'a MPoly>) -> MPoly {
    let mut acc = MPoly::zero();
    for f in fs {
        acc = gcd(&acc, f);
    }
    acc
}

/// Square-free decomposition `f = unit * prod factor^exp` with monic,
/// square-free, pairwise coprime factors, sorted by exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: AlgNum,
    pub factors: Vec<(MPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> MPoly {
        let mut acc = MPoly::constant(self.unit.clone());
        for (p, e) in &self.factors {
            acc = &acc * &p.pow(*e);
        }
        acc
    }

    /// Product of the factors with odd exponent, and the square root of the rest.
    pub fn square_split(&self) -> (MPoly, MPoly) {
        let mut odd = MPoly::one();
        let mut half = MPoly::one();
        for (p, e) in &self.factors {
            if e % 2 == 1 {
                odd = &odd * p;
            }
            half = &half * &p.pow(e / 2);
        }
        (odd, half)
    }
}

pub fn squarefree(f: &MPoly) -> SquarefreeDecomposition {
    let mut merged: BTreeMap<u32, MPoly> = BTreeMap::new();
    collect_squarefree(f, &mut merged);
    let factors: Vec<(MPoly, u32)> = merged.into_iter().filter(|(_, p)| !p.is_constant()).map(|(e, p)| (normalize(&p), e)).collect();
    let mut prod = MPoly::one();
    for (p, e) in &factors {
        prod = &prod * &p.pow(*e);
    }
    let unit = if f.is_zero() {
        AlgNum::zero()
    } else {
        f.exact_divide(&prod).ok().and_then(|u| u.as_constant()).expect("decomposition divides input")
    };
    SquarefreeDecomposition { unit, factors }
}

fn collect_squarefree(f: &MPoly, out: &mut BTreeMap<u32, MPoly>) {
    if f.is_constant() {
        return;
    }
    // monomial factors first; they are cheap and common
    let mut f = f.clone();
    for v in f.vars().to_vec() {
        let (k, rest) = f.factor_out_variable(&v);
        if k > 0 {
            push(out, MPoly::var(&v), k);
            f = rest;
        }
    }
    if f.is_constant() {
        return;
    }
    let var = main_variable(&f, None);
    let c = content(&f, &var);
    let p = div(&f, &c);
    yun(&p, &var, out);
    collect_squarefree(&c, out);
}

fn push(out: &mut BTreeMap<u32, MPoly>, p: MPoly, e: u32) {
    if p.is_constant() {
        return;
    }
    let entry = out.entry(e).or_insert_with(MPoly::one);
    *entry = &*entry * &p;
}

fn yun(p: &MPoly, var: &str, out: &mut BTreeMap<u32, MPoly>) {
    let dp = p.derivative(var);
    let a0 = gcd(p, &dp);
    let mut b = div(p, &a0);
    let c = div(&dp, &a0);
    let mut d = &c - &b.derivative(var);
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        b = div(&b, &a);
        let c = div(&d, &a);
        d = &c - &b.derivative(var);
        push(out, a, i);
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, var};

    #[test]
    fn gcd_of_products() {
        let (x, y, z) = (var("x"), var("y"), var("z"));
        let a = &x + &(&y * &z);
        let f = &a * &(&x - &y);
        let g = &a.pow(2) * &(&z + &int(1));
        assert_eq!(gcd(&f, &g), normalize(&a));
        assert_eq!(gcd(&x, &y), MPoly::one());
        assert_eq!(gcd(&(x.pow(2) * y.clone()), &(x.clone() * y.pow(3))), &x * &y);
    }

    #[test]
    fn squarefree_of_dpp_discriminant() {
        let (x, y) = (var("x"), var("y"));
        let f = (y.clone() - x.pow(2)).pow(2) * (y.clone() + int(2) * x.pow(2)) * int(-3);
        let d = squarefree(&f);
        assert_eq!(d.expand(), f);
        assert_eq!(d.factors.len(), 2);
        assert_eq!(d.factors[0].1, 1);
        assert_eq!(d.factors[1].1, 2);
        assert_eq!(d.factors[1].0, normalize(&(y - x.pow(2))));
    }

    #[test]
    fn squarefree_with_content() {
        let (w, x, y) = (var("w"), var("x"), var("y"));
        let f = w.pow(3) * (x.clone() + y.clone()).pow(2) * (x.clone() - w.clone());
        let d = squarefree(&f);
        assert_eq!(d.expand(), f);
        let exps: Vec<u32> = d.factors.iter().map(|(_, e)| *e).collect();
        assert_eq!(exps, vec![1, 2, 3]);
    }
}
