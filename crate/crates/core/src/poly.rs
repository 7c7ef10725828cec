//! Sparse multivariate polynomials over `AlgNum` in named variables.
//!
//! Variables are kept in a canonical order (`w, x, y, z, v`, then anything
//! else alphabetically) and only variables that actually occur are stored, so
//! structural equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use crate::error::AlgebraError;
use crate::field::AlgNum;

/// Order of a power series: a nonnegative integer, or infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Order {
    Finite(u32),
    Infinity,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(d) => Some(d),
            Order::Infinity => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(d) => write!(f, "{d}"),
            Order::Infinity => f.write_str("inf"),
        }
    }
}

impl Add for Order {
    type Output = Order;
    fn add(self, rhs: Order) -> Order {
        match (self, rhs) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinity,
        }
    }
}

fn var_key(v: &str) -> (u8, &str) {
    let rank = match v {
        "w" => 0,
        "x" => 1,
        "y" => 2,
        "z" => 3,
        "v" => 4,
        _ => 5,
    };
    (rank, v)
}

pub fn sort_vars(vars: &mut Vec<String>) {
    vars.sort_by(|a, b| var_key(a).cmp(&var_key(b)));
    vars.dedup();
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    if a == b {
        return a.to_vec();
    }
    let mut out: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
    sort_vars(&mut out);
    out
}

pub type Terms = BTreeMap<Vec<u32>, AlgNum>;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    vars: Vec<String>,
    terms: Terms,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(AlgNum::one())
    }

    pub fn constant(c: AlgNum) -> Self {
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { vars: Vec::new(), terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(AlgNum::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(AlgNum::one(), &[(name, 1)])
    }

    pub fn monomial(c: AlgNum, powers: &[(&str, u32)]) -> Self {
        let mut vars: Vec<String> = powers.iter().filter(|(_, e)| *e > 0).map(|(v, _)| v.to_string()).collect();
        sort_vars(&mut vars);
        let mut exps = vec![0u32; vars.len()];
        for (v, e) in powers {
            if let Some(p) = vars.iter().position(|x| x == v) {
                exps[p] += e;
            }
        }
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self::from_parts(vars, terms)
    }

    /// Builds a polynomial from terms over `vars` (which must be in canonical
    /// order), dropping zero coefficients and unused variables.
    pub fn from_parts(vars: Vec<String>, mut terms: Terms) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..vars.len()).map(|i| terms.keys().any(|e| e[i] > 0)).collect();
        if used.iter().all(|&u| u) {
            return MPoly { vars, terms };
        }
        let keep: Vec<usize> = (0..vars.len()).filter(|&i| used[i]).collect();
        let vars = keep.iter().map(|&i| vars[i].clone()).collect();
        let terms = terms.into_iter().map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c)).collect();
        MPoly { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn has_var(&self, v: &str) -> bool {
        self.vars.iter().any(|x| x == v)
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn as_constant(&self) -> Option<AlgNum> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> AlgNum {
        self.terms.get(&vec![0u32; self.vars.len()]).cloned().unwrap_or_else(AlgNum::zero)
    }

    /// Terms re-indexed over a superset `target` of this polynomial's variables.
    fn embed(&self, target: &[String]) -> Terms {
        if target == self.vars.as_slice() {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v).expect("target contains all variables"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; target.len()];
                for (i, &p) in pos.iter().enumerate() {
                    ne[p] = e[i];
                }
                (ne, c.clone())
            })
            .collect()
    }

    /// Iterator over `(variable, exponent)` lists for each term.
    pub fn term_list(&self) -> Vec<(Vec<(String, u32)>, AlgNum)> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono = self.vars.iter().zip(e).filter(|(_, &k)| k > 0).map(|(v, &k)| (v.clone(), k)).collect();
                (mono, c.clone())
            })
            .collect()
    }

    pub fn exponent_of(&self, exps: &[u32], var: &str) -> u32 {
        self.vars.iter().position(|v| v == var).map(|p| exps[p]).unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn ord(&self) -> Order {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).min().map(Order::Finite).unwrap_or(Order::Infinity)
    }

    /// Order counting only the exponents of `vars`.
    pub fn ord_sub(&self, vars: &[&str]) -> Order {
        let idx: Vec<usize> = self.vars.iter().enumerate().filter(|(_, v)| vars.contains(&v.as_str())).map(|(i, _)| i).collect();
        self.terms
            .keys()
            .map(|e| idx.iter().map(|&i| e[i]).sum::<u32>())
            .min()
            .map(Order::Finite)
            .unwrap_or(Order::Infinity)
    }

    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        let terms = self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (e.clone(), c.clone())).collect();
        Self::from_parts(self.vars.clone(), terms)
    }

    /// Sum of the degree-`d` terms; with `d = ord(f)` this is the tangent cone.
    pub fn leading_form(&self, d: u32) -> MPoly {
        self.homogeneous_part(d)
    }

    pub fn initial_form(&self) -> MPoly {
        match self.ord() {
            Order::Finite(d) => self.homogeneous_part(d),
            Order::Infinity => MPoly::zero(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|k| k == d),
        }
    }

    /// Drops all terms of total degree greater than `n`.
    pub fn truncate(&self, n: u32) -> MPoly {
        let terms = self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() <= n).map(|(e, c)| (e.clone(), c.clone())).collect();
        Self::from_parts(self.vars.clone(), terms)
    }

    pub fn degree_in(&self, var: &str) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        match self.vars.iter().position(|v| v == var) {
            None => Some(0),
            Some(p) => self.terms.keys().map(|e| e[p]).max(),
        }
    }

    /// Coefficients of `self` as a polynomial in `var`, index = power.
    pub fn coefficients_in(&self, var: &str) -> Vec<MPoly> {
        let Some(p) = self.vars.iter().position(|v| v == var) else {
            return vec![self.clone()];
        };
        let deg = self.terms.keys().map(|e| e[p]).max().unwrap_or(0) as usize;
        let mut buckets: Vec<Terms> = vec![Terms::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[p] as usize;
            ne[p] = 0;
            buckets[k].insert(ne, c.clone());
        }
        buckets.into_iter().map(|t| Self::from_parts(self.vars.clone(), t)).collect()
    }

    pub fn coeff_in(&self, var: &str, k: u32) -> MPoly {
        self.coefficients_in(var).into_iter().nth(k as usize).unwrap_or_default()
    }

    /// Reassembles `sum coeffs[k] * var^k`.
    pub fn from_coefficients(var: &str, coeffs: &[MPoly]) -> MPoly {
        let x = MPoly::var(var);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    pub fn derivative(&self, var: &str) -> MPoly {
        let Some(p) = self.vars.iter().position(|v| v == var) else {
            return MPoly::zero();
        };
        let mut terms = Terms::new();
        for (e, c) in &self.terms {
            if e[p] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[p] -= 1;
            terms.insert(ne, c * &AlgNum::from_int(e[p] as i64));
        }
        Self::from_parts(self.vars.clone(), terms)
    }

    pub fn scale(&self, c: &AlgNum) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        MPoly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Product with all terms of degree greater than `n` discarded.
    pub fn mul_truncated(&self, other: &MPoly, n: u32) -> MPoly {
        self.mul_impl(other, Some(n))
    }

    fn mul_impl(&self, other: &MPoly, bound: Option<u32>) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let vars = union_vars(&self.vars, &other.vars);
        let a = self.embed(&vars);
        let b = other.embed(&vars);
        let mut out = Terms::new();
        for (ea, ca) in &a {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &b {
                if let Some(n) = bound {
                    if da + eb.iter().sum::<u32>() > n {
                        continue;
                    }
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                match out.get_mut(&e) {
                    Some(c) => *c += &prod,
                    None => {
                        out.insert(e, prod);
                    }
                }
            }
        }
        Self::from_parts(vars, out)
    }

    fn add_impl(&self, other: &MPoly, negate: bool) -> MPoly {
        let vars = union_vars(&self.vars, &other.vars);
        let mut out = self.embed(&vars);
        for (e, c) in other.embed(&vars) {
            match out.get_mut(&e) {
                Some(a) => {
                    if negate {
                        *a -= &c
                    } else {
                        *a += &c
                    }
                }
                None => {
                    out.insert(e, if negate { -c } else { c });
                }
            }
        }
        Self::from_parts(vars, out)
    }

    /// Simultaneous substitution `var -> image` for every binding; unbound
    /// variables are left alone.
    pub fn substitute(&self, bindings: &BTreeMap<String, MPoly>) -> MPoly {
        if self.vars.iter().all(|v| !bindings.contains_key(v)) {
            return self.clone();
        }
        let images: Vec<MPoly> = self.vars.iter().map(|v| bindings.get(v).cloned().unwrap_or_else(|| MPoly::var(v))).collect();
        let mut cache: Vec<Vec<MPoly>> = images.iter().map(|im| vec![MPoly::one(), im.clone()]).collect();
        let mut acc = MPoly::zero();
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn substitute_one(&self, var: &str, image: &MPoly) -> MPoly {
        let mut b = BTreeMap::new();
        b.insert(var.to_string(), image.clone());
        self.substitute(&b)
    }

    pub fn eval(&self, var: &str, value: &AlgNum) -> MPoly {
        self.substitute_one(var, &MPoly::constant(value.clone()))
    }

    pub fn rename(&self, from: &str, to: &str) -> MPoly {
        if from == to {
            return self.clone();
        }
        self.substitute_one(from, &MPoly::var(to))
    }

    /// Lexicographically largest term (canonical variable order).
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &AlgNum)> {
        self.terms.iter().next_back()
    }

    /// Scales so the lex-leading coefficient is one; returns the factor removed.
    pub fn monic(&self) -> (AlgNum, MPoly) {
        match self.leading_term() {
            None => (AlgNum::one(), MPoly::zero()),
            Some((_, c)) => {
                let c = c.clone();
                let inv = c.inverse().expect("nonzero leading coefficient");
                (c, self.scale(&inv))
            }
        }
    }

    /// Exact quotient `self / g`, or `NotDivisible`.
    pub fn exact_divide(&self, g: &MPoly) -> Result<MPoly, AlgebraError> {
        if g.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(MPoly::zero());
        }
        if let Some(c) = g.as_constant() {
            return Ok(self.scale(&c.inverse()?));
        }
        let vars = union_vars(&self.vars, &g.vars);
        if vars.len() > self.vars.len() {
            // g uses a variable that f does not
            return Err(AlgebraError::NotDivisible);
        }
        let gt = MPoly { vars: vars.clone(), terms: g.embed(&vars) };
        let (ge, gc) = gt.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let ginv = gc.inverse()?;
        let mut r = MPoly { vars: vars.clone(), terms: self.embed(&vars) };
        let mut quot = Terms::new();
        while let Some((re, rc)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&ge).any(|(a, b)| a < b) {
                return Err(AlgebraError::NotDivisible);
            }
            let te: Vec<u32> = re.iter().zip(&ge).map(|(a, b)| a - b).collect();
            let tc = &rc * &ginv;
            let t = MPoly { vars: vars.clone(), terms: [(te.clone(), tc.clone())].into_iter().collect() };
            let sub = &t * &gt;
            r = r.add_impl(&sub, true);
            r = MPoly { vars: vars.clone(), terms: r.embed(&vars) };
            quot.insert(te, tc);
        }
        Ok(Self::from_parts(vars, quot))
    }

    /// Writes `self = var^gamma * rest` with `var` not dividing `rest`.
    pub fn factor_out_variable(&self, var: &str) -> (u32, MPoly) {
        let Some(p) = self.vars.iter().position(|v| v == var) else {
            return (0, self.clone());
        };
        let g = self.terms.keys().map(|e| e[p]).min().unwrap_or(0);
        if g == 0 {
            return (0, self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[p] -= g;
                (ne, c.clone())
            })
            .collect();
        (g, Self::from_parts(self.vars.clone(), terms))
    }

    /// Coefficient of the degree-one monomial `var`.
    pub fn linear_coeff(&self, var: &str) -> AlgNum {
        match self.vars.iter().position(|v| v == var) {
            None => AlgNum::zero(),
            Some(p) => {
                let mut e = vec![0u32; self.vars.len()];
                e[p] = 1;
                self.terms.get(&e).cloned().unwrap_or_else(AlgNum::zero)
            }
        }
    }

    pub fn linear_part(&self) -> MPoly {
        self.homogeneous_part(1)
    }

    /// Replaces `var^(k*j)` by `new^j`; fails if some exponent of `var` is not a
    /// multiple of `k`.
    pub fn compress_power(&self, var: &str, k: u32, new: &str) -> Option<MPoly> {
        let Some(p) = self.vars.iter().position(|v| v == var) else {
            return Some(self.clone());
        };
        if self.terms.keys().any(|e| e[p] % k != 0) {
            return None;
        }
        let mut acc = MPoly::zero();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let j = rest[p] / k;
            rest[p] = 0;
            let base = Self::from_parts(self.vars.clone(), [(rest, c.clone())].into_iter().collect());
            acc = &acc + &(&base * &MPoly::var(new).pow(j));
        }
        Some(acc)
    }

    /// Whether every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(AlgNum::is_rational)
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.mul_impl(rhs, None)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&AlgNum::from_int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<MPoly> for &'a MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    /// Terms by descending total degree, then descending lex; the output is
    /// accepted by the expression parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Vec<u32>, &AlgNum)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(e.iter())
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| if p == 1 { v.clone() } else { format!("{v}^{p}") })
                .collect();
            let (neg, mag) = match c.as_rational() {
                Some(r) if r.is_negative() => (true, -c),
                _ => (false, c.clone()),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if mag.is_rational() { mag.to_string() } else { format!("({mag})") };
            if mono.is_empty() {
                out.push_str(&coeff);
            } else {
                if !mag.is_one() {
                    out.push_str(&coeff);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        f.write_str(&out)
    }
}

impl serde::Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Convenience constructor used throughout tests: `p("x")` etc. only for
/// single variables; richer expressions go through the harness parser.
pub fn var(name: &str) -> MPoly {
    MPoly::var(name)
}

pub fn int(n: i64) -> MPoly {
    MPoly::int(n)
}

pub fn rat(n: i64, d: i64) -> MPoly {
    MPoly::constant(AlgNum::from_ratio(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> MPoly {
        var("w")
    }
    fn x() -> MPoly {
        var("x")
    }
    fn y() -> MPoly {
        var("y")
    }
    fn z() -> MPoly {
        var("z")
    }

    fn cp3() -> MPoly {
        z().pow(3) + w() * y().pow(3) + w().pow(2) * x().pow(3) - int(3) * w() * x() * y() * z()
    }

    #[test]
    fn hand_expansion_dpp_discriminant() {
        let lhs = (y() - x().pow(2)).pow(2) * (y() + int(2) * x().pow(2));
        let rhs = y().pow(3) - int(3) * x().pow(4) * y() + int(2) * x().pow(6);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiply_by_one() {
        assert_eq!(cp3() * MPoly::one(), cp3());
    }

    #[test]
    fn substitute_exc_blowup() {
        let exc = z().pow(2) + y() * (w() * y() + x().pow(2)).pow(2);
        let mut b = BTreeMap::new();
        b.insert("x".to_string(), w() * x());
        b.insert("y".to_string(), w() * y());
        b.insert("z".to_string(), w() * z());
        let got = exc.substitute(&b);
        let want = w().pow(2) * z().pow(2) + w().pow(5) * y() * (y() + x().pow(2)).pow(2);
        assert_eq!(got, want);
        assert_eq!(exc.substitute(&BTreeMap::new()), exc);
        let want_div = z().pow(2) + w().pow(3) * y() * (y() + x().pow(2)).pow(2);
        assert_eq!(got.exact_divide(&w().pow(2)).unwrap(), want_div);
    }

    #[test]
    fn substitute_w_by_v_cubed() {
        let got = cp3().substitute_one("w", &var("v").pow(3));
        let v = var("v");
        let want = z().pow(3) - int(3) * v.pow(3) * x() * y() * z() + v.pow(3) * y().pow(3) + v.pow(6) * x().pow(3);
        assert_eq!(got, want);
    }

    #[test]
    fn orders() {
        assert_eq!(cp3().ord(), Order::Finite(3));
        assert_eq!((w() * y().pow(3)).ord_sub(&["x", "y"]), Order::Finite(3));
        assert_eq!((w().pow(2) * x().pow(3)).ord_sub(&["x", "y"]), Order::Finite(3));
        assert_eq!(MPoly::zero().ord(), Order::Infinity);
    }

    #[test]
    fn leading_forms() {
        let f = z().pow(2) + w() * y() * (y() + x().pow(2)).pow(2);
        assert_eq!(f.leading_form(2), z().pow(2));
        assert_eq!((w() * x() * y() * z() + x().pow(5)).leading_form(4), w() * x() * y() * z());
        assert!(MPoly::zero().leading_form(3).is_zero());
    }

    #[test]
    fn exact_division_cases() {
        assert_eq!((x().pow(2) - y().pow(2)).exact_divide(&(x() - y())).unwrap(), x() + y());
        assert_eq!((x().pow(2) + y().pow(2)).exact_divide(&(x() - y())), Err(AlgebraError::NotDivisible));
        assert_eq!(x().exact_divide(&MPoly::zero()), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn factor_out_cases() {
        let f = w().pow(3) * z().pow(3) + w().pow(6) * x() * y().pow(3) + w().pow(3) * x().pow(2) - int(3) * w().pow(4) * x() * y() * z();
        let (g, rest) = f.factor_out_variable("w");
        assert_eq!(g, 3);
        assert_eq!(rest, z().pow(3) + w().pow(3) * x() * y().pow(3) + x().pow(2) - int(3) * w() * x() * y() * z());
        assert_eq!(z().factor_out_variable("w"), (0, z()));
        assert_eq!(w().pow(5).factor_out_variable("w"), (5, MPoly::one()));
    }

    #[test]
    fn display_is_stable() {
        assert_eq!(cp3().to_string(), "w^2*x^3 - 3*w*x*y*z + w*y^3 + z^3");
        let f = MPoly::constant(AlgNum::eps()) * x() + rat(-1, 2);
        assert_eq!(f.to_string(), "(eps)*x - 1/2");
    }

    #[test]
    fn compress_power_rewrites() {
        let v = var("v");
        let f = v.pow(3) * y() + v.pow(6);
        assert_eq!(f.compress_power("v", 3, "w").unwrap(), w() * y() + w().pow(2));
        assert!((v.pow(2) * y()).compress_power("v", 3, "w").is_none());
    }
}
