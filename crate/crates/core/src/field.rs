//! Exact arithmetic in the cyclotomic field Q(t), t a primitive 12th root of
//! unity with minimal polynomial t^4 - t^2 + 1.
//!
//! The field contains the cube root of unity `eps = t^4 = t^2 - 1`, the
//! imaginary unit `i = t^3` and `sqrt(3) = t + t^-1`, which is enough for every
//! square and cube root the branch analysis needs on rational input.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;

/// Element of Q(zeta_12), stored by its coordinates in the power basis
/// `1, t, t^2, t^3`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgNum {
    c: [BigRational; 4],
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl AlgNum {
    pub fn zero() -> Self {
        AlgNum {
            c: [BigRational::zero(), BigRational::zero(), BigRational::zero(), BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(q(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut a = Self::zero();
        a.c[0] = r;
        a
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_coords(c: [BigRational; 4]) -> Self {
        AlgNum { c }
    }

    /// The generator `t = zeta_12`.
    pub fn zeta12() -> Self {
        let mut a = Self::zero();
        a.c[1] = q(1);
        a
    }

    /// Primitive cube root of unity, `t^4` reduced: `t^2 - 1`.
    pub fn eps() -> Self {
        let mut a = Self::zero();
        a.c[0] = q(-1);
        a.c[2] = q(1);
        a
    }

    /// `t^3`, a square root of -1.
    pub fn i() -> Self {
        let mut a = Self::zero();
        a.c[3] = q(1);
        a
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.c[0])
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    pub fn scale(&self, r: &BigRational) -> Self {
        AlgNum {
            c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r],
        }
    }

    /// Multiplicative inverse, by solving `self * x = 1` on the power basis.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        // Column j of the multiplication matrix is self * t^j.
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); 5]; 4];
        let mut col = self.clone();
        for j in 0..4 {
            for i in 0..4 {
                m[i][j] = col.c[i].clone();
            }
            col = &col * &Self::zeta12();
        }
        m[0][4] = q(1);
        for r in 1..4 {
            m[r][4] = q(0);
        }
        for p in 0..4 {
            let piv = (p..4).find(|&r| !m[r][p].is_zero()).expect("field element has an inverse");
            m.swap(p, piv);
            let inv = m[p][p].recip();
            for k in p..5 {
                m[p][k] = &m[p][k] * &inv;
            }
            for r in 0..4 {
                if r != p && !m[r][p].is_zero() {
                    let f = m[r][p].clone();
                    for k in p..5 {
                        let d = &f * &m[p][k];
                        m[r][k] -= d;
                    }
                }
            }
        }
        Ok(AlgNum {
            c: [m[0][4].clone(), m[1][4].clone(), m[2][4].clone(), m[3][4].clone()],
        })
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.c.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
    }

    /// Value under the complex embedding `t -> exp(i pi k / 6)`.
    pub fn embed(&self, k: u32) -> Complex64 {
        let theta = std::f64::consts::PI * k as f64 / 6.0;
        let mut z = Complex64::new(0.0, 0.0);
        for (m, r) in self.c.iter().enumerate() {
            let x = r.to_f64().unwrap_or(f64::NAN);
            z += Complex64::from_polar(1.0, theta * m as f64) * x;
        }
        z
    }

    /// Deterministic total order used to pick canonical roots.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.c.iter().zip(other.c.iter()).map(|(a, b)| a.cmp(b)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    }

    /// Writes the number in the parseable basis `1, eps, i, i*eps`.
    ///
    /// With `t = -i*eps`, `t^2 = 1 + eps`, `t^3 = i` the power-basis coordinates
    /// `(a0, a1, a2, a3)` become `(a0 + a2) + a2*eps + a3*i - a1*i*eps`.
    pub fn display_parts(&self) -> [BigRational; 4] {
        [&self.c[0] + &self.c[2], self.c[2].clone(), self.c[3].clone(), -self.c[1].clone()]
    }

    pub fn nth_root(&self, n: u32) -> Result<Self, AlgebraError> {
        nth_root(self, n)
    }
}

fn reduce(p: [BigRational; 7]) -> AlgNum {
    // t^4 = t^2 - 1, t^5 = t^3 - t, t^6 = -1
    let [a0, a1, a2, a3, a4, a5, a6] = p;
    AlgNum {
        c: [a0 - &a4 - a6, a1 - &a5, a2 + a4, a3 + a5],
    }
}

impl<'a> Mul<&'a AlgNum> for &'a AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: &AlgNum) -> AlgNum {
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        let mut p: [BigRational; 7] = Default::default();
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if rhs.c[j].is_zero() {
                    continue;
                }
                p[i + j] += &self.c[i] * &rhs.c[j];
            }
        }
        reduce(p)
    }
}

impl<'a> Add<&'a AlgNum> for &'a AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: &AlgNum) -> AlgNum {
        AlgNum {
            c: [&self.c[0] + &rhs.c[0], &self.c[1] + &rhs.c[1], &self.c[2] + &rhs.c[2], &self.c[3] + &rhs.c[3]],
        }
    }
}

impl<'a> Sub<&'a AlgNum> for &'a AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: &AlgNum) -> AlgNum {
        AlgNum {
            c: [&self.c[0] - &rhs.c[0], &self.c[1] - &rhs.c[1], &self.c[2] - &rhs.c[2], &self.c[3] - &rhs.c[3]],
        }
    }
}

impl Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum {
            c: [-self.c[0].clone(), -self.c[1].clone(), -self.c[2].clone(), -self.c[3].clone()],
        }
    }
}

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<AlgNum> for AlgNum {
            type Output = AlgNum;
            fn $m(self, rhs: AlgNum) -> AlgNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a AlgNum> for AlgNum {
            type Output = AlgNum;
            fn $m(self, rhs: &AlgNum) -> AlgNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&AlgNum> for AlgNum {
    fn add_assign(&mut self, rhs: &AlgNum) {
        for k in 0..4 {
            self.c[k] += &rhs.c[k];
        }
    }
}

impl SubAssign<&AlgNum> for AlgNum {
    fn sub_assign(&mut self, rhs: &AlgNum) {
        for k in 0..4 {
            self.c[k] -= &rhs.c[k];
        }
    }
}

impl MulAssign<&AlgNum> for AlgNum {
    fn mul_assign(&mut self, rhs: &AlgNum) {
        *self = &*self * rhs;
    }
}

impl Div<&AlgNum> for &AlgNum {
    type Output = Result<AlgNum, AlgebraError>;
    fn div(self, rhs: &AlgNum) -> Self::Output {
        Ok(self * &rhs.inverse()?)
    }
}

impl From<i64> for AlgNum {
    fn from(n: i64) -> Self {
        AlgNum::from_int(n)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.display_parts();
        let names = ["", "eps", "i", "i*eps"];
        let mut out = String::new();
        for (r, name) in parts.iter().zip(names) {
            if r.is_zero() {
                continue;
            }
            let neg = r.is_negative();
            let mag = r.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (name.is_empty(), mag.is_one()) {
                (true, _) => out.push_str(&fmt_rational(&mag)),
                (false, true) => out.push_str(name),
                (false, false) => {
                    out.push_str(&fmt_rational(&mag));
                    out.push('*');
                    out.push_str(name);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

// ---------------------------------------------------------------------------
// Roots of univariate polynomials with coefficients in the field
// ---------------------------------------------------------------------------

fn exact_rational_root(r: &BigRational, n: u32) -> Option<BigRational> {
    let neg = r.is_negative();
    if neg && n % 2 == 0 {
        return None;
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    if Pow::pow(&rn, n) != num || Pow::pow(&rd, n) != den {
        return None;
    }
    let root = BigRational::new(rn, rd);
    Some(if neg { -root } else { root })
}

/// Evaluates a dense univariate polynomial (coefficients low degree first).
pub fn eval_dense(coeffs: &[AlgNum], x: &AlgNum) -> AlgNum {
    let mut acc = AlgNum::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn canonical_root_key(a: &AlgNum, b: &AlgNum) -> Ordering {
    let ka = (!a.is_rational(), !(a.is_rational() && a.c[0].is_positive()));
    let kb = (!b.is_rational(), !(b.is_rational() && b.c[0].is_positive()));
    ka.cmp(&kb).then_with(|| a.canonical_cmp(b))
}

/// Some `n`-th root of `a` inside the field, chosen canonically: a positive
/// rational root if one exists, then any rational root, then the smallest in
/// coordinate order.
pub fn nth_root(a: &AlgNum, n: u32) -> Result<AlgNum, AlgebraError> {
    if n == 1 || a.is_zero() {
        return Ok(a.clone());
    }
    if let Some(r) = a.as_rational() {
        if let Some(root) = exact_rational_root(r, n) {
            return Ok(AlgNum::from_rational(root));
        }
    }
    let mut poly = vec![AlgNum::zero(); n as usize + 1];
    poly[0] = -a;
    poly[n as usize] = AlgNum::one();
    let mut roots = distinct_roots_squarefree(&poly);
    roots.sort_by(canonical_root_key);
    roots.into_iter().next().ok_or(AlgebraError::NeedsFieldExtension)
}

/// Distinct roots in the field of a squarefree univariate polynomial given as
/// dense coefficients (lowest degree first). Roots outside the field are
/// silently absent from the result.
///
/// The polynomial is rescaled so its roots become algebraic integers, whose
/// power-basis coordinates are integers; candidates are located through two
/// complex embeddings, rounded, and kept only if they are exact roots.
pub fn distinct_roots_squarefree(coeffs: &[AlgNum]) -> Vec<AlgNum> {
    let mut coeffs: Vec<AlgNum> = coeffs.to_vec();
    while coeffs.last().is_some_and(AlgNum::is_zero) {
        coeffs.pop();
    }
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead_inv = coeffs[deg].inverse().expect("nonzero leading coefficient");
    let monic: Vec<AlgNum> = coeffs.iter().map(|c| c * &lead_inv).collect();
    if deg == 1 {
        return vec![-&monic[0]];
    }
    let d = monic.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
    let dq = BigRational::from_integer(d.clone());
    // q(u) = d^deg * monic(u / d), coefficient of u^j is monic_j * d^(deg - j)
    let scaled: Vec<AlgNum> = (0..=deg).map(|j| monic[j].scale(&Pow::pow(&dq, (deg - j) as u32))).collect();
    let roots1 = complex_roots(&scaled.iter().map(|c| c.embed(1)).collect::<Vec<_>>());
    let roots5 = complex_roots(&scaled.iter().map(|c| c.embed(5)).collect::<Vec<_>>());
    let mut found: Vec<AlgNum> = Vec::new();
    for r1 in &roots1 {
        for r5 in &roots5 {
            let Some(coords) = coords_from_embeddings(*r1, *r5) else { continue };
            let cand = AlgNum {
                c: coords.map(|v| BigRational::new(v, d.clone())),
            };
            if found.contains(&cand) {
                continue;
            }
            if eval_dense(&monic, &cand).is_zero() {
                found.push(cand);
            }
        }
    }
    found
}

/// Roots with multiplicity of an arbitrary univariate polynomial. Returns the
/// roots found in the field; the caller compares the count with the degree.
pub fn roots_with_multiplicity(coeffs: &[AlgNum]) -> Vec<AlgNum> {
    let mut p: Vec<AlgNum> = coeffs.to_vec();
    while p.last().is_some_and(AlgNum::is_zero) {
        p.pop();
    }
    if p.len() <= 1 {
        return Vec::new();
    }
    let sqf = dense_squarefree_part(&p);
    let distinct = distinct_roots_squarefree(&sqf);
    let mut out = Vec::new();
    for r in distinct {
        loop {
            let (quot, rem) = divide_by_linear(&p, &r);
            if !rem.is_zero() {
                break;
            }
            out.push(r.clone());
            p = quot;
            if p.len() <= 1 {
                break;
            }
        }
    }
    out
}

fn divide_by_linear(p: &[AlgNum], r: &AlgNum) -> (Vec<AlgNum>, AlgNum) {
    // synthetic division by (u - r)
    let n = p.len() - 1;
    let mut quot = vec![AlgNum::zero(); n];
    let mut acc = AlgNum::zero();
    for k in (0..=n).rev() {
        acc = &(&acc * r) + &p[k];
        if k > 0 {
            quot[k - 1] = acc.clone();
        }
    }
    (quot, acc)
}

fn dense_trim(mut p: Vec<AlgNum>) -> Vec<AlgNum> {
    while p.last().is_some_and(AlgNum::is_zero) {
        p.pop();
    }
    p
}

fn dense_rem(a: &[AlgNum], b: &[AlgNum]) -> Vec<AlgNum> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].inverse().expect("nonzero");
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let f = &r[dr] * &inv;
        for k in 0..=db {
            let t = &f * &b[k];
            r[dr - db + k] -= &t;
        }
        r = dense_trim(r);
        if r.len() > dr {
            unreachable!()
        }
    }
    r
}

fn dense_div_exact(a: &[AlgNum], b: &[AlgNum]) -> Vec<AlgNum> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].inverse().expect("nonzero");
    let mut quot = vec![AlgNum::zero(); a.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let f = &r[dr] * &inv;
        for k in 0..=db {
            let t = &f * &b[k];
            r[dr - db + k] -= &t;
        }
        quot[dr - db] = f;
        r.pop();
        r = dense_trim(r);
    }
    dense_trim(quot)
}

fn dense_gcd(a: &[AlgNum], b: &[AlgNum]) -> Vec<AlgNum> {
    let mut a = dense_trim(a.to_vec());
    let mut b = dense_trim(b.to_vec());
    while !b.is_empty() {
        let r = dense_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn dense_squarefree_part(p: &[AlgNum]) -> Vec<AlgNum> {
    let deriv: Vec<AlgNum> = p.iter().enumerate().skip(1).map(|(k, c)| c.scale(&q(k as i64))).collect();
    let g = dense_gcd(p, &deriv);
    if g.len() <= 1 {
        return p.to_vec();
    }
    dense_div_exact(p, &g)
}

/// Solves for integer power-basis coordinates from the values under the
/// embeddings `t -> e^{i pi/6}` and `t -> e^{5 i pi/6}`. Conjugate embeddings
/// are implied because the coordinates are real.
fn coords_from_embeddings(z1: Complex64, z5: Complex64) -> Option<[BigInt; 4]> {
    let mut m = [[0.0f64; 5]; 4];
    for (row, (theta, val)) in [(1.0, z1), (5.0, z5)].iter().enumerate() {
        let th = std::f64::consts::PI * theta / 6.0;
        for k in 0..4 {
            m[2 * row][k] = (th * k as f64).cos();
            m[2 * row + 1][k] = (th * k as f64).sin();
        }
        m[2 * row][4] = val.re;
        m[2 * row + 1][4] = val.im;
    }
    for p in 0..4 {
        let piv = (p..4).max_by(|&a, &b| m[a][p].abs().total_cmp(&m[b][p].abs()))?;
        m.swap(p, piv);
        let d = m[p][p];
        if d.abs() < 1e-12 {
            return None;
        }
        for k in p..5 {
            m[p][k] /= d;
        }
        for r in 0..4 {
            if r != p {
                let f = m[r][p];
                for k in p..5 {
                    m[r][k] -= f * m[p][k];
                }
            }
        }
    }
    let mut out: [BigInt; 4] = Default::default();
    for k in 0..4 {
        let v = m[k][4];
        if !v.is_finite() || v.abs() > 1e15 {
            return None;
        }
        let r = v.round();
        if (v - r).abs() > 1e-3 * (1.0 + v.abs()).sqrt() {
            return None;
        }
        out[k] = BigInt::from(r as i64);
    }
    Some(out)
}

/// Complex roots of a polynomial (coefficients lowest degree first) by the
/// Durand-Kerner iteration followed by Newton polishing.
fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let deval = |z: Complex64| {
        monic
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, c)| acc * z + c * k as f64)
    };
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let r = 0.5 * bound;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for k in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    den *= z[k] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 1e-12);
            }
            let step = eval(z[k]) / den;
            z[k] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 * bound {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..5 {
            let d = deval(*r);
            if d.norm() == 0.0 {
                break;
            }
            let step = eval(*r) / d;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    z
}

impl serde::Serialize for AlgNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
