//! Independent oracles shared by the core tests and the acceptance suite.
//!
//! Series roots are checked against an undetermined-coefficients solver that
//! shares no code with the library: rational dense arithmetic, brute force
//! over small leading forms, and its own Gaussian elimination.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use singlab_core::jet::Jet;
use singlab_core::roots::{series_root, RootVerdict};
use singlab_core::branch::depress_cubic;
use singlab_core::{AlgNum, MPoly};

type Mono = [u32; 3];
type P = BTreeMap<Mono, BigRational>;

const VARS: [&str; 3] = ["x", "y", "z"];
const N: u32 = 8;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn deg(m: &Mono) -> u32 {
    m.iter().sum()
}

fn add_into(acc: &mut P, m: Mono, c: BigRational) {
    let e = acc.entry(m).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&m);
    }
}

fn mul(a: &P, b: &P) -> P {
    let mut out = P::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            add_into(&mut out, [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]], ca * cb);
        }
    }
    out
}

fn pow(a: &P, n: u32) -> P {
    let mut out = P::from([([0, 0, 0], q(1))]);
    for _ in 0..n {
        out = mul(&out, a);
    }
    out
}

fn part(a: &P, d: u32) -> P {
    a.iter().filter(|(m, _)| deg(m) == d).map(|(m, c)| (*m, c.clone())).collect()
}

fn truncate(a: &P, d: u32) -> P {
    a.iter().filter(|(m, _)| deg(m) <= d).map(|(m, c)| (*m, c.clone())).collect()
}

fn ord(a: &P) -> Option<u32> {
    a.keys().map(deg).min()
}

fn monomials(d: u32, nvars: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            let k = d - i - j;
            let m = [i, j, k];
            if m.iter().enumerate().all(|(v, e)| v < nvars || *e == 0) {
                out.push(m);
            }
        }
    }
    out
}

fn to_mpoly(a: &P) -> MPoly {
    a.iter().fold(MPoly::zero(), |acc, (m, c)| {
        let powers: Vec<(&str, u32)> = VARS.iter().zip(m).map(|(v, e)| (*v, *e)).collect();
        &acc + &MPoly::monomial(AlgNum::from_rational(c.clone()), &powers)
    })
}

fn from_mpoly(f: &MPoly) -> P {
    let mut out = P::new();
    for (mono, c) in f.term_list() {
        let mut m = [0u32; 3];
        for (v, e) in mono {
            m[VARS.iter().position(|u| *u == v).unwrap()] = e;
        }
        out.insert(m, c.as_rational().expect("rational coefficients").clone());
    }
    out
}

/// Solves `m x = b` over Q; `None` if inconsistent.
fn gauss(mut m: Vec<Vec<BigRational>>, mut b: Vec<BigRational>, ncols: usize) -> Option<Vec<BigRational>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        b.swap(r, p);
        let inv = m[r][c].recip();
        for j in 0..ncols {
            m[r][j] = &m[r][j] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
                let t = &f * &b[r];
                b[i] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (i, c) in pivots.iter().enumerate() {
        x[*c] = b[i].clone();
    }
    Some(x)
}

enum Oracle {
    /// All roots through the determined degree.
    Roots(Vec<P>, u32),
    Obstructed,
}

/// Every n-th root of `g` through degree `N - (n-1) ord(root)` whose leading
/// form has coefficients in -2..=2.
fn oracle(g: &P, n: u32, nvars: usize) -> Oracle {
    let o = ord(g).unwrap();
    if o % n != 0 {
        return Oracle::Obstructed;
    }
    let h0 = o / n;
    let lead = part(g, o);
    let monos = monomials(h0, nvars);
    let mut candidates = Vec::new();
    let total = 5usize.pow(monos.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut h = P::new();
        for m in &monos {
            let k = (c % 5) as i64 - 2;
            c /= 5;
            if k != 0 {
                h.insert(*m, q(k));
            }
        }
        if !h.is_empty() && pow(&h, n) == lead {
            candidates.push(h);
        }
    }
    if candidates.is_empty() {
        return Oracle::Obstructed;
    }
    let top = N - (n - 1) * h0;
    let mut roots = Vec::new();
    for mut h in candidates {
        let ok = (h0 + 1..=top).all(|d| {
            // n h_lead^{n-1} h_d = g_{(n-1)h0+d} - [h^n]_{(n-1)h0+d}
            let target = (n - 1) * h0 + d;
            let mut rhs = part(g, target);
            for (m, c) in part(&pow(&h, n), target) {
                add_into(&mut rhs, m, -c);
            }
            let unknowns = monomials(d, nvars);
            let eqs = monomials(target, nvars);
            let factor = pow(&part(&h, h0), n - 1);
            let cols: Vec<P> = unknowns
                .iter()
                .map(|u| mul(&factor, &P::from([(*u, q(n as i64))])))
                .collect();
            let mat: Vec<Vec<BigRational>> =
                eqs.iter().map(|e| cols.iter().map(|col| col.get(e).cloned().unwrap_or_else(BigRational::zero)).collect()).collect();
            let b: Vec<BigRational> = eqs.iter().map(|e| rhs.get(e).cloned().unwrap_or_else(BigRational::zero)).collect();
            match gauss(mat, b, unknowns.len()) {
                Some(x) => {
                    for (u, c) in unknowns.iter().zip(x) {
                        if !c.is_zero() {
                            add_into(&mut h, *u, c);
                        }
                    }
                    true
                }
                None => false,
            }
        });
        if ok {
            roots.push(h);
        }
    }
    if roots.is_empty() {
        Oracle::Obstructed
    } else {
        Oracle::Roots(roots, top)
    }
}

fn random_form(rng: &mut ChaCha8Rng, d: u32, nvars: usize) -> P {
    loop {
        let mut f = P::new();
        for m in monomials(d, nvars) {
            let c = rng.gen_range(-2i64..=2);
            if c != 0 {
                f.insert(m, q(c));
            }
        }
        if !f.is_empty() {
            return f;
        }
    }
}

/// `h^n * cofactor` with a unit or a non-power cofactor.
fn instance(rng: &mut ChaCha8Rng, n: u32) -> (P, usize) {
    let nvars = rng.gen_range(1..=3usize);
    let h0 = rng.gen_range(0..=1u32);
    let mut h = random_form(rng, h0, nvars);
    if rng.gen_bool(0.5) {
        for (m, c) in random_form(rng, h0 + 1, nvars) {
            add_into(&mut h, m, c);
        }
    }
    let cofactor = match rng.gen_range(0..3) {
        // unit
        0 => {
            let mut u = P::from([([0, 0, 0], q(1))]);
            for (m, c) in random_form(rng, 1, nvars) {
                add_into(&mut u, m, c);
            }
            u
        }
        // n-th power of a linear form plus a higher perturbation
        1 if nvars >= 2 => {
            let mut u = pow(&P::from([([1, 0, 0], q(1))]), n);
            add_into(&mut u, [0, n + 1, 0], q(rng.gen_range(1..=2)));
            u
        }
        _ => P::from([([0, 0, 0], q(1))]),
    };
    (truncate(&mul(&pow(&h, n), &cofactor), N), nvars)
}

/// Runs `count` seeded root instances; returns (certified, obstructed)
/// counts or the first disagreement.
pub fn run_root_oracle(count: usize, seed: u64) -> Result<(usize, usize), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut certified, mut obstructed) = (0, 0);
    for case in 0..count {
        let n = if case % 2 == 0 { 2 } else { 3 };
        let (g, nvars) = instance(&mut rng, n);
        let gm = to_mpoly(&g);
        let ours = series_root(&Jet::exact(&gm, N), n, None);
        match oracle(&g, n, nvars) {
            Oracle::Obstructed => {
                if !ours.is_obstructed() {
                    return Err(format!("case {case}: {gm}: oracle obstructed, got {}", ours.tag()));
                }
                obstructed += 1;
            }
            Oracle::Roots(roots, top) => {
                let root = match &ours {
                    RootVerdict::SquareCertified(j) | RootVerdict::CubeCertified(j) => j,
                    RootVerdict::ToPrecision { partial, .. } => partial,
                    other => return Err(format!("case {case}: {gm}: oracle has a root, got {}", other.tag())),
                };
                let mine = truncate(&from_mpoly(root.body()), top);
                if !roots.contains(&mine) {
                    return Err(format!("case {case}: {gm}: root {} not among oracle roots", root.body()));
                }
                certified += 1;
            }
        }
    }
    Ok((certified, obstructed))
}

/// `-27 Delta = prod (r_i - r_j)^2` for the depressed cubic with roots
/// `r_1, r_2, r_3` drawn as random polynomials in x, y, w.
pub fn run_discriminant_identity(count: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = ["w", "x", "y"];
    let random_root = |rng: &mut ChaCha8Rng| {
        let mut r = MPoly::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let powers: Vec<(&str, u32)> = vars.iter().map(|v| (*v, rng.gen_range(0..=2))).collect();
            let c = AlgNum::from_int(rng.gen_range(-3i64..=3));
            r = &r + &MPoly::monomial(c, &powers);
        }
        r
    };
    let z = MPoly::var("z");
    for case in 0..count {
        let r: Vec<MPoly> = (0..3).map(|_| random_root(&mut rng)).collect();
        let f = r.iter().fold(MPoly::one(), |acc, ri| &acc * &(&z - ri));
        let dc = depress_cubic(&f, "z").map_err(|e| e.to_string())?;
        let lhs = dc.discriminant().scale(&AlgNum::from_int(-27));
        let rhs = [(0, 1), (0, 2), (1, 2)].iter().fold(MPoly::one(), |acc, (i, j)| &acc * &(&r[*i] - &r[*j]).pow(2));
        if lhs != rhs {
            return Err(format!("case {case}: roots {}, {}, {}", r[0], r[1], r[2]));
        }
    }
    Ok(())
}
