//! Linear factorization of tangent cones and graded Hensel lifting of
//! coprime cone factors to power-series factors.

use std::collections::BTreeMap;

use crate::error::BranchError;
use crate::field::{roots_with_multiplicity, AlgNum};
use crate::jet::Jet;
use crate::linalg::{self, Matrix};
use crate::poly::{sort_vars, MPoly, Order};

/// Coefficient vector of a linear form over `vars`.
pub fn linear_coeffs(l: &MPoly, vars: &[String]) -> Vec<AlgNum> {
    vars.iter().map(|v| l.linear_coeff(v)).collect()
}

fn form_from_coeffs(coeffs: &[AlgNum], vars: &[String]) -> MPoly {
    let mut acc = MPoly::zero();
    for (c, v) in coeffs.iter().zip(vars) {
        acc = &acc + &MPoly::var(v).scale(c);
    }
    acc
}

/// Writes a homogeneous form as `c * prod l_i` with linear `l_i` (repeated by
/// multiplicity), if it splits into linear factors over the field.
pub fn linear_factors(form: &MPoly) -> Option<(AlgNum, Vec<MPoly>)> {
    if form.is_zero() || !form.is_homogeneous() {
        return None;
    }
    let d = form.total_degree().unwrap();
    if d == 0 {
        return Some((form.constant_term(), Vec::new()));
    }
    let vars = form.vars().to_vec();
    let main = vars[0].clone();
    let others = &vars[1..];
    // shear so that main^d has a nonzero coefficient
    let candidates: Vec<Vec<i64>> = shear_candidates(others.len());
    for shear in candidates {
        let mut b = BTreeMap::new();
        for (v, s) in others.iter().zip(&shear) {
            if *s != 0 {
                b.insert(v.clone(), &MPoly::var(v) + &MPoly::var(&main).scale(&AlgNum::from_int(*s)));
            }
        }
        let g = form.substitute(&b);
        let lead = g.coeff_in(&main, d);
        if lead.is_zero() {
            continue;
        }
        let c = lead.constant_term();
        let vectors = split_sheared(&g, &main, others, d)?;
        // undo the shear: v -> v - s * main
        let mut back = BTreeMap::new();
        for (v, s) in others.iter().zip(&shear) {
            if *s != 0 {
                back.insert(v.clone(), &MPoly::var(v) - &MPoly::var(&main).scale(&AlgNum::from_int(*s)));
            }
        }
        let factors: Vec<MPoly> = vectors.iter().map(|a| {
            let mut l = MPoly::var(&main);
            for (v, ai) in others.iter().zip(a) {
                l = &l - &MPoly::var(v).scale(ai);
            }
            l.substitute(&back)
        }).collect();
        let mut prod = MPoly::constant(c.clone());
        for l in &factors {
            prod = &prod * l;
        }
        if &prod == form {
            let mut c = c;
            let factors = factors
                .into_iter()
                .map(|l| {
                    let (lc, m) = l.monic();
                    c = &c * &lc;
                    m
                })
                .collect();
            return Some((c, factors));
        }
        return None;
    }
    None
}

fn shear_candidates(m: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0; m]];
    for i in 0..m {
        for s in [1, -1, 2] {
            let mut v = vec![0; m];
            v[i] = s;
            out.push(v);
        }
    }
    out.push(vec![1; m]);
    out.push((0..m).map(|i| i as i64 + 1).collect());
    out.push((0..m).map(|i| (i as i64 + 2).pow(2)).collect());
    out
}

/// For `g` with nonzero `main^d` coefficient `c`, returns the vectors `a_i`
/// with `g = c * prod (main - sum a_ij x_j)`.
fn split_sheared(g: &MPoly, main: &str, others: &[String], d: u32) -> Option<Vec<Vec<AlgNum>>> {
    let roots_at = |point: &[(usize, i64)]| -> Option<Vec<AlgNum>> {
        let mut b = BTreeMap::new();
        for (j, v) in others.iter().enumerate() {
            let val = point.iter().find(|(k, _)| *k == j).map_or(0, |(_, s)| *s);
            b.insert(v.clone(), MPoly::int(val));
        }
        let u = g.substitute(&b);
        let dense: Vec<AlgNum> = (0..=d).map(|k| u.coeff_in(main, k).constant_term()).collect();
        let r = roots_with_multiplicity(&dense);
        (r.len() == d as usize).then_some(r)
    };
    if others.is_empty() {
        return Some(vec![Vec::new(); d as usize]);
    }
    let first = roots_at(&[(0, 1)])?;
    let mut partial: Vec<Vec<AlgNum>> = first.into_iter().map(|r| vec![r]).collect();
    for j in 1..others.len() {
        let rj = roots_at(&[(j, 1)])?;
        let mut point: Vec<(usize, i64)> = (0..j).map(|l| (l, PROBE_WEIGHTS[l % PROBE_WEIGHTS.len()])).collect();
        point.push((j, 1));
        let probe = roots_at(&point)?;
        let perm = match_roots(&partial, &rj, &probe)?;
        for (i, p) in partial.iter_mut().enumerate() {
            p.push(rj[perm[i]].clone());
        }
    }
    Some(partial)
}

const PROBE_WEIGHTS: [i64; 4] = [3, 7, 13, 29];

/// Finds an assignment of `rj` to the partial factors such that the weighted
/// sums with the earlier coordinates reproduce the probe roots as a multiset.
fn match_roots(partial: &[Vec<AlgNum>], rj: &[AlgNum], probe: &[AlgNum]) -> Option<Vec<usize>> {
    fn rec(i: usize, partial: &[Vec<AlgNum>], rj: &[AlgNum], probe: &mut Vec<Option<AlgNum>>, used: &mut Vec<bool>, out: &mut Vec<usize>) -> bool {
        if i == partial.len() {
            return true;
        }
        for k in 0..rj.len() {
            if used[k] || (k > 0 && !used[k - 1] && rj[k] == rj[k - 1]) {
                continue;
            }
            let mut s = rj[k].clone();
            for (l, a) in partial[i].iter().enumerate() {
                s += &a.scale(&num_rational::BigRational::from_integer(PROBE_WEIGHTS[l % PROBE_WEIGHTS.len()].into()));
            }
            let Some(p) = probe.iter().position(|x| x.as_ref() == Some(&s)) else {
                continue;
            };
            used[k] = true;
            probe[p] = None;
            out.push(k);
            if rec(i + 1, partial, rj, probe, used, out) {
                return true;
            }
            out.pop();
            probe[p] = Some(s);
            used[k] = false;
        }
        false
    }
    let mut probe: Vec<Option<AlgNum>> = probe.iter().cloned().map(Some).collect();
    let mut used = vec![false; rj.len()];
    let mut out = Vec::new();
    rec(0, partial, rj, &mut probe, &mut used, &mut out).then_some(out)
}

/// Linear change making the given independent linear forms coordinates.
struct Frame {
    vars: Vec<String>,
    fresh: Vec<String>,
    forward: Matrix,
    inverse: Matrix,
}

impl Frame {
    fn new(f: &MPoly, forms: &[MPoly]) -> Option<Frame> {
        let mut vars: Vec<String> = f.vars().to_vec();
        for l in forms {
            vars.extend(l.vars().iter().cloned());
        }
        sort_vars(&mut vars);
        let mut rows: Matrix = forms.iter().map(|l| linear_coeffs(l, &vars)).collect();
        if linalg::rank(&rows) < rows.len() {
            return None;
        }
        for j in 0..vars.len() {
            if rows.len() == vars.len() {
                break;
            }
            let mut e = vec![AlgNum::zero(); vars.len()];
            e[j] = AlgNum::one();
            rows.push(e);
            if linalg::rank(&rows) < rows.len() {
                rows.pop();
            }
        }
        let inverse = linalg::inverse(&rows)?;
        let fresh = (0..vars.len()).map(|i| format!("u{i}")).collect();
        Some(Frame { vars, fresh, forward: rows, inverse })
    }

    /// Rewrites a polynomial in the old variables in terms of the new ones.
    fn to_new(&self, f: &MPoly) -> MPoly {
        let b = self
            .vars
            .iter()
            .zip(&self.inverse)
            .map(|(v, row)| (v.clone(), form_from_coeffs(row, &self.fresh)))
            .collect();
        f.substitute(&b)
    }

    fn to_old(&self, f: &MPoly) -> MPoly {
        let b = self
            .fresh
            .iter()
            .zip(&self.forward)
            .map(|(u, row)| (u.clone(), form_from_coeffs(row, &self.vars)))
            .collect();
        f.substitute(&b)
    }
}

/// Lifts the cone factorization `leading_form(f) = c * prod l_i^{e_i}` (with
/// independent `l_i`) to factors `g_i` with leading form `l_i^{e_i}` and
/// `prod g_i = f` modulo degree > n (exactly when the factors are polynomials).
/// The constant `c` is absorbed into the first factor.
pub fn hensel_lift(f: &MPoly, cones: &[(MPoly, u32)], n: u32) -> Result<Vec<Jet>, BranchError> {
    let Order::Finite(ord) = f.ord() else {
        return Err(BranchError::Precondition("zero input".into()));
    };
    if cones.is_empty() {
        return Err(BranchError::Precondition("no cone factors".into()));
    }
    let forms: Vec<MPoly> = cones.iter().map(|(l, _)| l.clone()).collect();
    if forms.iter().any(|l| l.is_zero() || !l.is_homogeneous() || l.total_degree() != Some(1)) {
        return Err(BranchError::Precondition("cone factors must be linear forms".into()));
    }
    let frame = Frame::new(f, &forms).ok_or_else(|| BranchError::Precondition("cone factors are not independent".into()))?;
    let mut cone = MPoly::one();
    for (l, e) in cones {
        cone = &cone * &l.pow(*e);
    }
    let lead = f.leading_form(ord);
    let c = match lead.exact_divide(&cone).ok().and_then(|q| q.as_constant()) {
        Some(c) if cone.total_degree() == Some(ord) => c,
        _ => return Err(BranchError::Precondition("tangent cone is not the product of the given factors".into())),
    };
    let target = f.scale(&c.inverse()?);
    let g = frame.to_new(&target);
    let k = cones.len();
    let u: Vec<MPoly> = (0..k).map(|i| MPoly::var(&frame.fresh[i])).collect();
    let exps: Vec<u32> = cones.iter().map(|(_, e)| *e).collect();
    let mut factors: Vec<MPoly> = (0..k).map(|i| u[i].pow(exps[i])).collect();
    // cofactor monomial for each factor: prod_{j != i} u_j^{e_j}
    let cofactors: Vec<MPoly> = (0..k)
        .map(|i| (0..k).filter(|&j| j != i).fold(MPoly::one(), |acc, j| &acc * &u[j].pow(exps[j])))
        .collect();
    let bound = n.max(f.total_degree().unwrap_or(0));
    let product = |fs: &[MPoly]| fs.iter().fold(MPoly::one(), |acc, h| acc.mul_truncated(h, bound));
    loop {
        let r = &g.truncate(bound) - &product(&factors);
        let Order::Finite(d) = r.ord() else { break };
        if d > bound {
            break;
        }
        let err = r.homogeneous_part(d);
        let mut deltas = vec![MPoly::zero(); k];
        for (mono, coeff) in err.term_list() {
            let powers: Vec<(&str, u32)> = mono.iter().map(|(v, e)| (v.as_str(), *e)).collect();
            let m = MPoly::monomial(coeff, &powers);
            let Some(i) = (0..k).find(|&i| m.exact_divide(&cofactors[i]).is_ok()) else {
                return Err(BranchError::NotSplittable { degree: d });
            };
            deltas[i] = &deltas[i] + &m.exact_divide(&cofactors[i]).unwrap();
        }
        for (fi, di) in factors.iter_mut().zip(deltas) {
            *fi = &*fi + &di;
        }
    }
    let mut old: Vec<MPoly> = factors.iter().map(|h| frame.to_old(h)).collect();
    old[0] = old[0].scale(&c);
    let exact = old.iter().fold(MPoly::one(), |acc, h| &acc * h) == *f;
    Ok(old.into_iter().map(|h| if exact { Jet::exact(&h, n) } else { Jet::new(&h, n) }).collect())
}

/// Lifts pairwise independent linear tangent factors to smooth branches.
pub fn hensel_lift_independent(f: &MPoly, tangent_factors: &[MPoly], n: u32) -> Result<Vec<Jet>, BranchError> {
    let cones: Vec<(MPoly, u32)> = tangent_factors.iter().map(|l| (l.clone(), 1)).collect();
    hensel_lift(f, &cones, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, var};

    #[test]
    fn lift_xy_plus_cube() {
        let (x, y) = (var("x"), var("y"));
        let f = &(&x * &y) + &x.pow(3);
        let fs = hensel_lift_independent(&f, &[x.clone(), y.clone()], 12).unwrap();
        assert!(fs.iter().all(Jet::is_exact));
        assert_eq!(fs[0].body(), &x);
        assert_eq!(fs[1].body(), &(&y + &x.pow(2)));
    }

    #[test]
    fn lift_coordinate_product() {
        let (w, x, y, z) = (var("w"), var("x"), var("y"), var("z"));
        let f = &(&(&w * &x) * &y) * &z;
        let fs = hensel_lift_independent(&f, &[w.clone(), x.clone(), y.clone(), z.clone()], 12).unwrap();
        let bodies: Vec<MPoly> = fs.iter().map(|j| j.body().clone()).collect();
        assert_eq!(bodies, vec![w, x, y, z]);
    }

    #[test]
    fn dependent_cone_is_rejected() {
        let (x, y) = (var("x"), var("y"));
        let f = &x.pow(2) + &y.pow(3);
        assert!(matches!(hensel_lift_independent(&f, &[x.clone(), x.clone()], 12), Err(BranchError::Precondition(_))));
    }

    #[test]
    fn non_split_series_is_obstructed() {
        let (x, y, z) = (var("x"), var("y"), var("z"));
        let f = &(&x * &y) + &z.pow(5);
        assert_eq!(hensel_lift_independent(&f, &[x, y], 12), Err(BranchError::NotSplittable { degree: 5 }));
    }

    #[test]
    fn series_factors_to_precision() {
        let (x, y) = (var("x"), var("y"));
        // (x + y)(x - y) + x^3 y: genuine series branches
        let f = &(&(&x + &y) * &(&x - &y)) + &(&x.pow(3) * &y);
        let fs = hensel_lift_independent(&f, &[&x + &y, &x - &y], 8).unwrap();
        assert!(!fs[0].is_exact());
        assert!(fs[0].mul(&fs[1]).agrees_with(&f, 8));
    }

    #[test]
    fn factor_forms() {
        let (w, x, y, z) = (var("w"), var("x"), var("y"), var("z"));
        let (c, ls) = linear_factors(&(&(&w * &x) * &(&y * &z))).unwrap();
        assert_eq!(c, AlgNum::one());
        assert_eq!(ls.len(), 4);
        let (_, ls) = linear_factors(&(z.pow(2) + y.pow(2))).unwrap();
        assert_eq!(ls.len(), 2);
        assert!(linear_factors(&(z.pow(2) + &x * &y)).is_none());
        let cone = (&x + &(&y - &z)) * (&(&x - &w) * &(&y + &int(2) * &w));
        let (c, ls) = linear_factors(&cone).unwrap();
        let prod = ls.iter().fold(MPoly::constant(c), |a, l| &a * l);
        assert_eq!(prod, cone);
    }
}
