//! Square and cube roots of power series by forced degree-by-degree lifting.

use serde::Serialize;

use crate::error::AlgebraError;
use crate::field::{self, AlgNum};
use crate::jet::Jet;
use crate::poly::{MPoly, Order};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RootVerdict {
    /// `root^2` equals the input (exactly for exact inputs, else modulo precision).
    SquareCertified(Jet),
    CubeCertified(Jet),
    /// No series root agrees with the input through this degree.
    Obstructed(u32),
    /// Lifting succeeded through the requested precision but the root could not
    /// be certified beyond it.
    ToPrecision { precision: u32, partial: Jet },
    NeedsFieldExtension,
}

impl RootVerdict {
    pub fn certified(&self) -> Option<&Jet> {
        match self {
            RootVerdict::SquareCertified(h) | RootVerdict::CubeCertified(h) => Some(h),
            _ => None,
        }
    }

    pub fn is_obstructed(&self) -> bool {
        matches!(self, RootVerdict::Obstructed(_))
    }

    pub fn tag(&self) -> String {
        match self {
            RootVerdict::SquareCertified(_) => "SquareCertified".into(),
            RootVerdict::CubeCertified(_) => "CubeCertified".into(),
            RootVerdict::Obstructed(d) => format!("Obstructed({d})"),
            RootVerdict::ToPrecision { precision, .. } => format!("ToPrecision({precision})"),
            RootVerdict::NeedsFieldExtension => "NeedsFieldExtension".into(),
        }
    }
}

/// Exact n-th root of a polynomial, if it is an n-th power in the polynomial
/// ring. Uses lex leading-term division; the root is determined up to an n-th
/// root of unity and the canonical constant root is used.
pub fn poly_nth_root(g: &MPoly, n: u32) -> Result<Option<MPoly>, AlgebraError> {
    if g.is_zero() {
        return Ok(Some(MPoly::zero()));
    }
    let bound = g.total_degree().unwrap_or(0);
    if bound % n != 0 || g.ord().finite().unwrap_or(0) % n != 0 {
        return Ok(None);
    }
    let bound = bound / n;
    let (e, c) = g.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
    if e.iter().any(|k| k % n != 0) {
        return Ok(None);
    }
    let root_c = field::nth_root(&c, n)?;
    let vars = g.vars().to_vec();
    let mono = |exps: &[u32], c: AlgNum| {
        let powers: Vec<(&str, u32)> = vars.iter().map(String::as_str).zip(exps.iter().copied()).collect();
        MPoly::monomial(c, &powers)
    };
    let lead_e: Vec<u32> = e.iter().map(|k| k / n).collect();
    let mut h = mono(&lead_e, root_c.clone());
    let denom = (&root_c.pow(n - 1) * &AlgNum::from_int(n as i64)).inverse()?;
    loop {
        let r = g - &h.pow(n);
        if r.is_zero() {
            return Ok(Some(h));
        }
        let (re, rc) = r.leading_term().unwrap();
        let re: Vec<u32> = g.vars().iter().map(|v| r.exponent_of(re, v)).collect();
        if r.vars().len() > g.vars().len() {
            return Ok(None);
        }
        let mut te = Vec::with_capacity(re.len());
        for (a, b) in re.iter().zip(&lead_e) {
            if *a < (n - 1) * b {
                return Ok(None);
            }
            te.push(a - (n - 1) * b);
        }
        if te.iter().sum::<u32>() > bound {
            return Ok(None);
        }
        h = &h + &mono(&te, rc * &denom);
    }
}

fn verdict_for(n: u32, root: Jet) -> RootVerdict {
    if n == 2 {
        RootVerdict::SquareCertified(root)
    } else {
        RootVerdict::CubeCertified(root)
    }
}

/// Series n-th root of `g` (n = 2 or 3). `ramified` names the variable whose
/// monomial factor is split off first; its exponent must be divisible by n.
/// For inexact inputs the root is lifted as far as the input determines it,
/// capped at `g.precision()`.
pub fn series_root(g: &Jet, n: u32, ramified: Option<&str>) -> RootVerdict {
    if g.is_zero() {
        return if g.is_exact() {
            verdict_for(n, Jet::exact(&MPoly::zero(), g.precision()))
        } else {
            RootVerdict::ToPrecision { precision: g.precision(), partial: g.clone() }
        };
    }
    let (gamma, rest) = match ramified {
        Some(v) => g.body().factor_out_variable(v),
        None => (0, g.body().clone()),
    };
    if gamma % n != 0 {
        return RootVerdict::Obstructed(g.body().ord().finite().unwrap_or(0));
    }
    let prefix = match ramified {
        Some(v) => MPoly::var(v).pow(gamma / n),
        None => MPoly::one(),
    };
    let avail = g.precision().saturating_sub(gamma);
    if g.is_exact() {
        match poly_nth_root(&rest, n) {
            Ok(Some(h)) => return verdict_for(n, Jet::exact(&(&prefix * &h), g.precision())),
            Ok(None) => {}
            Err(_) => return RootVerdict::NeedsFieldExtension,
        }
    }
    let d = match rest.ord() {
        Order::Finite(d) => d,
        Order::Infinity => unreachable!("nonzero input"),
    };
    if d % n != 0 {
        return RootVerdict::Obstructed(d + gamma);
    }
    let h0 = d / n;
    let lead = rest.homogeneous_part(d);
    let hh = match poly_nth_root(&lead, n) {
        Ok(Some(h)) => h,
        Ok(None) => return RootVerdict::Obstructed(d + gamma),
        Err(_) => return RootVerdict::NeedsFieldExtension,
    };
    // target degree of the root (before the prefix)
    let target = if g.is_exact() {
        g.precision().saturating_sub(gamma / n).max(h0)
    } else {
        avail.saturating_sub((n - 1) * h0)
    };
    let divisor = hh.pow(n - 1).scale(&AlgNum::from_int(n as i64));
    let mut h = hh.clone();
    for j in 1..=target.saturating_sub(h0) {
        let deg = n * h0 + j;
        let hp = h.pow(n).homogeneous_part(deg);
        let err = &rest.homogeneous_part(deg) - &hp;
        if err.is_zero() {
            continue;
        }
        match err.exact_divide(&divisor) {
            Ok(next) => h = &h + &next,
            Err(_) => return RootVerdict::Obstructed(deg + gamma),
        }
    }
    let prec = target + gamma / n;
    let root = Jet::new(&(&prefix * &h), prec);
    if !g.is_exact() {
        return verdict_for(n, root);
    }
    // rest = hh^n * unit certifies a genuine series root
    if let Ok(u) = rest.exact_divide(&hh.pow(n)) {
        if !u.constant_term().is_zero() {
            return verdict_for(n, root);
        }
    }
    RootVerdict::ToPrecision { precision: prec, partial: root }
}

pub fn series_sqrt(g: &Jet, ramified: Option<&str>) -> RootVerdict {
    series_root(g, 2, ramified)
}

pub fn series_cbrt(g: &Jet, ramified: Option<&str>) -> RootVerdict {
    series_root(g, 3, ramified)
}
