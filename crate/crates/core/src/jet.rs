//! Truncated power series: a polynomial body known modulo terms of total
//! degree greater than `precision`.

use std::fmt;

use serde::Serialize;

use crate::field::AlgNum;
use crate::poly::MPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Jet {
    body: MPoly,
    precision: u32,
    exact: bool,
}

impl Jet {
    /// A series known through degree `n`; higher terms are dropped.
    pub fn new(f: &MPoly, n: u32) -> Self {
        Jet { body: f.truncate(n), precision: n, exact: false }
    }

    /// The polynomial itself. Precision is at least `n` and covers the body.
    pub fn exact(f: &MPoly, n: u32) -> Self {
        let n = n.max(f.total_degree().unwrap_or(0));
        Jet { body: f.clone(), precision: n, exact: true }
    }

    pub fn body(&self) -> &MPoly {
        &self.body
    }

    pub fn into_body(self) -> MPoly {
        self.body
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    fn combine(&self, other: &Jet, body: MPoly) -> Jet {
        match (self.exact, other.exact) {
            (true, true) => Jet::exact(&body, self.precision.max(other.precision)),
            (true, false) => Jet::new(&body, other.precision),
            (false, true) => Jet::new(&body, self.precision),
            (false, false) => Jet::new(&body, self.precision.min(other.precision)),
        }
    }

    pub fn add(&self, other: &Jet) -> Jet {
        self.combine(other, &self.body + &other.body)
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        self.combine(other, &self.body - &other.body)
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        if self.exact && other.exact {
            return Jet::exact(&(&self.body * &other.body), self.precision.max(other.precision));
        }
        let n = match (self.exact, other.exact) {
            (true, false) => other.precision,
            (false, true) => self.precision,
            _ => self.precision.min(other.precision),
        };
        Jet::new(&self.body.mul_truncated(&other.body, n), n)
    }

    pub fn scale(&self, c: &AlgNum) -> Jet {
        Jet { body: self.body.scale(c), precision: self.precision, exact: self.exact }
    }

    /// Drops terms above `n`; an exact jet stays exact only if nothing is lost.
    pub fn truncate(&self, n: u32) -> Jet {
        if self.exact && self.body.total_degree().unwrap_or(0) <= n {
            return Jet::exact(&self.body, n);
        }
        Jet::new(&self.body, n.min(self.precision))
    }

    /// Congruence modulo terms of degree greater than `n`.
    pub fn agrees_with(&self, f: &MPoly, n: u32) -> bool {
        (&self.body - f).truncate(n).is_zero()
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.body)
        } else {
            write!(f, "{} + O({})", self.body, self.precision + 1)
        }
    }
}
