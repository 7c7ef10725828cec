use std::collections::BTreeMap;

use proptest::prelude::*;
use singlab_core::branch::{full_split_cubic, ramify, split_profile, BranchCount, RAMIFIED};
use singlab_core::chart::{BlowupCenter, Chart, ChartMap, LedgerEntry};
use singlab_core::gcd::{gcd, squarefree};
use singlab_core::jet::Jet;
use singlab_core::roots::{series_sqrt, RootVerdict};
use singlab_core::{AlgNum, MPoly};

const VARS: [&str; 4] = ["w", "x", "y", "z"];

fn coeff(c: i64, eps: bool) -> AlgNum {
    let a = AlgNum::from_int(c);
    if eps {
        &a * &AlgNum::eps()
    } else {
        a
    }
}

fn build(terms: &[([u32; 4], i64, bool)]) -> MPoly {
    terms.iter().fold(MPoly::zero(), |acc, (e, c, eps)| {
        let powers: Vec<(&str, u32)> = VARS.iter().zip(e).map(|(v, k)| (*v, *k)).collect();
        &acc + &MPoly::monomial(coeff(*c, *eps), &powers)
    })
}

fn poly(max_exp: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::array::uniform4(0..=max_exp), -3i64..=3, prop::bool::weighted(0.2)), 1..=max_terms)
        .prop_map(|t| build(&t))
}

fn nonzero(max_exp: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    poly(max_exp, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Polynomials in w, x, y only (used as roots of cubics in z).
fn wxy_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::array::uniform3(0..=2u32), -2i64..=2), 1..=3).prop_map(|t| {
        t.iter().fold(MPoly::zero(), |acc, (e, c)| {
            &acc + &MPoly::monomial(AlgNum::from_int(*c), &[("w", e[0]), ("x", e[1]), ("y", e[2])])
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distributive(f in poly(3, 5), g in poly(3, 5), h in poly(3, 5)) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
    }

    #[test]
    fn substitution_is_a_ring_map(f in poly(2, 4), g in poly(2, 4), a in poly(1, 3), b in poly(1, 3)) {
        let map = BTreeMap::from([("x".to_string(), a), ("z".to_string(), b)]);
        prop_assert_eq!((&f * &g).substitute(&map), &f.substitute(&map) * &g.substitute(&map));
        prop_assert_eq!((&f + &g).substitute(&map), &f.substitute(&map) + &g.substitute(&map));
    }

    #[test]
    fn order_is_additive(f in nonzero(3, 5), g in nonzero(3, 5)) {
        prop_assert_eq!((&f * &g).ord(), f.ord() + g.ord());
        let sub = ["x", "y"];
        prop_assert_eq!((&f * &g).ord_sub(&sub), f.ord_sub(&sub) + g.ord_sub(&sub));
    }

    #[test]
    fn factor_out_reconstructs(f in nonzero(3, 5), v in 0usize..4) {
        let (k, rest) = f.factor_out_variable(VARS[v]);
        prop_assert_eq!(&MPoly::var(VARS[v]).pow(k) * &rest, f);
    }

    #[test]
    fn exact_division_inverts_multiplication(f in poly(2, 4), g in nonzero(2, 4)) {
        prop_assert_eq!((&f * &g).exact_divide(&g).unwrap(), f);
    }

    #[test]
    fn squarefree_decomposition_properties(a in nonzero(1, 3), b in nonzero(1, 3), c in nonzero(1, 2)) {
        let f = &(&a * &b.pow(2)) * &c.pow(3);
        let d = squarefree(&f);
        prop_assert_eq!(d.expand(), f);
        for (i, (p, _)) in d.factors.iter().enumerate() {
            for (q, _) in &d.factors[i + 1..] {
                prop_assert!(gcd(p, q).is_constant());
            }
            // square-free: no common factor with all partials at once
            let joint = p.vars().iter().fold(p.clone(), |acc, v| gcd(&acc, &p.derivative(v)));
            prop_assert!(joint.is_constant());
        }
    }

    #[test]
    fn square_roots_of_squares_are_certified(h in nonzero(2, 3)) {
        let g = h.pow(2);
        match series_sqrt(&Jet::exact(&g, 12), None) {
            RootVerdict::SquareCertified(r) => prop_assert_eq!(r.body().pow(2), g),
            other => prop_assert!(false, "{}", other.tag()),
        }
    }

    #[test]
    fn split_cubic_reconstructs_and_is_monotone(r1 in wxy_poly(), r2 in wxy_poly(), r3 in wxy_poly()) {
        let z = MPoly::var("z");
        let f = &(&(&z - &r1) * &(&z - &r2)) * &(&z - &r3);
        let factors = full_split_cubic(&f, "z", 12, None).unwrap();
        prop_assert!(factors.is_some());
        let product = factors.unwrap().iter().fold(MPoly::one(), |acc, j| &acc * j.body());
        prop_assert_eq!(product, f.clone());
        let report = split_profile(&f, "z", "w", 12);
        prop_assert_eq!(report.branch_count, BranchCount::Count(3));
        for k in [2, 3] {
            let g = ramify(&f, "w", k);
            prop_assert!(full_split_cubic(&g, "z", 12, Some(RAMIFIED)).unwrap().is_some());
        }
    }

    #[test]
    fn blowup_pullback_identity(f in nonzero(3, 5), sel in 0usize..3) {
        let chart = Chart::standard(f.clone(), vec![]).unwrap();
        let center = BlowupCenter::new(&["w", "x", "y"]).unwrap();
        let s = ["w", "x", "y"][sel];
        let Ok(next) = chart.blowup(&center, s) else { return Ok(()) };
        let Some(ChartMap::Blowup { multiplicity, .. }) = next.history.last() else {
            return Err(TestCaseError::fail("missing history"));
        };
        let map: BTreeMap<String, MPoly> = ["w", "x", "y"]
            .iter()
            .filter(|v| **v != s)
            .map(|v| (v.to_string(), &MPoly::var(s) * &MPoly::var(v)))
            .collect();
        let pulled = f.substitute(&map);
        prop_assert_eq!(&MPoly::var(s).pow(*multiplicity) * &next.f, pulled.clone());
        prop_assert!(next.f.exact_divide(&MPoly::var(s)).is_err() || next.f.is_zero());
        prop_assert_eq!(next.replay().unwrap(), next);
    }
}

#[test]
fn root_outside_the_field_is_reported() {
    let x = MPoly::var("x");
    let g = x.pow(2).scale(&AlgNum::from_int(2));
    assert_eq!(series_sqrt(&Jet::exact(&g, 8), None), RootVerdict::NeedsFieldExtension);
    // the same coefficient is harmless inside a unit cofactor
    let u = &x.pow(2) * &(&MPoly::one() + &x.scale(&AlgNum::from_int(2)));
    assert!(series_sqrt(&Jet::exact(&u, 8), None).certified().is_some());
}

#[test]
fn change_coords_preserves_the_ideal() {
    let (w, x, y, z) = (MPoly::var("w"), MPoly::var("x"), MPoly::var("y"), MPoly::var("z"));
    let f = &z.pow(2) + &(&x * &y.pow(2));
    let chart = Chart::standard(f.clone(), vec![LedgerEntry::new(w.clone(), 1)]).unwrap();
    let forward = BTreeMap::from([("x".to_string(), &x + &w), ("z".to_string(), &z - &y)]);
    let back = BTreeMap::from([("x".to_string(), &x - &w), ("z".to_string(), &z + &y)]);
    let image = chart.change_coords(&forward).unwrap();
    let returned = image.f.substitute(&back);
    assert!(returned.exact_divide(&f).unwrap().is_constant());
    assert!(f.exact_divide(&returned).unwrap().is_constant());
}
