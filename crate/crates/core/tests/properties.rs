//! Invariants as property tests.

#[path = "../../verify/src/lib.rs"]
mod common;

use std::sync::Arc;

use common::*;
use formalis::foliations::{check_integrability, euler_residue, make_pfaff, plane_ring, smooth_separatrix, OneForm};
use formalis::{Engine, Ideal, Mono, Poly, Rat, TruncSeries, VarSpec};
use proptest::prelude::*;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| formalis::exactpoly::ratio(n, d))
}

fn poly_strategy(r: Arc<VarSpec>, lo: i32, hi: i32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let n = r.len();
    prop::collection::vec((prop::collection::vec(lo..=hi, n), rat_strategy()), 0..=max_terms).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(mut e, c)| {
            for (i, x) in e.iter_mut().enumerate() {
                if !r.is_invertible(i) {
                    *x = x.abs();
                }
            }
            (Mono::from_exps(&e), c)
        });
        Poly::from_terms(&r, terms).unwrap()
    })
}

fn xyt() -> Arc<VarSpec> {
    VarSpec::new(&["x", "y", "t"], &["x"], Some("t")).unwrap().shared()
}

fn xyz() -> Arc<VarSpec> {
    ring(&["x", "y", "z"])
}

fn small_ideal() -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(poly_strategy(xyz(), 0, 2, 3), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(
        a in poly_strategy(xyt(), -2, 2, 4),
        b in poly_strategy(xyt(), -2, 2, 4),
        c in poly_strategy(xyt(), -2, 2, 4),
    ) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(a.spec()), a.clone());
    }

    #[test]
    fn truncation_is_a_ring_map(
        a in poly_strategy(xyt(), -2, 3, 4),
        b in poly_strategy(xyt(), -2, 3, 4),
        n in 1u32..6,
    ) {
        let ta = TruncSeries::truncate(&a, n).unwrap();
        let tb = TruncSeries::truncate(&b, n).unwrap();
        prop_assert_eq!(ta.mul(&tb).unwrap(), TruncSeries::truncate(&(&a * &b), n).unwrap());
        prop_assert_eq!(ta.add(&tb).unwrap(), TruncSeries::truncate(&(&a + &b), n).unwrap());
    }

    #[test]
    fn laurent_clear_is_minimal(a in poly_strategy(xyt(), -3, 3, 4)) {
        let (q, m) = a.laurent_clear();
        prop_assert!(!q.has_negative_exponents());
        prop_assert!(m.is_monomial());
        prop_assert_eq!(q.clone(), &a * &m);
        // dividing by one more x would reintroduce a negative exponent
        if !a.is_zero() {
            prop_assert_eq!(q.min_exponent(0).unwrap().min(0), 0);
            let (mono, _) = m.leading_term().unwrap();
            if mono.exps()[0] > 0 {
                prop_assert_eq!(q.min_exponent(0), Some(0));
            }
        }
    }

    #[test]
    fn print_parse_round_trip(a in poly_strategy(xyt(), -3, 4, 6)) {
        let back = Poly::parse(&a.to_string(), a.spec()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn normal_form_certificates(gens in small_ideal(), p in poly_strategy(xyz(), 0, 3, 5)) {
        let engine = Engine::default();
        let i = Ideal::new(&xyz(), gens).unwrap();
        let gb = engine.groebner(&i).unwrap();
        let (r, q) = gb.normal_form_with_cofactors(&p).unwrap();
        let mut rebuilt = r.clone();
        for (qi, gi) in q.iter().zip(gb.basis()) {
            rebuilt = &rebuilt + &(qi * gi);
        }
        prop_assert_eq!(rebuilt, p.clone());
        prop_assert_eq!(gb.normal_form(&r).unwrap(), r.clone());
        let lead = gb.leading_monomials();
        for (m, _) in r.terms() {
            for l in &lead {
                prop_assert!(!l.leading_term().unwrap().0.divides(m));
            }
        }
        for g in i.gens() {
            prop_assert!(gb.contains_poly(g).unwrap());
        }
    }

    #[test]
    fn reduced_basis_is_canonical(
        gens in small_ideal(),
        scale in prop::collection::vec(rat_strategy(), 3),
        rot in 0usize..3,
    ) {
        let engine = Engine::default();
        let r = xyz();
        let a = engine.groebner(&Ideal::new(&r, gens.clone()).unwrap()).unwrap();
        let mut other: Vec<Poly> = gens
            .iter()
            .zip(scale.iter().cycle())
            .map(|(g, c)| if *c == formalis::exactpoly::rat(0) { g.clone() } else { g.scale(c) })
            .collect();
        let len = other.len();
        other.rotate_left(rot % len);
        let b = engine.groebner(&Ideal::new(&r, other).unwrap()).unwrap();
        prop_assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn saturation_contains_and_is_idempotent(gens in small_ideal(), f in poly_strategy(xyz(), 0, 1, 2)) {
        prop_assume!(!f.is_zero());
        let engine = Engine::default();
        let i = Ideal::new(&xyz(), gens).unwrap();
        let s = engine.saturate(&i, &f).unwrap();
        prop_assert!(engine.contains(&s, &i).unwrap());
        let s2 = engine.saturate(&s, &f).unwrap();
        prop_assert!(engine.equal(&s, &s2).unwrap());
        let by_square = engine.saturate(&i, &f.pow(2)).unwrap();
        prop_assert!(engine.equal(&s, &by_square).unwrap());
    }

    #[test]
    fn euler_relation_for_cross_products(
        coeffs in prop::collection::vec(poly_strategy(plane_ring(), 0, 2, 3), 3),
        m in 1u32..4,
    ) {
        // ω = v × (x, y, z) with v homogeneous of degree m − 1 satisfies the
        // Euler relation identically
        let r = plane_ring();
        let v: Vec<Poly> = coeffs.iter().map(|c| c.homogeneous_part(m as i64 - 1)).collect();
        let x = |i: usize| Poly::var(&r, ["x", "y", "z"][i]).unwrap();
        let w = [
            &(&v[1] * &x(2)) - &(&v[2] * &x(1)),
            &(&v[2] * &x(0)) - &(&v[0] * &x(2)),
            &(&v[0] * &x(1)) - &(&v[1] * &x(0)),
        ];
        prop_assert!(euler_residue(&OneForm::new(w.clone()).unwrap()).is_zero());
        if w.iter().any(|c| !c.is_zero()) {
            prop_assert!(make_pfaff(m, w).is_ok());
        }
    }

    #[test]
    fn exact_forms_have_exact_jets(seed in any::<u64>(), order in 2u32..6) {
        let mut g = rng(seed);
        let (_, w) = random_exact_form(&mut g);
        prop_assert!(check_integrability(&w).integrable);
        let pt = regular_point(&mut g, &w);
        let jet = smooth_separatrix(&w, &pt, order).unwrap();
        for c in jet.residual(&w).unwrap() {
            prop_assert!(c.is_zero());
        }
    }
}
