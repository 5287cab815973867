//! Engine output against values frozen from the sympy oracle.

#[path = "../../verify/src/lib.rs"]
mod common;

use common::*;
use formalis::closures::{
    counterexample_ring, counterexample_series, line_closure, nonzero_intersection_witness, pseudo_closure,
    saturation_profile, search_polynomial_multiple, CoefficientRule, OpenSubschemeSpec, SearchOutcome,
};
use formalis::exactpoly::{rat, ratio};
use formalis::foliations::{jouanolou_form, plane_ring, separatrix_family, smooth_separatrix, OneForm, RatFunc, UPoly};
use formalis::towers::{adic_witness_test, Tower};
use formalis::{Engine, Ideal, Poly, TruncSeries};

#[test]
fn pinned_saturations() {
    let engine = Engine::default();
    for (label, vars, gens, f, expect) in SATURATIONS {
        let r = ring(vars);
        let got = engine.saturate(&ideal(&r, gens), &p(f, &r)).unwrap();
        assert!(same_ideal(&engine, &got, &ideal(&r, expect)), "{label}: {got}");
    }
}

#[test]
fn pinned_eliminations() {
    let engine = Engine::default();
    for (label, vars, gens, drop, expect) in ELIMINATIONS {
        let r = ring(vars);
        let drop: Vec<String> = drop.iter().map(|s| s.to_string()).collect();
        let got = engine.eliminate(&ideal(&r, gens), &drop).unwrap();
        let want = ideal(got.ring(), expect);
        assert!(same_ideal(&engine, &got, &want), "{label}: {got}");
    }
}

#[test]
fn reduced_bases_print_like_the_oracle() {
    // lex, x > y: (x^2 + y^2 - 1, x - y) -> x - y, y^2 - 1/2 (monic form of 2*y^2 - 1)
    let engine = Engine::default();
    let r = ring(&["x", "y"]);
    let gb = engine
        .buchberger(
            &ideal(&r, &["x^2 + y^2 - 1", "x - y"]),
            &formalis::MonomialOrder::lex(&r),
        )
        .unwrap();
    let shown: Vec<String> = gb.basis().iter().map(Poly::to_string).collect();
    assert_eq!(shown, vec!["y^2 - 1/2", "x - y"]);
}

#[test]
fn factorial_saturation_profile() {
    let engine = Engine::default();
    let f = counterexample_series(&CoefficientRule::Factorial, 6).unwrap();
    let chain = saturation_profile(&engine, &f, 6, 2).unwrap();
    let model = chain.levels[0].ring().clone();
    for (k, gens) in FACTORIAL_J.iter().enumerate() {
        assert!(
            same_ideal(&engine, &chain.levels[k + 1], &ideal(&model, gens)),
            "J_{}",
            k + 2
        );
    }
    let row = chain.projections_at(2);
    assert_eq!(row.iter().map(|p| p.n).collect::<Vec<_>>(), vec![2, 3, 4, 5, 6]);
    for (proj, gens) in row.iter().zip(FACTORIAL_PI2) {
        assert!(
            same_ideal(&engine, &proj.ideal, &ideal(&model, gens)),
            "pi_2(J_{})",
            proj.n
        );
    }
    assert!(chain.projections_strictly_decreasing(2));
}

#[test]
fn control_profile_stabilizes() {
    let engine = Engine::default();
    let r = counterexample_ring();
    let f = TruncSeries::truncate(&p("y + x*t", &r), 5).unwrap();
    let chain = saturation_profile(&engine, &f, 5, 2).unwrap();
    let model = chain.levels[0].ring().clone();
    for proj in chain.projections_at(2) {
        assert!(
            same_ideal(&engine, &proj.ideal, &ideal(&model, CONTROL_PI2)),
            "N = {}",
            proj.n
        );
    }
    assert_eq!(chain.projection_stable_from(2), Some(2));
}

#[test]
fn descent_obstructions() {
    // oracle section `descent`
    let f = counterexample_series(&CoefficientRule::Factorial, 6).unwrap();
    let r = counterexample_ring();
    let terms = ["x^-1", "-x^-2", "x^-3", "-x^-4"];
    for (e, term) in terms.iter().enumerate() {
        let seed = p(&format!("y^{e}"), &r);
        match search_polynomial_multiple(&f, &seed, 6).unwrap() {
            SearchOutcome::Obstruction(cert) => {
                assert_eq!(cert.order, e as u32 + 1);
                assert_eq!(cert.term, p(term, &r), "seed y^{e}");
                assert!(cert.verify(&f).unwrap());
            }
            other => panic!("seed y^{e}: {other:?}"),
        }
    }
}

#[test]
fn line_closures() {
    // oracle section `lines`
    let engine = Engine::default();
    let r = laurent_ring();
    let cases: [(&str, u32, &[&str]); 5] = [
        ("x*t", 3, &["t"]),
        ("x^-1*t", 3, &["t"]),
        ("x + t", 3, &["1"]),
        ("x - 1 + t", 3, &["t^3", "x + t - 1"]),
        ("x^-2*t^2 + x*t^3", 5, &["t^2"]),
    ];
    for (f, n, expect) in cases {
        let s = TruncSeries::truncate(&p(f, &r), n).unwrap();
        let got = line_closure(&engine, &s, n).unwrap();
        assert!(same_ideal(&engine, &got, &ideal(got.ring(), expect)), "{f}: {got}");
    }
    let s = TruncSeries::truncate(&p("x^-2*t^2 + x*t^3", &r), 5).unwrap();
    assert!(nonzero_intersection_witness(&engine, &s, 5).unwrap().is_some());
}

#[test]
fn adic_containments() {
    // oracle section `adic`: forward n = 1 -> level 1, n = 2 -> none;
    // backward level i -> k = i
    let engine = Engine::default();
    let r = ring(&["x", "y"]);
    let chain: Vec<Ideal> = (1..=4).map(|i| ideal(&r, &[&format!("x*y^{i}")])).collect();
    let tower = Tower::new(&engine, &r, chain).unwrap();
    let rep = adic_witness_test(&engine, &tower, &ideal(&r, &["x*y"]), 2).unwrap();
    assert_eq!(rep.forward_witness, vec![(1, 1)]);
    assert_eq!(rep.forward_failure, Some(2));
    assert_eq!(rep.backward_witness, vec![(1, 1), (2, 2), (3, 3), (4, 4)]);
    assert!(!rep.pass);
}

#[test]
fn embedded_point_levels() {
    // oracle section `embedded`: level k = (t^2, (x-1)...(x-k)*t)
    let engine = Engine::default();
    let r = ring(&["x", "t"]);
    let chain: Vec<Ideal> = (1..=4).map(|k| ideal(&r, &[&format!("t^{}", k + 1)])).collect();
    let tower = Tower::new(&engine, &r, chain).unwrap();
    let mut prod = Poly::one(&r);
    let mut pieces = Vec::new();
    let mut expected = Vec::new();
    for a in 1..=4 {
        prod = &prod * &p(&format!("x - {a}"), &r);
        let j = Ideal::new(&r, vec![p("t^2", &r), &prod * &p("t", &r)]).unwrap();
        expected.push(j.clone());
        pieces.push(OpenSubschemeSpec::new(Poly::one(&r), j).unwrap());
    }
    let cc = pseudo_closure(&engine, &tower, &pieces).unwrap();
    for (k, (got, want)) in cc.levels.iter().zip(&expected).enumerate() {
        assert!(same_ideal(&engine, got, want), "level {}", k + 1);
    }
    assert_eq!(cc.stabilized_at, None);
}

#[test]
fn sphere_jet() {
    let r = plane_ring();
    let w = OneForm::new([p("x", &r), p("y", &r), p("z", &r)]).unwrap();
    let jet = smooth_separatrix(&w, &[rat(0), rat(0), rat(1)], 5).unwrap();
    assert_eq!(jet.phi, p(SPHERE_JET, &r));
}

#[test]
fn jouanolou_family_table() {
    let w = jouanolou_form(3).unwrap();
    let fam = separatrix_family(&w, &[rat(1), rat(2), rat(3)], 4).unwrap();
    assert_eq!(fam.graph_axis, 2);
    assert_eq!(fam.pole_profile, JOUANOLOU_PROFILE.to_vec());
    assert_eq!(fam.coeffs.len(), JOUANOLOU_TABLE.len());
    for (i, j, num, den, k) in JOUANOLOU_TABLE {
        let term = fam
            .coeffs
            .iter()
            .find(|t| t.exps == [i, j, 0])
            .unwrap_or_else(|| panic!("missing X^{i} Y^{j}"));
        let mut wk = vec![rat(0); k];
        wk.push(rat(1));
        let want = RatFunc::new(UPoly::constant(ratio(num, den)), UPoly::new(wk));
        assert_eq!(term.coeff, want, "X^{i} Y^{j}");
    }
}
