#![allow(dead_code)]
//! Seeded random inputs and oracle tables for the acceptance checks.
//!
//! Every table below was printed by `crates/core/tests/oracle/oracle.py`
//! (sympy); the section name is given next to each one. The core
//! integration tests include this file as a module.

use std::sync::Arc;

use formalis::exactpoly::{rat, ratio};
use formalis::foliations::{plane_ring, OneForm};
use formalis::{Engine, Ideal, Mono, Poly, Rat, TruncSeries, VarSpec};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(names: &[&str]) -> Arc<VarSpec> {
    VarSpec::polynomial(names).unwrap().shared()
}

pub fn laurent_ring() -> Arc<VarSpec> {
    VarSpec::new(&["x", "t"], &["x"], Some("t")).unwrap().shared()
}

pub fn p(s: &str, r: &Arc<VarSpec>) -> Poly {
    Poly::parse(s, r).unwrap()
}

pub fn ideal(r: &Arc<VarSpec>, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

pub fn small_rat(g: &mut impl Rng) -> Rat {
    let num = g.gen_range(-5i64..=5);
    let den = g.gen_range(1i64..=3);
    ratio(num, den)
}

pub fn nonzero_rat(g: &mut impl Rng) -> Rat {
    loop {
        let r = small_rat(g);
        if r != rat(0) {
            return r;
        }
    }
}

/// Random polynomial with at most `terms` terms, each exponent drawn from
/// `lo..=hi` (`lo < 0` only for invertible variables).
pub fn random_poly(g: &mut impl Rng, r: &Arc<VarSpec>, terms: usize, lo: i32, hi: i32) -> Poly {
    let mut out = Vec::new();
    for _ in 0..terms {
        let exps: Vec<i32> = (0..r.len())
            .map(|i| {
                let low = if r.is_invertible(i) { lo } else { 0 };
                g.gen_range(low..=hi)
            })
            .collect();
        out.push((Mono::from_exps(&exps), small_rat(g)));
    }
    Poly::from_terms(r, out).unwrap()
}

/// A one-variable Laurent series `Σ f_i(x) t^i` mod `t^N`, nonzero mod `t^N`.
pub fn random_line_series(g: &mut impl Rng, order: u32) -> TruncSeries {
    let r = laurent_ring();
    loop {
        let coeffs: Vec<Poly> = (0..order)
            .map(|_| {
                if g.gen_bool(0.3) {
                    Poly::zero(&r)
                } else {
                    let k = g.gen_range(1..=3);
                    random_poly(g, &r, k, -3, 3).filter(|m| m.exps()[1] == 0)
                }
            })
            .collect();
        let f = TruncSeries::from_coefficients(&r, &coeffs, order).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// `dF` for a random polynomial `F` in `x, y, z` with a nonzero linear part,
/// so the origin is a regular point.
pub fn random_exact_form(g: &mut impl Rng) -> (Poly, OneForm) {
    let r = plane_ring();
    loop {
        let k = g.gen_range(2..=5);
        let f = random_poly(g, &r, k, 0, 3);
        let lin = random_poly(g, &r, 2, 0, 1).homogeneous_part(1);
        let f = &f + &lin;
        let w = OneForm::new([f.derivative(0), f.derivative(1), f.derivative(2)]).unwrap();
        if w.0.iter().any(|c| !c.constant_term().eq(&rat(0))) {
            return (f, w);
        }
    }
}

/// Random point where `w` does not vanish.
pub fn regular_point(g: &mut impl Rng, w: &OneForm) -> [Rat; 3] {
    loop {
        let pt = [small_rat(g), small_rat(g), small_rat(g)];
        if w.at(&pt).unwrap().iter().any(|v| v != &rat(0)) {
            return pt;
        }
    }
}

pub fn same_ideal(engine: &Engine, a: &Ideal, b: &Ideal) -> bool {
    engine.equal(a, b).unwrap()
}

/// (label, variables, generators, f, oracle basis).
pub type SaturationCase = (
    &'static str,
    &'static [&'static str],
    &'static [&'static str],
    &'static str,
    &'static [&'static str],
);

/// (label, variables, generators, dropped, oracle basis).
pub type EliminationCase = (
    &'static str,
    &'static [&'static str],
    &'static [&'static str],
    &'static [&'static str],
    &'static [&'static str],
);

/// Saturation instances.
/// Oracle section: `kernel`.
pub const SATURATIONS: [SaturationCase; 12] = [
    ("sat1", &["x", "y", "t"], &["x*y", "x*t"], "x", &["y", "t"]),
    ("sat2", &["x", "y"], &["x^2*y", "x*y^2"], "x", &["y"]),
    ("sat3", &["x", "y"], &["x*y - x", "x^2"], "x", &["1"]),
    ("sat4", &["x", "y"], &["x^3 - x*y", "x*y^2"], "x", &["1"]),
    (
        "sat5",
        &["x", "y", "t"],
        &["x*y + t", "t^2"],
        "x",
        &["x*y + t", "y^2", "y*t", "t^2"],
    ),
    (
        "sat6",
        &["x", "y", "t"],
        &["x^2*y + x*t", "t^3"],
        "x",
        &["y^3", "y^2*t", "y*t^2", "t^3", "x*y + t"],
    ),
    ("sat7", &["x", "y", "z"], &["x*y - y", "x*z - z"], "x - 1", &["y", "z"]),
    ("sat8", &["x", "y", "z"], &["x*y*z", "x^2*z^2"], "x*z", &["1"]),
    ("sat9", &["x", "y"], &["y^2 - x^3", "x*y"], "x", &["1"]),
    ("sat10", &["x", "t"], &["t^2", "x*t - t", "x*t - 2*t"], "x - 1", &["t"]),
    ("sat11", &["x", "y"], &["x^2*y^2", "x*y^3"], "y", &["x"]),
    (
        "sat12",
        &["x", "y", "z", "t"],
        &["x*y - z*t", "x*z", "y*t"],
        "x",
        &["y", "z"],
    ),
];

/// Elimination instances: (label, variables, generators, dropped, oracle
/// basis over the remaining variables). Oracle section: `kernel`.
pub const ELIMINATIONS: [EliminationCase; 8] = [
    ("elim1", &["u", "x", "y"], &["u*x - 1", "y - u"], &["u"], &["x*y - 1"]),
    (
        "elim2",
        &["t", "x", "y"],
        &["x - t^2", "y - t^3"],
        &["t"],
        &["x^3 - y^2"],
    ),
    (
        "elim3",
        &["t", "x", "y", "z"],
        &["x - t", "y - t^2", "z - t^3"],
        &["t"],
        &["x^2 - y", "x*y - z", "y^2 - x*z"],
    ),
    (
        "elim4",
        &["u", "x", "y"],
        &["x*u - y", "u^2 - 1"],
        &["u"],
        &["x^2 - y^2"],
    ),
    (
        "elim5",
        &["u", "x", "y", "z"],
        &["x - u*y", "z - u^2"],
        &["u"],
        &["y^2*z - x^2"],
    ),
    (
        "elim6",
        &["x", "y", "t"],
        &["x^2 + y^2 - 1", "x - t", "y - t"],
        &["x"],
        &["2*t^2 - 1", "y - t"],
    ),
    ("elim7", &["t", "x", "y"], &["t*x - 1", "t*y - 2"], &["t"], &["2*x - y"]),
    (
        "elim8",
        &["z", "x", "y", "t"],
        &["x - y*z", "y - z*t"],
        &["z"],
        &["y^2 - x*t"],
    ),
];

/// `π_2(J_N)` for the factorial series, `N = 2..=6`. Oracle section: `profile`.
pub const FACTORIAL_PI2: [&[&str]; 5] = [
    &["x*y + t", "y^2", "y*t", "t^2"],
    &["y^3", "y^2*t", "x*y - 2*y*t + t", "t^2"],
    &[
        "y^4",
        "x^2*y + x*t",
        "x*y^2 + x*y - y*t + t",
        "x*y*t",
        "2*y^2*t + x*y - 2*y*t + t",
        "t^2",
    ],
    &[
        "y^5",
        "4*y^3*t - 2*y^2*t - x*y + 2*y*t - t",
        "x^2*y + x*t",
        "2*x*y^2 - 2*y^2*t + x*y + t",
        "x*y*t",
        "t^2",
    ],
    &[
        "y^6",
        "4*x*y^3 + 6*x*y^2 - 6*y^2*t + x*y + 4*y*t + t",
        "4*y^3*t + 4*x*y^2 - 6*y^2*t + x*y + 2*y*t + t",
        "x^2*y + x*t",
        "x*y*t",
        "t^2",
    ],
];

/// Full `J_N` for the factorial series, `N = 2..=4`. Oracle section: `profile`.
pub const FACTORIAL_J: [&[&str]; 3] = [
    &["x*y + t", "y^2", "y*t", "t^2"],
    &["y^3", "y^2*t", "y*t^2", "t^3", "x*y - 2*y*t + t"],
    &[
        "y^4",
        "y*t^3",
        "t^4",
        "x^2*y - 6*y*t^2 + x*t + 2*t^2",
        "x*y^2 + x*y - y*t + t",
        "x*y*t - 2*y*t^2 + t^2",
        "2*y^2*t + x*y - 2*y*t + t",
    ],
];

/// `π_2(J_N)` for the control `y + x*t`, the same for every `N ≥ 2`.
/// Oracle section: `profile`.
pub const CONTROL_PI2: &[&str] = &["y^2", "x*t + y", "y*t", "t^2"];

/// Sphere jet at `(0, 0, 1)`, `N = 5`. Oracle section: `family`.
pub const SPHERE_JET: &str = "-1/8*x^4 - 1/4*x^2*y^2 - 1/2*x^2 - 1/8*y^4 - 1/2*y^2";

/// Jouanolou `m = 3`, line `(1, 2, 3)`, `N = 4`. Oracle section: `family`.
pub const JOUANOLOU_PROFILE: [usize; 4] = [0, 1, 2, 3];

/// `(X, Y exponents, numerator, denominator constant, power of w)`.
/// Oracle section: `family`.
pub const JOUANOLOU_TABLE: [(u32, u32, i64, i64, usize); 14] = [
    (0, 1, 23, 17, 0),
    (0, 2, -233, 4913, 1),
    (0, 3, 39573, 1419857, 2),
    (0, 4, -7057144, 410338673, 3),
    (1, 0, 5, 17, 0),
    (1, 1, 932, 4913, 1),
    (1, 2, -170101, 1419857, 2),
    (1, 3, 33583958, 410338673, 3),
    (2, 0, -932, 4913, 1),
    (2, 1, 205528, 1419857, 2),
    (2, 2, -51592685, 410338673, 3),
    (3, 0, -47236, 1419857, 2),
    (3, 1, 29191852, 410338673, 3),
    (4, 0, -7770324, 410338673, 3),
];
