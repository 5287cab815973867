//! Closures of ordinary subschemes as levelwise saturations, pseudo-closure
//! chains, the one-variable inversion recursion, and the laboratory around
//! the series `y + Σ a_i x^-i t^i` whose principal ideal meets the
//! polynomial-in-`x` subring trivially.

mod counterexample;
mod inversion;

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

pub use counterexample::{
    counterexample_ring, counterexample_series, de_profile, saturation_profile, search_polynomial_multiple,
    CoefficientRule, DEProfile, ObstructionCertificate, SearchOutcome,
};
pub use inversion::{invert_to_monomial, line_closure, nonzero_intersection_witness, Inverse};

use crate::error::{Error, Result};
use crate::exactpoly::{Poly, VarSpec};
use crate::groebner::{Engine, Ideal};
use crate::towers::Tower;

/// A closed subscheme `V(J)` of the distinguished open `D(f)`.
#[derive(Clone, Debug, Serialize)]
pub struct OpenSubschemeSpec {
    pub f: Poly,
    pub j: Ideal,
}

impl OpenSubschemeSpec {
    pub fn new(f: Poly, j: Ideal) -> Result<OpenSubschemeSpec> {
        if f.is_zero() {
            return Err(Error::precondition("the distinguished open D(0) is empty"));
        }
        if f.spec() != j.ring() {
            return Err(Error::RingMismatch(format!("{f} is not in {}", j.ring())));
        }
        if f.has_negative_exponents() {
            return Err(Error::precondition("f must be a polynomial"));
        }
        Ok(OpenSubschemeSpec { f, j })
    }
}

/// `π_m(J_n)`: the level-`n` ideal pushed down to level `m`.
#[derive(Clone, Debug, Serialize)]
pub struct Projection {
    pub m: usize,
    pub n: usize,
    pub ideal: Ideal,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureChain {
    /// Closure ideal per level, as reduced grevlex bases.
    pub levels: Vec<Ideal>,
    /// Smallest level `i < depth` with `levels[k] = levels[depth] + I_k` for
    /// every `k ≥ i`, i.e. the chain is one closed subscheme cut down by the
    /// tower from `i` on.
    pub stabilized_at: Option<usize>,
    pub projections: Vec<Projection>,
    /// Every `π_m(J_n) ⊇ π_m(J_n+1)` holds.
    pub projections_non_increasing: bool,
}

impl ClosureChain {
    /// Projections for a fixed `m`, ordered by `n`.
    pub fn projections_at(&self, m: usize) -> Vec<&Projection> {
        self.projections.iter().filter(|p| p.m == m).collect()
    }
}

/// `(J + I_level : f^∞)`, the kernel of `P/I_level → ((P/I_level)/J)_f`.
pub fn ordinary_closure(engine: &Engine, tower: &Tower, y: &OpenSubschemeSpec, level: usize) -> Result<Ideal> {
    if level == 0 || level > tower.depth() {
        return Err(Error::precondition(format!(
            "level {level} outside 1..={}",
            tower.depth()
        )));
    }
    if y.j.ring() != tower.ring() {
        return Err(Error::RingMismatch(format!("{} vs {}", y.j.ring(), tower.ring())));
    }
    engine.saturate(&y.j.sum(tower.level(level))?, &y.f)
}

/// Levelwise closures of `Y_i ⊆ X_i`.
pub fn pseudo_closure(engine: &Engine, tower: &Tower, y_chain: &[OpenSubschemeSpec]) -> Result<ClosureChain> {
    if y_chain.len() != tower.depth() {
        return Err(Error::precondition(format!(
            "{} subschemes for a tower of depth {}",
            y_chain.len(),
            tower.depth()
        )));
    }
    let levels: Vec<Ideal> = y_chain
        .par_iter()
        .enumerate()
        .map(|(i, y)| ordinary_closure(engine, tower, y, i + 1))
        .collect::<Result<_>>()?;
    for i in 1..levels.len() {
        if !engine.contains(&levels[i - 1], &levels[i])? {
            return Err(Error::precondition(format!(
                "closures do not descend from level {i} to level {}",
                i + 1
            )));
        }
    }
    assemble(engine, levels, tower.chain())
}

/// Fills in projections and stabilization for closure ideals sitting over
/// the given level ideals.
pub(crate) fn assemble(engine: &Engine, levels: Vec<Ideal>, base: &[Ideal]) -> Result<ClosureChain> {
    let depth = levels.len();
    let pairs: Vec<(usize, usize)> = (1..=depth).flat_map(|m| (m..=depth).map(move |n| (m, n))).collect();
    let projections: Vec<Projection> = pairs
        .par_iter()
        .map(|&(m, n)| {
            Ok(Projection {
                m,
                n,
                ideal: engine.reduce(&levels[n - 1].sum(&base[m - 1])?)?,
            })
        })
        .collect::<Result<_>>()?;
    let mut non_increasing = true;
    for w in projections.windows(2) {
        if w[0].m == w[1].m && !engine.contains(&w[0].ideal, &w[1].ideal)? {
            non_increasing = false;
        }
    }
    let mut stabilized_at = None;
    if depth > 1 {
        let mut i = depth;
        while i > 1 {
            let k = i - 1;
            let below = projections
                .iter()
                .find(|p| p.m == k && p.n == depth)
                .expect("projection table is complete");
            if !engine.equal(&below.ideal, &levels[k - 1])? {
                break;
            }
            i = k;
        }
        if i < depth {
            stabilized_at = Some(i);
        }
    }
    let levels = levels.iter().map(|l| engine.reduce(l)).collect::<Result<_>>()?;
    Ok(ClosureChain {
        levels,
        stabilized_at,
        projections,
        projections_non_increasing: non_increasing,
    })
}

/// Polynomial model ring of a Laurent ring: same names, nothing invertible.
pub(crate) fn model_ring(spec: &VarSpec) -> Arc<VarSpec> {
    spec.without_inverses().shared()
}
