use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{assemble, model_ring, ClosureChain};
use crate::error::{Error, Result};
use crate::exactpoly::{factorial, rat_pow, Mono, Poly, Rat, TruncSeries, VarSpec};
use crate::groebner::{Engine, Ideal};

/// `x` invertible, `y` polynomial, `t` the series variable.
pub fn counterexample_ring() -> Arc<VarSpec> {
    VarSpec::new(&["x", "y", "t"], &["x"], Some("t"))
        .expect("fixed ring is valid")
        .shared()
}

/// The coefficient sequence `i ↦ a_i`, `i ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientRule {
    Factorial,
    /// `a_i = base^(i²)`.
    PowerOfSquare(i64),
    Constant(Rat),
    /// `a_1, a_2, …` given explicitly.
    List(Vec<Rat>),
}

impl CoefficientRule {
    pub fn coefficient(&self, i: u32) -> Option<Rat> {
        match self {
            CoefficientRule::Factorial => Some(factorial(i)),
            CoefficientRule::PowerOfSquare(b) => Some(rat_pow(&Rat::from_integer((*b).into()), i * i)),
            CoefficientRule::Constant(c) => Some(c.clone()),
            CoefficientRule::List(v) => v.get(i as usize - 1).cloned(),
        }
    }
}

/// `y + Σ_(1≤i<N) a_i x^-i t^i`, after checking on `i < N` that every
/// `a_i ≠ 0`, that `|a_i|` strictly increases and that the ratios
/// `|a_(i+1)/a_i|` strictly increase (a finite stand-in for divergence).
pub fn counterexample_series(rule: &CoefficientRule, order: u32) -> Result<TruncSeries> {
    if order == 0 {
        return Err(Error::precondition("truncation order must be positive"));
    }
    let ring = counterexample_ring();
    let mut a: Vec<Rat> = Vec::new();
    for i in 1..order {
        let ai = rule
            .coefficient(i)
            .ok_or_else(|| Error::precondition(format!("no coefficient a_{i}")))?;
        if ai.is_zero() {
            return Err(Error::precondition(format!("a_{i} = 0")));
        }
        if let Some(prev) = a.last() {
            if ai.abs() <= prev.abs() {
                return Err(Error::precondition(format!("|a_{i}| does not exceed |a_{}|", i - 1)));
            }
        }
        if a.len() >= 2 {
            let n = a.len();
            let (r_prev, r_next) = ((&a[n - 1] / &a[n - 2]).abs(), (&ai / &a[n - 1]).abs());
            if r_next <= r_prev {
                return Err(Error::precondition(format!(
                    "ratio |a_{i}/a_{}| does not grow past |a_{}/a_{}|",
                    i - 1,
                    i - 1,
                    i - 2
                )));
            }
        }
        a.push(ai);
    }
    let mut f = Poly::var(&ring, "y")?;
    for (k, ai) in a.iter().enumerate() {
        let i = k as i32 + 1;
        f = &f + &Poly::monomial(&ring, Mono::from_exps(&[-i, 0, i]), ai.clone());
    }
    TruncSeries::truncate(&f, order)
}

/// Sequences of the descent argument. `None` stands for `+∞` (an infimum
/// over the empty set). All four are indexed by the `t`-order `0..N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DEProfile {
    #[serde(serialize_with = "ser_ext")]
    pub d: Vec<Option<i64>>,
    #[serde(serialize_with = "ser_ext")]
    pub e: Vec<Option<i64>>,
    #[serde(rename = "D", serialize_with = "ser_ext")]
    pub big_d: Vec<Option<i64>>,
    #[serde(rename = "E", serialize_with = "ser_ext")]
    pub big_e: Vec<Option<i64>>,
}

fn ser_ext<S: Serializer>(v: &[Option<i64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| match x {
        Some(n) => serde_json::Value::from(*n),
        None => serde_json::Value::from("inf"),
    }))
}

fn first_violation(v: &[Option<i64>], ok: impl Fn(i64, i64) -> bool) -> Option<(usize, usize)> {
    let defined: Vec<(usize, i64)> = v.iter().enumerate().filter_map(|(i, x)| x.map(|x| (i, x))).collect();
    defined
        .windows(2)
        .find(|w| !ok(w[0].1, w[1].1))
        .map(|w| (w[0].0, w[1].0))
}

impl DEProfile {
    /// First pair of consecutive defined orders where `D` fails to drop.
    pub fn d_violation(&self) -> Option<(usize, usize)> {
        first_violation(&self.big_d, |a, b| b < a)
    }

    /// First pair of consecutive defined orders where `E` grows.
    pub fn e_violation(&self) -> Option<(usize, usize)> {
        first_violation(&self.big_e, |a, b| b <= a)
    }
}

/// Indices of the invertible `x` and the polynomial `y` of a Laurent ring.
fn xy_indices(spec: &VarSpec) -> Result<(usize, usize)> {
    let x = spec
        .invertible_indices()
        .next()
        .ok_or_else(|| Error::precondition("ring has no invertible variable"))?;
    let y = (0..spec.len())
        .find(|&i| !spec.is_invertible(i) && Some(i) != spec.series_var())
        .ok_or_else(|| Error::precondition("ring has no polynomial variable besides the series variable"))?;
    Ok((x, y))
}

/// Evaluates the definitions of `d_i, e_i, D_i, E_i` on the coefficients of
/// `g` for orders below `N`.
pub fn de_profile(g: &TruncSeries, order: u32) -> Result<DEProfile> {
    let (xi, yi) = xy_indices(g.spec())?;
    let n = order.min(g.order()) as usize;
    let mut d = Vec::with_capacity(n);
    let mut e = Vec::with_capacity(n);
    for i in 0..n {
        let c = g.coefficient(i as u32);
        let di = c.min_exponent(xi).map(i64::from);
        let ei = di.and_then(|di| {
            c.terms()
                .filter(|(m, _)| i64::from(m.exps()[xi]) == di)
                .map(|(m, _)| i64::from(m.exps()[yi]))
                .min()
        });
        d.push(di);
        e.push(ei);
    }
    let mut big_d = vec![None; n];
    let mut big_e = vec![None; n];
    for i in 1..n {
        let cands: Vec<(i64, usize)> = (0..i)
            .filter_map(|j| d[j].map(|dj| (dj - i as i64 + j as i64, j)))
            .collect();
        if let Some(&(dmin, _)) = cands.iter().min() {
            big_d[i] = Some(dmin);
            big_e[i] = cands
                .iter()
                .filter(|(v, _)| *v == dmin)
                .filter_map(|&(_, j)| e[j])
                .min();
        }
    }
    Ok(DEProfile { d, e, big_d, big_e })
}

/// A negative-`x` term of `h'_i` that `f_0·g_i` cannot cancel.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionCertificate {
    pub order: u32,
    pub term: Poly,
    pub profile: DEProfile,
    /// `g_0 … g_(order−1)` of the canonical branch.
    pub g_prefix: TruncSeries,
}

impl ObstructionCertificate {
    /// Recomputes `h'_order` from `f` and the prefix and checks the term.
    pub fn verify(&self, f: &TruncSeries) -> Result<bool> {
        let (xi, _) = xy_indices(f.spec())?;
        let (m, c) = self
            .term
            .leading_term()
            .ok_or_else(|| Error::precondition("empty term"))?;
        let f0 = f.coefficient(0);
        let (fm, _) = f0.leading_term().ok_or_else(|| Error::precondition("f_0 = 0"))?;
        let g: Vec<Poly> = (0..self.order).map(|i| self.g_prefix.coefficient(i)).collect();
        let h = tail_product(f, &g, self.order);
        Ok(self.term.len() == 1
            && m.exps()[xi] < 0
            && !cancellable(f.spec(), m, fm)
            && &h.coeff(m) == c
            && g[0].spec() == f.spec())
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    /// `f·g = h` with `h` free of negative exponents modulo `t^N`.
    Multiple {
        g: TruncSeries,
        h: TruncSeries,
    },
    Obstruction(ObstructionCertificate),
}

/// `h'_i = Σ_(1≤j≤i) f_j g_(i−j)`.
fn tail_product(f: &TruncSeries, g: &[Poly], i: u32) -> Poly {
    let mut acc = Poly::zero(f.spec());
    for j in 1..=i {
        let fj = f.coefficient(j);
        if !fj.is_zero() {
            acc = &acc + &(&fj * &g[(i - j) as usize]);
        }
    }
    acc
}

/// True iff `m = f0 · (Laurent monomial)`, i.e. the polynomial exponents of
/// `m` dominate those of `f0`.
fn cancellable(spec: &VarSpec, m: &Mono, f0: &Mono) -> bool {
    (0..spec.len()).all(|i| spec.is_invertible(i) || m.exps()[i] >= f0.exps()[i])
}

/// Greedy search for a polynomial multiple `f·g` on the canonical branch:
/// `g_0 = seed`, each later `g_i` cancels exactly the negative-`x` part of
/// `h'_i` and has no further polynomial part.
pub fn search_polynomial_multiple(f: &TruncSeries, seed: &Poly, order: u32) -> Result<SearchOutcome> {
    let spec = f.spec().clone();
    let (xi, yi) = xy_indices(&spec)?;
    if seed.spec() != &spec {
        return Err(Error::RingMismatch(format!("{seed} is not in {spec}")));
    }
    if seed.has_negative_exponents() || seed.max_exponent(f.series_index()).unwrap_or(0) != 0 {
        return Err(Error::precondition(
            "seed must be a polynomial without the series variable",
        ));
    }
    let f = f.with_order(order)?;
    let f0 = f.coefficient(0);
    if !f0.is_monomial() || f0.has_negative_exponents() {
        return Err(Error::precondition(
            "the canonical branch needs a polynomial monomial t^0-coefficient",
        ));
    }
    let (f0m, f0c) = f0.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let inv_f0m = Mono::from_exps(&f0m.exps().iter().map(|e| -e).collect::<Vec<_>>());
    let neg_coeff = -f0c.recip();
    let mut g = vec![seed.clone()];
    for i in 1..order {
        let h = tail_product(&f, &g, i);
        let negative = h.filter(|m| spec.invertible_indices().any(|k| m.exps()[k] < 0));
        let blocked = negative
            .terms()
            .filter(|(m, _)| !cancellable(&spec, m, &f0m))
            .min_by_key(|(m, _)| (m.exps()[xi], m.exps()[yi]));
        if let Some((m, c)) = blocked {
            let prefix = series_from(&spec, &g, i + 1)?;
            let profile = de_profile(&prefix, i + 1)?;
            return Ok(SearchOutcome::Obstruction(ObstructionCertificate {
                order: i,
                term: Poly::monomial(&spec, m.clone(), c.clone()),
                profile,
                g_prefix: prefix.with_order(i)?,
            }));
        }
        g.push(negative.mul_monomial(&inv_f0m, &neg_coeff));
    }
    let gs = series_from(&spec, &g, order)?;
    let h = f.mul(&gs)?;
    if h.poly().has_negative_exponents() {
        return Err(Error::Internal("canonical branch left a negative exponent".into()));
    }
    Ok(SearchOutcome::Multiple { g: gs, h })
}

fn series_from(spec: &Arc<VarSpec>, coeffs: &[Poly], order: u32) -> Result<TruncSeries> {
    TruncSeries::from_coefficients(spec, coeffs, order)
}

/// For `N = 1..=N_max`, `J_N = (f mod t^N, t^N)` contracted to the
/// polynomial model ring, together with the projections `J_N + (t^M)`.
pub fn saturation_profile(engine: &Engine, f: &TruncSeries, n_max: u32, m: u32) -> Result<ClosureChain> {
    if m == 0 || m > n_max {
        return Err(Error::precondition(format!(
            "need 1 ≤ M ≤ N_max, got M = {m}, N_max = {n_max}"
        )));
    }
    let spec = f.spec().clone();
    let model = model_ring(&spec);
    let t = f.series_index();
    let t_pow = |k: u32, ring: &Arc<VarSpec>| {
        let mut exps = vec![0; ring.len()];
        exps[t] = k as i32;
        Poly::monomial(ring, Mono::from_exps(&exps), Rat::one())
    };
    let levels: Vec<Ideal> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let fn_ = f.with_order(n)?;
            let mut gens = vec![t_pow(n, &spec)];
            if !fn_.is_zero() {
                gens.insert(0, fn_.poly().clone());
            }
            engine.laurent_contraction(&gens)
        })
        .collect::<Result<_>>()?;
    let base: Vec<Ideal> = (1..=n_max)
        .map(|k| Ideal::new(&model, vec![t_pow(k, &model)]))
        .collect::<Result<_>>()?;
    assemble(engine, levels, &base)
}

impl ClosureChain {
    /// Smallest `n ≥ m` from which `π_m(J_n)` no longer changes, provided
    /// it happens before the last level.
    pub fn projection_stable_from(&self, m: usize) -> Option<usize> {
        let row = self.projections_at(m);
        let last = row.last()?;
        let mut start = row.len() - 1;
        while start > 0 && row[start - 1].ideal == last.ideal {
            start -= 1;
        }
        (start + 1 < row.len()).then(|| row[start].n)
    }

    /// True iff `π_m(J_n) ⊋ π_m(J_n+1)` for every consecutive pair.
    pub fn projections_strictly_decreasing(&self, m: usize) -> bool {
        self.projections_non_increasing && self.projections_at(m).windows(2).all(|w| w[0].ideal != w[1].ideal)
    }
}
