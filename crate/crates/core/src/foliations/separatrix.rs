use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::field::{Field, RatFunc};
use super::{check_integrability, line_validation, OneForm, PfaffForm};
use crate::error::{Error, Result};
use crate::exactpoly::{rat, Mono, Poly, Rat, VarSpec};

const AXES: [&str; 3] = ["x", "y", "z"];

type Exp3 = [u32; 3];

/// Power series in three variables over `F`, truncated below total degree
/// `limit`.
#[derive(Clone, Debug, PartialEq)]
struct Jet<F> {
    terms: BTreeMap<Exp3, F>,
    limit: u32,
}

fn deg(e: &Exp3) -> u32 {
    e[0] + e[1] + e[2]
}

impl<F: Field> Jet<F> {
    fn zero(limit: u32) -> Jet<F> {
        Jet {
            terms: BTreeMap::new(),
            limit,
        }
    }

    fn constant(c: F, limit: u32) -> Jet<F> {
        let mut j = Jet::zero(limit);
        j.push([0, 0, 0], c);
        j
    }

    fn push(&mut self, e: Exp3, c: F) {
        if deg(&e) >= self.limit || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn var(i: usize, limit: u32) -> Jet<F> {
        let mut e = [0; 3];
        e[i] = 1;
        let mut j = Jet::zero(limit);
        j.push(e, F::one());
        j
    }

    fn add(&self, o: &Jet<F>) -> Jet<F> {
        let mut out = Jet {
            terms: self.terms.clone(),
            limit: self.limit.min(o.limit),
        };
        out.terms.retain(|e, _| deg(e) < out.limit);
        for (e, c) in &o.terms {
            out.push(*e, c.clone());
        }
        out
    }

    fn neg(&self) -> Jet<F> {
        Jet {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
            limit: self.limit,
        }
    }

    fn scale(&self, c: &F) -> Jet<F> {
        let mut out = Jet::zero(self.limit);
        for (e, a) in &self.terms {
            out.push(*e, a.mul(c));
        }
        out
    }

    fn mul(&self, o: &Jet<F>) -> Jet<F> {
        let mut out = Jet::zero(self.limit.min(o.limit));
        for (ea, a) in &self.terms {
            for (eb, b) in &o.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                if deg(&e) < out.limit {
                    out.push(e, a.mul(b));
                }
            }
        }
        out
    }

    fn constant_term(&self) -> F {
        self.terms.get(&[0, 0, 0]).cloned().unwrap_or_else(F::zero)
    }

    fn homogeneous(&self, d: u32) -> Jet<F> {
        Jet {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| deg(e) == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            limit: self.limit,
        }
    }

    fn derivative(&self, i: usize) -> Jet<F> {
        let mut out = Jet::zero(self.limit);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = *e;
                e2[i] -= 1;
                out.push(e2, c.mul(&F::from_rat(&rat(e[i] as i64))));
            }
        }
        out
    }

    /// `1/self` for a series with nonzero constant term.
    fn inverse(&self) -> Jet<F> {
        let c0 = self.constant_term();
        let inv0 = F::one().div(&c0);
        // self = c0·(1 + u) with u without constant term.
        let mut u = self.scale(&inv0);
        u.terms.remove(&[0, 0, 0]);
        let mut acc = Jet::constant(F::one(), self.limit);
        let mut pow = Jet::constant(F::one(), self.limit);
        let neg_u = u.neg();
        for _ in 1..self.limit {
            pow = pow.mul(&neg_u);
            if pow.terms.is_empty() {
                break;
            }
            acc = acc.add(&pow);
        }
        acc.scale(&inv0)
    }

    fn with_limit(&self, limit: u32) -> Jet<F> {
        Jet {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| deg(e) < limit)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            limit,
        }
    }

    /// Replaces variable `a` by `phi` (which must not involve `a` and have
    /// no constant term).
    fn substitute(&self, a: usize, phi: &Jet<F>, limit: u32) -> Jet<F> {
        let phi = phi.with_limit(limit);
        let mut powers = vec![Jet::constant(F::one(), limit)];
        let mut out = Jet::zero(limit);
        for (e, c) in &self.terms {
            while powers.len() <= e[a] as usize {
                let next = powers.last().unwrap().mul(&phi);
                powers.push(next);
            }
            let mut rest = *e;
            rest[a] = 0;
            if deg(&rest) >= limit {
                continue;
            }
            for (pe, pc) in &powers[e[a] as usize].terms {
                let t = [rest[0] + pe[0], rest[1] + pe[1], rest[2] + pe[2]];
                out.push(t, c.mul(pc));
            }
        }
        out
    }

    /// `p(base + X)` as a series in the centered coordinates `X`.
    fn centered(p: &Poly, base: &[F; 3], limit: u32) -> Jet<F> {
        let shifted: Vec<Jet<F>> = (0..3)
            .map(|i| Jet::constant(base[i].clone(), limit).add(&Jet::var(i, limit)))
            .collect();
        let mut out = Jet::zero(limit);
        for (m, c) in p.terms() {
            let mut t = Jet::constant(F::from_rat(c), limit);
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&shifted[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }
}

/// Graph coordinates for an axis: the two remaining variables in order.
fn graph_coords(axis: usize) -> (usize, usize) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Axis `a` with `ω_a(p) ≠ 0`, preferring z, then y, then x.
fn pick_axis<F: Field>(values: &[F; 3]) -> Option<usize> {
    [2, 1, 0].into_iter().find(|&i| !values[i].is_zero())
}

/// Solves `ω|{a = φ} = 0` order by order: `φ_b = −ω_b/ω_a`, `φ_c = −ω_c/ω_a`
/// along the graph, integrating each homogeneous piece with Euler's formula
/// after checking the cross derivatives agree.
fn solve<F: Field>(omega: &OneForm, base: &[F; 3], axis: usize, order: u32) -> Result<Jet<F>> {
    let (b, c) = graph_coords(axis);
    let limit = order.max(1);
    let w: Vec<Jet<F>> = omega.0.iter().map(|p| Jet::centered(p, base, limit)).collect();
    let mut phi: Jet<F> = Jet::zero(order + 1);
    for k in 1..=order {
        let on_graph: Vec<Jet<F>> = w.iter().map(|j| j.substitute(axis, &phi, k)).collect();
        let inv = on_graph[axis].inverse();
        let a_part = on_graph[b].mul(&inv).neg().homogeneous(k - 1);
        let b_part = on_graph[c].mul(&inv).neg().homogeneous(k - 1);
        let lhs = a_part.derivative(c);
        let rhs = b_part.derivative(b);
        if lhs.terms != rhs.terms {
            return Err(Error::Internal(format!(
                "cross derivatives disagree at order {k}; the form is not integrable near the point"
            )));
        }
        let kf = F::from_rat(&rat(k as i64));
        let step = Jet::var(b, order + 1)
            .mul(&a_part.with_limit(order + 1))
            .add(&Jet::var(c, order + 1).mul(&b_part.with_limit(order + 1)))
            .scale(&F::one().div(&kf));
        phi = phi.add(&step);
    }
    Ok(phi)
}

fn ser_axis<S: Serializer>(a: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(AXES[*a])
}

/// Jet of the smooth separatrix through `base_point`, as the graph
/// `axis = φ(other two)` in coordinates centered at the point.
#[derive(Clone, Debug, Serialize)]
pub struct SeparatrixJet {
    #[serde(serialize_with = "super::ser_rats")]
    pub base_point: [Rat; 3],
    #[serde(serialize_with = "ser_axis")]
    pub graph_axis: usize,
    pub phi: Poly,
    pub order: u32,
}

impl SeparatrixJet {
    /// Substitutes the centered graph into `ω` with ordinary polynomial
    /// arithmetic and returns the two components of the pulled-back form
    /// below degree `order`. Both vanish for a correct jet.
    pub fn residual(&self, omega: &OneForm) -> Result<[Poly; 2]> {
        let ring = self.phi.spec().clone();
        let mut centered = Vec::with_capacity(3);
        for p in &omega.0 {
            let mut q = p.embed(&ring)?;
            for i in 0..3 {
                let shift = &Poly::var_index(&ring, i, 1) + &Poly::constant(&ring, self.base_point[i].clone());
                q = q.substitute(i, &shift)?;
            }
            centered.push(q.substitute(self.graph_axis, &self.phi)?);
        }
        let (b, c) = graph_coords(self.graph_axis);
        let r = &centered[self.graph_axis];
        let n = self.order as i64;
        let first = (&centered[b] + &(r * &self.phi.derivative(b))).truncate_degree(n);
        let second = (&centered[c] + &(r * &self.phi.derivative(c))).truncate_degree(n);
        Ok([first, second])
    }

    /// The separatrix as `axis − φ` in the centered coordinates.
    pub fn equation(&self) -> Poly {
        let ring = self.phi.spec();
        &Poly::var_index(ring, self.graph_axis, 1) - &self.phi
    }
}

fn jet_to_poly(j: &Jet<Rat>, ring: &Arc<VarSpec>) -> Poly {
    let terms = j
        .terms
        .iter()
        .map(|(e, c)| (Mono::from_exps(&[e[0] as i32, e[1] as i32, e[2] as i32]), c.clone()));
    Poly::from_terms(ring, terms).expect("nonnegative exponents")
}

/// Order-`N` jet of the unique smooth formal separatrix of an integrable
/// form at a nonsingular point.
pub fn smooth_separatrix(omega: &OneForm, p: &[Rat; 3], order: u32) -> Result<SeparatrixJet> {
    let integ = check_integrability(omega);
    if !integ.integrable {
        return Err(Error::precondition(format!(
            "form is not integrable, residual {}",
            integ.residual
        )));
    }
    let values: Vec<Rat> = omega.0.iter().map(|w| w.eval(p)).collect::<Result<_>>()?;
    let values: [Rat; 3] = values.try_into().unwrap();
    let axis = pick_axis(&values).ok_or_else(|| Error::precondition("singular point of the foliation"))?;
    let phi = solve(omega, p, axis, order)?;
    let ring = omega.ring().clone();
    let jet = SeparatrixJet {
        base_point: p.clone(),
        graph_axis: axis,
        phi: jet_to_poly(&phi, &ring),
        order,
    };
    let res = jet.residual(omega)?;
    if res.iter().any(|r| !r.is_zero()) {
        return Err(Error::Internal(format!("jet residual {} / {}", res[0], res[1])));
    }
    Ok(jet)
}

/// One coefficient of a family jet.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyTerm {
    pub monomial: String,
    #[serde(skip)]
    pub exps: [u32; 3],
    #[serde(serialize_with = "ser_display")]
    pub coeff: RatFunc,
}

fn ser_display<S: Serializer>(v: &RatFunc, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Separatrix jets along the punctured line `w ↦ w·direction`, with
/// coefficients in `ℚ(w)`.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyJet {
    #[serde(serialize_with = "super::ser_rats")]
    pub line: [Rat; 3],
    #[serde(serialize_with = "ser_axis")]
    pub graph_axis: usize,
    pub order: u32,
    pub coeffs: Vec<FamilyTerm>,
    /// `pole_profile[k − 1]`: largest pole order at `w = 0` among the
    /// coefficients of total degree `k`, for `k = 1..=N`.
    pub pole_profile: Vec<usize>,
}

impl FamilyJet {
    /// The pointwise jet at `w0·direction`, or `None` if `w0` hits a
    /// denominator.
    pub fn specialize(&self, w0: &Rat, ring: &Arc<VarSpec>) -> Option<Poly> {
        let mut terms = Vec::new();
        for t in &self.coeffs {
            let e = t.exps;
            terms.push((
                Mono::from_exps(&[e[0] as i32, e[1] as i32, e[2] as i32]),
                t.coeff.eval(w0)?,
            ));
        }
        Some(Poly::from_terms(ring, terms).expect("nonnegative exponents"))
    }

    pub fn pole_profile_non_decreasing(&self) -> bool {
        self.pole_profile.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Runs the jet solver at the generic point `w·direction` of a line through
/// the origin.
pub fn separatrix_family(omega: &PfaffForm, direction: &[Rat; 3], order: u32) -> Result<FamilyJet> {
    let lv = line_validation(omega, direction)?;
    if !lv.valid {
        return Err(Error::precondition(
            "the form vanishes identically along this line; choose another direction",
        ));
    }
    let form = omega.form();
    let integ = check_integrability(form);
    if !integ.integrable {
        return Err(Error::precondition("form is not integrable"));
    }
    let values: Vec<Rat> = form.0.iter().map(|w| w.eval(direction)).collect::<Result<_>>()?;
    let values: [Rat; 3] = values.try_into().unwrap();
    let axis = pick_axis(&values).expect("validated line");
    let base: [RatFunc; 3] = std::array::from_fn(|i| RatFunc::w().mul(&RatFunc::from_rat(&direction[i])));
    let phi = solve(form, &base, axis, order)?;
    let mut coeffs = Vec::new();
    let mut pole_profile = vec![0usize; order as usize];
    for (e, c) in &phi.terms {
        let k = deg(e) as usize;
        pole_profile[k - 1] = pole_profile[k - 1].max(c.pole_order());
        let mono = Mono::from_exps(&[e[0] as i32, e[1] as i32, e[2] as i32]);
        coeffs.push(FamilyTerm {
            monomial: crate::exactpoly::fmt_mono(form.ring(), &mono),
            exps: *e,
            coeff: c.clone(),
        });
    }
    Ok(FamilyJet {
        line: direction.clone(),
        graph_axis: axis,
        order,
        coeffs,
        pole_profile,
    })
}
