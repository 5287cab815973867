//! Dense-exponent internal representation and the Buchberger loop.
//!
//! Polynomials are vectors of terms sorted strictly descending in the active
//! monomial order; exponent vectors are already permuted into the order's
//! variable sequence so comparisons never consult names.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Resource, Result};
use crate::exactpoly::Rat;

pub(crate) type Exp = SmallVec<[u32; 8]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Cmp {
    Lex,
    Grevlex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    Block(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub exp: Exp,
    pub deg: u32,
    pub coeff: Rat,
}

fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Cmp {
    pub fn cmp(self, a: &Term, b: &Term) -> Ordering {
        self.cmp_exp(&a.exp, a.deg, &b.exp, b.deg)
    }

    pub fn cmp_exp(self, a: &[u32], da: u32, b: &[u32], db: u32) -> Ordering {
        match self {
            Cmp::Lex => a.cmp(b),
            Cmp::Grevlex => da.cmp(&db).then_with(|| revlex(a, b)),
            Cmp::Block(k) => {
                let (a1, a2) = a.split_at(k);
                let (b1, b2) = b.split_at(k);
                let d1a: u32 = a1.iter().sum();
                let d1b: u32 = b1.iter().sum();
                d1a.cmp(&d1b)
                    .then_with(|| revlex(a1, b1))
                    .then_with(|| (da - d1a).cmp(&(db - d1b)))
                    .then_with(|| revlex(a2, b2))
            }
        }
    }
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn exp_sub(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn exp_add(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Sparse polynomial, terms strictly descending, nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct IPoly {
    pub terms: Vec<Term>,
}

impl IPoly {
    pub fn from_terms(mut terms: Vec<Term>, cmp: Cmp) -> IPoly {
        terms.retain(|t| !t.coeff.is_zero());
        terms.sort_by(|a, b| cmp.cmp(b, a));
        // merge duplicates
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.exp == t.exp => {
                    last.coeff += t.coeff;
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        IPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].deg == 0
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.deg).max().unwrap_or(0)
    }

    pub fn make_monic(&mut self) {
        if let Some(t) = self.terms.first() {
            if !t.coeff.is_one() {
                let inv = t.coeff.recip();
                for t in &mut self.terms {
                    t.coeff *= &inv;
                }
            }
        }
    }

    pub fn mul_term(&self, c: &Rat, m: &[u32]) -> IPoly {
        let md = degree(m);
        IPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exp: exp_add(&t.exp, m),
                    deg: t.deg + md,
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }
}

/// `p − c·x^m·g`, both inputs descending; the result is descending.
fn sub_mul(p: &[Term], c: &Rat, m: &[u32], g: &[Term], cmp: Cmp) -> Vec<Term> {
    let md = degree(m);
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let mut pending: Option<Term> = None;
    while i < p.len() || j < g.len() || pending.is_some() {
        if j < g.len() && pending.is_none() {
            let t = &g[j];
            pending = Some(Term {
                exp: exp_add(&t.exp, m),
                deg: t.deg + md,
                coeff: -(&t.coeff * c),
            });
            j += 1;
        }
        match (p.get(i), pending.as_ref()) {
            (Some(a), Some(b)) => match cmp.cmp(a, b) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => out.push(pending.take().unwrap()),
                Ordering::Equal => {
                    let mut t = pending.take().unwrap();
                    t.coeff += &a.coeff;
                    if !t.coeff.is_zero() {
                        out.push(t);
                    }
                    i += 1;
                }
            },
            (Some(a), None) => {
                out.push(a.clone());
                i += 1;
            }
            (None, Some(_)) => out.push(pending.take().unwrap()),
            (None, None) => break,
        }
    }
    out
}

fn find_divisor(t: &Term, basis: &[&IPoly]) -> Option<usize> {
    basis
        .iter()
        .position(|g| g.terms[0].deg <= t.deg && divides(&g.terms[0].exp, &t.exp))
}

/// Full reduction of `p` by a set of monic polynomials. When `cofactors` is
/// given, `p = Σ cofactors[i]·basis[i] + remainder` on return.
pub(crate) fn reduce(p: &IPoly, basis: &[&IPoly], cmp: Cmp, mut cofactors: Option<&mut Vec<Vec<Term>>>) -> IPoly {
    let mut cur: Vec<Term> = p.terms.clone();
    let mut start = 0;
    let mut rem = Vec::new();
    while start < cur.len() {
        match find_divisor(&cur[start], basis) {
            Some(gi) => {
                let g = basis[gi];
                let lead = &cur[start];
                let m = exp_sub(&lead.exp, &g.terms[0].exp);
                let c = &lead.coeff / &g.terms[0].coeff;
                if let Some(cf) = cofactors.as_deref_mut() {
                    cf[gi].push(Term {
                        deg: degree(&m),
                        exp: m.clone(),
                        coeff: c.clone(),
                    });
                }
                cur = sub_mul(&cur[start + 1..], &c, &m, &g.terms[1..], cmp);
                start = 0;
            }
            None => {
                rem.push(std::mem::replace(
                    &mut cur[start],
                    Term {
                        exp: Exp::new(),
                        deg: 0,
                        coeff: Rat::zero(),
                    },
                ));
                start += 1;
            }
        }
    }
    IPoly { terms: rem }
}

fn spoly(f: &IPoly, g: &IPoly, cmp: Cmp) -> IPoly {
    let l = lcm(&f.terms[0].exp, &g.terms[0].exp);
    let mf = exp_sub(&l, &f.terms[0].exp);
    let mg = exp_sub(&l, &g.terms[0].exp);
    let cf = g.terms[0].coeff.clone();
    let cg = f.terms[0].coeff.clone();
    let a = f.mul_term(&cf, &mf);
    IPoly {
        terms: sub_mul(&a.terms[1..], &cg, &mg, &g.terms[1..], cmp),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest total degree any intermediate basis element may reach.
    pub max_degree: u32,
    /// Largest number of S-pairs reduced in one basis computation.
    pub max_spairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 40,
            max_spairs: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
    deg: u32,
}

/// Gebauer–Möller pair update: installs `h` (index `hi`) into the basis,
/// dropping pairs by the coprime and chain criteria.
fn update(basis: &[IPoly], active: &mut [bool], pairs: &mut Vec<Pair>, hi: usize) {
    let lh = &basis[hi].terms[0].exp;
    let mut c: Vec<(usize, Exp, bool)> = Vec::new();
    for g in 0..hi {
        if !active[g] {
            continue;
        }
        let lg = &basis[g].terms[0].exp;
        c.push((g, lcm(lh, lg), coprime(lh, lg)));
    }
    // chain criterion among the new pairs
    let mut d: Vec<(usize, Exp, bool)> = Vec::new();
    for k in 0..c.len() {
        let (g1, ref l1, cop) = c[k];
        let dominated =
            !cop && (c[k + 1..].iter().any(|(_, l2, _)| divides(l2, l1)) || d.iter().any(|(_, l2, _)| divides(l2, l1)));
        if !dominated {
            d.push((g1, l1.clone(), cop));
        }
    }
    // drop the coprime ones (product criterion)
    let e: Vec<Pair> = d
        .into_iter()
        .filter(|(_, _, cop)| !cop)
        .map(|(g, l, _)| Pair {
            i: g,
            j: hi,
            deg: degree(&l),
            lcm: l,
        })
        .collect();
    // old pairs whose lcm is strictly divisible through h
    pairs.retain(|p| {
        if !divides(lh, &p.lcm) {
            return true;
        }
        let l1 = lcm(&basis[p.i].terms[0].exp, lh);
        let l2 = lcm(&basis[p.j].terms[0].exp, lh);
        l1 == p.lcm || l2 == p.lcm
    });
    pairs.extend(e);
    for g in 0..hi {
        if active[g] && divides(lh, &basis[g].terms[0].exp) {
            active[g] = false;
        }
    }
    active[hi] = true;
}

fn take_min_pair(pairs: &mut Vec<Pair>, cmp: Cmp) -> Option<Pair> {
    if pairs.is_empty() {
        return None;
    }
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k], &pairs[best]);
        let o = cmp
            .cmp_exp(&a.lcm, a.deg, &b.lcm, b.deg)
            .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
        if o == Ordering::Less {
            best = k;
        }
    }
    Some(pairs.swap_remove(best))
}

fn check_degree(p: &IPoly, limits: &Limits) -> Result<()> {
    if p.max_degree() > limits.max_degree {
        return Err(Error::ResourceCap {
            resource: Resource::Degree,
            limit: limits.max_degree as usize,
        });
    }
    Ok(())
}

/// Reduced Gröbner basis of the ideal spanned by `gens`, sorted by
/// increasing leading monomial, every element monic.
pub(crate) fn buchberger(gens: Vec<IPoly>, cmp: Cmp, limits: &Limits) -> Result<Vec<IPoly>> {
    let mut input: Vec<IPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    for g in &mut input {
        check_degree(g, limits)?;
        g.make_monic();
        if g.is_constant() {
            return Ok(vec![g.clone()]);
        }
    }
    input.sort_by(|a, b| cmp.cmp(&a.terms[0], &b.terms[0]));

    let mut basis: Vec<IPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let insert = |h: IPoly, basis: &mut Vec<IPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>| {
        basis.push(h);
        active.push(false);
        let hi = basis.len() - 1;
        update(basis, active, pairs, hi);
    };

    for g in input {
        let reducers: Vec<&IPoly> = basis.iter().zip(&active).filter(|(_, a)| **a).map(|(g, _)| g).collect();
        let mut h = reduce(&g, &reducers, cmp, None);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.is_constant() {
            return Ok(vec![h]);
        }
        insert(h, &mut basis, &mut active, &mut pairs);
    }

    let mut processed = 0usize;
    while let Some(pair) = take_min_pair(&mut pairs, cmp) {
        processed += 1;
        if processed > limits.max_spairs {
            return Err(Error::ResourceCap {
                resource: Resource::SPairs,
                limit: limits.max_spairs,
            });
        }
        let s = spoly(&basis[pair.i], &basis[pair.j], cmp);
        if s.is_zero() {
            continue;
        }
        let reducers: Vec<&IPoly> = basis.iter().zip(&active).filter(|(_, a)| **a).map(|(g, _)| g).collect();
        let mut h = reduce(&s, &reducers, cmp, None);
        if h.is_zero() {
            continue;
        }
        check_degree(&h, limits)?;
        h.make_monic();
        if h.is_constant() {
            return Ok(vec![h]);
        }
        log::trace!(
            "new basis element #{} with {} terms after {} pairs",
            basis.len(),
            h.terms.len(),
            processed
        );
        insert(h, &mut basis, &mut active, &mut pairs);
    }

    let mut minimal: Vec<IPoly> = basis
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(g, _)| g)
        .collect();
    minimal.sort_by(|a, b| cmp.cmp(&a.terms[0], &b.terms[0]));
    // interreduce tails; leading terms are pairwise non-divisible already
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&IPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, g)| g)
            .collect();
        let g = &minimal[k];
        let tail = IPoly {
            terms: g.terms[1..].to_vec(),
        };
        let mut r = reduce(&tail, &others, cmp, None);
        r.terms.insert(0, g.terms[0].clone());
        out.push(r);
    }
    Ok(out)
}
