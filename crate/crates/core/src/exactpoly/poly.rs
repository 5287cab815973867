use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::rat::{fmt_magnitude, Rat};
use super::varspec::VarSpec;
use crate::error::{Error, Result};

/// Exponent vector indexed like the owning [`VarSpec`]. Ordered by
/// graded reverse lexicographic order on the declared variable sequence, so
/// `BTreeMap<Mono, _>` iterates from smallest to largest term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub(crate) SmallVec<[i32; 6]>);

impl Mono {
    pub fn one(nvars: usize) -> Mono {
        Mono(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exps(exps: &[i32]) -> Mono {
        Mono(SmallVec::from_slice(exps))
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Mono) -> Option<Mono> {
        let mut out = self.clone();
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b)?;
        }
        Some(out)
    }

    pub(crate) fn mul(&self, other: &Mono) -> Mono {
        self.checked_mul(other).expect("exponent overflow")
    }

    /// Exponentwise `self <= other`.
    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()).rev() {
            if a != b {
                // smaller exponent in the last differing variable is larger
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Exact multivariate (Laurent) polynomial over ℚ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    spec: Arc<VarSpec>,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(spec: &Arc<VarSpec>) -> Poly {
        Poly {
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(spec: &Arc<VarSpec>, c: Rat) -> Poly {
        Poly::monomial(spec, Mono::one(spec.len()), c)
    }

    pub fn one(spec: &Arc<VarSpec>) -> Poly {
        Poly::constant(spec, Rat::one())
    }

    pub fn monomial(spec: &Arc<VarSpec>, mono: Mono, c: Rat) -> Poly {
        debug_assert_eq!(mono.0.len(), spec.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly {
            spec: spec.clone(),
            terms,
        }
    }

    pub fn var(spec: &Arc<VarSpec>, name: &str) -> Result<Poly> {
        let i = spec
            .index(name)
            .ok_or_else(|| Error::precondition(format!("unknown variable `{name}`")))?;
        Ok(Poly::var_index(spec, i, 1))
    }

    pub(crate) fn var_index(spec: &Arc<VarSpec>, i: usize, exp: i32) -> Poly {
        let mut m = Mono::one(spec.len());
        m.0[i] = exp;
        Poly::monomial(spec, m, Rat::one())
    }

    /// Builds a polynomial from raw terms, merging duplicates and checking
    /// that negative exponents only sit on invertible variables.
    pub fn from_terms(spec: &Arc<VarSpec>, terms: impl IntoIterator<Item = (Mono, Rat)>) -> Result<Poly> {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            if m.0.len() != spec.len() {
                return Err(Error::RingMismatch(format!(
                    "exponent vector of length {} in {spec}",
                    m.0.len()
                )));
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e < 0 && !spec.is_invertible(i) {
                    return Err(Error::precondition(format!(
                        "negative exponent on non-invertible variable `{}`",
                        spec.name(i)
                    )));
                }
            }
            add_term(&mut out, m, c);
        }
        Ok(Poly {
            spec: spec.clone(),
            terms: out,
        })
    }

    pub(crate) fn from_map_unchecked(spec: &Arc<VarSpec>, terms: BTreeMap<Mono, Rat>) -> Poly {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Poly {
            spec: spec.clone(),
            terms,
        }
    }

    pub fn spec(&self) -> &Arc<VarSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from largest to smallest in grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, mono: &Mono) -> Rat {
        self.terms.get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_term(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Mono::one(self.spec.len()))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Largest total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn max_exponent(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn min_exponent(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[var]).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Mono::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| m.0.iter().any(|&e| e < 0))
    }

    pub fn filter(&self, mut keep: impl FnMut(&Mono) -> bool) -> Poly {
        Poly {
            spec: self.spec.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: i64) -> Poly {
        self.filter(|m| m.degree() == d)
    }

    /// Drops every term of total degree `>= n`.
    pub fn truncate_degree(&self, n: i64) -> Poly {
        self.filter(|m| m.degree() < n)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.spec);
        }
        Poly {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn mul_monomial(&self, mono: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.spec);
        }
        Poly {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect(),
        }
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::RingMismatch(format!("{} vs {}", self.spec, other.spec)));
        }
        Ok(())
    }

    /// Exact ring operation, refusing operands from different rings.
    pub fn arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly> {
        a.check_same(b)?;
        Ok(match op {
            ArithOp::Add => a.add_impl(b, false),
            ArithOp::Sub => a.add_impl(b, true),
            ArithOp::Mul => a.try_mul(b)?,
        })
    }

    fn add_impl(&self, other: &Poly, negate: bool) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let c = if negate { -c } else { c.clone() };
            add_term(&mut terms, m.clone(), c);
        }
        Poly {
            spec: self.spec.clone(),
            terms,
        }
    }

    fn try_mul(&self, other: &Poly) -> Result<Poly> {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb).ok_or(Error::Overflow)?;
                add_term(&mut terms, m, ca * cb);
            }
        }
        Ok(Poly {
            spec: self.spec.clone(),
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.spec);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] = e - 1;
            add_term(&mut terms, m2, c * Rat::from_integer(e.into()));
        }
        Poly {
            spec: self.spec.clone(),
            terms,
        }
    }

    /// Substitutes `value` for variable `var`. The variable must occur with
    /// nonnegative exponents only.
    pub fn substitute(&self, var: usize, value: &Poly) -> Result<Poly> {
        self.check_same(value)?;
        if self.min_exponent(var).is_some_and(|e| e < 0) {
            return Err(Error::precondition(format!(
                "cannot substitute for `{}` with negative exponents",
                self.spec.name(var)
            )));
        }
        let top = self.max_exponent(var).unwrap_or(0).max(0) as usize;
        let mut powers = vec![Poly::one(&self.spec)];
        for k in 1..=top {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        let mut out = Poly::zero(&self.spec);
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut rest = m.clone();
            rest.0[var] = 0;
            out = &out + &powers[e].mul_monomial(&rest, c);
        }
        Ok(out)
    }

    /// Rewrites the polynomial over `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<VarSpec>) -> Result<Poly> {
        if &self.spec == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.spec.len());
        for i in 0..self.spec.len() {
            map.push(target.index(self.spec.name(i)));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut out = Mono::one(target.len());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => out.0[j] = e,
                    None => {
                        return Err(Error::RingMismatch(format!(
                            "variable `{}` is not in {target}",
                            self.spec.name(i)
                        )))
                    }
                }
            }
            terms.push((out, c.clone()));
        }
        Poly::from_terms(target, terms)
    }

    /// `(q, m)` with `q = m·self` free of negative exponents and `m` the
    /// smallest monomial in the invertible variables achieving that.
    pub fn laurent_clear(&self) -> (Poly, Poly) {
        let mut shift = Mono::one(self.spec.len());
        for i in self.spec.invertible_indices() {
            if let Some(e) = self.min_exponent(i) {
                if e < 0 {
                    shift.0[i] = -e;
                }
            }
        }
        let q = self.mul_monomial(&shift, &Rat::one());
        (q, Poly::monomial(&self.spec, shift, Rat::one()))
    }

    /// Evaluates every variable at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.spec.len() {
            return Err(Error::RingMismatch(format!(
                "point of length {} in {}",
                point.len(),
                self.spec
            )));
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (&e, p) in m.0.iter().zip(point) {
                if e >= 0 {
                    t *= super::rat::pow(p, e as u32);
                } else if p.is_zero() {
                    return Err(Error::precondition("negative power of zero"));
                } else {
                    t /= super::rat::pow(p, (-e) as u32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub(crate) fn add_term(terms: &mut BTreeMap<Mono, Rat>, m: Mono, c: Rat) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::arith(self, rhs, ArithOp::Add).expect("ring mismatch in +")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::arith(self, rhs, ArithOp::Sub).expect("ring mismatch in -")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::arith(self, rhs, ArithOp::Mul).expect("ring mismatch or overflow in *")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

pub(crate) fn fmt_mono(spec: &VarSpec, m: &Mono) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(spec.name(i).to_string()),
            _ => parts.push(format!("{}^{}", spec.name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let body = fmt_mono(&self.spec, m);
            if body.is_empty() {
                f.write_str(&fmt_magnitude(c))?;
            } else if c.abs().is_one() {
                f.write_str(&body)?;
            } else {
                write!(f, "{}*{}", fmt_magnitude(c), body)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
