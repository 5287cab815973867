//! Ideal engine: reduced Gröbner bases, normal forms, membership,
//! containment, elimination, saturation and radical membership.
//!
//! Everything runs in a polynomial ring. Laurent inputs are cleared with
//! [`Poly::laurent_clear`] first and then saturated by the invertible
//! variables, see [`Engine::laurent_contraction`].

mod cache;
mod engine;
mod order;

use std::fmt;
use std::sync::Arc;

use num_traits::One;

pub use cache::{cache_key, decode_entry, encode_entry, BasisCache, MemoryCache, FORMAT_VERSION};
pub use engine::Limits;
pub use order::{MonomialOrder, OrderKind};

use engine::{Cmp, IPoly, Term};
use order::{from_internal, to_internal};

use crate::error::{Error, Result};
use crate::exactpoly::{Poly, VarSpec};

/// Generators of an ideal in a polynomial ring (no invertible variables).
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<VarSpec>,
    gens: Vec<Poly>,
}

impl Ideal {
    pub fn new(ring: &Arc<VarSpec>, gens: Vec<Poly>) -> Result<Ideal> {
        if ring.has_invertible() {
            return Err(Error::precondition(format!(
                "ideals live in polynomial rings; {ring} has invertible variables"
            )));
        }
        for g in &gens {
            if g.spec() != ring {
                return Err(Error::RingMismatch(format!("generator {g} is not in {ring}")));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<VarSpec>, gens: &[S]) -> Result<Ideal> {
        let gens = gens
            .iter()
            .map(|s| Poly::parse(s.as_ref(), ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn zero(ring: &Arc<VarSpec>) -> Result<Ideal> {
        Ideal::new(ring, vec![])
    }

    pub fn unit(ring: &Arc<VarSpec>) -> Result<Ideal> {
        Ideal::new(ring, vec![Poly::one(ring)])
    }

    pub fn ring(&self) -> &Arc<VarSpec> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// True when there are no (nonzero) generators.
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generator(&self, g: Poly) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.push(g);
        Ideal::new(&self.ring, gens)
    }

    /// Generators are all pairwise products.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// The same generators read in a larger (or reordered) ring.
    pub fn embed(&self, ring: &Arc<VarSpec>) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.embed(ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn gen_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl serde::Serialize for Ideal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.gens.iter())
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

/// A reduced Gröbner basis: monic, no leading monomial divides another's
/// term, sorted by increasing leading monomial. Unique for (ideal, order).
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Arc<VarSpec>,
    order: MonomialOrder,
    perm: Vec<usize>,
    cmp: Cmp,
    internal: Vec<IPoly>,
    basis: Vec<Poly>,
}

impl GroebnerBasis {
    fn from_internal(ring: &Arc<VarSpec>, order: &MonomialOrder, internal: Vec<IPoly>) -> Result<GroebnerBasis> {
        let perm = order.permutation(ring)?;
        let basis = internal.iter().map(|p| from_internal(p, &perm, ring)).collect();
        Ok(GroebnerBasis {
            ring: ring.clone(),
            order: order.clone(),
            cmp: order.cmp(),
            perm,
            internal,
            basis,
        })
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ring(&self) -> &Arc<VarSpec> {
        &self.ring
    }

    pub fn is_unit(&self) -> bool {
        self.internal.len() == 1 && self.internal[0].is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.internal.is_empty()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            gens: self.basis.clone(),
        }
    }

    /// Leading monomials of the basis in its order, as polynomials.
    pub fn leading_monomials(&self) -> Vec<Poly> {
        self.internal
            .iter()
            .map(|p| {
                let lead = IPoly {
                    terms: vec![Term {
                        coeff: One::one(),
                        ..p.lead().clone()
                    }],
                };
                from_internal(&lead, &self.perm, &self.ring)
            })
            .collect()
    }

    fn check(&self, p: &Poly) -> Result<()> {
        if p.spec() != &self.ring {
            return Err(Error::RingMismatch(format!("{p} is not in {}", self.ring)));
        }
        if p.has_negative_exponents() {
            return Err(Error::precondition("normal forms need polynomial input"));
        }
        Ok(())
    }

    fn reducers(&self) -> Vec<&IPoly> {
        self.internal.iter().collect()
    }

    /// Remainder of `p` with no term divisible by a leading monomial.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.check(p)?;
        let ip = to_internal(p, &self.perm, self.cmp);
        let r = engine::reduce(&ip, &self.reducers(), self.cmp, None);
        Ok(from_internal(&r, &self.perm, &self.ring))
    }

    /// `(r, q)` with `p = Σ q[i]·basis[i] + r` and `r` the normal form.
    pub fn normal_form_with_cofactors(&self, p: &Poly) -> Result<(Poly, Vec<Poly>)> {
        self.check(p)?;
        let ip = to_internal(p, &self.perm, self.cmp);
        let mut cof: Vec<Vec<Term>> = vec![Vec::new(); self.internal.len()];
        let r = engine::reduce(&ip, &self.reducers(), self.cmp, Some(&mut cof));
        let q = cof
            .into_iter()
            .map(|terms| from_internal(&IPoly::from_terms(terms, self.cmp), &self.perm, &self.ring))
            .collect();
        Ok((from_internal(&r, &self.perm, &self.ring), q))
    }

    pub fn contains_poly(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroebnerBasis[{}]{:?}", self.order, self.basis)
    }
}

/// Entry point for every ideal computation; carries resource limits and an
/// optional basis cache. Cheap to clone.
#[derive(Clone, Default)]
pub struct Engine {
    limits: Limits,
    cache: Option<Arc<dyn BasisCache>>,
}

impl fmt::Debug for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine")
            .field("limits", &self.limits)
            .field("cache", &self.cache.is_some())
            .finish()
    }
}

impl Engine {
    pub fn new(limits: Limits) -> Engine {
        Engine { limits, cache: None }
    }

    pub fn with_cache(mut self, cache: Arc<dyn BasisCache>) -> Engine {
        self.cache = Some(cache);
        self
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Reduced Gröbner basis of `ideal` for `order`.
    pub fn buchberger(&self, ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
        let ring = ideal.ring();
        let perm = order.permutation(ring)?;
        let key = self.cache.as_ref().map(|_| cache_key(ring, order, ideal.gens()));
        if let (Some(cache), Some(key)) = (&self.cache, &key) {
            if let Some(entry) = cache.load(key) {
                match decode_entry(&entry, ring, order) {
                    Some(polys) => {
                        let internal = polys.iter().map(|p| to_internal(p, &perm, order.cmp())).collect();
                        return GroebnerBasis::from_internal(ring, order, internal);
                    }
                    None => log::warn!("ignoring corrupt basis cache entry"),
                }
            }
        }
        let cmp = order.cmp();
        let gens: Vec<IPoly> = ideal.gens().iter().map(|g| to_internal(g, &perm, cmp)).collect();
        let internal = engine::buchberger(gens, cmp, &self.limits)?;
        let gb = GroebnerBasis::from_internal(ring, order, internal)?;
        if let (Some(cache), Some(key)) = (&self.cache, &key) {
            cache.store(key, &encode_entry(ring, order, gb.basis()));
        }
        Ok(gb)
    }

    /// Reduced basis in grevlex on the declared variable sequence.
    pub fn groebner(&self, ideal: &Ideal) -> Result<GroebnerBasis> {
        self.buchberger(ideal, &MonomialOrder::grevlex(ideal.ring()))
    }

    pub fn normal_form(&self, p: &Poly, gb: &GroebnerBasis) -> Result<Poly> {
        gb.normal_form(p)
    }

    pub fn member(&self, p: &Poly, ideal: &Ideal) -> Result<bool> {
        self.groebner(ideal)?.contains_poly(p)
    }

    /// `big ⊇ small`.
    pub fn contains(&self, big: &Ideal, small: &Ideal) -> Result<bool> {
        big.check(small)?;
        let gb = self.groebner(big)?;
        contains_all(&gb, small)
    }

    pub fn equal(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        a.check(b)?;
        Ok(self.groebner(a)?.basis() == self.groebner(b)?.basis())
    }

    pub fn is_unit(&self, ideal: &Ideal) -> Result<bool> {
        Ok(self.groebner(ideal)?.is_unit())
    }

    /// The ideal generated by its own reduced grevlex basis.
    pub fn reduce(&self, ideal: &Ideal) -> Result<Ideal> {
        Ok(self.groebner(ideal)?.ideal())
    }

    /// `I ∩ k[remaining variables]`, returned over the smaller ring.
    pub fn eliminate(&self, ideal: &Ideal, drop: &[String]) -> Result<Ideal> {
        let ring = ideal.ring();
        for d in drop {
            if ring.index(d).is_none() {
                return Err(Error::precondition(format!("cannot eliminate unknown variable `{d}`")));
            }
        }
        let order = MonomialOrder::elimination(ring, drop);
        let gb = self.buchberger(ideal, &order)?;
        let dropped: Vec<usize> = drop.iter().map(|d| ring.index(d).unwrap()).collect();
        let target = ring.remove(drop).shared();
        let kept = gb
            .basis()
            .iter()
            .filter(|g| dropped.iter().all(|&i| g.max_exponent(i).unwrap_or(0) == 0))
            .map(|g| g.embed(&target))
            .collect::<Result<Vec<_>>>()?;
        let out = Ideal::new(&target, kept)?;
        if drop.is_empty() {
            return Ok(out);
        }
        self.reduce(&out)
    }

    /// `(I : f^∞)`, computed as `(I, u·f − 1) ∩ k[ring]` for a fresh `u`.
    pub fn saturate(&self, ideal: &Ideal, f: &Poly) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::precondition("cannot saturate by zero"));
        }
        let ring = ideal.ring();
        if f.spec() != ring {
            return Err(Error::RingMismatch(format!("{f} is not in {ring}")));
        }
        let (ext, u) = ring.extend_fresh("u");
        let ext = ext.shared();
        let rab = &(&Poly::var(&ext, &u)? * &f.embed(&ext)?) - &Poly::one(&ext);
        let big = ideal.embed(&ext)?.with_generator(rab)?;
        let out = self.eliminate(&big, &[u])?;
        out.embed(ring)
    }

    /// `f ∈ √I`, by the Rabinowitsch criterion `1 ∈ (I, u·f − 1)`.
    pub fn radical_member(&self, f: &Poly, ideal: &Ideal) -> Result<bool> {
        let ring = ideal.ring();
        if f.spec() != ring {
            return Err(Error::RingMismatch(format!("{f} is not in {ring}")));
        }
        let (ext, u) = ring.extend_fresh("u");
        let ext = ext.shared();
        let rab = &(&Poly::var(&ext, &u)? * &f.embed(&ext)?) - &Poly::one(&ext);
        let big = ideal.embed(&ext)?.with_generator(rab)?;
        self.is_unit(&big)
    }

    /// `I ∩ J` via `(u·I + (1 − u)·J) ∩ k[ring]`.
    pub fn intersect(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        a.check(b)?;
        let ring = a.ring();
        let (ext, u) = ring.extend_fresh("u");
        let ext = ext.shared();
        let uv = Poly::var(&ext, &u)?;
        let one_minus = &Poly::one(&ext) - &uv;
        let mut gens = Vec::new();
        for g in a.gens() {
            gens.push(&uv * &g.embed(&ext)?);
        }
        for g in b.gens() {
            gens.push(&one_minus * &g.embed(&ext)?);
        }
        let out = self.eliminate(&Ideal::new(&ext, gens)?, &[u])?;
        out.embed(ring)
    }

    /// `I^n`, reduced after every multiplication.
    pub fn power(&self, ideal: &Ideal, n: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(ideal.ring())?;
        for _ in 0..n {
            acc = self.reduce(&acc.product(ideal)?)?;
        }
        Ok(acc)
    }

    /// Contraction of the Laurent ideal generated by `gens` to the
    /// polynomial model ring: clear denominators, then saturate by the
    /// product of the invertible variables.
    pub fn laurent_contraction(&self, gens: &[Poly]) -> Result<Ideal> {
        let spec = match gens.first() {
            Some(g) => g.spec().clone(),
            None => return Err(Error::precondition("no generators")),
        };
        let model = spec.without_inverses().shared();
        let mut cleared = Vec::with_capacity(gens.len());
        for g in gens {
            if g.spec() != &spec {
                return Err(Error::RingMismatch(format!("{g} is not in {spec}")));
            }
            let (q, _) = g.laurent_clear();
            cleared.push(q.embed(&model)?);
        }
        let ideal = Ideal::new(&model, cleared)?;
        let mut unit = Poly::one(&model);
        for i in spec.invertible_indices() {
            unit = &unit * &Poly::var(&model, spec.name(i))?;
        }
        if unit.is_constant() {
            return self.reduce(&ideal);
        }
        self.saturate(&ideal, &unit)
    }
}

pub(crate) fn contains_all(gb: &GroebnerBasis, small: &Ideal) -> Result<bool> {
    for g in small.gens() {
        if !gb.contains_poly(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[&str]) -> Arc<VarSpec> {
        VarSpec::polynomial(names).unwrap().shared()
    }

    fn ideal(r: &Arc<VarSpec>, gens: &[&str]) -> Ideal {
        Ideal::parse(r, gens).unwrap()
    }

    fn basis_strings(gb: &GroebnerBasis) -> Vec<String> {
        gb.basis().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn lex_basis_of_circle_and_diagonal() {
        let r = ring(&["x", "y"]);
        let e = Engine::default();
        let gb = e
            .buchberger(&ideal(&r, &["x^2 + y^2 - 1", "x - y"]), &MonomialOrder::lex(&r))
            .unwrap();
        assert_eq!(basis_strings(&gb), vec!["y^2 - 1/2", "x - y"]);
    }

    #[test]
    fn trivial_bases() {
        let r = ring(&["x"]);
        let e = Engine::default();
        assert!(e.groebner(&Ideal::zero(&r).unwrap()).unwrap().is_zero());
        assert_eq!(
            basis_strings(&e.groebner(&ideal(&r, &["x^2", "x"])).unwrap()),
            vec!["x"]
        );
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y", "t"]);
        let e = Engine::default();
        let p = |s: &str| Poly::parse(s, &r).unwrap();
        let g = e.groebner(&ideal(&r, &["x^2 - y"])).unwrap();
        assert_eq!(g.normal_form(&p("x^2")).unwrap(), p("y"));
        let z = e.groebner(&Ideal::zero(&r).unwrap()).unwrap();
        assert_eq!(z.normal_form(&p("x*y + 3")).unwrap(), p("x*y + 3"));
        let g = e.groebner(&ideal(&r, &["x*y + t", "t^2"])).unwrap();
        assert!(g.normal_form(&p("x*y + t")).unwrap().is_zero());
    }

    #[test]
    fn containment_examples() {
        let r = ring(&["x", "y"]);
        let e = Engine::default();
        assert!(e.contains(&ideal(&r, &["x"]), &ideal(&r, &["x^2*y"])).unwrap());
        assert!(!e.contains(&ideal(&r, &["x^2*y^2"]), &ideal(&r, &["x*y^3"])).unwrap());
        let m = ideal(&r, &["x", "y"]);
        assert!(e.contains(&m, &e.power(&m, 2).unwrap()).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let r = ring(&["u", "x", "y"]);
        let e = Engine::default();
        let out = e.eliminate(&ideal(&r, &["u*x - 1", "y - u"]), &["u".into()]).unwrap();
        assert_eq!(out.gen_strings(), vec!["x*y - 1"]);
        assert_eq!(out.ring().names(), &["x", "y"]);

        let r = ring(&["x", "t"]);
        let out = e.eliminate(&ideal(&r, &["x - t"]), &[]).unwrap();
        assert_eq!(out.gen_strings(), vec!["x - t"]);
        let out = e.eliminate(&ideal(&r, &["x"]), &["x".into()]).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn saturation_examples() {
        let r = ring(&["x", "y", "t"]);
        let e = Engine::default();
        let x = Poly::var(&r, "x").unwrap();
        let sat = e.saturate(&ideal(&r, &["x*y", "x*t"]), &x).unwrap();
        assert!(e.equal(&sat, &ideal(&r, &["y", "t"])).unwrap());
        let sat = e.saturate(&ideal(&r, &["y"]), &x).unwrap();
        assert!(e.equal(&sat, &ideal(&r, &["y"])).unwrap());
        let sat = e.saturate(&ideal(&r, &["x^2"]), &x).unwrap();
        assert!(e.is_unit(&sat).unwrap());
        assert!(e.saturate(&ideal(&r, &["x"]), &Poly::zero(&r)).is_err());
    }

    #[test]
    fn radical_membership_examples() {
        let r = ring(&["x", "y"]);
        let e = Engine::default();
        let p = |s: &str| Poly::parse(s, &r).unwrap();
        assert!(e.radical_member(&p("x"), &ideal(&r, &["x^2"])).unwrap());
        assert!(!e.radical_member(&p("y"), &ideal(&r, &["x^2"])).unwrap());
        assert!(e.radical_member(&p("x + y"), &ideal(&r, &["x^2", "y^3"])).unwrap());
    }

    #[test]
    fn intersection_of_coordinate_axes() {
        let r = ring(&["x", "y"]);
        let e = Engine::default();
        let i = e.intersect(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
        assert_eq!(i.gen_strings(), vec!["x*y"]);
    }

    #[test]
    fn laurent_ring_is_rejected() {
        let r = VarSpec::new(&["x"], &["x"], None).unwrap().shared();
        assert!(Ideal::zero(&r).is_err());
    }

    #[test]
    fn cached_engine_reuses_entries() {
        let r = ring(&["x", "y"]);
        let cache = MemoryCache::new();
        let e = Engine::default().with_cache(cache.clone());
        let i = ideal(&r, &["x^2 + y^2 - 1", "x - y"]);
        let a = e.groebner(&i).unwrap();
        assert_eq!(cache.len(), 1);
        let b = e.groebner(&i).unwrap();
        assert_eq!(a.basis(), b.basis());
    }
}
