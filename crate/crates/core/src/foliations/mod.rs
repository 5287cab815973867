//! Pfaff forms on the projective plane and their formal separatrices.
//!
//! Forms are triples `(ω1, ω2, ω3)` of polynomials in `x, y, z`. A
//! [`PfaffForm`] additionally is homogeneous of degree `m` with
//! `x·ω1 + y·ω2 + z·ω3 = 0`.

mod darboux;
mod field;
mod separatrix;

use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rat, VarSpec};
use crate::groebner::{Engine, Ideal};

pub use darboux::{algebraic_solution_search, BranchReport, DarbouxFamily, DarbouxReport, MAX_SOLUTION_DEGREE};
pub use field::{Field, RatFunc, UPoly};
pub use separatrix::{separatrix_family, smooth_separatrix, FamilyJet, FamilyTerm, SeparatrixJet};

/// The ring `ℚ[x, y, z]` shared by every form.
pub fn plane_ring() -> Arc<VarSpec> {
    static RING: OnceLock<Arc<VarSpec>> = OnceLock::new();
    RING.get_or_init(|| VarSpec::polynomial(&["x", "y", "z"]).unwrap().shared())
        .clone()
}

/// `ω1 dx + ω2 dy + ω3 dz`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneForm(pub [Poly; 3]);

impl OneForm {
    pub fn new(w: [Poly; 3]) -> Result<OneForm> {
        let ring = w[0].spec();
        if w.iter().any(|p| p.spec() != ring) {
            return Err(Error::RingMismatch(
                "one-form components and f must share the ring x, y, z".into(),
            ));
        }
        if ring.len() != 3 || ring.invertible_indices().next().is_some() || ring.series_var().is_some() {
            return Err(Error::precondition(
                "one-forms live over a polynomial ring in three variables",
            ));
        }
        if w.iter().any(Poly::has_negative_exponents) {
            return Err(Error::precondition("one-form coefficients must be polynomials"));
        }
        Ok(OneForm(w))
    }

    pub fn ring(&self) -> &Arc<VarSpec> {
        self.0[0].spec()
    }

    /// Values of the coefficients at `p`.
    pub fn at(&self, p: &[Rat; 3]) -> Result<[Rat; 3]> {
        let v: Vec<Rat> = self.0.iter().map(|w| w.eval(p)).collect::<Result<_>>()?;
        Ok(v.try_into().unwrap())
    }
}

/// Validated Pfaff form of degree `m`.
#[derive(Clone, Debug, Serialize)]
pub struct PfaffForm {
    m: u32,
    form: OneForm,
}

impl PfaffForm {
    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn form(&self) -> &OneForm {
        &self.form
    }
}

/// `x·ω1 + y·ω2 + z·ω3`.
pub fn euler_residue(w: &OneForm) -> Poly {
    let r = w.ring();
    let mut acc = Poly::zero(r);
    for (i, wi) in w.0.iter().enumerate() {
        acc = &acc + &(&Poly::var_index(r, i, 1) * wi);
    }
    acc
}

pub fn make_pfaff(m: u32, w: [Poly; 3]) -> Result<PfaffForm> {
    let form = OneForm::new(w)?;
    for (i, wi) in form.0.iter().enumerate() {
        if !wi.is_zero() && (!wi.is_homogeneous() || wi.total_degree() != Some(m as i64)) {
            return Err(Error::precondition(format!(
                "ω{} = {wi} is not homogeneous of degree {m}",
                i + 1
            )));
        }
    }
    if form.0.iter().all(Poly::is_zero) {
        return Err(Error::precondition("the zero form is not a Pfaff form"));
    }
    let res = euler_residue(&form);
    if !res.is_zero() {
        return Err(Error::precondition(format!("Euler residue {res} is not zero")));
    }
    Ok(PfaffForm { m, form })
}

/// `(x^(m−1)z − y^m) dx + (y^(m−1)x − z^m) dy + (z^(m−1)y − x^m) dz`.
pub fn jouanolou_form(m: u32) -> Result<PfaffForm> {
    if m < 2 {
        return Err(Error::precondition("the Jouanolou form needs m ≥ 2"));
    }
    let r = plane_ring();
    let v = |i: usize, e: u32| Poly::var_index(&r, i, e as i32);
    let comp = |a: usize, b: usize, c: usize| &(&v(a, m - 1) * &v(c, 1)) - &v(b, m);
    make_pfaff(m, [comp(0, 1, 2), comp(1, 2, 0), comp(2, 0, 1)])
}

#[derive(Clone, Debug, Serialize)]
pub struct Integrability {
    pub integrable: bool,
    /// Coefficient of `dx∧dy∧dz` in `ω ∧ dω`.
    pub residual: Poly,
}

pub fn check_integrability(w: &OneForm) -> Integrability {
    let [p, q, r] = &w.0;
    let d = |f: &Poly, i: usize| f.derivative(i);
    let residual = &(&(p * &(&d(r, 1) - &d(q, 2))) + &(q * &(&d(p, 2) - &d(r, 0)))) + &(r * &(&d(q, 0) - &d(p, 1)));
    Integrability {
        integrable: residual.is_zero(),
        residual,
    }
}

/// Coefficients of `ω ∧ df` on `dx∧dy`, `dy∧dz`, `dx∧dz`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoForm {
    pub c_xy: Poly,
    pub c_yz: Poly,
    pub c_xz: Poly,
}

impl TwoForm {
    pub fn components(&self) -> [&Poly; 3] {
        [&self.c_xy, &self.c_yz, &self.c_xz]
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }
}

pub fn omega_wedge_df(w: &OneForm, f: &Poly) -> Result<TwoForm> {
    if f.spec() != w.ring() {
        return Err(Error::RingMismatch(
            "one-form components and f must share the ring x, y, z".into(),
        ));
    }
    let [w1, w2, w3] = &w.0;
    let (fx, fy, fz) = (f.derivative(0), f.derivative(1), f.derivative(2));
    Ok(TwoForm {
        c_xy: &(w1 * &fy) - &(w2 * &fx),
        c_yz: &(w2 * &fz) - &(w3 * &fy),
        c_xz: &(w1 * &fz) - &(w3 * &fx),
    })
}

/// Whether `f` divides every component of `ω ∧ df` modulo terms of total
/// degree `≥ N`, i.e. membership in `(f) + (x, y, z)^N`.
pub fn is_formal_separatrix(w: &OneForm, f: &Poly, order: u32) -> Result<bool> {
    let f = f.truncate_degree(order as i64);
    if f.is_zero() {
        return Err(Error::precondition("f vanishes modulo the truncation"));
    }
    let wedge = omega_wedge_df(w, &f)?;
    if wedge.is_zero() {
        return Ok(true);
    }
    let r = w.ring();
    let engine = Engine::default();
    let ideal = Ideal::new(r, vec![f])?.sum(&engine.power(&Ideal::new(r, plane_vars(r))?, order)?)?;
    let gb = engine.groebner(&ideal)?;
    for c in wedge.components() {
        if !gb.contains_poly(c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn plane_vars(r: &Arc<VarSpec>) -> Vec<Poly> {
    (0..3).map(|i| Poly::var_index(r, i, 1)).collect()
}

/// Restriction of a Pfaff form to the line `s ↦ s·d`.
#[derive(Clone, Debug, Serialize)]
pub struct LineValidation {
    pub valid: bool,
    /// `ω_i(s·d) = values[i]·s^m`.
    #[serde(serialize_with = "ser_rats")]
    pub values: [Rat; 3],
    /// First component that does not vanish along the line.
    pub witness: Option<usize>,
}

pub(crate) fn ser_rats<S: Serializer>(v: &[Rat; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

/// By homogeneity `ω_i(s·d) = s^m·ω_i(d)`, so the restrictions either all
/// vanish identically or have order exactly `m` in `s`.
pub fn line_validation(w: &PfaffForm, d: &[Rat; 3]) -> Result<LineValidation> {
    if d.iter().all(Zero::is_zero) {
        return Err(Error::precondition("line direction must be nonzero"));
    }
    let values = w.form().at(d)?;
    let witness = values.iter().position(|v| !Zero::is_zero(v));
    Ok(LineValidation {
        valid: witness.is_some(),
        values,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn p(s: &str) -> Poly {
        Poly::parse(s, &plane_ring()).unwrap()
    }

    fn one(a: &str, b: &str, c: &str) -> OneForm {
        OneForm::new([p(a), p(b), p(c)]).unwrap()
    }

    #[test]
    fn pfaff_validation() {
        assert!(make_pfaff(1, [p("y"), p("-x"), p("0")]).is_ok());
        let err = make_pfaff(1, [p("x"), p("0"), p("0")]).unwrap_err();
        assert!(err.to_string().contains("x^2"), "{err}");
        assert!(make_pfaff(2, [p("y"), p("-x"), p("0")]).is_err());
        let j = jouanolou_form(3).unwrap();
        let shown: Vec<String> = j.form().0.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, vec!["-y^3 + x^2*z", "x*y^2 - z^3", "-x^3 + y*z^2"]);
        let j2 = jouanolou_form(2).unwrap();
        assert_eq!(j2.form().0[0].to_string(), "-y^2 + x*z");
        assert!(jouanolou_form(1).is_err());
        for m in 2..=5 {
            let c = check_integrability(jouanolou_form(m).unwrap().form());
            assert!(c.integrable && c.residual.is_zero());
        }
    }

    #[test]
    fn integrability_residuals() {
        assert!(check_integrability(&one("y", "-x", "0")).integrable);
        let c = check_integrability(&one("z", "x", "y"));
        assert!(!c.integrable);
        assert_eq!(c.residual, p("x + y + z"));
    }

    #[test]
    fn wedge_and_divisibility() {
        let rot = one("y", "-x", "0");
        let w = omega_wedge_df(&rot, &p("x")).unwrap();
        assert_eq!(
            w,
            TwoForm {
                c_xy: p("x"),
                c_yz: p("0"),
                c_xz: p("0")
            }
        );
        assert!(omega_wedge_df(&rot, &p("3")).unwrap().is_zero());
        let radial = one("x", "y", "z");
        assert!(omega_wedge_df(&radial, &p("x^2 + y^2 + z^2")).unwrap().is_zero());
        assert!(is_formal_separatrix(&rot, &p("x"), 4).unwrap());
        assert!(!is_formal_separatrix(&rot, &p("z"), 4).unwrap());
        assert!(is_formal_separatrix(&radial, &p("x^2 + y^2 + z^2 - 1"), 4).unwrap());
    }

    #[test]
    fn lines_through_the_origin() {
        let j = jouanolou_form(3).unwrap();
        assert!(!line_validation(&j, &[rat(1), rat(1), rat(1)]).unwrap().valid);
        let v = line_validation(&j, &[rat(1), rat(2), rat(3)]).unwrap();
        assert!(v.valid);
        assert_eq!(v.values[0], rat(-5));
        assert!(line_validation(&j, &[rat(0), rat(0), rat(0)]).is_err());
    }
}
