use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::PfaffForm;
use crate::error::{Error, Resource, Result};
use crate::exactpoly::{fmt_mono, Mono, Poly, Rat, VarSpec};
use crate::groebner::{Engine, Ideal};

/// Largest `n` and `m` accepted by [`algebraic_solution_search`].
pub const MAX_SOLUTION_DEGREE: u32 = 4;

type Exp3 = [u32; 3];

/// Polynomial in `x, y, z` with coefficients in a ring of unknowns.
type Sym = BTreeMap<Exp3, Poly>;

fn sym_push(s: &mut Sym, e: Exp3, c: Poly) {
    if c.is_zero() {
        return;
    }
    let merged = match s.remove(&e) {
        Some(old) => &old + &c,
        None => c,
    };
    if !merged.is_zero() {
        s.insert(e, merged);
    }
}

fn sym_sub(a: &Sym, b: &Sym) -> Sym {
    let mut out = a.clone();
    for (e, c) in b {
        sym_push(&mut out, *e, -c);
    }
    out
}

fn sym_mul(a: &Sym, b: &Sym) -> Sym {
    let mut out = Sym::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            sym_push(&mut out, [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
        }
    }
    out
}

fn sym_derivative(a: &Sym, i: usize) -> Sym {
    let mut out = Sym::new();
    for (e, c) in a {
        if e[i] > 0 {
            let mut e2 = *e;
            e2[i] -= 1;
            sym_push(&mut out, e2, c.scale(&Rat::from_integer(e[i].into())));
        }
    }
    out
}

fn sym_from_poly(p: &Poly, ring: &Arc<VarSpec>) -> Sym {
    let mut out = Sym::new();
    for (m, c) in p.terms() {
        let e = m.exps();
        sym_push(
            &mut out,
            [e[0] as u32, e[1] as u32, e[2] as u32],
            Poly::constant(ring, c.clone()),
        );
    }
    out
}

/// Degree-`d` monomials in decreasing grevlex order for `x > y > z`.
pub fn monomials(d: u32) -> Vec<Exp3> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

fn mono3(e: &Exp3) -> Mono {
    Mono::from_exps(&[e[0] as i32, e[1] as i32, e[2] as i32])
}

/// Solutions on one branch: `f` monic with leading monomial `leading`.
#[derive(Clone, Debug, Serialize)]
pub struct DarbouxFamily {
    pub leading: String,
    /// Unknown coefficients of the branch, `c<j>` multiplying the `j`-th
    /// degree-`n` monomial.
    pub unknowns: Vec<String>,
    /// Reduced basis of the conditions on the unknowns after eliminating
    /// the cofactor.
    pub constraints: Vec<Poly>,
    /// `f` with every unknown reduced modulo the constraints.
    pub family: Poly,
    /// Unknowns left free when all constraints are linear.
    pub free: Option<Vec<String>>,
}

impl DarbouxFamily {
    /// Member of the family with the free unknowns set to `values` (missing
    /// values count as zero). Only available for linear constraints.
    pub fn sample(&self, values: &[Rat], plane: &Arc<VarSpec>) -> Result<Option<Poly>> {
        let Some(free) = &self.free else {
            return Ok(None);
        };
        let ring = self.family.spec().clone();
        let mut p = self.family.clone();
        for (k, name) in free.iter().enumerate() {
            let v = values.get(k).cloned().unwrap_or_else(Rat::zero);
            let i = ring.index(name).expect("free unknown is in the family ring");
            p = p.substitute(i, &Poly::constant(&ring, v))?;
        }
        Ok(Some(p.embed(plane)?))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    pub leading: String,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DarbouxReport {
    pub degree: u32,
    pub branches: Vec<BranchReport>,
    pub solutions: Vec<DarbouxFamily>,
}

/// Homogeneous `f` of degree `n` with `f | ω ∧ df`, one affine branch per
/// choice of monic leading monomial. Branches are disjoint projectively, so
/// the families returned never repeat a class.
pub fn algebraic_solution_search(engine: &Engine, omega: &PfaffForm, n: u32) -> Result<DarbouxReport> {
    if n == 0 {
        return Err(Error::precondition("solution degree must be at least 1"));
    }
    if n > MAX_SOLUTION_DEGREE || omega.degree() > MAX_SOLUTION_DEGREE {
        return Err(Error::ResourceCap {
            resource: Resource::Degree,
            limit: MAX_SOLUTION_DEGREE as usize,
        });
    }
    let mons = monomials(n);
    let results: Vec<(BranchReport, Option<DarbouxFamily>)> = (0..mons.len())
        .into_par_iter()
        .map(|k| branch(engine, omega, &mons, k))
        .collect::<Result<_>>()?;
    let mut branches = Vec::new();
    let mut solutions = Vec::new();
    for (b, s) in results {
        branches.push(b);
        solutions.extend(s);
    }
    Ok(DarbouxReport {
        degree: n,
        branches,
        solutions,
    })
}

fn branch(
    engine: &Engine,
    omega: &PfaffForm,
    mons: &[Exp3],
    k: usize,
) -> Result<(BranchReport, Option<DarbouxFamily>)> {
    let m = omega.degree();
    let plane = omega.form().ring().clone();
    let leading = fmt_mono(&plane, &mono3(&mons[k]));
    let c_names: Vec<String> = (k + 1..mons.len()).map(|j| format!("c{j}")).collect();
    let theta_mons = monomials(m - 1);
    let th_names: Vec<String> = (0..3)
        .flat_map(|comp| (0..theta_mons.len()).map(move |j| format!("th{comp}_{j}")))
        .collect();
    let mut names = c_names.clone();
    names.extend(th_names.iter().cloned());
    let u = if names.is_empty() {
        VarSpec::polynomial(&["dummy"])?.shared()
    } else {
        VarSpec::polynomial(&names)?.shared()
    };

    let mut f = Sym::new();
    sym_push(&mut f, mons[k], Poly::one(&u));
    for (idx, j) in (k + 1..mons.len()).enumerate() {
        sym_push(&mut f, mons[j], Poly::var(&u, &c_names[idx])?);
    }
    let w: Vec<Sym> = omega.form().0.iter().map(|p| sym_from_poly(p, &u)).collect();
    let fx = sym_derivative(&f, 0);
    let fy = sym_derivative(&f, 1);
    let fz = sym_derivative(&f, 2);
    let wedge = [
        sym_sub(&sym_mul(&w[0], &fy), &sym_mul(&w[1], &fx)),
        sym_sub(&sym_mul(&w[1], &fz), &sym_mul(&w[2], &fy)),
        sym_sub(&sym_mul(&w[0], &fz), &sym_mul(&w[2], &fx)),
    ];
    let mut eqs = Vec::new();
    for (comp, wc) in wedge.iter().enumerate() {
        let mut theta = Sym::new();
        for (j, e) in theta_mons.iter().enumerate() {
            sym_push(&mut theta, *e, Poly::var(&u, &format!("th{comp}_{j}"))?);
        }
        eqs.extend(sym_sub(wc, &sym_mul(&f, &theta)).into_values());
    }
    let ideal = Ideal::new(&u, eqs)?;
    let gb = engine.groebner(&ideal)?;
    let report = BranchReport {
        leading: leading.clone(),
        consistent: !gb.is_unit(),
    };
    if gb.is_unit() {
        return Ok((report, None));
    }
    log::debug!("branch {leading} consistent, eliminating the cofactor");

    let (c_ring, constraints) = if c_names.is_empty() {
        (VarSpec::polynomial::<&str>(&[])?.shared(), Vec::new())
    } else {
        let elim = engine.eliminate(&ideal, &th_names)?;
        let basis = engine.groebner(&elim)?.basis().to_vec();
        (elim.ring().clone(), basis)
    };
    let mut fam_names: Vec<String> = plane.names().to_vec();
    fam_names.extend(c_names.iter().cloned());
    let fam_ring = VarSpec::polynomial(&fam_names)?.shared();
    let c_gb = engine.groebner(&Ideal::new(&c_ring, constraints.clone())?)?;
    let mut terms = Vec::new();
    let mut push_coeff = |e: &Exp3, coeff: &Poly| {
        for (cm, cc) in coeff.terms() {
            let mut exps = vec![e[0] as i32, e[1] as i32, e[2] as i32];
            exps.extend_from_slice(cm.exps());
            terms.push((Mono::from_exps(&exps), cc.clone()));
        }
    };
    push_coeff(&mons[k], &Poly::one(&c_ring));
    for (idx, j) in (k + 1..mons.len()).enumerate() {
        let cv = Poly::var(&c_ring, &c_names[idx])?;
        push_coeff(&mons[j], &c_gb.normal_form(&cv)?);
    }
    let family = Poly::from_terms(&fam_ring, terms)?;
    let linear = constraints.iter().all(|g| g.total_degree().unwrap_or(0) <= 1);
    let free = linear.then(|| {
        let leads: Vec<String> = c_gb.leading_monomials().iter().map(|m| m.to_string()).collect();
        c_names.iter().filter(|c| !leads.contains(c)).cloned().collect()
    });
    if c_gb.is_unit() {
        return Err(Error::Internal("cofactor elimination lost a consistent branch".into()));
    }
    Ok((
        report,
        Some(DarbouxFamily {
            leading,
            unknowns: c_names,
            constraints,
            family,
            free,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;
    use crate::foliations::{is_formal_separatrix, jouanolou_form, make_pfaff, plane_ring};

    #[test]
    fn rotation_has_the_pencil_of_lines() {
        let e = Engine::default();
        let r = plane_ring();
        let w = make_pfaff(
            1,
            [
                Poly::parse("y", &r).unwrap(),
                Poly::parse("-x", &r).unwrap(),
                Poly::zero(&r),
            ],
        )
        .unwrap();
        let rep = algebraic_solution_search(&e, &w, 1).unwrap();
        let cons: Vec<bool> = rep.branches.iter().map(|b| b.consistent).collect();
        assert_eq!(cons, vec![true, true, false]);
        assert_eq!(rep.solutions[0].family.to_string(), "y*c1 + x");
        assert_eq!(rep.solutions[0].free, Some(vec!["c1".to_string()]));
        assert_eq!(rep.solutions[1].family.to_string(), "y");
        for s in &rep.solutions {
            let f = s.sample(&[rat(3)], &r).unwrap().unwrap();
            assert!(is_formal_separatrix(w.form(), &f, 3).unwrap());
        }
    }

    #[test]
    fn jouanolou_has_no_lines_or_conics() {
        let e = Engine::default();
        let w = jouanolou_form(3).unwrap();
        for n in 1..=2 {
            let rep = algebraic_solution_search(&e, &w, n).unwrap();
            assert!(rep.solutions.is_empty());
            assert_eq!(rep.branches.len(), ((n + 1) * (n + 2) / 2) as usize);
        }
    }
}
