use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{Mono, Poly, Rat, TruncSeries};
use crate::groebner::{Engine, Ideal};

/// `g` with `f·g ≡ t^n (mod t^N)`, kept as `g_i = numerators[i] / lead^(i+1)`.
#[derive(Clone, Debug, Serialize)]
pub struct Inverse {
    pub n: u32,
    pub order: u32,
    /// `f_n`, the lowest nonzero `t`-coefficient of `f`.
    pub lead: Poly,
    pub numerators: Vec<Poly>,
    /// The same series with denominators folded in, when `lead` is a
    /// monomial in invertible variables.
    pub folded: Option<TruncSeries>,
}

impl Inverse {
    /// `lead^K · g` with `K` the number of coefficients.
    fn cleared(&self, t: usize) -> Poly {
        let spec = self.lead.spec();
        let k = self.numerators.len() as u32;
        let mut acc = Poly::zero(spec);
        for (i, num) in self.numerators.iter().enumerate() {
            let shift = t_mono(spec.len(), t, i as i32);
            let term = &num.mul_monomial(&shift, &Rat::one()) * &self.lead.pow(k - 1 - i as u32);
            acc = &acc + &term;
        }
        acc
    }

    /// Re-checks `f·g ≡ t^n (mod t^N)` by clearing the denominators.
    pub fn verify(&self, f: &TruncSeries) -> Result<bool> {
        let t = f.series_index();
        let spec = f.spec();
        let k = self.numerators.len() as u32;
        let lhs = TruncSeries::truncate(&(f.poly() * &self.cleared(t)), self.order)?;
        let rhs = self
            .lead
            .pow(k)
            .mul_monomial(&t_mono(spec.len(), t, self.n as i32), &Rat::one());
        let rhs = TruncSeries::truncate(&rhs, self.order)?;
        Ok(lhs == rhs)
    }
}

fn t_mono(nvars: usize, t: usize, e: i32) -> Mono {
    let mut exps = vec![0; nvars];
    exps[t] = e;
    Mono::from_exps(&exps)
}

fn check_univariate(f: &TruncSeries) -> Result<()> {
    let t = f.series_index();
    let mut seen = None;
    for (m, _) in f.poly().terms() {
        for (i, &e) in m.exps().iter().enumerate() {
            if i == t || e == 0 {
                continue;
            }
            match seen {
                None => seen = Some(i),
                Some(j) if j == i => {}
                Some(_) => return Err(Error::precondition("coefficients must be univariate")),
            }
        }
    }
    Ok(())
}

/// Runs `g_0 = 1/f_n`, `g_(i+1) = −(Σ_(j≤i) g_j f_(n+i+1−j)) / f_n` for the
/// coefficients of `t^0 … t^(N−n−1)`.
pub fn invert_to_monomial(f: &TruncSeries, order: u32) -> Result<Inverse> {
    check_univariate(f)?;
    let f = f.with_order(order)?;
    let n = f
        .lowest_order()
        .ok_or_else(|| Error::precondition("cannot invert zero modulo the truncation"))?;
    let coeffs = f.coefficients();
    let lead = coeffs[n as usize].clone();
    let terms = (order - n) as usize;
    let mut lead_pows = vec![Poly::one(f.spec())];
    for _ in 1..terms {
        let next = lead_pows.last().unwrap() * &lead;
        lead_pows.push(next);
    }
    let fk = |k: usize| coeffs.get(k).cloned().unwrap_or_else(|| Poly::zero(f.spec()));
    let mut numerators = vec![Poly::one(f.spec())];
    for i in 0..terms.saturating_sub(1) {
        let mut acc = Poly::zero(f.spec());
        for (j, num) in numerators.iter().enumerate() {
            let c = fk(n as usize + i + 1 - j);
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(&(num * &c) * &lead_pows[i - j]);
        }
        numerators.push(-&acc);
    }
    let folded = fold(&f, &lead, &numerators, order, n)?;
    Ok(Inverse {
        n,
        order,
        lead,
        numerators,
        folded,
    })
}

fn fold(f: &TruncSeries, lead: &Poly, numerators: &[Poly], order: u32, n: u32) -> Result<Option<TruncSeries>> {
    if !lead.is_monomial() {
        return Ok(None);
    }
    let spec = f.spec();
    let (m, c) = lead.leading_term().expect("lead is nonzero");
    if m.exps()
        .iter()
        .enumerate()
        .any(|(i, &e)| e != 0 && !spec.is_invertible(i))
    {
        return Ok(None);
    }
    let inv_c = c.recip();
    let inv_m = Mono::from_exps(&m.exps().iter().map(|e| -e).collect::<Vec<_>>());
    let mut scale = Rat::one();
    let mut shift = Mono::one(spec.len());
    let mut acc = Poly::zero(spec);
    for (i, num) in numerators.iter().enumerate() {
        scale *= &inv_c;
        shift = shift.checked_mul(&inv_m).ok_or(Error::Overflow)?;
        let tm = t_mono(spec.len(), f.series_index(), i as i32);
        let mono = shift.checked_mul(&tm).ok_or(Error::Overflow)?;
        acc = &acc + &num.mul_monomial(&mono, &scale);
    }
    Ok(Some(TruncSeries::truncate(&acc, order - n)?))
}

/// Contraction of `(f, t^N)` to the polynomial model ring: clear the
/// Laurent denominators and saturate by the invertible variables.
pub fn line_closure(engine: &Engine, f: &TruncSeries, order: u32) -> Result<Ideal> {
    check_univariate(f)?;
    let f = f.with_order(order)?;
    if f.is_zero() {
        return Err(Error::precondition("f vanishes modulo the truncation"));
    }
    let spec = f.spec();
    let tn = Poly::monomial(spec, t_mono(spec.len(), f.series_index(), order as i32), Rat::one());
    engine.laurent_contraction(&[f.poly().clone(), tn])
}

/// Smallest `k ≤ 2N` with `f_n^k · t^n` (denominators cleared) in the line
/// closure, witnessing that the closure is more than `(t^N)`.
pub fn nonzero_intersection_witness(engine: &Engine, f: &TruncSeries, order: u32) -> Result<Option<u32>> {
    let closure = line_closure(engine, f, order)?;
    let f = f.with_order(order)?;
    let n = f.lowest_order().expect("line_closure rejected zero");
    let lead = f.coefficient(n);
    let spec = f.spec();
    let gb = engine.groebner(&closure)?;
    let tn = t_mono(spec.len(), f.series_index(), n as i32);
    let mut p = Poly::one(spec);
    for k in 1..=2 * order {
        p = &p * &lead;
        let (q, _) = p.mul_monomial(&tn, &Rat::one()).laurent_clear();
        if gb.contains_poly(&q.embed(closure.ring())?)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
