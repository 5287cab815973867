use std::fmt;
use std::sync::Arc;

use super::poly::{ArithOp, Mono, Poly};
use super::varspec::VarSpec;
use crate::error::{Error, Result};

/// A polynomial in the spec's series variable `t`, kept modulo `t^order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    poly: Poly,
    order: u32,
    t: usize,
}

/// Drops all terms of `p` with `t`-exponent `>= n`.
pub fn truncate(p: &Poly, n: u32) -> Result<TruncSeries> {
    TruncSeries::truncate(p, n)
}

impl serde::Serialize for TruncSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.poly)
    }
}

impl TruncSeries {
    pub fn truncate(p: &Poly, n: u32) -> Result<TruncSeries> {
        let t = p
            .spec()
            .series_var()
            .ok_or_else(|| Error::precondition("ring has no series variable"))?;
        if n == 0 {
            return Err(Error::precondition("truncation order must be positive"));
        }
        if p.min_exponent(t).is_some_and(|e| e < 0) {
            return Err(Error::precondition("negative power of the series variable"));
        }
        Ok(TruncSeries {
            poly: p.filter(|m| m.0[t] < n as i32),
            order: n,
            t,
        })
    }

    /// Assembles `Σ coeffs[i]·t^i`; every coefficient must be free of `t`.
    pub fn from_coefficients(spec: &Arc<VarSpec>, coeffs: &[Poly], order: u32) -> Result<TruncSeries> {
        let t = spec
            .series_var()
            .ok_or_else(|| Error::precondition("ring has no series variable"))?;
        let mut acc = Poly::zero(spec);
        for (i, c) in coeffs.iter().enumerate().take(order as usize) {
            if c.max_exponent(t).is_some_and(|e| e != 0) || c.min_exponent(t).is_some_and(|e| e != 0) {
                return Err(Error::precondition("series coefficient involves the series variable"));
            }
            acc = Poly::arith(
                &acc,
                &c.mul_monomial(&t_power(spec, t, i as i32), &num_traits::One::one()),
                ArithOp::Add,
            )?;
        }
        TruncSeries::truncate(&acc, order)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn spec(&self) -> &Arc<VarSpec> {
        self.poly.spec()
    }

    pub fn series_index(&self) -> usize {
        self.t
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The coefficient of `t^i`, as a `t`-free polynomial.
    pub fn coefficient(&self, i: u32) -> Poly {
        let t = self.t;
        let mut out = self.poly.filter(|m| m.0[t] == i as i32);
        if i > 0 {
            out = out.mul_monomial(&t_power(self.spec(), t, -(i as i32)), &num_traits::One::one());
        }
        out
    }

    pub fn coefficients(&self) -> Vec<Poly> {
        (0..self.order).map(|i| self.coefficient(i)).collect()
    }

    /// Smallest `t`-exponent with a nonzero coefficient.
    pub fn lowest_order(&self) -> Option<u32> {
        self.poly.min_exponent(self.t).map(|e| e as u32)
    }

    fn check(&self, other: &TruncSeries) -> Result<()> {
        if self.spec() != other.spec() {
            return Err(Error::RingMismatch(format!("{} vs {}", self.spec(), other.spec())));
        }
        Ok(())
    }

    /// Product modulo `t^min(order)`.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check(other)?;
        let n = self.order.min(other.order);
        let p = Poly::arith(&self.poly, &other.poly, ArithOp::Mul)?;
        TruncSeries::truncate(&p, n)
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check(other)?;
        let n = self.order.min(other.order);
        TruncSeries::truncate(&Poly::arith(&self.poly, &other.poly, ArithOp::Add)?, n)
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check(other)?;
        let n = self.order.min(other.order);
        TruncSeries::truncate(&Poly::arith(&self.poly, &other.poly, ArithOp::Sub)?, n)
    }

    pub fn with_order(&self, n: u32) -> Result<TruncSeries> {
        TruncSeries::truncate(&self.poly, n.min(self.order))
    }
}

fn t_power(spec: &Arc<VarSpec>, t: usize, e: i32) -> Mono {
    let mut m = Mono::one(spec.len());
    m.0[t] = e;
    m
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.poly, self.spec().name(self.t), self.order)
    }
}
