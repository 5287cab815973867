//! Exact rationals, multivariate Laurent polynomials, series truncated in a
//! distinguished variable, and the text grammar for all of them.

mod parse;
mod poly;
mod rat;
mod series;
mod varspec;

pub use parse::parse_poly;
pub(crate) use poly::fmt_mono;
pub use poly::{ArithOp, Mono, Poly};
pub use rat::{factorial, rat, ratio, Rat};
pub(crate) use rat::{fmt_magnitude, pow as rat_pow};
pub use series::{truncate, TruncSeries};
pub use varspec::VarSpec;

/// Exact `a op b` for polynomials over the same ring.
pub fn arith(a: &Poly, b: &Poly, op: ArithOp) -> crate::Result<Poly> {
    Poly::arith(a, b, op)
}

/// `(q, m)` with `q = m·p` polynomial and `m` the minimal clearing monomial.
pub fn laurent_clear(p: &Poly) -> (Poly, Poly) {
    p.laurent_clear()
}
