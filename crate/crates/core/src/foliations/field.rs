use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exactpoly::{fmt_magnitude, Rat};

/// Exact field operations needed by the jet solver.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on division by zero.
    fn div(&self, other: &Self) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Self {
        assert!(!Zero::is_zero(other), "division by zero");
        self / other
    }
}

/// Dense univariate polynomial over ℚ in `w`, lowest degree first, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly(Vec<Rat>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> UPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn constant(c: Rat) -> UPoly {
        UPoly::new(vec![c])
    }

    /// The polynomial `w`.
    pub fn w() -> UPoly {
        UPoly::new(vec![<Rat as Zero>::zero(), <Rat as One>::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rat> {
        self.0.last()
    }

    pub fn eval(&self, w: &Rat) -> Rat {
        let mut acc = <Rat as Zero>::zero();
        for c in self.0.iter().rev() {
            acc = acc * w + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> UPoly {
        UPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Multiplicity of the root `w = 0`.
    pub fn zero_multiplicity(&self) -> usize {
        self.0.iter().take_while(|c| Zero::is_zero(*c)).count()
    }

    /// `(q, r)` with `self = q·d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let dl = d.lead().unwrap().clone();
        let mut r = self.0.clone();
        let mut q = vec![<Rat as Zero>::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &dl;
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UPoly::new(q), UPoly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(<Rat as Zero>::zero);
                    a + o.0.get(i).cloned().unwrap_or_else(<Rat as Zero>::zero)
                })
                .collect(),
        )
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        self + &(-o)
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::default();
        }
        let mut out = vec![<Rat as Zero>::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c < &<Rat as Zero>::zero();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = fmt_magnitude(c);
            match (i, mag.as_str()) {
                (0, m) => f.write_str(m)?,
                (_, "1") => {}
                (_, m) => write!(f, "{m}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("w")?,
                _ => write!(f, "w^{i}")?,
            }
        }
        Ok(())
    }
}

/// Reduced fraction `num/den` in `ℚ(w)` with monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: UPoly::constant(<Rat as One>::one()),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let l = den.lead().unwrap().recip();
        RatFunc {
            num: num.scale(&l),
            den: den.scale(&l),
        }
    }

    pub fn poly(p: UPoly) -> RatFunc {
        RatFunc::new(p, UPoly::constant(<Rat as One>::one()))
    }

    pub fn w() -> RatFunc {
        RatFunc::poly(UPoly::w())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    /// Order of the pole at `w = 0`.
    pub fn pole_order(&self) -> usize {
        self.den.zero_multiplicity()
    }

    /// Value at `w0`, or `None` when `w0` is a pole.
    pub fn eval(&self, w0: &Rat) -> Option<Rat> {
        let d = self.den.eval(w0);
        if Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(w0) / d)
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::poly(UPoly::default())
    }
    fn one() -> Self {
        RatFunc::poly(UPoly::constant(<Rat as One>::one()))
    }
    fn from_rat(r: &Rat) -> Self {
        RatFunc::poly(UPoly::constant(r.clone()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "division by zero");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, ratio};

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn gcd_and_division() {
        let a = &up(&[-1, 0, 1]) * &up(&[2, 1]);
        let b = &up(&[1, 1]) * &up(&[0, 0, 3]);
        assert_eq!(a.gcd(&b), up(&[1, 1]));
        let (q, r) = a.div_rem(&up(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, &up(&[-1, 1]) * &up(&[2, 1]));
    }

    #[test]
    fn fractions_reduce() {
        let f = RatFunc::new(&up(&[0, 1]) * &up(&[1, 1]), &up(&[0, 0, 2]) * &up(&[1, 1]));
        assert_eq!(f.num(), &UPoly::constant(ratio(1, 2)));
        assert_eq!(f.den(), &up(&[0, 1]));
        assert_eq!(f.pole_order(), 1);
        assert_eq!(f.to_string(), "(1/2)/(w)");
        let g = f.add(&f.neg());
        assert!(Field::is_zero(&g));
        assert_eq!(f.mul(&RatFunc::w()), RatFunc::from_rat(&ratio(1, 2)));
        assert_eq!(f.eval(&rat(2)), Some(ratio(1, 4)));
        assert_eq!(f.eval(&rat(0)), None);
    }

    #[test]
    fn prints_polynomials() {
        assert_eq!(up(&[1, -2, 0, 3]).to_string(), "3*w^3 - 2*w + 1");
        assert_eq!(up(&[0, 1]).to_string(), "w");
        assert_eq!(UPoly::default().to_string(), "0");
    }
}
