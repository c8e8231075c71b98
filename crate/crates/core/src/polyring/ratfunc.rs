use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Term-count threshold below which construction reduces by the gcd.
const REDUCE_TERMS: usize = 24;

/// Quotient of two polynomials.
///
/// The denominator always has unit rational content and a positive leading
/// coefficient. Small fractions are reduced by their gcd on construction;
/// [`RationalFunction::reduce`] forces full reduction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let arity = num.arity().max(den.arity());
        let mut rf = RationalFunction { num: num.with_arity(arity), den: den.with_arity(arity) };
        if rf.num.num_terms() + rf.den.num_terms() <= REDUCE_TERMS || rf.is_univariate() {
            rf.reduce_in_place();
        } else {
            rf.normalize_den();
        }
        Ok(rf)
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let arity = p.arity();
        RationalFunction { num: p, den: Polynomial::one(arity) }
    }

    pub fn zero(arity: usize) -> Self {
        Self::from_poly(Polynomial::zero(arity))
    }

    pub fn one(arity: usize) -> Self {
        Self::from_poly(Polynomial::one(arity))
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(arity, c))
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn with_arity(&self, arity: usize) -> Self {
        RationalFunction { num: self.num.with_arity(arity), den: self.den.with_arity(arity) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_polynomial().and_then(Polynomial::as_constant)
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    fn is_univariate(&self) -> bool {
        let mut vars = self.num.variables();
        vars.extend(self.den.variables());
        vars.sort_unstable();
        vars.dedup();
        vars.len() <= 1
    }

    fn normalize_den(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one(self.den.arity());
            return;
        }
        let mut c = self.den.rational_content();
        if self.den.leading_coeff().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            let inv = c.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    fn reduce_in_place(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one(self.den.arity());
            return;
        }
        if !self.den.is_constant() {
            let g = gcd(&self.num, &self.den).expect("denominator is nonzero");
            if !g.is_constant() {
                self.num = self.num.div_exact(&g).expect("gcd divides numerator");
                self.den = self.den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        self.normalize_den();
    }

    /// Fully reduced representative.
    pub fn reduce(&self) -> Self {
        let mut out = self.clone();
        out.reduce_in_place();
        out
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self, var: usize) -> Self {
        let n = &(&self.num.derivative(var) * &self.den) - &(&self.num * &self.den.derivative(var));
        RationalFunction::new(n, self.den.pow(2)).expect("nonzero denominator")
    }

    /// Evaluates at a point; `None` if the denominator vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = RationalFunction { num: self.num.scale(c), den: self.den.clone() };
        if out.num.is_zero() {
            out.den = Polynomial::one(out.den.arity());
        }
        out
    }

    /// Total degree of numerator plus total degree of denominator.
    pub fn height(&self) -> i64 {
        self.num.total_degree().max(0) + self.den.total_degree().max(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.num.involves(var) || self.den.involves(var)
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl std::fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(n, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::recip`] to handle it.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num).unwrap()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl Div for RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: RationalFunction) -> RationalFunction {
        &self / &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, Some(5)).unwrap()
    }

    #[test]
    fn reduces_common_factor() {
        let r = RationalFunction::new(p("x1^2 - 1"), p("2*x1 + 2")).unwrap();
        assert_eq!(r.numer(), &p("1/2*x1 - 1/2"));
        assert_eq!(r.denom(), &Polynomial::one(5));
    }

    #[test]
    fn sign_goes_to_numerator() {
        let r = RationalFunction::new(p("x4"), p("-3*x5")).unwrap();
        assert_eq!(r.numer(), &p("-1/3*x4"));
        assert_eq!(r.denom(), &p("x5"));
    }

    #[test]
    fn field_operations() {
        let a = RationalFunction::new(p("x4*x5 + 1"), p("x5")).unwrap();
        let b = a.recip().unwrap();
        assert_eq!(&a * &b, RationalFunction::one(5));
        let d = &(&a - &a) + &RationalFunction::zero(5);
        assert!(d.is_zero());
        let da = a.derivative(4);
        assert_eq!(da, RationalFunction::new(p("-1"), p("x5^2")).unwrap());
    }

    #[test]
    fn zero_denominator() {
        assert!(RationalFunction::new(p("x1"), Polynomial::zero(5)).is_err());
    }
}
