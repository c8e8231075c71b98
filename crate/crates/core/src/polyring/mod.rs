//! Exact polynomials and rational functions over ℚ.

mod gcd;
mod monomial;
mod polynomial;
mod ratfunc;
mod text;

use num_traits::{One, Zero};

pub use gcd::{gcd, gcd_many};
pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use ratfunc::RationalFunction;
pub use text::{
    format_polynomial, format_rational, format_rational_function, parse_polynomial, parse_polynomial_at,
    parse_rational_function, Named, VarNames,
};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Substitutes a rational function for every variable of `p`.
///
/// All values must share one arity. The denominator is built as
/// `∏ dᵢ^{deg_i p}`, so only polynomial products occur.
pub fn substitute(p: &Polynomial, assignment: &[RationalFunction]) -> Result<RationalFunction> {
    let arity = assignment.first().map(RationalFunction::arity).unwrap_or(0);
    if assignment.iter().any(|v| v.arity() != arity) {
        return Err(Error::ArityMismatch("substituted values have different arities".into()));
    }
    if assignment.len() < p.arity() && p.variables().iter().any(|&v| v >= assignment.len()) {
        return Err(Error::ArityMismatch(format!(
            "assignment covers {} variables, polynomial uses x{}",
            assignment.len(),
            p.variables().last().unwrap() + 1
        )));
    }
    if assignment.iter().all(RationalFunction::is_polynomial) {
        let polys: Vec<Polynomial> = assignment.iter().map(|v| v.numer().clone()).collect();
        return Ok(RationalFunction::from_poly(p.compose(&polys)?));
    }
    let degs: Vec<u32> = (0..assignment.len()).map(|i| p.degree_in(i).max(0) as u32).collect();
    let mut num = Polynomial::zero(arity);
    let mut den = Polynomial::one(arity);
    for (i, v) in assignment.iter().enumerate() {
        if degs[i] > 0 {
            den = &den * &v.denom().pow(degs[i]);
        }
    }
    for (m, c) in p.terms() {
        let mut t = Polynomial::constant(arity, c.clone());
        for (i, v) in assignment.iter().enumerate() {
            let e = m.exp(i);
            if e > 0 {
                t = &t * &v.numer().pow(e);
            }
            if degs[i] > e {
                t = &t * &v.denom().pow(degs[i] - e);
            }
        }
        num += &t;
    }
    RationalFunction::new(num, den)
}

/// Splits `p` into content and primitive part over ℚ[`parameter_vars`].
///
/// The content carries the rational content, so the primitive part has
/// coprime integer coefficients; its sign follows the leading coefficient of
/// the content's gcd normalization.
pub fn content_primitive(p: &Polynomial, parameter_vars: &[usize]) -> Result<(Polynomial, Polynomial)> {
    if p.is_zero() {
        return Err(Error::ZeroInput("content of the zero polynomial".into()));
    }
    let arity = p.arity();
    let rc = p.rational_content();
    let others: Vec<usize> = (0..arity).filter(|v| !parameter_vars.contains(v)).collect();
    let coeffs = p.coefficients_in_vars(&others);
    let g = if parameter_vars.is_empty() {
        Polynomial::one(arity)
    } else {
        gcd_many(arity, coeffs.values())
    };
    let content = g.scale(&rc);
    let primitive = p.div_exact(&content).expect("content divides its polynomial");
    Ok((content, primitive))
}

/// Exact equality check over ℚ(x) between a polynomial and a rational function.
pub fn poly_eq_rf(p: &Polynomial, r: &RationalFunction) -> bool {
    (p * r.denom()) == *r.numer()
}

pub fn unit_vector(m: usize, i: usize) -> Vec<Rational> {
    (0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, Some(n)).unwrap()
    }

    fn rf(s: &str, n: usize) -> RationalFunction {
        RationalFunction::from_poly(p(s, n))
    }

    #[test]
    fn substitute_examples() {
        let r = substitute(&p("x1^2 + x2", 3), &[rf("x3", 3), rf("0", 3), rf("x3", 3)]).unwrap();
        assert_eq!(r.numer(), &p("x3^2", 3));
        let r = substitute(&p("x1*x2", 2), &[rf("x1 + 1", 2), rf("x1 - 1", 2)]).unwrap();
        assert_eq!(r.numer(), &p("x1^2 - 1", 2));
        // t is index 2 when there are two x variables.
        let t = rf("t", 2);
        let zero = RationalFunction::zero(t.arity());
        let r = substitute(&p("(x1 + 2*x2)^3", 2), &[t.clone(), zero]).unwrap();
        assert_eq!(r, RationalFunction::from_poly(t.numer().pow(3)));
    }

    #[test]
    fn substitute_fraction() {
        let g = parse_rational_function("(x1 + 1)/x2", Some(2)).unwrap();
        let r = substitute(&p("x1^2 + x2", 2), &[g, rf("x2", 2)]).unwrap();
        let expect = parse_rational_function("(x1^2 + 2*x1 + x2^3 + 1)/(x2^2)", Some(2)).unwrap();
        assert_eq!(r, expect);
        assert!(r.is_polynomial() || r.denom() == &p("x2^2", 2));
    }

    #[test]
    fn substitute_arity_mismatch() {
        assert!(substitute(&p("x1 + x3", 3), &[rf("x1", 3), rf("x2", 3)]).is_err());
        assert!(substitute(&p("x1", 2), &[rf("x1", 2), rf("x1", 3)]).is_err());
    }

    #[test]
    fn content_examples() {
        let (c, q) = content_primitive(&p("4*x1 + 6*x2", 2), &[]).unwrap();
        assert_eq!((c, q), (p("2", 2), p("2*x1 + 3*x2", 2)));
        let (c, q) = content_primitive(&p("x4^2*x1 + x4^2*x2", 4), &[3]).unwrap();
        assert_eq!((c, q), (p("x4^2", 4), p("x1 + x2", 4)));
        let (c, q) = content_primitive(&p("x4*x1 + x4^2*x2", 4), &[3]).unwrap();
        assert_eq!((c, q), (p("x4", 4), p("x1 + x4*x2", 4)));
        assert!(content_primitive(&Polynomial::zero(2), &[]).is_err());
    }
}
