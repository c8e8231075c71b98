use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::Rational;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial over the rationals.
///
/// Variables are indexed from zero; index `i` prints as `x{i+1}`. Terms are
/// kept in a graded-lex ordered map, so the last entry is the leading term.
/// Binary operations on polynomials of different arity promote to the
/// larger one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(arity), c);
        }
        Polynomial { arity, terms }
    }

    pub fn from_int(arity: usize, c: i64) -> Self {
        Self::constant(arity, Rational::from_integer(c.into()))
    }

    /// The variable `x{index+1}`.
    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable index {index} out of range for arity {arity}");
        Self::monomial(Monomial::var(arity, index, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let arity = m.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { arity, terms }
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(arity);
        for (m, c) in terms {
            p.add_term(m.padded(arity), c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map(|(m, c)| m.is_one() && c.is_one()).unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Constant value, if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.arity)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(&m.padded(self.arity)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree() as i64).max().unwrap_or(-1)
    }

    /// Degree in one variable; `-1` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> i64 {
        if self.is_zero() {
            return -1;
        }
        self.terms.keys().map(|m| m.exp(var) as i64).max().unwrap_or(0)
    }

    /// Indices of variables that occur with positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.arity).filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0)).collect()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    pub fn involves_any(&self, vars: &[usize]) -> bool {
        vars.iter().any(|&v| self.involves(v))
    }

    pub fn with_arity(&self, arity: usize) -> Polynomial {
        if arity == self.arity {
            return self.clone();
        }
        assert!(arity >= self.arity || self.variables().iter().all(|&v| v < arity));
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exps().to_vec();
                e.resize(arity, 0);
                (Monomial::new(e), c.clone())
            })
            .collect();
        Polynomial { arity, terms }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    fn promote(&mut self, arity: usize) {
        if arity > self.arity {
            *self = self.with_arity(arity);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        let arity = self.arity.max(m.arity());
        if c.is_zero() {
            return Polynomial::zero(arity);
        }
        let m = m.padded(arity);
        Polynomial {
            arity,
            terms: self.terms.iter().map(|(k, a)| (k.padded(arity).mul(&m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.arity);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let dm = m.with_var(var, e - 1);
            out.terms.insert(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces each variable by a polynomial (all of one arity).
    ///
    /// Variables beyond `values.len()` must not occur.
    pub fn compose(&self, values: &[Polynomial]) -> Result<Polynomial> {
        let arity = values.first().map(Polynomial::arity).unwrap_or(0);
        if values.iter().any(|v| v.arity != arity) {
            return Err(Error::ArityMismatch("substituted values have different arities".into()));
        }
        if self.variables().iter().any(|&v| v >= values.len()) {
            return Err(Error::ArityMismatch(format!(
                "assignment covers {} variables but polynomial has arity {}",
                values.len(),
                self.arity
            )));
        }
        let mut cache: Vec<Vec<Polynomial>> = vec![Vec::new(); values.len()];
        let mut out = Polynomial::zero(arity);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(arity, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(Polynomial::one(arity));
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &values[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            out += &t;
        }
        Ok(out)
    }

    /// Coefficients with respect to `var`, lowest degree first.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let d = self.degree_in(var);
        if d < 0 {
            return Vec::new();
        }
        let mut out = vec![Polynomial::zero(self.arity); d as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(var);
            out[e as usize].terms.insert(rest, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(arity: usize, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(arity);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                out.add_term(m.padded(arity).with_var(var, m.exp(var) + e as u32), a.clone());
            }
        }
        out
    }

    /// Coefficients as a polynomial in the variables `vars`: pairs of
    /// (exponent vector over `vars`, coefficient free of `vars`).
    pub fn coefficients_in_vars(&self, vars: &[usize]) -> BTreeMap<Vec<u32>, Polynomial> {
        let mut out: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = vars.iter().map(|&v| m.exp(v)).collect();
            let mut rest = m.clone();
            for &v in vars {
                rest = rest.with_var(v, 0);
            }
            out.entry(key).or_insert_with(|| Polynomial::zero(self.arity)).add_term(rest, c.clone());
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let arity = self.arity.max(d.arity);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Polynomial::zero(arity));
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()).with_arity(arity));
        }
        if d.is_monomial() {
            let (dm, dc) = d.leading_term().unwrap();
            let inv = dc.recip();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                terms.insert(m.padded(arity).div(&dm.padded(arity))?, c * &inv);
            }
            return Some(Polynomial { arity, terms });
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.padded(arity), c.clone())).unwrap();
        if self.total_degree() < d.total_degree() {
            return None;
        }
        let inv = dc.recip();
        let mut rem = self.with_arity(arity);
        let mut quot = Polynomial::zero(arity);
        while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.div(&dm)?;
            let qc = &rc * &inv;
            for (m, c) in &d.terms {
                let mm = m.padded(arity).mul(&qm);
                rem.add_term(mm, -(c * &qc));
            }
            debug_assert!(!rem.terms.contains_key(&rm));
            quot.terms.insert(qm, qc);
        }
        Some(quot)
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn rational_content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::zero();
        }
        Rational::new(num, den)
    }

    /// Divides out the rational content and makes the leading coefficient
    /// positive: integer coefficients, coprime, positive leading term.
    pub fn normalize_unit(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.rational_content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Divides out the positive rational content, keeping the sign.
    pub fn primitive_rational(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.rational_content().recip())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> Polynomial {
        Polynomial::from_terms(self.arity, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Restricts to the part free of the given variables (sets them to zero).
    pub fn set_zero(&self, vars: &[usize]) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.exp(v) == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of the given total degree in `vars`.
    pub fn part_of_degree_in(&self, vars: &[usize], degree: u32) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().map(|&v| m.exp(v)).sum::<u32>() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.promote(rhs.arity);
        let arity = self.arity;
        for (m, c) in &rhs.terms {
            self.add_term(m.padded(arity), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        self.promote(rhs.arity);
        let arity = self.arity;
        for (m, c) in &rhs.terms {
            self.add_term(m.padded(arity), -c.clone());
        }
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let arity = self.arity.max(rhs.arity);
        let mut out = Polynomial::zero(arity);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        let (small, large) = if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        for (ma, ca) in &small.terms {
            let ma = ma.padded(arity);
            for (mb, cb) in &large.terms {
                out.add_term(ma.mul(&mb.padded(arity)), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(3, i)
    }

    #[test]
    fn exact_division() {
        let a = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let q = a.div_exact(&(&x(0) + &x(1))).unwrap();
        assert_eq!(q, &x(0) - &x(1));
        assert!(a.div_exact(&(&x(0) + &x(2))).is_none());
    }

    #[test]
    fn derivative_and_eval() {
        let p = &x(0).pow(3) + &(&x(0) * &x(1));
        assert_eq!(p.derivative(0), &x(0).pow(2).scale(&Rational::from_integer(3.into())) + &x(1));
        let pt = [Rational::from_integer(2.into()), Rational::from_integer(5.into()), Rational::zero()];
        assert_eq!(p.eval(&pt), Rational::from_integer(18.into()));
    }

    #[test]
    fn coefficients_roundtrip() {
        let p = &(&x(0).pow(2) * &x(2)) + &(&x(1) * &x(2).pow(3));
        let cs = p.coefficients_in(2);
        assert_eq!(cs.len(), 4);
        assert_eq!(Polynomial::from_coefficients_in(3, 2, &cs), p);
    }
}
