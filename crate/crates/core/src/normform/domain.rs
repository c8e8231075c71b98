use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polyring::{format_polynomial, Monomial, Polynomial, Rational, VarNames};

/// Which Bézout domain a matrix lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DomainKind {
    Integer,
    /// ℚ[t]; `t` is the formal variable of matrix files.
    UnivariatePoly,
}

impl DomainKind {
    pub fn name(self) -> &'static str {
        match self {
            DomainKind::Integer => "int",
            DomainKind::UnivariatePoly => "polyt",
        }
    }
}

/// Operations the column-operation decompositions need from a Bézout domain.
pub trait Bezout: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    const KIND: DomainKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, other: &Self) -> Option<Self>;
    /// Euclidean division `self = q·d + r` with `r` smaller than `d`.
    fn div_rem(&self, d: &Self) -> (Self, Self);
    /// Euclidean size: bit length for integers, degree plus one for
    /// polynomials, zero only for zero.
    fn size(&self) -> u64;
    /// `(g, u, v)` with `u·a + v·b = g`, `g` normalized (positive or monic).
    /// Both inputs zero gives `g = 0`.
    fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self);
    /// Normalized gcd without cofactors.
    fn gcd(a: &Self, b: &Self) -> Self {
        Self::ext_gcd(a, b).0
    }
    fn is_unit(&self) -> bool;
    /// Embedding into polynomials; `t` is variable index 0 of arity 1.
    fn to_polynomial(&self) -> Polynomial;
    /// Inverse of [`Bezout::to_polynomial`]; `None` when not in the domain.
    fn from_polynomial(p: &Polynomial) -> Option<Self>;
    /// A unit `u` such that `v / u` has the smallest coefficients, for
    /// domains with more units than ±1.
    fn unit_content(_v: &[Self]) -> Self {
        Self::one()
    }
    /// A vector `c` with `c·p = 1` of small size, when the domain offers a
    /// better search than folding extended gcds.
    fn small_certificate(_p: &[Self]) -> Option<Vec<Self>> {
        None
    }
}

impl Bezout for BigInt {
    const KIND: DomainKind = DomainKind::Integer;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
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
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = Integer::div_rem(self, other);
        Zero::is_zero(&r).then_some(q)
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        Integer::div_rem(self, d)
    }
    fn size(&self) -> u64 {
        self.bits()
    }
    fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let e = a.extended_gcd(b);
        if e.gcd.is_negative() {
            (-e.gcd, -e.x, -e.y)
        } else {
            (e.gcd, e.x, e.y)
        }
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn to_polynomial(&self) -> Polynomial {
        Polynomial::constant(1, Rational::from_integer(self.clone()))
    }
    fn from_polynomial(p: &Polynomial) -> Option<Self> {
        let c = p.as_constant()?;
        c.is_integer().then(|| c.to_integer())
    }
}

/// Dense univariate polynomial over ℚ, lowest coefficient first, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    /// `c·t^k`.
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `-1` for zero.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.coeffs.is_empty(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        if r.len() <= dd {
            return (UniPoly::default(), self.clone());
        }
        let inv = d.lead().recip();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_polynomial(&self.to_polynomial(), VarNames::with_formal(0)))
    }
}

impl Bezout for UniPoly {
    const KIND: DomainKind = DomainKind::UnivariatePoly;

    fn zero() -> Self {
        UniPoly::default()
    }
    fn one() -> Self {
        UniPoly::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::default();
        }
        // Integer convolution over a common denominator.
        let (a, da) = integer_parts(&self.coeffs);
        let (b, db) = integer_parts(&other.coeffs);
        let mut out = vec![<BigInt as Zero>::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if Zero::is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let den = da * db;
        UniPoly::new(out.into_iter().map(|c| Rational::new(c, den.clone())).collect())
    }
    fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if other.coeffs.len() == 1 {
            return Some(self.scale(&other.coeffs[0].recip()));
        }
        let (q, r) = self.divrem(other);
        r.is_zero().then_some(q)
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        self.divrem(d)
    }
    fn size(&self) -> u64 {
        self.coeffs.len() as u64
    }
    fn gcd(a: &Self, b: &Self) -> Self {
        // Primitive remainder sequence over ℤ keeps coefficients small.
        let (mut r0, mut r1) = (primitive_ints(a), primitive_ints(b));
        if r0.len() < r1.len() {
            std::mem::swap(&mut r0, &mut r1);
        }
        while !r1.is_empty() {
            let r = primitive_ints_of(pseudo_rem(r0, &r1));
            r0 = std::mem::replace(&mut r1, r);
        }
        match r0.last() {
            None => Self::zero(),
            Some(lead) => {
                let lead = Rational::from_integer(lead.clone());
                UniPoly::new(r0.into_iter().map(|c| Rational::from_integer(c) / &lead).collect())
            }
        }
    }
    fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, Self::zero(), Self::zero());
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }
    fn is_unit(&self) -> bool {
        self.degree() == 0
    }
    fn unit_content(v: &[Self]) -> Self {
        let mut num: BigInt = Zero::zero();
        let mut den: BigInt = One::one();
        for c in v.iter().flat_map(|p| &p.coeffs) {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if Zero::is_zero(&num) {
            return Self::one();
        }
        UniPoly::constant(Rational::new(num, den))
    }
    fn small_certificate(p: &[Self]) -> Option<Vec<Self>> {
        // The coefficients of c up to degree δ solve a linear system; the
        // smallest feasible δ keeps the certificate short. With p scaled to
        // integer coefficients, c = scale·x for x solving x·(scale·p) = 1.
        let m = p.len();
        let top = p.iter().map(|x| x.coeffs.len()).max()?;
        let scale = p.iter().flat_map(|x| &x.coeffs).fold(<BigInt as One>::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<Vec<BigInt>> =
            p.iter().map(|x| x.coeffs.iter().map(|c| c.numer() * (&scale / c.denom())).collect()).collect();
        for delta in 0..top {
            let cols = m * (delta + 1);
            let rows: Vec<Vec<BigInt>> = (0..top + delta)
                .map(|t| {
                    let mut row = vec![<BigInt as Zero>::zero(); cols];
                    for (j, x) in ints.iter().enumerate() {
                        for e in 0..=delta.min(t) {
                            if let Some(a) = x.get(t - e) {
                                row[j * (delta + 1) + e] = a.clone();
                            }
                        }
                    }
                    row
                })
                .collect();
            let rhs: Vec<BigInt> = (0..rows.len()).map(|t| BigInt::from((t == 0) as u8)).collect();
            if !crate::qlinalg::consistent_mod_prime(&rows, &rhs, cols) {
                continue;
            }
            if let Some(x) = crate::qlinalg::solve_integer(&rows, &rhs, cols) {
                let s = Rational::from_integer(scale);
                return Some(x.chunks(delta + 1).map(|c| UniPoly::new(c.iter().map(|v| v * &s).collect())).collect());
            }
        }
        None
    }
    fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(
            1,
            self.coeffs.iter().enumerate().map(|(k, c)| (Monomial::new(vec![k as u32]), c.clone())),
        )
    }
    fn from_polynomial(p: &Polynomial) -> Option<Self> {
        if p.variables().iter().any(|&v| v != 0) {
            return None;
        }
        let d = p.degree_in(0);
        if d < 0 {
            return Some(UniPoly::default());
        }
        let mut coeffs = vec![Rational::zero(); d as usize + 1];
        for (m, c) in p.terms() {
            coeffs[m.exp(0) as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }
}

/// Numerators over the common denominator of `c`.
fn integer_parts(c: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = c.iter().fold(<BigInt as One>::one(), |acc, x| if x.denom().is_one() { acc } else { acc.lcm(x.denom()) });
    if den.is_one() {
        return (c.iter().map(|x| x.numer().clone()).collect(), den);
    }
    (c.iter().map(|x| x.numer() * (&den / x.denom())).collect(), den)
}

/// Integer coefficients of `p` scaled to content one.
fn primitive_ints(p: &UniPoly) -> Vec<BigInt> {
    let den = p.coeffs.iter().fold(<BigInt as One>::one(), |acc, c| acc.lcm(c.denom()));
    primitive_ints_of(p.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect())
}

fn primitive_ints_of(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map(Zero::is_zero).unwrap_or(false) {
        v.pop();
    }
    let g = v.iter().fold(<BigInt as Zero>::zero(), |acc, c| acc.gcd(c));
    if !Zero::is_zero(&g) && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

/// Pseudo-remainder of `a` by nonzero `b`, both lowest coefficient first.
fn pseudo_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().expect("nonzero divisor").clone();
    while a.len() >= b.len() {
        let la = a.pop().expect("nonempty");
        let shift = a.len() + 1 - b.len();
        for c in a.iter_mut() {
            *c *= &lb;
        }
        for (k, bk) in b[..b.len() - 1].iter().enumerate() {
            a[shift + k] -= &la * bk;
        }
        while a.last().map(Zero::is_zero).unwrap_or(false) {
            a.pop();
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_gcd_and_certificate() {
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[1, -2, 1]);
        assert_eq!(UniPoly::gcd(&a, &b), UniPoly::from_ints(&[-1, 1]));
        assert_eq!(UniPoly::gcd(&a.scale(&Rational::new(3.into(), 7.into())), &UniPoly::zero()), a);
        // Coprime entries admit a constant certificate here.
        let p = [UniPoly::from_ints(&[0, 1]), UniPoly::from_ints(&[1, 1])];
        let c = UniPoly::small_certificate(&p).unwrap();
        assert!(c.iter().all(|x| x.degree() <= 0));
        assert_eq!(c[0].mul(&p[0]).add(&c[1].mul(&p[1])), UniPoly::one());
        assert_eq!(UniPoly::small_certificate(&[UniPoly::from_ints(&[0, 1])]), None);
    }

    #[test]
    fn integer_bezout() {
        let (g, u, v) = BigInt::ext_gcd(&BigInt::from(4), &BigInt::from(6));
        assert_eq!(g, BigInt::from(2));
        assert_eq!(&u * 4 + &v * 6, g);
        let (g, _, _) = BigInt::ext_gcd(&BigInt::from(-4), &BigInt::from(0));
        assert_eq!(g, BigInt::from(4));
    }

    #[test]
    fn polynomial_bezout() {
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[1, -2, 1]);
        let (g, u, v) = UniPoly::ext_gcd(&a, &b);
        assert_eq!(g, UniPoly::from_ints(&[-1, 1]));
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
        let (g, u, v) = UniPoly::ext_gcd(&UniPoly::from_ints(&[0, 0, 0, 1]), &UniPoly::from_ints(&[1, 0, 1]));
        assert!(g.is_unit());
        assert_eq!(u.mul(&UniPoly::from_ints(&[0, 0, 0, 1])).add(&v.mul(&UniPoly::from_ints(&[1, 0, 1]))), g);
    }

    #[test]
    fn display_uses_t() {
        assert_eq!(UniPoly::from_ints(&[1, 0, 2]).to_string(), "2*t^2 + 1");
        let p = UniPoly::from_ints(&[0, 3]);
        assert_eq!(UniPoly::from_polynomial(&p.to_polynomial()), Some(p));
    }
}
