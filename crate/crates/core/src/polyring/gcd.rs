//! Multivariate gcd by recursive primitive pseudo-remainder sequences.

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Greatest common divisor with unit rational content and positive leading
/// coefficient.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroInput("gcd of two zero polynomials".into()));
    }
    let arity = p.arity().max(q.arity());
    Ok(gcd_inner(&p.with_arity(arity), &q.with_arity(arity)).normalize_unit())
}

/// Gcd of a list; zero entries are skipped. Returns zero for an all-zero list.
pub fn gcd_many<'a>(arity: usize, items: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
    let mut g = Polynomial::zero(arity);
    for p in items {
        if p.is_zero() {
            continue;
        }
        g = if g.is_zero() { p.with_arity(arity.max(p.arity())).normalize_unit() } else { gcd_inner(&g, p).normalize_unit() };
        if g.is_constant() {
            break;
        }
    }
    g
}

fn monomial_content(p: &Polynomial) -> Monomial {
    let mut it = p.terms().map(|(m, _)| m);
    let first = it.next().cloned().unwrap_or_else(|| Monomial::one(p.arity()));
    it.fold(first, |acc, m| acc.gcd(m))
}

fn gcd_inner(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let arity = p.arity().max(q.arity());
    if p.is_zero() {
        return q.with_arity(arity);
    }
    if q.is_zero() {
        return p.with_arity(arity);
    }
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(arity);
    }
    if p == q {
        return p.clone();
    }
    // Monomial factors split off cleanly: gcd(m·a, n·b) = gcd(m, n)·gcd(a, b)
    // when a and b have no monomial factor.
    let mp = monomial_content(p);
    let mq = monomial_content(q);
    let mg = mp.gcd(&mq);
    if p.is_monomial() || q.is_monomial() {
        return Polynomial::monomial(mg.padded(arity), Rational::one());
    }
    let p = if mp.is_one() { p.clone() } else { p.div_exact(&Polynomial::monomial(mp, Rational::one())).unwrap() };
    let q = if mq.is_one() { q.clone() } else { q.div_exact(&Polynomial::monomial(mq, Rational::one())).unwrap() };
    let core = gcd_no_monomial(&p, &q);
    core.mul_monomial(&mg.padded(arity), &Rational::one())
}

fn gcd_no_monomial(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let arity = p.arity();
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(arity);
    }
    if p.div_exact(q).is_some() {
        return q.normalize_unit();
    }
    if q.div_exact(p).is_some() {
        return p.normalize_unit();
    }
    let vp = p.variables();
    let vq = q.variables();
    // A variable absent from one side: the gcd divides that side's content
    // with respect to the variable.
    if let Some(&v) = vp.iter().find(|v| !vq.contains(v)) {
        return gcd_with_content(q, p, v);
    }
    if let Some(&v) = vq.iter().find(|v| !vp.contains(v)) {
        return gcd_with_content(p, q, v);
    }
    // Main variable: the common variable of least combined degree.
    let v = *vp.iter().min_by_key(|&&v| (p.degree_in(v) + q.degree_in(v), std::cmp::Reverse(v))).unwrap();
    let pc = p.coefficients_in(v);
    let qc = q.coefficients_in(v);
    let cont_p = gcd_list(arity, &pc);
    let cont_q = gcd_list(arity, &qc);
    let c = gcd_inner(&cont_p, &cont_q);
    let pp: Vec<Polynomial> = pc.iter().map(|x| x.div_exact(&cont_p).unwrap()).collect();
    let qp: Vec<Polynomial> = qc.iter().map(|x| x.div_exact(&cont_q).unwrap()).collect();
    let g = primitive_prs(arity, pp, qp);
    let g = Polynomial::from_coefficients_in(arity, v, &g);
    &c * &g
}

/// gcd(a, b) where `v` occurs in `b` but not in `a`.
fn gcd_with_content(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let mut g = a.clone();
    for c in b.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_inner(&g, &c);
        if g.is_constant() {
            return Polynomial::one(a.arity());
        }
    }
    g.normalize_unit()
}

fn gcd_list(arity: usize, items: &[Polynomial]) -> Polynomial {
    let mut g = Polynomial::zero(arity);
    for c in items {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.normalize_unit() } else { gcd_inner(&g, c).normalize_unit() };
        if g.is_constant() {
            return Polynomial::one(arity);
        }
    }
    g
}

fn trim(v: &mut Vec<Polynomial>) {
    while v.last().map(Polynomial::is_zero).unwrap_or(false) {
        v.pop();
    }
}

fn make_primitive(arity: usize, v: Vec<Polynomial>) -> Vec<Polynomial> {
    let c = gcd_list(arity, &v);
    if c.is_zero() {
        return v;
    }
    let mut out: Vec<Polynomial> = v.iter().map(|x| x.div_exact(&c).unwrap()).collect();
    // Keep integer coefficients with positive leading coefficient.
    let lead = out.last().unwrap().clone();
    let mut scale = Rational::zero();
    for x in &out {
        let rc = x.rational_content();
        if !rc.is_zero() {
            scale = if scale.is_zero() { rc } else { gcd_rational(&scale, &rc) };
        }
    }
    if lead.leading_coeff() < Rational::zero() {
        scale = -scale;
    }
    let inv = scale.recip();
    for x in out.iter_mut() {
        *x = x.scale(&inv);
    }
    out
}

fn gcd_rational(a: &Rational, b: &Rational) -> Rational {
    use num_integer::Integer;
    Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

/// Pseudo-remainder of `a` by `b` as univariate coefficient lists.
fn pseudo_rem(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = bc * &lr;
            r[i + shift] -= &t;
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

fn primitive_prs(arity: usize, a: Vec<Polynomial>, b: Vec<Polynomial>) -> Vec<Polynomial> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        if b.len() == 1 {
            // b is a nonzero constant in the main variable and primitive.
            return vec![Polynomial::one(arity)];
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return make_primitive(arity, b);
        }
        a = b;
        b = make_primitive(arity, r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, Some(6)).unwrap()
    }

    #[test]
    fn univariate_shared_factor() {
        assert_eq!(gcd(&p("t^2 - 1"), &p("t^2 - 2*t + 1")).unwrap(), p("t - 1"));
    }

    #[test]
    fn monomial_gcd() {
        assert_eq!(gcd(&p("x4*x5"), &p("x4^2")).unwrap(), p("x4"));
    }

    #[test]
    fn bivariate_powers() {
        let g = gcd(&p("(x4*x5+1)^3*x5"), &p("(x4*x5+1)^2*x5^2")).unwrap();
        assert_eq!(g, p("(x4*x5+1)^2*x5"));
    }

    #[test]
    fn coprime_and_rational_content() {
        assert!(gcd(&p("x1 + x2"), &p("x1 - x2")).unwrap().is_one());
        assert_eq!(gcd(&p("4*x1 + 6*x2"), &p("2*x1 + 3*x2")).unwrap(), p("2*x1 + 3*x2"));
        assert_eq!(gcd(&p("-2*x1"), &Polynomial::zero(6)).unwrap(), p("x1"));
    }

    #[test]
    fn zero_inputs() {
        assert!(gcd(&Polynomial::zero(2), &Polynomial::zero(2)).is_err());
    }
}
