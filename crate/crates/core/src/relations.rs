//! Polynomial relations of bounded degree among the components of a map,
//! found by exact linear algebra on monomial coefficients.

use std::collections::BTreeMap;

use crate::polyring::{Monomial, Polynomial, Rational, RationalFunction};
use crate::qlinalg::{self, QMatrix};

/// Exponent vectors in `m` variables of total degree ≤ `degree`.
pub fn exponents(m: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(m, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, degree, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| Monomial::new(a.clone()).cmp(&Monomial::new(b.clone())));
    out
}

/// The relations `f` with `deg f ≤ degree` and `f(H) = 0`, as a reduced
/// basis of coefficient vectors over [`RelationSpace::monomials`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpace {
    pub monomials: Vec<Vec<u32>>,
    pub basis: Vec<Vec<Rational>>,
}

impl RelationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Relations as polynomials in `y1..ym`.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        let m = self.monomials.first().map(Vec::len).unwrap_or(0);
        self.basis
            .iter()
            .map(|v| {
                Polynomial::from_terms(
                    m,
                    self.monomials.iter().zip(v).map(|(e, c)| (Monomial::new(e.clone()), c.clone())),
                )
            })
            .collect()
    }
}

pub fn relation_space(components: &[RationalFunction], degree: u32) -> RelationSpace {
    let m = components.len();
    let monomials = exponents(m, degree);
    let arity = components.iter().map(RationalFunction::arity).max().unwrap_or(1);
    // f(N/d)·d^degree = Σ c_α N^α d^{degree - |α|} with d a common denominator.
    let mut den = Polynomial::one(arity);
    for c in components {
        if !c.is_polynomial() && den.div_exact(c.denom()).is_none() {
            den = &den * c.denom();
        }
    }
    let nums: Vec<Polynomial> = components
        .iter()
        .map(|c| {
            let scale = den.div_exact(c.denom()).expect("common denominator");
            &c.numer().with_arity(arity) * &scale
        })
        .collect();
    let mut npow: Vec<Vec<Polynomial>> = nums.iter().map(|n| vec![Polynomial::one(arity), n.clone()]).collect();
    let mut dpow = vec![Polynomial::one(arity), den.clone()];
    let columns: Vec<Polynomial> = monomials
        .iter()
        .map(|e| {
            let mut t = Polynomial::one(arity);
            for (i, &k) in e.iter().enumerate() {
                while npow[i].len() <= k as usize {
                    let next = npow[i].last().unwrap() * &nums[i];
                    npow[i].push(next);
                }
                t = &t * &npow[i][k as usize];
            }
            let rest = (degree - e.iter().sum::<u32>()) as usize;
            while dpow.len() <= rest {
                let next = dpow.last().unwrap() * &den;
                dpow.push(next);
            }
            &t * &dpow[rest]
        })
        .collect();
    let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for c in &columns {
        for (mono, _) in c.terms() {
            let len = row_index.len();
            row_index.entry(mono.clone()).or_insert(len);
        }
    }
    let mut a: QMatrix = vec![vec![Rational::from_integer(0.into()); columns.len()]; row_index.len()];
    for (j, c) in columns.iter().enumerate() {
        for (mono, coeff) in c.terms() {
            a[row_index[mono]][j] = coeff.clone();
        }
    }
    let kernel = qlinalg::nullspace(&a, columns.len());
    RelationSpace { monomials, basis: qlinalg::span_basis(&kernel) }
}

/// Transcendence degree from relation search: the size of a maximal subset
/// of components without relations of degree ≤ `degree`. Bounded degree
/// can only miss relations, so this is an upper bound that is exact once
/// `degree` reaches the degree of the needed relations.
pub fn trdeg_by_relations(components: &[RationalFunction], degree: u32) -> usize {
    let mut chosen: Vec<RationalFunction> = Vec::new();
    for c in components {
        let mut trial = chosen.clone();
        trial.push(c.clone());
        if relation_space(&trial, degree).dim() == 0 {
            chosen = trial;
        }
    }
    chosen.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn rfs(items: &[&str], n: usize) -> Vec<RationalFunction> {
        items.iter().map(|s| RationalFunction::from_poly(parse_polynomial(s, Some(n)).unwrap())).collect()
    }

    #[test]
    fn finds_product_relation() {
        let rs = relation_space(&rfs(&["x1", "x2", "x1*x2"], 2), 2);
        assert_eq!(rs.dim(), 1);
        let f = &rs.polynomials()[0];
        assert_eq!(f.normalize_unit(), parse_polynomial("x1*x2 - x3", Some(3)).unwrap().normalize_unit());
    }

    #[test]
    fn trdeg_oracle() {
        assert_eq!(trdeg_by_relations(&rfs(&["x1", "x1^2"], 1), 2), 1);
        assert_eq!(trdeg_by_relations(&rfs(&["x1", "x2", "x1*x2"], 2), 2), 2);
        let gn = rfs(&["2*x1*x3 + x2*x4", "x1*x4 + 2*x2*x5", "x1^2", "x1*x2", "x2^2"], 5);
        assert_eq!(trdeg_by_relations(&gn, 2), 4);
    }

    #[test]
    fn rational_components() {
        let g = crate::polyring::parse_rational_function("x1/x2", Some(2)).unwrap();
        let comps = vec![g, RationalFunction::from_poly(parse_polynomial("x2", Some(2)).unwrap())];
        assert_eq!(relation_space(&comps, 3).dim(), 0);
        let sq = &comps[0] * &comps[0];
        assert_eq!(relation_space(&[comps[0].clone(), sq], 2).dim(), 1);
    }
}
