//! Gradients, Jacobians, Hessians and transcendence degree via the Jacobian
//! criterion.

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, RationalFunction};
use crate::symlinalg::{self, SymMatrix};

/// Base field for transcendence degrees: ℚ itself, or ℚ(parameters).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    K,
    L,
}

/// A tuple of polynomials together with its main variables. Every other
/// variable of the ambient ring is a parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    components: Vec<Polynomial>,
    arity: usize,
    main: Vec<usize>,
}

impl PolyMap {
    /// Main variables are `x1..x{main_count}`.
    pub fn new(components: Vec<Polynomial>, arity: usize, main_count: usize) -> Result<Self> {
        if main_count > arity {
            return Err(Error::Precondition(format!("main count {main_count} exceeds arity {arity}")));
        }
        Self::with_main(components, arity, (0..main_count).collect())
    }

    pub fn with_main(components: Vec<Polynomial>, arity: usize, main: Vec<usize>) -> Result<Self> {
        if let Some(c) = components.iter().find(|c| c.variables().iter().any(|&v| v >= arity)) {
            return Err(Error::ArityMismatch(format!("component {c} exceeds arity {arity}")));
        }
        if main.iter().any(|&v| v >= arity) {
            return Err(Error::ArityMismatch("main variable out of range".into()));
        }
        let components = components.into_iter().map(|c| c.with_arity(arity)).collect();
        Ok(PolyMap { components, arity, main })
    }

    /// All variables are main.
    pub fn full(components: Vec<Polynomial>, arity: usize) -> Result<Self> {
        Self::new(components, arity, arity)
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn main_vars(&self) -> &[usize] {
        &self.main
    }

    pub fn main_count(&self) -> usize {
        self.main.len()
    }

    pub fn parameter_vars(&self) -> Vec<usize> {
        (0..self.arity).filter(|v| !self.main.contains(v)).collect()
    }

    /// Differentiation variables for the given base.
    pub fn vars_for(&self, base: Base) -> Vec<usize> {
        match base {
            Base::K => (0..self.arity).collect(),
            Base::L => self.main.clone(),
        }
    }

    /// Components with main variables set to zero.
    pub fn constant_part(&self) -> Vec<Polynomial> {
        self.components.iter().map(|c| c.set_zero(&self.main)).collect()
    }

    pub fn with_arity(&self, arity: usize) -> PolyMap {
        assert!(arity >= self.arity);
        PolyMap {
            components: self.components.iter().map(|c| c.with_arity(arity)).collect(),
            arity,
            main: self.main.clone(),
        }
    }

    pub fn as_rational(&self) -> Vec<RationalFunction> {
        self.components.iter().cloned().map(RationalFunction::from_poly).collect()
    }
}

pub fn gradient(h: &Polynomial, main_count: usize) -> Result<PolyMap> {
    if main_count > h.arity() {
        return Err(Error::Precondition(format!("main count {main_count} exceeds arity {}", h.arity())));
    }
    let comps = (0..main_count).map(|i| h.derivative(i)).collect();
    PolyMap::new(comps, h.arity(), main_count)
}

pub fn jacobian(h: &PolyMap, wrt: &[usize]) -> SymMatrix {
    SymMatrix::from_fn(h.len(), wrt.len(), |i, j| h.components[i].derivative(wrt[j]))
}

/// Jacobian of rational functions with row `i` multiplied by the square of
/// the `i`-th denominator; the rank is unchanged.
pub fn jacobian_rational(components: &[RationalFunction], wrt: &[usize]) -> SymMatrix {
    SymMatrix::from_fn(components.len(), wrt.len(), |i, j| {
        let (n, d) = (components[i].numer(), components[i].denom());
        if d.is_constant() {
            n.derivative(wrt[j])
        } else {
            &(&n.derivative(wrt[j]) * d) - &(n * &d.derivative(wrt[j]))
        }
    })
}

pub fn hessian(h: &Polynomial, main_count: usize) -> Result<SymMatrix> {
    let g = gradient(h, main_count)?;
    let vars: Vec<usize> = (0..main_count).collect();
    let m = jacobian(&g, &vars);
    assert!(m.is_symmetric(), "Hessian must be symmetric");
    Ok(m)
}

pub fn trdeg(h: &PolyMap, base: Base) -> usize {
    symlinalg::rank(&jacobian(h, &h.vars_for(base)))
}

pub fn trdeg_rational(components: &[RationalFunction], wrt: &[usize]) -> usize {
    symlinalg::rank(&jacobian_rational(components, wrt))
}

pub fn hessian_rank(h: &Polynomial, main_count: usize) -> Result<usize> {
    Ok(symlinalg::rank(&hessian(h, main_count)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub r_hessian: usize,
    pub trdeg_over_k: usize,
    pub trdeg_over_l: usize,
}

pub fn rank_profile(h: &Polynomial, main_count: usize) -> Result<RankProfile> {
    let g = gradient(h, main_count)?;
    let r_hessian = hessian_rank(h, main_count)?;
    let trdeg_over_l = trdeg(&g, Base::L);
    debug_assert_eq!(r_hessian, trdeg_over_l);
    Ok(RankProfile { r_hessian, trdeg_over_k: trdeg(&g, Base::K), trdeg_over_l })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, Some(n)).unwrap()
    }

    fn map(items: &[&str], n: usize) -> PolyMap {
        PolyMap::full(items.iter().map(|s| p(s, n)).collect(), n).unwrap()
    }

    #[test]
    fn gradient_examples() {
        let g = gradient(&p("x1^2 + x2^2", 2), 2).unwrap();
        assert_eq!(g.components(), &[p("2*x1", 2), p("2*x2", 2)]);
        let g = gradient(&p("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5), 5).unwrap();
        let expect = ["2*x1*x3 + x2*x4", "x1*x4 + 2*x2*x5", "x1^2", "x1*x2", "x2^2"];
        assert_eq!(g.components(), expect.iter().map(|s| p(s, 5)).collect::<Vec<_>>().as_slice());
        let g = gradient(&p("(x4*x1 + x4^2*x2)^2", 4), 2).unwrap();
        assert_eq!(g.components()[0], p("2*x4*(x4*x1 + x4^2*x2)", 4));
        assert_eq!(g.components()[1], p("2*x4^2*(x4*x1 + x4^2*x2)", 4));
        assert!(gradient(&p("x1", 1), 2).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let j = jacobian(&map(&["x1", "x2"], 2), &[0, 1]);
        assert_eq!(j, SymMatrix::identity(2, 2));
        let j = jacobian(&map(&["x1*x2"], 2), &[0, 1]);
        assert_eq!(j.row(0), &[p("x2", 2), p("x1", 2)]);
        // Constant in t (index 1 here).
        let j = jacobian(&map(&["x1"], 2), &[1]);
        assert!(j.is_zero());
    }

    #[test]
    fn hessian_examples() {
        let h = hessian(&p("x1*x2", 2), 2).unwrap();
        assert_eq!(h.row(0), &[p("0", 2), p("1", 2)]);
        let h = hessian(&p("(x1 + 2*x2)^3", 2), 2).unwrap();
        assert_eq!(h.get(1, 1), &p("24*(x1 + 2*x2)", 2));
        assert_eq!(h.get(0, 1), &p("12*(x1 + 2*x2)", 2));
        let h = hessian(&p("x1^2 + 5*x2^2", 2), 2).unwrap();
        assert_eq!(h.get(1, 1), &p("10", 2));
    }

    #[test]
    fn trdeg_examples() {
        assert_eq!(trdeg(&map(&["x1", "x2", "x1*x2"], 2), Base::K), 2);
        assert_eq!(trdeg(&map(&["x1", "x1^2"], 1), Base::K), 1);
        let gn = map(&["2*x1*x3 + x2*x4", "x1*x4 + 2*x2*x5", "x1^2", "x1*x2", "x2^2"], 5);
        assert_eq!(trdeg(&gn, Base::K), 4);
    }

    #[test]
    fn hessian_rank_examples() {
        assert_eq!(hessian_rank(&p("x1^2 + 5*x2^2", 2), 2).unwrap(), 2);
        assert_eq!(hessian_rank(&p("(x1 + 2*x2)^3", 2), 2).unwrap(), 1);
        assert_eq!(hessian_rank(&p("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5), 5).unwrap(), 4);
    }

    #[test]
    fn base_split() {
        let h = p("x4*x1 + x4^3*x2", 4);
        let prof = rank_profile(&h, 2).unwrap();
        assert_eq!(prof, RankProfile { r_hessian: 0, trdeg_over_k: 1, trdeg_over_l: 0 });
    }
}
