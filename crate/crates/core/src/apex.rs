//! Image apices and projective image apices of polynomial maps.
//!
//! Membership is tested through transcendence degrees; apex spaces over ℚ
//! come from the left kernel `G` of the Jacobian, since `a` is an image apex
//! exactly when `Gᵀ(a − H) = 0` and `p` a projective one when `Gᵀp = 0`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::diffcalc::{self, Base, PolyMap};
use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, Rational, RationalFunction};
use crate::qlinalg::{self, QMatrix};
use crate::relations;
use crate::symlinalg::{self, KernelBasis};

fn lift(h: &PolyMap) -> (Vec<RationalFunction>, usize) {
    let t = h.arity();
    let comps = h.with_arity(t + 1).as_rational();
    (comps, t)
}

fn wrt_with(h: &PolyMap, base: Base, t: usize) -> Vec<usize> {
    let mut v = h.vars_for(base);
    v.push(t);
    v
}

fn check_len<T>(h: &PolyMap, v: &[T]) -> Result<()> {
    if v.len() != h.len() {
        return Err(Error::DimensionMismatch(format!("vector of length {} for a map with {} components", v.len(), h.len())));
    }
    Ok(())
}

/// `trdeg(H + t·p) = trdeg(H)` with a fresh variable `t`.
pub fn is_projective_image_apex(h: &PolyMap, p: &[RationalFunction], base: Base) -> Result<bool> {
    check_len(h, p)?;
    if p.iter().all(RationalFunction::is_zero) {
        return Err(Error::ZeroInput("projective apex candidate is zero".into()));
    }
    let (comps, t) = lift(h);
    let tv = RationalFunction::from_poly(Polynomial::var(t + 1, t));
    let shifted: Vec<RationalFunction> =
        comps.iter().zip(p).map(|(c, pi)| c + &(&tv * &pi.with_arity(t + 1))).collect();
    Ok(diffcalc::trdeg_rational(&shifted, &wrt_with(h, base, t)) == diffcalc::trdeg(h, base))
}

/// `trdeg((1 − t)·H + t·a) = trdeg(H)` with a fresh variable `t`.
pub fn is_image_apex(h: &PolyMap, a: &[RationalFunction], base: Base) -> Result<bool> {
    check_len(h, a)?;
    let (comps, t) = lift(h);
    let tv = RationalFunction::from_poly(Polynomial::var(t + 1, t));
    let one_minus = &RationalFunction::one(t + 1) - &tv;
    let moved: Vec<RationalFunction> =
        comps.iter().zip(a).map(|(c, ai)| &(&one_minus * c) + &(&tv * &ai.with_arity(t + 1))).collect();
    Ok(diffcalc::trdeg_rational(&moved, &wrt_with(h, base, t)) == diffcalc::trdeg(h, base))
}

fn clear_denominators(v: &[RationalFunction], arity: usize) -> Vec<Polynomial> {
    let mut den = Polynomial::one(arity);
    for x in v {
        if den.div_exact(x.denom()).is_none() {
            den = &den * x.denom();
        }
    }
    v.iter()
        .map(|x| &x.numer().with_arity(arity) * &den.div_exact(x.denom()).unwrap().with_arity(arity))
        .collect()
}

/// Second route: `p` lies in the column space of the Jacobian.
pub fn is_projective_image_apex_colspace(h: &PolyMap, p: &[RationalFunction], base: Base) -> Result<bool> {
    check_len(h, p)?;
    if p.iter().all(RationalFunction::is_zero) {
        return Err(Error::ZeroInput("projective apex candidate is zero".into()));
    }
    let j = diffcalc::jacobian(h, &h.vars_for(base));
    symlinalg::in_column_space(&j, &clear_denominators(p, h.arity()))
}

pub fn is_image_apex_colspace(h: &PolyMap, a: &[RationalFunction], base: Base) -> Result<bool> {
    check_len(h, a)?;
    let j = diffcalc::jacobian(h, &h.vars_for(base));
    let diff: Vec<RationalFunction> =
        a.iter().zip(h.components()).map(|(ai, hi)| ai - &RationalFunction::from_poly(hi.clone())).collect();
    symlinalg::in_column_space(&j, &clear_denominators(&diff, h.arity()))
}

pub fn constant_vector(v: &[Rational], arity: usize) -> Vec<RationalFunction> {
    v.iter().map(|c| RationalFunction::constant(arity, c.clone())).collect()
}

fn left_kernel_k(h: &PolyMap) -> KernelBasis {
    symlinalg::left_kernel(&diffcalc::jacobian(h, &h.vars_for(Base::K)))
}

/// Linear equations `Σ_i coeff(G_i, μ)·v_i = coeff(rhs_G, μ)` over all
/// kernel vectors `G` and monomials `μ`.
fn constraint_system(h: &PolyMap, kernel: &KernelBasis, with_rhs: bool) -> (QMatrix, Vec<Rational>) {
    let m = h.len();
    let mut rows: QMatrix = Vec::new();
    let mut rhs = Vec::new();
    for g in &kernel.vectors {
        let mut eqs: BTreeMap<Monomial, (Vec<Rational>, Rational)> = BTreeMap::new();
        for (i, gi) in g.iter().enumerate() {
            for (mono, c) in gi.terms() {
                eqs.entry(mono.clone()).or_insert_with(|| (vec![Rational::zero(); m], Rational::zero())).0[i] = c.clone();
            }
        }
        if with_rhs {
            let mut gh = Polynomial::zero(h.arity());
            for (gi, hi) in g.iter().zip(h.components()) {
                gh += &(gi * hi);
            }
            for (mono, c) in gh.terms() {
                eqs.entry(mono.clone()).or_insert_with(|| (vec![Rational::zero(); m], Rational::zero())).1 = c.clone();
            }
        }
        for (_, (row, b)) in eqs {
            rows.push(row);
            rhs.push(b);
        }
    }
    (rows, rhs)
}

/// Reduced basis of `{p ∈ ℚ^m : p ∈ colspace(J H)}`.
pub fn projective_apex_space(h: &PolyMap) -> Vec<Vec<Rational>> {
    let m = h.len();
    let kernel = left_kernel_k(h);
    if kernel.is_empty() {
        return qlinalg::identity(m);
    }
    let (rows, _) = constraint_system(h, &kernel, false);
    qlinalg::span_basis(&qlinalg::nullspace(&rows, m))
}

/// Affine set of image apices in ℚ^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineApex {
    pub point: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

/// Solves `Gᵀa = GᵀH` for `a ∈ ℚ^m`. The reported point is the constant
/// part of `H` when that is an apex, otherwise the solution supported on the
/// last coordinates.
pub fn image_apex_affine(h: &PolyMap) -> Option<AffineApex> {
    let m = h.len();
    let kernel = left_kernel_k(h);
    if kernel.is_empty() {
        return Some(AffineApex { point: value_at_origin(h), directions: qlinalg::identity(m) });
    }
    let (rows, rhs) = constraint_system(h, &kernel, true);
    let (particular, kern) = qlinalg::solve_affine(&rows, &rhs, m)?;
    let directions = qlinalg::span_basis(&kern);
    let c0 = value_at_origin(h);
    let point = if qlinalg::mat_vec(&rows, &c0) == rhs { c0 } else { particular };
    Some(AffineApex { point, directions })
}

fn value_at_origin(h: &PolyMap) -> Vec<Rational> {
    h.components().iter().map(Polynomial::constant_term).collect()
}

/// `(t·H, t)` with `t` a fresh main variable at the highest index.
pub fn homogenize_map(h: &PolyMap) -> PolyMap {
    let t = h.arity();
    let tv = Polynomial::var(t + 1, t);
    let mut comps: Vec<Polynomial> = h.components().iter().map(|c| &tv * &c.with_arity(t + 1)).collect();
    comps.push(tv);
    let mut main = h.main_vars().to_vec();
    main.push(t);
    PolyMap::with_main(comps, t + 1, main).expect("fresh variable is in range")
}

/// The quantities of the degree-one criterion for relation ideals, checked
/// for mutual consistency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanStatus {
    pub r: usize,
    pub s: usize,
    pub has_k_image_apex: bool,
    pub linear_ideal_generated: bool,
    pub constant_part_is_apex: bool,
}

/// Dimension of `{(c0, c) : cᵀH + c0 = 0}`.
pub fn affine_linear_relations(h: &PolyMap) -> usize {
    relations::relation_space(&h.as_rational(), 1).dim()
}

pub fn plan_status(h: &PolyMap) -> Result<PlanStatus> {
    let m = h.len();
    let r = diffcalc::trdeg(h, Base::K);
    let s = projective_apex_space(h).len();
    let has_k_image_apex = image_apex_affine(h).is_some();
    let linear_ideal_generated = affine_linear_relations(h) == m - r;
    let c1 = r <= s;
    let c2 = r <= s + 1 && s <= r && has_k_image_apex;
    if c1 != c2 || c2 != linear_ideal_generated {
        return Err(Error::Verification(format!(
            "degree-one criterion inconsistent: r={r}, s={s}, apex={has_k_image_apex}, linear={linear_ideal_generated}"
        )));
    }
    let constant: Vec<RationalFunction> = h.constant_part().into_iter().map(RationalFunction::from_poly).collect();
    let constant_part_is_apex = is_image_apex(h, &constant, Base::K)?;
    if c1 && !constant_part_is_apex {
        return Err(Error::Verification("constant part is not an image apex".into()));
    }
    Ok(PlanStatus { r, s, has_k_image_apex, linear_ideal_generated, constant_part_is_apex })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, rat};

    fn map(items: &[&str], n: usize) -> PolyMap {
        PolyMap::full(items.iter().map(|s| parse_polynomial(s, Some(n)).unwrap()).collect(), n).unwrap()
    }

    fn cv(v: &[i64], arity: usize) -> Vec<RationalFunction> {
        constant_vector(&v.iter().map(|&x| rat(x)).collect::<Vec<_>>(), arity)
    }

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn projective_membership() {
        let h = map(&["x1", "x2", "x1 + x2"], 2);
        assert!(is_projective_image_apex(&h, &cv(&[1, 1, 2], 2), Base::K).unwrap());
        let h = map(&["x1", "x1^2"], 1);
        assert!(!is_projective_image_apex(&h, &cv(&[0, 1], 1), Base::K).unwrap());
        let h = map(&["3*(x1 + 2*x2)^2", "6*(x1 + 2*x2)^2"], 2);
        assert!(is_projective_image_apex(&h, &cv(&[1, 2], 2), Base::K).unwrap());
        assert!(is_projective_image_apex_colspace(&h, &cv(&[1, 2], 2), Base::K).unwrap());
        assert!(is_projective_image_apex(&h, &cv(&[0, 0], 2), Base::K).is_err());
    }

    #[test]
    fn image_membership() {
        assert!(is_image_apex(&map(&["x1^2", "x1^2"], 1), &cv(&[0, 0], 1), Base::K).unwrap());
        assert!(!is_image_apex(&map(&["x1", "x1^2"], 1), &cv(&[0, 0], 1), Base::K).unwrap());
        assert!(is_image_apex(&map(&["2", "-3"], 1), &cv(&[2, -3], 1), Base::K).unwrap());
    }

    #[test]
    fn apex_spaces() {
        let lin = map(&["x1", "x2", "x1 + x2"], 2);
        assert_eq!(projective_apex_space(&lin), vec![qv(&[1, 0, 1]), qv(&[0, 1, 1])]);
        assert!(projective_apex_space(&map(&["x1", "x1^2"], 1)).is_empty());
        assert_eq!(projective_apex_space(&map(&["3*(x1 + 2*x2)^2", "6*(x1 + 2*x2)^2"], 2)), vec![qv(&[1, 2])]);
    }

    #[test]
    fn affine_apices() {
        let a = image_apex_affine(&map(&["x1", "x2", "x1 + x2 + 3"], 2)).unwrap();
        assert_eq!(a.point, qv(&[0, 0, 3]));
        assert_eq!(a.directions, vec![qv(&[1, 0, 1]), qv(&[0, 1, 1])]);
        assert!(image_apex_affine(&map(&["x1", "x1^2"], 1)).is_none());
        let c = image_apex_affine(&map(&["2", "-3"], 1)).unwrap();
        assert_eq!(c.point, qv(&[2, -3]));
        assert!(c.directions.is_empty());
    }

    #[test]
    fn homogenization() {
        let h = map(&["x1^2"], 1);
        let ht = homogenize_map(&h);
        assert_eq!(ht.components()[0], parse_polynomial("x1^2*x2", Some(2)).unwrap());
        assert_eq!(ht.main_count(), 2);
        let sq = map(&["x1^2", "x1^2"], 1);
        let hs = homogenize_map(&sq);
        assert!(is_image_apex(&sq, &cv(&[0, 0], 1), Base::K).unwrap());
        assert!(is_projective_image_apex(&hs, &cv(&[0, 0, 1], 2), Base::K).unwrap());
        let lin = map(&["x1", "x2", "x1 + x2"], 2);
        let hl = homogenize_map(&lin);
        assert!(is_projective_image_apex(&hl, &cv(&[1, 1, 2, 0], 3), Base::K).unwrap());
    }

    #[test]
    fn plan_examples() {
        let s = plan_status(&map(&["x1", "x2", "x1 + x2 + 3"], 2)).unwrap();
        assert_eq!((s.r, s.s, s.linear_ideal_generated, s.constant_part_is_apex), (2, 2, true, true));
        let s = plan_status(&map(&["x1", "x1^2"], 1)).unwrap();
        assert_eq!((s.r, s.s, s.linear_ideal_generated), (1, 0, false));
        let s = plan_status(&map(&["2", "-3"], 1)).unwrap();
        assert_eq!((s.r, s.s, s.linear_ideal_generated, s.constant_part_is_apex), (0, 0, true, true));
    }
}
