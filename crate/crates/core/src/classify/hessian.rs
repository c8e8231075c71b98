//! Dispatch on the Hessian rank `r` and the number `s` of independent
//! projective image apices of the gradient.

use num_traits::Zero;

use crate::apex::{self, AffineApex};
use crate::classify::decomposition::Decomposition;
use crate::classify::gradrel::classify_gradrel;
use crate::diffcalc::{self, Base, RankProfile};
use crate::error::{Error, Result};
use crate::polyring::{unit_vector, Polynomial, Rational};
use crate::qlinalg::{self, QMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApexReport {
    pub s: usize,
    /// Reduced basis of the projective image apices in ℚ^n.
    pub projective_basis: Vec<Vec<Rational>>,
    pub image_apex: Option<AffineApex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessianClassification {
    pub profile: RankProfile,
    pub apex: ApexReport,
    pub homogeneous: bool,
    /// `T` with `h̃ = h(Tx)`; its inverse transpose sends the apex basis to
    /// the last `s` unit vectors.
    pub transform: QMatrix,
    pub transformed: Polynomial,
    /// `m = n − s`.
    pub main_count: usize,
    pub decomposition: Option<Decomposition>,
    /// Why no decomposition was attempted or found.
    pub out_of_reach: Option<String>,
}

/// The constraints between `r` and `s` for gradients; `Err` names the
/// violated one.
pub fn small_rank_check(r: usize, s: usize, has_image_apex: bool, homogeneous: bool) -> Result<()> {
    let fail = |msg: &str| Err(Error::Verification(format!("(r, s) = ({r}, {s}): {msg}")));
    if !has_image_apex {
        if s == r {
            return fail("s = r without an image apex");
        }
        if r <= 2 && (r, s) != (2, 1) {
            return fail("r ≤ 2 without an image apex forces (2, 1)");
        }
    } else {
        if s + 1 == r {
            return fail("s = r − 1 with an image apex");
        }
        if s != r && r <= 3 && (r, s) != (3, 1) {
            return fail("s ≠ r ≤ 3 with an image apex forces (3, 1)");
        }
    }
    if homogeneous {
        if s + 1 == r {
            return fail("s = r − 1 for homogeneous h");
        }
        if s != r && r <= 4 && (r, s) != (4, 2) {
            return fail("s ≠ r ≤ 4 for homogeneous h forces (4, 2)");
        }
    }
    Ok(())
}

/// Columns: unit vectors completing the apex basis, then the basis.
fn completed_basis(apices: &[Vec<Rational>], n: usize) -> QMatrix {
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    let mut span = apices.to_vec();
    for i in 0..n {
        if span.len() == n {
            break;
        }
        let e = unit_vector(n, i);
        if !qlinalg::in_span(&span, &e) {
            span.push(e.clone());
            cols.push(e);
        }
    }
    cols.extend(apices.iter().cloned());
    qlinalg::transpose(&cols, n)
}

/// `h(Tx)`.
pub fn transform_polynomial(h: &Polynomial, t: &QMatrix) -> Result<Polynomial> {
    let n = h.arity();
    let values: Vec<Polynomial> = t
        .iter()
        .map(|row| {
            let mut s = Polynomial::zero(n);
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    s += &Polynomial::var(n, j).scale(c);
                }
            }
            s
        })
        .collect();
    h.compose(&values)
}

pub fn classify_hessian(h: &Polynomial) -> Result<HessianClassification> {
    let n = h.arity();
    let grad = diffcalc::gradient(h, n)?;
    let profile = diffcalc::rank_profile(h, n)?;
    let r = profile.r_hessian;
    let basis = apex::projective_apex_space(&grad);
    let s = basis.len();
    let image_apex = apex::image_apex_affine(&grad);
    let homogeneous = h.is_homogeneous();
    let has_apex = image_apex.is_some();
    small_rank_check(r, s, has_apex, homogeneous)?;

    let b = completed_basis(&basis, n);
    let t = qlinalg::transpose(&qlinalg::inverse(&b).expect("completed basis is invertible"), n);
    let transformed = transform_polynomial(h, &t)?;
    let m = n - s;
    let moved = apex::projective_apex_space(&diffcalc::gradient(&transformed, n)?);
    let expected: Vec<Vec<Rational>> = (m..n).map(|i| unit_vector(n, i)).collect();
    if moved != expected {
        return Err(Error::Verification("apices were not moved to the last coordinates".into()));
    }
    let sub = diffcalc::gradient(&transformed, m)?;
    if diffcalc::trdeg(&sub, Base::K) != r - s {
        return Err(Error::Verification(format!("trdeg of the reduced gradient differs from r − s = {}", r - s)));
    }
    let apex = ApexReport { s, projective_basis: basis, image_apex };
    let mut out = HessianClassification {
        profile,
        apex,
        homogeneous,
        transform: t,
        transformed: transformed.clone(),
        main_count: m,
        decomposition: None,
        out_of_reach: None,
    };
    let limit = if homogeneous || has_apex { 4 } else { 3 };
    if r > limit {
        out.out_of_reach = Some(format!("Hessian rank {r} exceeds {limit}"));
        return Ok(out);
    }
    match classify_gradrel(&transformed, m) {
        Ok(d) => out.decomposition = Some(d),
        Err(Error::Precondition(msg)) => out.out_of_reach = Some(msg),
        Err(e) => return Err(e),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Form;
    use crate::polyring::parse_polynomial;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, Some(n)).unwrap()
    }

    #[test]
    fn nondegenerate_quadratic() {
        let c = classify_hessian(&p("x1^2 + 5*x2^2", 2)).unwrap();
        assert_eq!((c.profile.r_hessian, c.apex.s), (2, 2));
        let d = c.decomposition.unwrap();
        assert_eq!(d.form, Form::GradConstant);
        assert!(d.a_or_b.is_empty());
        assert!(d.verified);
    }

    #[test]
    fn gordan_noether_cubic() {
        let c = classify_hessian(&p("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5)).unwrap();
        assert_eq!((c.profile.r_hessian, c.apex.s), (4, 2));
        assert_eq!(c.main_count, 3);
        let d = c.decomposition.unwrap();
        assert_eq!(d.form, Form::SingleForm);
        assert!(d.a_or_b.iter().all(Polynomial::is_zero));
        assert_eq!(d.p, Some(vec![p("x4^2", 5), p("x4*x5", 5), p("x5^2", 5)]));
        assert!(d.degree_bounds_hold());
        assert!(d.side_condition);
    }

    #[test]
    fn cube_of_linear_form() {
        let c = classify_hessian(&p("(x1 + 2*x2)^3", 2)).unwrap();
        assert_eq!((c.profile.r_hessian, c.apex.s), (1, 1));
        let d = c.decomposition.unwrap();
        assert_eq!(d.form, Form::GradConstant);
        assert!(d.reconstructs(&c.transformed));
    }

    #[test]
    fn small_rank_constraints() {
        assert!(small_rank_check(2, 1, false, false).is_ok());
        assert!(small_rank_check(1, 1, false, false).is_err());
        assert!(small_rank_check(3, 2, true, false).is_err());
        assert!(small_rank_check(4, 3, true, true).is_err());
        assert!(small_rank_check(4, 2, true, true).is_ok());
    }
}
