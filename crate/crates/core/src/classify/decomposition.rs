use std::fmt;

use crate::diffcalc;
use crate::error::Result;
use crate::normform;
use crate::polyring::{Polynomial, RationalFunction};
use crate::relations;

/// Which structural form a decomposition realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    /// `h = g + aᵀx` with `a ∈ ℚ^m`.
    GradConstant,
    /// `h = g + bᵀx` with `b ∈ R^m`.
    GradAffine,
    /// `h = g(pᵀx) + aᵀx` with `a ∈ ℚ^m`.
    SingleForm,
    /// `h = g(pᵀx) + bᵀx` with `b ∈ R^m`.
    SingleFormShifted,
    /// `h = g(pᵀx, qᵀx) + aᵀx`.
    DoubleForm,
    /// Small Hessian rank: `h = g(pᵀx[, qᵀx]) + bᵀx`.
    Plane,
}

impl Form {
    pub fn label(self) -> &'static str {
        match self {
            Form::GradConstant => "i",
            Form::GradAffine => "ii",
            Form::SingleForm => "iii",
            Form::SingleFormShifted => "iv",
            Form::DoubleForm => "v",
            Form::Plane => "plane",
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A certificate `h = g(pᵀx, qᵀx) + aᵀx`. Main variables are `x1..xm`, the
/// others generate the coefficient ring `R`; `g` lives over `n + 2`
/// variables with `t` at index `n` and `u` at `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub form: Form,
    pub arity: usize,
    pub main_count: usize,
    pub g: RationalFunction,
    pub p: Option<Vec<Polynomial>>,
    pub q: Option<Vec<Polynomial>>,
    pub a_or_b: Vec<Polynomial>,
    pub lambda: Option<RationalFunction>,
    pub gamma: Option<RationalFunction>,
    /// Whether the trdeg side condition was certified by `gamma` (and
    /// `lambda`).
    pub side_condition: bool,
    pub over_l_fallback: bool,
    pub verified: bool,
}

impl Decomposition {
    pub fn parameters(&self) -> Vec<usize> {
        (self.main_count..self.arity).collect()
    }

    pub fn main_vars(&self) -> Vec<usize> {
        (0..self.main_count).collect()
    }

    /// `g(pᵀx, qᵀx) + aᵀx` as an element of `L[x]`.
    pub fn expand(&self) -> RationalFunction {
        let n = self.arity;
        let main = self.main_vars();
        let zero = vec![Polynomial::zero(n); self.main_count];
        let p = self.p.as_deref().unwrap_or(&zero);
        let mut total = normform::expand(&self.g, p, self.q.as_deref(), &main, n);
        total = &total + &RationalFunction::from_poly(normform::linear_form(&self.a_or_b, &main, n));
        total
    }

    pub fn reconstructs(&self, h: &Polynomial) -> bool {
        let e = self.expand();
        e.is_polynomial() && e.numer() == &h.with_arity(self.arity)
    }

    /// The lower degree bounds that hold over a polynomial coefficient
    /// ring: `deg b ≥ 2` for [`Form::GradAffine`], `deg p ≥ 2` for
    /// [`Form::SingleForm`]. Vacuous over ℚ.
    pub fn degree_bounds_hold(&self) -> bool {
        if self.main_count == self.arity {
            return true;
        }
        let deg = |v: &[Polynomial]| v.iter().map(Polynomial::total_degree).max().unwrap_or(-1);
        match self.form {
            Form::GradAffine => deg(&self.a_or_b) >= 2,
            Form::SingleForm => self.p.as_deref().map(deg).unwrap_or(-1) >= 2,
            _ => true,
        }
    }

    /// The image map `tp + uq + a` with fresh `t`, `u` at `n`, `n + 1`.
    pub fn image_map(&self) -> Vec<RationalFunction> {
        let n = self.arity;
        let big = n + 2;
        let t = Polynomial::var(big, n);
        let u = Polynomial::var(big, n + 1);
        (0..self.main_count)
            .map(|i| {
                let mut c = self.a_or_b[i].with_arity(big);
                if let Some(p) = &self.p {
                    c += &(&t * &p[i].with_arity(big));
                }
                if let Some(q) = &self.q {
                    c += &(&u * &q[i].with_arity(big));
                }
                RationalFunction::from_poly(c)
            })
            .collect()
    }

    /// Compares the relations of degree ≤ `degree` over ℚ of the gradient
    /// with those of [`Decomposition::image_map`].
    pub fn relations_match(&self, h: &Polynomial, degree: u32) -> Result<bool> {
        let grad = diffcalc::gradient(&h.with_arity(self.arity), self.main_count)?;
        let left = relations::relation_space(&grad.as_rational(), degree);
        let right = relations::relation_space(&self.image_map(), degree);
        Ok(left == right)
    }
}
