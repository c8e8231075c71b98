//! Decompositions of `h` whose gradient has small transcendence degree.

use crate::apex;
use crate::classify::decomposition::{Decomposition, Form};
use crate::diffcalc::{self, Base};
use crate::error::{Error, Result};
use crate::normform::{self, LinearFormData, Route};
use crate::polyring::{Polynomial, RationalFunction};
use crate::symlinalg::{self, SymMatrix};

/// Relation degree for the image characterization of small-rank output.
pub const DEFAULT_RELATION_DEGREE: u32 = 3;

const MAX_GAMMA_CANDIDATES: usize = 40;

/// Coefficients of `x_i` in the part of `h` of degree one in the main
/// variables `x1..xm`.
pub fn linear_part(h: &Polynomial, m: usize) -> Vec<Polynomial> {
    let main: Vec<usize> = (0..m).collect();
    (0..m)
        .map(|i| {
            let others: Vec<usize> = main.iter().copied().filter(|&v| v != i).collect();
            h.set_zero(&others).coefficients_in(i).get(1).cloned().unwrap_or_else(|| Polynomial::zero(h.arity()))
        })
        .collect()
}

/// A basis of the column space of `block` over `L(x)` whose vectors lie in
/// `R^m`. The space must be spanned by vectors free of main variables.
pub fn column_space_basis(block: &SymMatrix, m: usize) -> Result<Vec<Vec<Polynomial>>> {
    let e = symlinalg::eliminate(block);
    let v = block.submatrix(&(0..block.rows()).collect::<Vec<_>>(), &e.pivot_cols);
    let mut out = Vec::new();
    for l in 0..e.rank {
        let mut w: Vec<Polynomial> = (0..block.rows())
            .map(|k| {
                let rows: Vec<usize> =
                    e.pivot_rows.iter().enumerate().map(|(i, &r)| if i == l { k } else { r }).collect();
                symlinalg::determinant(&v.submatrix(&rows, &(0..e.rank).collect::<Vec<_>>())).expect("square")
            })
            .collect();
        symlinalg::normalize_vector(&mut w);
        if w.iter().any(|x| x.involves_any(&(0..m).collect::<Vec<_>>())) {
            return Err(Error::Verification("column space is not defined over the coefficient field".into()));
        }
        out.push(w);
    }
    Ok(out)
}

fn as_rf(v: &[Polynomial]) -> Vec<RationalFunction> {
    v.iter().cloned().map(RationalFunction::from_poly).collect()
}

fn sub_linear(h: &Polynomial, a: &[Polynomial], m: usize) -> Polynomial {
    h - &normform::linear_form(a, &(0..m).collect::<Vec<_>>(), h.arity())
}

/// `trdeg_{K(γ)} K(γ)(S)` as `trdeg_K K(γ, S) − 1`.
fn trdeg_over(gamma: &RationalFunction, set: &[RationalFunction], arity: usize) -> usize {
    let mut comps = vec![gamma.with_arity(arity)];
    comps.extend(set.iter().map(|x| x.with_arity(arity)));
    diffcalc::trdeg_rational(&comps, &(0..arity).collect::<Vec<_>>()).saturating_sub(1)
}

/// `t·v` with `t` at index `t_index` of `arity` variables.
fn scaled_by(v: &[Polynomial], t_index: usize, arity: usize) -> Vec<RationalFunction> {
    let t = Polynomial::var(arity, t_index);
    v.iter().map(|x| RationalFunction::from_poly(&t * &x.with_arity(arity))).collect()
}

/// Non-constant ratios and entries of the given vectors, lowest height
/// first.
fn gamma_candidates(vectors: &[Vec<RationalFunction>]) -> Vec<RationalFunction> {
    let mut out: Vec<RationalFunction> = Vec::new();
    let push = |x: RationalFunction, out: &mut Vec<RationalFunction>| {
        if !x.is_constant() && !out.contains(&x) {
            out.push(x);
        }
    };
    for v in vectors {
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if !v[i].is_zero() && !v[j].is_zero() {
                    push(&v[i] / &v[j], &mut out);
                }
            }
        }
    }
    for (a, v) in vectors.iter().enumerate() {
        for w in &vectors[a + 1..] {
            for x in v.iter().filter(|x| !x.is_zero()) {
                for y in w.iter().filter(|y| !y.is_zero()) {
                    push(x / y, &mut out);
                }
            }
        }
    }
    for v in vectors {
        for x in v {
            push(x.clone(), &mut out);
        }
    }
    out.sort_by_key(RationalFunction::height);
    out.truncate(MAX_GAMMA_CANDIDATES);
    out
}

fn base_decomposition(form: Form, arity: usize, m: usize) -> Decomposition {
    Decomposition {
        form,
        arity,
        main_count: m,
        g: RationalFunction::zero(arity + 2),
        p: None,
        q: None,
        a_or_b: vec![Polynomial::zero(arity); m],
        lambda: None,
        gamma: None,
        side_condition: true,
        over_l_fallback: false,
        verified: false,
    }
}

/// `h = g + cᵀx` with `g` free of main variables.
fn affine(h: &Polynomial, c: Vec<Polynomial>, form: Form, m: usize) -> Result<Decomposition> {
    let n = h.arity();
    let g = sub_linear(h, &c, m);
    if g.involves_any(&(0..m).collect::<Vec<_>>()) {
        return Err(Error::Verification("gradient is not constant in the main variables".into()));
    }
    let mut d = base_decomposition(form, n, m);
    d.g = RationalFunction::from_poly(g.with_arity(n + 2));
    d.a_or_b = c;
    Ok(d)
}

fn with_forms(mut d: Decomposition, data: LinearFormData) -> Decomposition {
    d.over_l_fallback = data.route == Route::OverL;
    d.g = data.g;
    d.p = Some(data.p);
    d.q = data.q;
    d
}

fn finish(mut d: Decomposition, h: &Polynomial) -> Result<Decomposition> {
    d.verified = d.reconstructs(h);
    if !d.verified {
        return Err(Error::Verification(format!("form ({}) does not reconstruct h", d.form)));
    }
    Ok(d)
}

/// Structural decomposition of `h` over `R = ℚ[x_{m+1}..x_n]` for gradients
/// without projective image apices in `ℚ^m` and with `trdeg_K ≤ 3`.
pub fn classify_gradrel(h: &Polynomial, m: usize) -> Result<Decomposition> {
    let n = h.arity();
    let params: Vec<usize> = (m..n).collect();
    let grad = diffcalc::gradient(h, m)?;
    if !apex::projective_apex_space(&grad).is_empty() {
        return Err(Error::Precondition("the gradient has a projective image apex in ℚ^m".into()));
    }
    let k = diffcalc::trdeg(&grad, Base::K);
    if k > 3 {
        return Err(Error::Precondition(format!("trdeg over ℚ is {k} > 3")));
    }
    let k_apex: Option<Vec<Polynomial>> = apex::image_apex_affine(&grad)
        .map(|a| a.point.into_iter().map(|c| Polynomial::constant(n, c)).collect());
    let block = diffcalc::hessian(h, m)?;
    let rho = symlinalg::rank(&block);

    if k == 0 {
        let a = grad.components().to_vec();
        return finish(affine(h, a, Form::GradConstant, m)?, h);
    }
    let d = match rho {
        0 => {
            let b = grad.components().to_vec();
            match &k_apex {
                Some(a) if k >= 2 => {
                    let dir: Vec<Polynomial> = b.iter().zip(a).map(|(x, y)| x - y).collect();
                    let data =
                        normform::normalize_linear_form_data(&sub_linear(h, a, m), &as_rf(&dir), None, &params)?;
                    let mut d = base_decomposition(Form::SingleForm, n, m);
                    d.a_or_b = a.clone();
                    with_forms(d, data)
                }
                _ => affine(h, b, Form::GradAffine, m)?,
            }
        }
        1 => {
            let p = column_space_basis(&block, m)?.remove(0);
            let (form, c) = match &k_apex {
                Some(a) => (Form::SingleForm, a.clone()),
                None => (Form::SingleFormShifted, linear_part(h, m)),
            };
            let data = normform::normalize_linear_form_data(&sub_linear(h, &c, m), &as_rf(&p), None, &params)?;
            let mut d = base_decomposition(form, n, m);
            d.a_or_b = c;
            with_forms(d, data)
        }
        2 => {
            let Some(a) = &k_apex else {
                return Err(Error::Precondition("rank-2 block without an image apex in ℚ^m".into()));
            };
            let mut basis = column_space_basis(&block, m)?;
            let q = basis.remove(1);
            let p = basis.remove(0);
            let data =
                normform::normalize_linear_form_data(&sub_linear(h, a, m), &as_rf(&p), Some(&as_rf(&q)), &params)?;
            let mut d = base_decomposition(Form::DoubleForm, n, m);
            d.a_or_b = a.clone();
            with_forms(d, data)
        }
        _ => return Err(Error::Precondition(format!("main Hessian block has rank {rho}"))),
    };
    let mut d = finish(d, h)?;
    certify_side_condition(&mut d, k);
    Ok(d)
}

/// Searches `γ` (and `λ` for the shifted form) certifying the trdeg side
/// conditions; leaves `side_condition = false` when the heuristic fails.
fn certify_side_condition(d: &mut Decomposition, k: usize) {
    let n = d.arity;
    let big = n + 2;
    let Some(p) = d.p.clone() else { return };
    let tp = scaled_by(&p, n, big);
    let prf = as_rf(&p);
    d.side_condition = false;
    match d.form {
        Form::SingleForm => {
            let target = if k == 2 { 1 } else { 2 };
            for g in gamma_candidates(&[prf]) {
                if trdeg_over(&g, &tp, big) == target {
                    d.gamma = Some(g);
                    d.side_condition = true;
                    return;
                }
            }
        }
        Form::SingleFormShifted => {
            let b = as_rf(&d.a_or_b);
            let mut lambdas = vec![RationalFunction::zero(n)];
            for (bj, pj) in b.iter().zip(&prf) {
                if !pj.is_zero() {
                    let l = bj / pj;
                    if !lambdas.contains(&l) {
                        lambdas.push(l);
                    }
                }
            }
            // Sparsest shift `b − λp` first.
            let shift = |l: &RationalFunction| -> Vec<RationalFunction> {
                b.iter().zip(&prf).map(|(bi, pi)| bi - &(l * pi)).collect()
            };
            lambdas.sort_by_key(|l| std::cmp::Reverse(shift(l).iter().filter(|x| x.is_zero()).count()));
            for l in lambdas {
                let c = shift(&l);
                for g in gamma_candidates(&[prf.clone(), c.clone()]) {
                    if trdeg_over(&g, &tp, big) + trdeg_over(&g, &c, big) == 1 {
                        d.gamma = Some(g);
                        d.lambda = Some(l);
                        d.side_condition = true;
                        return;
                    }
                }
            }
        }
        Form::DoubleForm => {
            let Some(q) = d.q.clone() else { return };
            let uq = scaled_by(&q, n + 1, big);
            for g in gamma_candidates(&[prf, as_rf(&q)]) {
                if trdeg_over(&g, &tp, big) + trdeg_over(&g, &uq, big) == 2 {
                    d.gamma = Some(g);
                    d.side_condition = true;
                    return;
                }
            }
        }
        _ => d.side_condition = true,
    }
}

/// `h = g(pᵀx[, qᵀx]) + bᵀx` for main Hessian rank at most two over ℚ or
/// ℚ[v], with the image of the gradient checked against `tp (+ uq) + b`.
pub fn classify_small_rank(h: &Polynomial, m: usize) -> Result<Decomposition> {
    classify_small_rank_with(h, m, DEFAULT_RELATION_DEGREE)
}

pub fn classify_small_rank_with(h: &Polynomial, m: usize, relation_degree: u32) -> Result<Decomposition> {
    let n = h.arity();
    let params: Vec<usize> = (m..n).collect();
    if params.len() > 1 {
        return Err(Error::Precondition("coefficient ring must be ℚ or ℚ[v] for one parameter v".into()));
    }
    let block = diffcalc::hessian(h, m)?;
    let r = symlinalg::rank(&block);
    if r > 2 {
        return Err(Error::Precondition(format!("Hessian rank {r} exceeds 2")));
    }
    let b = linear_part(h, m);
    let rest = sub_linear(h, &b, m);
    let mut d = base_decomposition(Form::Plane, n, m);
    d.a_or_b = b;
    let d = match r {
        0 => {
            d.g = RationalFunction::from_poly(rest.with_arity(n + 2));
            d
        }
        1 => {
            let p = column_space_basis(&block, m)?.remove(0);
            with_forms(d, normform::normalize_linear_form_data(&rest, &as_rf(&p), None, &params)?)
        }
        _ => {
            let basis = column_space_basis(&block, m)?;
            let data = normform::normalize_linear_form_data(&rest, &as_rf(&basis[0]), Some(&as_rf(&basis[1])), &params)?;
            with_forms(d, data)
        }
    };
    let d = finish(d, h)?;
    if !d.relations_match(h, relation_degree)? {
        return Err(Error::Verification("gradient image differs from the apex plane".into()));
    }
    Ok(d)
}
