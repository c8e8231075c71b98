//! Normalization of linear-form data `h = g(pᵀx, qᵀx)` to coefficients in
//! the parameter ring.

use num_traits::{One, Signed, Zero};

use super::domain::UniPoly;
use super::smith::weak_smith;
use crate::error::{Error, Result};
use crate::polyring::{gcd_many, substitute, Polynomial, Rational, RationalFunction};
use crate::symlinalg;

/// How the forms were brought into the parameter ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// One form, content removed.
    Single,
    /// Two forms, one entry of `p` divides all of `p`; `q` vanishes there.
    UnitPivot,
    /// Two forms over ℚ[v] for a single parameter `v`, via weak Smith.
    WeakSmith,
    /// Coefficients of `g` stay in the fraction field.
    OverL,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormData {
    pub p: Vec<Polynomial>,
    pub q: Option<Vec<Polynomial>>,
    /// Polynomial in `t` (index `n`) and `u` (index `n + 1`) over the
    /// parameters; a proper fraction only on the [`Route::OverL`] path.
    pub g: RationalFunction,
    pub route: Route,
}

/// Main variables: the complement of the parameters.
pub fn main_vars(arity: usize, params: &[usize]) -> Vec<usize> {
    (0..arity).filter(|v| !params.contains(v)).collect()
}

/// `Σ v_k x_{main_k}`.
pub fn linear_form(v: &[Polynomial], main: &[usize], arity: usize) -> Polynomial {
    let mut s = Polynomial::zero(arity);
    for (c, &x) in v.iter().zip(main) {
        if !c.is_zero() {
            s += &(&c.with_arity(arity) * &Polynomial::var(arity, x));
        }
    }
    s
}

/// Clears denominators, divides out the content over the parameter ring and
/// makes the entry with the largest leading monomial positive.
pub fn normalize_vector(v: &[RationalFunction], arity: usize) -> Vec<Polynomial> {
    let mut den = Polynomial::one(arity);
    for x in v {
        if den.div_exact(x.denom()).is_none() {
            let g = crate::polyring::gcd(&den, x.denom()).expect("nonzero");
            den = &den * &x.denom().div_exact(&g).unwrap();
        }
    }
    let mut out: Vec<Polynomial> = v
        .iter()
        .map(|x| (&x.numer().with_arity(arity) * &den.div_exact(x.denom()).unwrap()).with_arity(arity))
        .collect();
    let g = gcd_many(arity, out.iter());
    if g.is_zero() {
        return out;
    }
    if !g.is_constant() {
        for x in out.iter_mut() {
            *x = x.div_exact(&g).unwrap();
        }
    }
    let mut num: num_bigint::BigInt = Zero::zero();
    let mut dd: num_bigint::BigInt = One::one();
    for x in &out {
        let c = x.rational_content();
        if !c.is_zero() {
            use num_integer::Integer;
            num = num.gcd(c.numer());
            dd = dd.lcm(c.denom());
        }
    }
    let mut scale = Rational::new(num, dd);
    let top = out
        .iter()
        .filter(|x| !x.is_zero())
        .max_by(|a, b| a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0))
        .unwrap();
    if top.leading_coeff().is_negative() {
        scale = -scale;
    }
    let inv = scale.recip();
    out.iter().map(|x| x.scale(&inv)).collect()
}

/// Pivot: smallest index among nonzero entries of minimal total degree.
pub fn pivot_index(v: &[Polynomial]) -> Option<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .min_by_key(|(i, x)| (x.total_degree(), *i))
        .map(|(i, _)| i)
}

/// Recovers `g ∈ R[t]` with `h = g(pᵀx)` from the restriction of `h` to
/// the pivot axis: coefficient `k` divided by `p_i^k`.
fn recover_single(h: &Polynomial, p: &[Polynomial], main: &[usize], t: usize) -> Option<Polynomial> {
    let arity = h.arity();
    let i = pivot_index(p)?;
    let others: Vec<usize> = main.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
    let axis = h.set_zero(&others);
    let coeffs = axis.coefficients_in(main[i]);
    let mut g = Polynomial::zero(arity + 2);
    let mut pk = Polynomial::one(arity);
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            pk = &pk * &p[i];
        }
        if c.is_zero() {
            continue;
        }
        let gk = c.div_exact(&pk)?;
        g += &(&gk.with_arity(arity + 2) * &Polynomial::var(arity + 2, t).pow(k as u32));
    }
    Some(g)
}

/// `g(pᵀx, qᵀx)` for `g` over `n + 2` variables.
pub fn expand(g: &RationalFunction, p: &[Polynomial], q: Option<&[Polynomial]>, main: &[usize], arity: usize) -> RationalFunction {
    let mut values: Vec<RationalFunction> =
        (0..arity).map(|k| RationalFunction::from_poly(Polynomial::var(arity, k))).collect();
    values.push(RationalFunction::from_poly(linear_form(p, main, arity)));
    values.push(RationalFunction::from_poly(match q {
        Some(q) => linear_form(q, main, arity),
        None => Polynomial::zero(arity),
    }));
    let n = substitute(g.numer(), &values).expect("arity matches");
    let d = substitute(g.denom(), &values).expect("arity matches");
    &n / &d
}

fn expands_to(h: &Polynomial, g: &RationalFunction, p: &[Polynomial], q: Option<&[Polynomial]>, main: &[usize]) -> bool {
    let e = expand(g, p, q, main, h.arity());
    e.is_polynomial() && e.numer() == h
}

/// Rewrites `h ∈ L[pᵀx]` (or `L[pᵀx, qᵀx]`) with forms and `g` over the
/// parameter ring, checking the reconstruction exactly.
pub fn normalize_linear_form_data(
    h: &Polynomial,
    p: &[RationalFunction],
    q: Option<&[RationalFunction]>,
    params: &[usize],
) -> Result<LinearFormData> {
    let arity = h.arity();
    let main = main_vars(arity, params);
    if p.len() != main.len() || q.map(|q| q.len() != main.len()).unwrap_or(false) {
        return Err(Error::DimensionMismatch(format!("form vectors must have length {}", main.len())));
    }
    if p.iter().all(RationalFunction::is_zero) {
        return Err(Error::ZeroInput("zero linear form".into()));
    }
    let t = arity;
    let pt = normalize_vector(p, arity);
    let q = match q {
        Some(q) if !q.iter().all(RationalFunction::is_zero) => Some(q),
        _ => None,
    };
    let Some(q) = q else {
        let g = recover_single(h, &pt, &main, t)
            .filter(|g| expands_to(h, &RationalFunction::from_poly(g.clone()), &pt, None, &main))
            .ok_or_else(|| Error::Verification("h is not a polynomial in the given linear form".into()))?;
        return Ok(LinearFormData { p: pt, q: None, g: RationalFunction::from_poly(g), route: Route::Single });
    };
    let qt = normalize_vector(q, arity);
    let pair = symlinalg::SymMatrix::from_fn(main.len(), 2, |i, j| if j == 0 { pt[i].clone() } else { qt[i].clone() });
    if symlinalg::rank(&pair) < 2 {
        // Dependent forms: the second is redundant.
        return normalize_linear_form_data(h, p, None, params);
    }
    if let Some(d) = unit_pivot(h, &pt, &qt, &main) {
        return Ok(d);
    }
    if let Some(d) = via_weak_smith(h, &pt, &qt, &main) {
        return Ok(d);
    }
    over_l(h, &pt, &qt, &main)
        .ok_or_else(|| Error::Verification("h is not a polynomial in the given linear forms".into()))
}

fn unit_pivot(h: &Polynomial, p: &[Polynomial], q: &[Polynomial], main: &[usize]) -> Option<LinearFormData> {
    let arity = h.arity();
    let t = arity;
    let mut order: Vec<usize> = (0..p.len()).filter(|&i| !p[i].is_zero()).collect();
    order.sort_by_key(|&i| (p[i].total_degree(), i));
    for i in order {
        let Some(ptil) = p.iter().map(|x| x.div_exact(&p[i])).collect::<Option<Vec<Polynomial>>>() else {
            continue;
        };
        // q̃ ∝ q − q_i p̃, cleared to coprime entries.
        let diff: Vec<RationalFunction> = q
            .iter()
            .zip(&ptil)
            .map(|(qk, pk)| RationalFunction::from_poly(qk - &(&q[i] * pk)))
            .collect();
        let qtil = normalize_vector(&diff, arity);
        // h(x_i ↦ 2x_i − p̃ᵀx) = f(x_i, q̃ᵀx).
        let xi = main[i];
        let mut values: Vec<Polynomial> = (0..arity).map(|k| Polynomial::var(arity, k)).collect();
        values[xi] = &Polynomial::var(arity, xi).scale(&Rational::from_integer(2.into())) - &linear_form(&ptil, main, arity);
        let shifted = h.compose(&values).ok()?;
        let j = pivot_index(&qtil)?;
        let others: Vec<usize> = main.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &x)| x).collect();
        let plane = shifted.set_zero(&others);
        let mut f = Polynomial::zero(arity + 2);
        let mut ok = true;
        'outer: for (k, ck) in plane.coefficients_in(xi).iter().enumerate() {
            let mut ql = Polynomial::one(arity);
            for (l, cl) in ck.coefficients_in(main[j]).iter().enumerate() {
                if l > 0 {
                    ql = &ql * &qtil[j];
                }
                if cl.is_zero() {
                    continue;
                }
                let Some(c) = cl.div_exact(&ql) else {
                    ok = false;
                    break 'outer;
                };
                let mono = &Polynomial::var(arity + 2, t).pow(k as u32) * &Polynomial::var(arity + 2, t + 1).pow(l as u32);
                f += &(&c.with_arity(arity + 2) * &mono);
            }
        }
        if !ok {
            continue;
        }
        let g = RationalFunction::from_poly(f);
        if expands_to(h, &g, &ptil, Some(&qtil), main) {
            return Some(LinearFormData { p: ptil, q: Some(qtil), g, route: Route::UnitPivot });
        }
    }
    None
}

fn via_weak_smith(h: &Polynomial, p: &[Polynomial], q: &[Polynomial], main: &[usize]) -> Option<LinearFormData> {
    let arity = h.arity();
    let mut vars: Vec<usize> = p.iter().chain(q).flat_map(Polynomial::variables).collect();
    vars.sort_unstable();
    vars.dedup();
    if vars.len() > 1 {
        return None;
    }
    let v = vars.first().copied().unwrap_or(0);
    let to_uni = |x: &Polynomial| -> UniPoly {
        let coeffs = x.coefficients_in(v).iter().map(|c| c.as_constant().unwrap()).collect();
        UniPoly::new(coeffs)
    };
    let from_uni = |u: &UniPoly| -> Polynomial {
        let mut s = Polynomial::zero(arity);
        for (k, c) in u.coeffs().iter().enumerate() {
            s += &Polynomial::var(arity, v).pow(k as u32).scale(c);
        }
        s
    };
    let pm: Vec<Vec<UniPoly>> = p.iter().zip(q).map(|(a, b)| vec![to_uni(a), to_uni(b)]).collect();
    let ws = weak_smith(&pm, 2).ok()?;
    let pt: Vec<Polynomial> = ws.q.iter().map(|row| from_uni(&row[0])).collect();
    let qt: Vec<Polynomial> = ws.q.iter().map(|row| from_uni(&row[1])).collect();
    // g = h(Cᵀ(t, u)) on the main variables.
    let big = arity + 2;
    let tv = Polynomial::var(big, arity);
    let uv = Polynomial::var(big, arity + 1);
    let mut values: Vec<Polynomial> = (0..arity).map(|k| Polynomial::var(big, k)).collect();
    for (k, &x) in main.iter().enumerate() {
        values[x] = &(&from_uni(&ws.c[0][k]).with_arity(big) * &tv) + &(&from_uni(&ws.c[1][k]).with_arity(big) * &uv);
    }
    let g = RationalFunction::from_poly(h.with_arity(big).compose(&values).ok()?);
    expands_to(h, &g, &pt, Some(&qt), main).then_some(LinearFormData { p: pt, q: Some(qt), g, route: Route::WeakSmith })
}

fn over_l(h: &Polynomial, p: &[Polynomial], q: &[Polynomial], main: &[usize]) -> Option<LinearFormData> {
    let arity = h.arity();
    // Left inverse over L from an invertible 2×2 block of (p | q).
    let m = p.len();
    for a in 0..m {
        for b in a + 1..m {
            let det = &(&p[a] * &q[b]) - &(&p[b] * &q[a]);
            if det.is_zero() {
                continue;
            }
            let big = arity + 2;
            let d = RationalFunction::from_poly(det.with_arity(big));
            let lift = |x: &Polynomial| RationalFunction::from_poly(x.with_arity(big));
            let tv = RationalFunction::from_poly(Polynomial::var(big, arity));
            let uv = RationalFunction::from_poly(Polynomial::var(big, arity + 1));
            // Rows a, b of C satisfy C·(p|q) = I restricted to the block.
            let ca = [&lift(&q[b]) / &d, &(-&lift(&p[b])) / &d];
            let cb = [&(-&lift(&q[a])) / &d, &lift(&p[a]) / &d];
            let mut values: Vec<RationalFunction> =
                (0..arity).map(|k| RationalFunction::from_poly(Polynomial::var(big, k))).collect();
            for &x in main {
                values[x] = RationalFunction::zero(big);
            }
            values[main[a]] = &(&ca[0] * &tv) + &(&cb[0] * &uv);
            values[main[b]] = &(&ca[1] * &tv) + &(&cb[1] * &uv);
            let g = substitute(&h.with_arity(big), &values).ok()?.reduce();
            if expands_to(h, &g, p, Some(q), main) {
                return Some(LinearFormData { p: p.to_vec(), q: Some(q.to_vec()), g, route: Route::OverL });
            }
            return None;
        }
    }
    None
}
