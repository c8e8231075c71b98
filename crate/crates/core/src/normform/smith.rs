//! Weak Smith decompositions `P = Q·A` with `Q` left invertible, built by
//! column operations, and the de Bondt refinement.

use num_traits::Zero;

use super::domain::{Bezout, UniPoly};
use crate::error::{Error, Result};
use crate::polyring::Rational;
use crate::qlinalg;
use crate::symlinalg::{self, SymMatrix};

pub type Mat<S> = Vec<Vec<S>>;

pub fn identity<S: Bezout>(n: usize) -> Mat<S> {
    (0..n).map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect()
}

pub fn mat_mul<S: Bezout>(a: &Mat<S>, b: &Mat<S>) -> Mat<S> {
    let inner = b.len();
    let cols = b.first().map(Vec::len).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = S::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s = s.add(&row[k].mul(&b[k][j]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn transpose<S: Bezout>(a: &Mat<S>, cols: usize) -> Mat<S> {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Rank over the fraction field of `S`.
pub fn rank<S: Bezout>(p: &Mat<S>) -> usize {
    let cols = p.first().map(Vec::len).unwrap_or(0);
    let m = SymMatrix::from_fn(p.len(), cols, |i, j| p[i][j].to_polynomial());
    symlinalg::rank(&m)
}

/// `(g, u, v)` with `u·a + v·b = g`; an error when both are zero.
pub fn bezout_gcd<S: Bezout>(a: &S, b: &S) -> Result<(S, S, S)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput("Bézout gcd of two zeros".into()));
    }
    Ok(S::ext_gcd(a, b))
}

/// Gcd of a vector together with coefficients `c` such that `cᵀv = gcd`,
/// folded pairwise from the left.
pub fn bezout_vector<S: Bezout>(v: &[S]) -> (S, Vec<S>) {
    let mut g = S::zero();
    let mut c: Vec<S> = Vec::with_capacity(v.len());
    for x in v {
        if x.is_zero() {
            c.push(S::zero());
            continue;
        }
        let (g2, u, w) = S::ext_gcd(&g, x);
        for ci in c.iter_mut() {
            *ci = ci.mul(&u);
        }
        c.push(w);
        g = g2;
    }
    reduce_bezout(v, &mut c);
    (g, c)
}

/// Keeps `cᵀv` fixed while reducing every `c_j` modulo the smallest entry
/// `v_p` of `v`; the quotients move to `c_p`.
fn reduce_bezout<S: Bezout>(v: &[S], c: &mut [S]) {
    let Some(p) = (0..v.len()).filter(|&i| !v[i].is_zero()).min_by_key(|&i| (v[i].size(), i)) else {
        return;
    };
    for j in 0..v.len() {
        if j == p || c[j].is_zero() {
            continue;
        }
        let (k, rem) = c[j].div_rem(&v[p]);
        if k.is_zero() {
            continue;
        }
        c[j] = rem;
        c[p] = c[p].add(&k.mul(&v[j]));
    }
}

/// `P = Q·A` and `C·Q = I_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeakSmith<S> {
    pub q: Mat<S>,
    pub a: Mat<S>,
    pub c: Mat<S>,
    pub r: usize,
}

impl<S: Bezout> WeakSmith<S> {
    pub fn verify(&self, p: &Mat<S>) -> bool {
        let cols = p.first().map(Vec::len).unwrap_or(0);
        let qa = if self.r == 0 { vec![vec![S::zero(); cols]; p.len()] } else { mat_mul(&self.q, &self.a) };
        qa == *p && mat_mul(&self.c, &self.q) == identity::<S>(self.r)
    }

    pub fn a_is_upper(&self) -> bool {
        self.a.iter().enumerate().all(|(i, row)| row.iter().take(i).all(Bezout::is_zero))
    }
}

pub fn weak_smith<S: Bezout>(p: &Mat<S>, r: usize) -> Result<WeakSmith<S>> {
    decompose(p, r)
}

/// [`weak_smith`] with the zero pattern `A[i][j] = 0` for `i > j` checked.
pub fn weak_smith_upper<S: Bezout>(p: &Mat<S>, r: usize) -> Result<WeakSmith<S>> {
    let ws = decompose(p, r)?;
    if !ws.a_is_upper() {
        return Err(Error::Verification("A is not upper triangular".into()));
    }
    Ok(ws)
}

fn column<S: Bezout>(q: &Mat<S>, j: usize) -> Vec<S> {
    q.iter().map(|row| row[j].clone()).collect()
}

/// Shape, zero and rank preconditions; returns `(m, n)`.
fn check_input<S: Bezout>(p: &Mat<S>, r: usize) -> Result<(usize, usize)> {
    let m = p.len();
    let n = p.first().map(Vec::len).unwrap_or(0);
    if p.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch("rows of different lengths".into()));
    }
    if p.iter().flatten().all(Bezout::is_zero) {
        return Err(Error::ZeroInput("weak Smith decomposition of a zero matrix".into()));
    }
    let rk = rank(p);
    if r < rk {
        return Err(Error::Precondition(format!("r = {r} is below rank {rk}")));
    }
    if r > m {
        return Err(Error::Precondition(format!("r = {r} exceeds the row count {m}")));
    }
    Ok((m, n))
}

/// Some `c` with `c·p = 1` for a column of unit content.
fn certificate<S: Bezout>(p: &[S]) -> Result<Vec<S>> {
    if let Some(c) = S::small_certificate(p) {
        return Ok(c);
    }
    let (g, c) = bezout_vector(p);
    if g != S::one() {
        return Err(Error::Verification(format!("column content {g} is not one")));
    }
    Ok(c)
}

/// The column procedure with each certificate row kept orthogonal to the
/// earlier pivots, so those are never modified and `A = C·P` comes out
/// upper triangular.
fn decompose<S: Bezout>(p: &Mat<S>, r: usize) -> Result<WeakSmith<S>> {
    let (m, n) = check_input(p, r)?;
    // Columns of Q₀ = (P | e_0 … e_{m-1}); each is projected against the
    // pivots found so far, which is what the eliminations in the column
    // procedure amount to.
    let units = (0..m).map(|k| (0..m).map(|i| if i == k { S::one() } else { S::zero() }).collect::<Vec<S>>());
    let candidates = (0..n).map(|j| column(p, j)).chain(units);
    let mut qcols: Vec<Vec<S>> = Vec::with_capacity(r);
    let mut c: Mat<S> = Vec::with_capacity(r);
    for v in candidates {
        if qcols.len() == r {
            break;
        }
        let coords: Vec<S> = c.iter().map(|ck| dot(ck, &v)).collect();
        let w: Vec<S> = (0..m)
            .map(|i| qcols.iter().zip(&coords).fold(v[i].clone(), |acc, (qk, x)| acc.sub(&qk[i].mul(x))))
            .collect();
        if w.iter().all(Bezout::is_zero) {
            continue;
        }
        let g = content(&w);
        let u = g.mul(&S::unit_content(&w));
        let w: Vec<S> = w.iter().map(|x| x.div_exact(&u).expect("content divides the column")).collect();
        let b = certificate(&w)?;
        // b·(I − Q·C) is orthogonal to the earlier pivots.
        let bq: Vec<S> = qcols.iter().map(|qk| dot(&b, qk)).collect();
        let cv: Vec<S> = (0..m)
            .map(|j| c.iter().zip(&bq).fold(b[j].clone(), |acc, (ck, x)| acc.sub(&x.mul(&ck[j]))))
            .collect();
        qcols.push(w);
        c.push(cv);
    }
    if qcols.len() < r {
        return Err(Error::Verification("ran out of nonzero columns".into()));
    }
    let q: Mat<S> = (0..m).map(|i| qcols.iter().map(|qk| qk[i].clone()).collect()).collect();
    let a = mat_mul(&c, p);
    let ws = WeakSmith { q, a, c, r };
    if !ws.verify(p) {
        return Err(Error::Verification("weak Smith certificates do not hold".into()));
    }
    Ok(ws)
}

/// Gcd of the entries, stopping early at a unit.
fn content<S: Bezout>(v: &[S]) -> S {
    let mut g = S::zero();
    for x in v.iter().filter(|x| !x.is_zero()) {
        g = S::gcd(&g, x);
        if g.is_unit() {
            return S::one();
        }
    }
    g
}

fn dot<S: Bezout>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |s, (x, y)| if x.is_zero() || y.is_zero() { s } else { s.add(&x.mul(y)) })
}

/// Matrix of leading coefficients of the columns of `Q`.
pub fn leading_matrix(q: &Mat<UniPoly>, r: usize) -> Vec<Vec<Rational>> {
    let degs: Vec<i64> = (0..r).map(|j| q.iter().map(|row| row[j].degree()).max().unwrap_or(-1)).collect();
    q.iter()
        .map(|row| {
            (0..r)
                .map(|j| {
                    let d = degs[j];
                    if d >= 0 && row[j].degree() == d {
                        row[j].lead()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Weak Smith decomposition over ℚ[t] whose column leading parts are
/// independent: `Q` is replaced by `Q·U` for unitriangular `U` until the
/// leading-coefficient matrix has rank `r`.
pub fn weak_smith_leading(p: &Mat<UniPoly>, r: usize) -> Result<WeakSmith<UniPoly>> {
    let mut ws = weak_smith(p, r)?;
    let col_deg = |q: &Mat<UniPoly>, j: usize| q.iter().map(|row| row[j].degree()).max().unwrap_or(-1);
    let mut guard = 0usize;
    loop {
        // Sort columns by degree, permuting A and C rows alike.
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by_key(|&j| (col_deg(&ws.q, j), j));
        ws.q = ws.q.iter().map(|row| order.iter().map(|&j| row[j].clone()).collect()).collect();
        ws.a = order.iter().map(|&j| ws.a[j].clone()).collect();
        ws.c = order.iter().map(|&j| ws.c[j].clone()).collect();

        let lead = leading_matrix(&ws.q, r);
        if qlinalg::rank(&lead) == r {
            break;
        }
        guard += 1;
        if guard > 10_000 {
            return Err(Error::Verification("degree reduction did not terminate".into()));
        }
        // First column whose leading part depends on the earlier ones.
        let cols: Vec<Vec<Rational>> = (0..r).map(|j| lead.iter().map(|row| row[j].clone()).collect()).collect();
        let i = (1..r)
            .find(|&i| qlinalg::rank(&cols[..=i].to_vec()) <= i)
            .expect("a dependent leading column exists");
        // Solve Σ_{j<i} c_j·lead_j = lead_i.
        let sys: Vec<Vec<Rational>> = (0..ws.q.len()).map(|row| (0..i).map(|j| lead[row][j].clone()).collect()).collect();
        let rhs: Vec<Rational> = (0..ws.q.len()).map(|row| lead[row][i].clone()).collect();
        let (coef, _) = qlinalg::solve_affine(&sys, &rhs, i).expect("dependence has a solution");
        let di = col_deg(&ws.q, i);
        for (j, cj) in coef.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let f = UniPoly::monomial((di - col_deg(&ws.q, j)) as usize, cj.clone());
            for row in ws.q.iter_mut() {
                let delta = f.mul(&row[j]);
                row[i] = row[i].sub(&delta);
            }
            let ai: Vec<UniPoly> = ws.a[i].iter().map(|x| f.mul(x)).collect();
            for (x, y) in ws.a[j].iter_mut().zip(ai) {
                *x = x.add(&y);
            }
            let ci: Vec<UniPoly> = ws.c[i].iter().map(|x| f.mul(x)).collect();
            for (x, y) in ws.c[j].iter_mut().zip(ci) {
                *x = x.add(&y);
            }
        }
    }
    if !ws.verify(p) {
        return Err(Error::Verification("leading-form certificates do not hold".into()));
    }
    Ok(ws)
}

/// `P = Q·D·E` with `Q` left invertible, `D` square of full rank and `E`
/// right invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct DeBondtForm<S> {
    pub q: Mat<S>,
    pub d: Mat<S>,
    pub e: Mat<S>,
    /// Left inverse of `Q`.
    pub q_inv: Mat<S>,
    /// Right inverse of `E`.
    pub e_inv: Mat<S>,
    pub r: usize,
}

impl<S: Bezout> DeBondtForm<S> {
    pub fn verify(&self, p: &Mat<S>) -> bool {
        let id = identity::<S>(self.r);
        mat_mul(&mat_mul(&self.q, &self.d), &self.e) == *p
            && mat_mul(&self.q_inv, &self.q) == id
            && mat_mul(&self.e, &self.e_inv) == id
            && rank(&self.d) == self.r
    }
}

pub fn de_bondt<S: Bezout>(p: &Mat<S>) -> Result<DeBondtForm<S>> {
    if p.iter().flatten().all(Bezout::is_zero) {
        return Err(Error::ZeroInput("de Bondt form of a zero matrix".into()));
    }
    let r = rank(p);
    let first = weak_smith(p, r)?;
    let n = p[0].len();
    let at = transpose(&first.a, n);
    let second = weak_smith(&at, r)?;
    let form = DeBondtForm {
        q: first.q,
        d: transpose(&second.a, r),
        e: transpose(&second.q, r),
        q_inv: first.c,
        e_inv: transpose(&second.c, n),
        r,
    };
    if !form.verify(p) {
        return Err(Error::Verification("de Bondt certificates do not hold".into()));
    }
    Ok(form)
}
