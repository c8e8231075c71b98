//! Normalization of an affine pencil `Py + b` over `L` to `Qz + a` with an
//! identity block in `Q` and a matching zero prefix in `a`.

use crate::error::{Error, Result};
use crate::polyring::{gcd, Polynomial, RationalFunction};
use crate::symlinalg::{self, SymMatrix};

pub type RfMatrix = Vec<Vec<RationalFunction>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilNormalization {
    /// `m × r`; the rows listed in `pivot_rows` form the identity.
    pub q: RfMatrix,
    /// `r × n`: the pivot rows of `P`.
    pub a_mat: RfMatrix,
    pub lambda: Vec<RationalFunction>,
    /// `b − Pλ`, zero on the pivot rows.
    pub a: Vec<RationalFunction>,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

fn arity_of(p: &RfMatrix, b: &[RationalFunction]) -> usize {
    p.iter().flatten().chain(b).map(RationalFunction::arity).max().unwrap_or(0)
}

/// Rows scaled to polynomials; the rank over `L` is unchanged.
fn cleared(rows: &[Vec<RationalFunction>], arity: usize) -> SymMatrix {
    let entries = rows
        .iter()
        .map(|row| {
            let mut den = Polynomial::one(arity);
            for x in row {
                let d = x.denom().with_arity(arity);
                if den.div_exact(&d).is_none() {
                    let g = gcd(&den, &d).expect("denominators are nonzero");
                    den = &den * &d.div_exact(&g).unwrap();
                }
            }
            row.iter()
                .map(|x| &x.numer().with_arity(arity) * &den.div_exact(&x.denom().with_arity(arity)).unwrap())
                .collect()
        })
        .collect();
    SymMatrix::new(entries).expect("rectangular")
}

fn rank_l(rows: &[Vec<RationalFunction>], arity: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    symlinalg::rank(&cleared(rows, arity))
}

fn columns(p: &RfMatrix, rows: &[usize], cols: &[usize]) -> RfMatrix {
    rows.iter().map(|&i| cols.iter().map(|&j| p[i][j].clone()).collect()).collect()
}

/// Inverse of a nonsingular square matrix over `L` by Gauss–Jordan.
pub fn inverse_l(m: &RfMatrix) -> Option<RfMatrix> {
    let n = m.len();
    let arity = m.iter().flatten().map(RationalFunction::arity).max().unwrap_or(0);
    let mut a: RfMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { RationalFunction::one(arity) } else { RationalFunction::zero(arity) }));
            r
        })
        .collect();
    for k in 0..n {
        let piv = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].height())?;
        a.swap(k, piv);
        let inv = a[k][k].recip().ok()?;
        a[k] = a[k].iter().map(|x| (&inv * x).reduce()).collect();
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            let pivot_row = a[k].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = (&*x - &(&f * y)).reduce();
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn mat_mul_l(a: &RfMatrix, b: &RfMatrix, arity: usize) -> RfMatrix {
    let cols = b.first().map(Vec::len).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = RationalFunction::zero(arity);
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            s = &s + &(x * &b[k][j]);
                        }
                    }
                    s.reduce()
                })
                .collect()
        })
        .collect()
}

/// Pivot rows and columns are the lexicographically first ones giving a
/// nonsingular `r × r` block `M`; then `A = P[I, :]`, `Q = P[:, J]·M⁻¹`,
/// `λ_J = M⁻¹·b_I` and `a = b − Pλ`.
pub fn pencil_normalize(p: &RfMatrix, b: &[RationalFunction]) -> Result<PencilNormalization> {
    let m = p.len();
    let n = p.first().map(Vec::len).unwrap_or(0);
    if p.iter().any(|row| row.len() != n) || b.len() != m {
        return Err(Error::DimensionMismatch("pencil shapes do not match".into()));
    }
    let arity = arity_of(p, b).max(1);
    let r = rank_l(p, arity);
    if r == 0 {
        return Err(Error::ZeroInput("pencil matrix is zero".into()));
    }
    let mut pivot_rows = Vec::new();
    for i in 0..m {
        let mut trial = pivot_rows.clone();
        trial.push(i);
        if rank_l(&columns(p, &trial, &(0..n).collect::<Vec<_>>()), arity) == trial.len() {
            pivot_rows = trial;
        }
        if pivot_rows.len() == r {
            break;
        }
    }
    let mut pivot_cols: Vec<usize> = Vec::new();
    for j in 0..n {
        let mut trial = pivot_cols.clone();
        trial.push(j);
        let block: RfMatrix = columns(p, &pivot_rows, &trial);
        let t = transpose_l(&block);
        if rank_l(&t, arity) == trial.len() {
            pivot_cols = trial;
        }
        if pivot_cols.len() == r {
            break;
        }
    }
    let minor = columns(p, &pivot_rows, &pivot_cols);
    let minv = inverse_l(&minor).ok_or_else(|| Error::Verification("pivot block is singular".into()))?;
    let a_mat: RfMatrix = pivot_rows.iter().map(|&i| p[i].clone()).collect();
    let q = mat_mul_l(&columns(p, &(0..m).collect::<Vec<_>>(), &pivot_cols), &minv, arity);
    let beta: RfMatrix = pivot_rows.iter().map(|&i| vec![b[i].with_arity(arity)]).collect();
    let lam_j = mat_mul_l(&minv, &beta, arity);
    let mut lambda = vec![RationalFunction::zero(arity); n];
    for (k, &j) in pivot_cols.iter().enumerate() {
        lambda[j] = lam_j[k][0].clone();
    }
    let lcol: RfMatrix = lambda.iter().map(|x| vec![x.clone()]).collect();
    let pl = mat_mul_l(p, &lcol, arity);
    let a: Vec<RationalFunction> = b.iter().zip(&pl).map(|(x, y)| (&x.with_arity(arity) - &y[0]).reduce()).collect();
    let out = PencilNormalization { q, a_mat, lambda, a, pivot_rows, pivot_cols };
    if !out.verify(p, b) {
        return Err(Error::Verification("pencil identities do not hold".into()));
    }
    Ok(out)
}

fn transpose_l(a: &RfMatrix) -> RfMatrix {
    let cols = a.first().map(Vec::len).unwrap_or(0);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

impl PencilNormalization {
    /// `P = QA`, `a = b − Pλ`, identity block of `Q` and zero prefix of `a`
    /// on the pivot rows.
    pub fn verify(&self, p: &RfMatrix, b: &[RationalFunction]) -> bool {
        let arity = arity_of(p, b).max(1);
        let eq = |x: &RationalFunction, y: &RationalFunction| (&x.with_arity(arity) - &y.with_arity(arity)).is_zero();
        let qa = mat_mul_l(&self.q, &self.a_mat, arity);
        let factor = qa.iter().zip(p).all(|(r1, r2)| r1.iter().zip(r2).all(|(x, y)| eq(x, y)));
        let lcol: RfMatrix = self.lambda.iter().map(|x| vec![x.clone()]).collect();
        let pl = mat_mul_l(p, &lcol, arity);
        let shift = self.a.iter().zip(b).zip(&pl).all(|((ai, bi), pli)| eq(ai, &(&bi.with_arity(arity) - &pli[0])));
        let block = self.pivot_rows.iter().enumerate().all(|(k, &i)| {
            self.q[i].iter().enumerate().all(|(l, x)| if k == l { eq(x, &RationalFunction::one(arity)) } else { x.is_zero() })
        });
        let prefix = self.pivot_rows.iter().all(|&i| self.a[i].is_zero());
        factor && shift && block && prefix
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffcalc;
    use crate::polyring::parse_rational_function;
    use crate::sample;

    fn rf(s: &str, n: usize) -> RationalFunction {
        parse_rational_function(s, Some(n)).unwrap()
    }

    fn mat(rows: &[&[&str]], n: usize) -> RfMatrix {
        rows.iter().map(|r| r.iter().map(|s| rf(s, n)).collect()).collect()
    }

    #[test]
    fn unit_pivot() {
        let p = mat(&[&["1"], &["x4"]], 4);
        let b = vec![rf("0", 4), rf("1", 4)];
        let pn = pencil_normalize(&p, &b).unwrap();
        assert_eq!(pn.q, mat(&[&["1"], &["x4"]], 4));
        assert_eq!(pn.a_mat, mat(&[&["1"]], 4));
        assert!(pn.lambda[0].is_zero());
        assert_eq!(pn.a, vec![rf("0", 4), rf("1", 4)]);
    }

    #[test]
    fn square_integer_pencil() {
        let p = mat(&[&["2", "4"], &["6", "8"]], 1);
        let b = vec![rf("1", 1), rf("1", 1)];
        let pn = pencil_normalize(&p, &b).unwrap();
        assert!(pn.a.iter().all(RationalFunction::is_zero));
        assert_eq!(pn.q, mat(&[&["1", "0"], &["0", "1"]], 1));
        assert!(pencil_normalize(&mat(&[&["0"]], 1), &[rf("1", 1)]).is_err());
    }

    /// `trdeg_K K(Qz + a) = trdeg_K K(Py + b)` with fresh `y`, `z`.
    fn trdeg_pencil(p: &RfMatrix, b: &[RationalFunction], base_arity: usize) -> usize {
        let cols = p[0].len();
        let arity = base_arity + cols;
        let comps: Vec<RationalFunction> = p
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut s = bi.with_arity(arity);
                for (j, x) in row.iter().enumerate() {
                    s = &s + &(&x.with_arity(arity) * &RationalFunction::from_poly(Polynomial::var(arity, base_arity + j)));
                }
                s
            })
            .collect();
        diffcalc::trdeg_rational(&comps, &(0..arity).collect::<Vec<_>>())
    }

    #[test]
    fn trdeg_preserved_on_random_pencil() {
        let mut rng = sample::rng(11);
        for _ in 0..3 {
            let p: RfMatrix = (0..3)
                .map(|_| {
                    (0..2)
                        .map(|_| {
                            let num = sample::polynomial(&mut rng, 4, 2, 2, 5).set_zero(&[0, 1, 2]);
                            let den = &Polynomial::var(4, 3) + &Polynomial::from_int(4, sample::nonzero_small_int(&mut rng));
                            RationalFunction::new(num, den).unwrap()
                        })
                        .collect()
                })
                .collect();
            let b: Vec<RationalFunction> =
                (0..3).map(|_| RationalFunction::from_poly(sample::polynomial(&mut rng, 4, 2, 2, 5).set_zero(&[0, 1, 2]))).collect();
            if rank_l(&p, 4) == 0 {
                continue;
            }
            let pn = pencil_normalize(&p, &b).unwrap();
            assert_eq!(trdeg_pencil(&pn.q, &pn.a, 4), trdeg_pencil(&p, &b, 4));
        }
    }
}
