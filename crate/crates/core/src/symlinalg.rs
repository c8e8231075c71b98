//! Linear algebra over the rational function field for polynomial matrices.
//!
//! Ranks come from fraction-free (Bareiss) elimination with full pivoting;
//! kernel vectors are assembled from maximal minors, so every entry stays a
//! polynomial.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::{gcd_many, Polynomial, Rational};
use crate::qlinalg::{self, QMatrix};
use crate::sample;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    arity: usize,
    entries: Vec<Vec<Polynomial>>,
}

impl SymMatrix {
    /// Builds a matrix from rows; entries are promoted to a shared arity.
    pub fn new(entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map(Vec::len).unwrap_or(0);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("rows of different lengths".into()));
        }
        let arity = entries.iter().flatten().map(Polynomial::arity).max().unwrap_or(0);
        let entries = entries
            .into_iter()
            .map(|r| r.into_iter().map(|p| if p.arity() == arity { p } else { p.with_arity(arity) }).collect())
            .collect();
        Ok(SymMatrix { rows, cols, arity, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let entries = (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect();
        SymMatrix::new(entries).expect("rectangular by construction")
    }

    pub fn identity(n: usize, arity: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Polynomial::one(arity) } else { Polynomial::zero(arity) })
    }

    pub fn from_rational(a: &QMatrix, cols: usize, arity: usize) -> Self {
        Self::from_fn(a.len(), cols, |i, j| Polynomial::constant(arity, a[i][j].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.entries[j][i].clone())
    }

    pub fn mul(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let arity = self.arity.max(other.arity);
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut s = Polynomial::zero(arity);
            for k in 0..self.cols {
                if !self.entries[i][k].is_zero() && !other.entries[k][j].is_zero() {
                    s += &(&self.entries[i][k] * &other.entries[k][j]);
                }
            }
            s
        }))
    }

    pub fn mul_vec(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|i| dot(&self.entries[i], v, self.arity)).collect())
    }

    /// `vᵀ·M`.
    pub fn vec_mul(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} rows", v.len(), self.rows)));
        }
        Ok((0..self.cols).map(|j| dot(v, &self.column(j), self.arity)).collect())
    }

    pub fn with_column(&self, v: &[Polynomial]) -> Result<Self> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("column of length {} for {} rows", v.len(), self.rows)));
        }
        let entries = self
            .entries
            .iter()
            .zip(v)
            .map(|(r, x)| {
                let mut r = r.clone();
                r.push(x.clone());
                r
            })
            .collect();
        Self::new(entries)
    }

    pub fn with_row(&self, v: &[Polynomial]) -> Result<Self> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("row of length {} for {} columns", v.len(), self.cols)));
        }
        let mut entries = self.entries.clone();
        entries.push(v.to_vec());
        Self::new(entries)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.entries[rows[i]][cols[j]].clone())
    }

    pub fn eval(&self, point: &[Rational]) -> QMatrix {
        self.entries.iter().map(|r| r.iter().map(|p| p.eval(point)).collect()).collect()
    }
}

fn dot(a: &[Polynomial], b: &[Polynomial], arity: usize) -> Polynomial {
    let mut s = Polynomial::zero(arity);
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

/// Outcome of fraction-free elimination: rank, the original indices of the
/// pivot rows and columns, and the last pivot (a maximal minor up to sign).
#[derive(Clone, Debug)]
pub struct Elimination {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
    pub minor: Polynomial,
    /// Sign of the row/column permutation applied.
    pub sign_negative: bool,
}

pub fn eliminate(m: &SymMatrix) -> Elimination {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.entries.clone();
    let mut rp: Vec<usize> = (0..rows).collect();
    let mut cp: Vec<usize> = (0..cols).collect();
    let mut prev = Polynomial::one(m.arity.max(1));
    let mut neg = false;
    let mut k = 0;
    while k < rows.min(cols) {
        // Pivot with the fewest terms, then lowest degree.
        let mut best: Option<(usize, i64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if x.is_zero() {
                    continue;
                }
                let key = (x.num_terms(), x.total_degree());
                if best.map(|(t, d, _, _)| key < (t, d)).unwrap_or(true) {
                    best = Some((key.0, key.1, i, j));
                }
            }
        }
        let Some((_, _, pi, pj)) = best else { break };
        if pi != k {
            a.swap(k, pi);
            rp.swap(k, pi);
            neg = !neg;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            cp.swap(k, pj);
            neg = !neg;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = std::mem::replace(&mut row[k], Polynomial::zero(m.arity));
            for j in k + 1..cols {
                let mut v = pivot * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &(&lead * &pivot_row[j]);
                }
                row[j] = if prev.is_one() {
                    v
                } else {
                    v.div_exact(&prev).expect("Bareiss division is exact")
                };
            }
        }
        prev = a[k][k].clone();
        k += 1;
    }
    let mut pivot_rows = rp[..k].to_vec();
    let mut pivot_cols = cp[..k].to_vec();
    pivot_rows.sort_unstable();
    pivot_cols.sort_unstable();
    Elimination { rank: k, pivot_rows, pivot_cols, minor: prev, sign_negative: neg }
}

/// Determinant of a square matrix.
pub fn determinant(m: &SymMatrix) -> Result<Polynomial> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    if m.rows == 0 {
        return Ok(Polynomial::one(m.arity.max(1)));
    }
    let e = eliminate(m);
    if e.rank < m.rows {
        return Ok(Polynomial::zero(m.arity));
    }
    Ok(if e.sign_negative { -e.minor } else { e.minor })
}

/// Rank over the rational function field.
pub fn rank(m: &SymMatrix) -> usize {
    let full = m.rows.min(m.cols);
    if full == 0 || m.is_zero() {
        return 0;
    }
    // A nonsingular evaluation certifies full rank without elimination.
    if numeric_rank_max(m, 2, 0x5eed) == full {
        return full;
    }
    eliminate(m).rank
}

/// Largest rank over `tries` seeded integer points; a lower bound for `rank`.
pub fn numeric_rank_max(m: &SymMatrix, tries: usize, seed: u64) -> usize {
    let mut rng = sample::rng(seed);
    let full = m.rows.min(m.cols);
    let mut best = 0;
    for _ in 0..tries {
        let pt = sample::point(&mut rng, m.arity);
        best = best.max(qlinalg::rank(&m.eval(&pt)));
        if best == full {
            break;
        }
    }
    best
}

/// Basis of a kernel; entries are polynomials with unit content.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<Polynomial>>,
}

impl KernelBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Basis of `{v : M·v = 0}`.
pub fn right_kernel(m: &SymMatrix) -> KernelBasis {
    let e = eliminate(m);
    let arity = m.arity;
    if e.rank == 0 {
        let vectors = (0..m.cols)
            .map(|k| (0..m.cols).map(|j| if j == k { Polynomial::one(arity) } else { Polynomial::zero(arity) }).collect())
            .collect();
        return KernelBasis { vectors };
    }
    let core = m.submatrix(&e.pivot_rows, &e.pivot_cols);
    let det = determinant(&core).expect("square");
    let mut vectors = Vec::new();
    for k in (0..m.cols).filter(|c| !e.pivot_cols.contains(c)) {
        let mut v = vec![Polynomial::zero(arity); m.cols];
        v[k] = det.clone();
        let rhs: Vec<Polynomial> = e.pivot_rows.iter().map(|&i| m.entries[i][k].clone()).collect();
        for (t, &jc) in e.pivot_cols.iter().enumerate() {
            let replaced = SymMatrix::from_fn(e.rank, e.rank, |i, j| {
                if j == t {
                    rhs[i].clone()
                } else {
                    core.entries[i][j].clone()
                }
            });
            v[jc] = -determinant(&replaced).expect("square");
        }
        normalize_vector(&mut v);
        vectors.push(v);
    }
    KernelBasis { vectors }
}

/// Basis of `{G : Gᵀ·M = 0}`.
pub fn left_kernel(m: &SymMatrix) -> KernelBasis {
    right_kernel(&m.transpose())
}

pub fn in_column_space(m: &SymMatrix, v: &[Polynomial]) -> Result<bool> {
    let aug = m.with_column(v)?;
    Ok(rank(&aug) == rank(m))
}

/// Divides out the polynomial and rational content and makes the leading
/// coefficient of the first nonzero entry positive.
pub fn normalize_vector(v: &mut [Polynomial]) {
    let arity = v.iter().map(Polynomial::arity).max().unwrap_or(0);
    let g = gcd_many(arity, v.iter());
    if g.is_zero() {
        return;
    }
    if !g.is_constant() {
        for x in v.iter_mut() {
            *x = x.div_exact(&g).expect("gcd divides every entry");
        }
    }
    let mut num = num_bigint::BigInt::zero();
    let mut den = num_bigint::BigInt::from(1);
    for x in v.iter() {
        for (_, c) in x.terms() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
    }
    let mut scale = Rational::new(num, den);
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.leading_coeff().is_negative() {
            scale = -scale;
        }
    }
    let inv = scale.recip();
    for x in v.iter_mut() {
        *x = x.scale(&inv);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn mat(rows: &[&[&str]], n: usize) -> SymMatrix {
        SymMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_polynomial(s, Some(n)).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SymMatrix::identity(3, 1)), 3);
        assert_eq!(rank(&mat(&[&["x1", "x2"], &["x1*x2", "x2^2"]], 2)), 1);
        let h = mat(
            &[
                &["2*x3", "x4", "2*x1", "x2", "0"],
                &["x4", "2*x5", "0", "x1", "2*x2"],
                &["2*x1", "0", "0", "0", "0"],
                &["x2", "x1", "0", "0", "0"],
                &["0", "2*x2", "0", "0", "0"],
            ],
            5,
        );
        assert_eq!(rank(&h), 4);
        assert_eq!(eliminate(&h).rank, 4);
        assert_eq!(numeric_rank_max(&h, 20, 1), 4);
    }

    #[test]
    fn left_kernel_examples() {
        let k = left_kernel(&mat(&[&["1"], &["1"]], 1));
        assert_eq!(k.vectors, vec![vec![parse_polynomial("1", Some(1)).unwrap(), parse_polynomial("-1", Some(1)).unwrap()]]);
        let j = mat(&[&["6*x1 + 12*x2", "12*x1 + 24*x2"], &["12*x1 + 24*x2", "24*x1 + 48*x2"]], 2);
        let k = left_kernel(&j);
        assert_eq!(k.len(), 1);
        assert_eq!(k.vectors[0], vec![Polynomial::from_int(2, 2), Polynomial::from_int(2, -1)]);
        assert!(j.vec_mul(&k.vectors[0]).unwrap().iter().all(Polynomial::is_zero));
        assert!(left_kernel(&SymMatrix::identity(2, 1)).is_empty());
    }

    #[test]
    fn kernel_of_symbolic_matrix() {
        let m = mat(&[&["x1", "x2", "x3"], &["x2", "x3", "x1"]], 3);
        let k = right_kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k.vectors[0]).unwrap().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn column_space_examples() {
        let id = SymMatrix::identity(2, 1);
        let v = |s: &[&str], n| s.iter().map(|x| parse_polynomial(x, Some(n)).unwrap()).collect::<Vec<_>>();
        assert!(in_column_space(&id, &v(&["5", "7"], 1)).unwrap());
        let c = mat(&[&["x1"], &["x2"]], 2);
        assert!(!in_column_space(&c, &v(&["x2", "x1"], 2)).unwrap());
        assert!(in_column_space(&c, &v(&["2*x1", "2*x2"], 2)).unwrap());
        assert!(in_column_space(&c, &v(&["x1"], 2)).is_err());
    }

    #[test]
    fn determinant_sign() {
        let m = mat(&[&["0", "1"], &["1", "0"]], 1);
        assert_eq!(determinant(&m).unwrap(), Polynomial::from_int(1, -1));
        let m = mat(&[&["x1", "x2"], &["x2", "x1"]], 2);
        assert_eq!(determinant(&m).unwrap(), parse_polynomial("x1^2 - x2^2", None).unwrap());
    }
}
