//! Dense linear algebra over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::polyring::Rational;

pub type QMatrix = Vec<Vec<Rational>>;

/// Reduced row echelon form in place, visiting columns in `order`.
/// Returns the pivot columns in the order they were found.
pub fn rref_ordered(a: &mut QMatrix, order: &[usize]) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let (src, dst) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d -= &f * s;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rref(a: &mut QMatrix) -> Vec<usize> {
    let cols = a.first().map(Vec::len).unwrap_or(0);
    let order: Vec<usize> = (0..cols).collect();
    rref_ordered(a, &order)
}

pub fn rank(a: &QMatrix) -> usize {
    let mut b = a.clone();
    rref(&mut b).len()
}

/// Basis of `{x : a·x = 0}`; one vector per free column, with a 1 there.
pub fn nullspace(a: &QMatrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut b = a.clone();
    let pivots = rref(&mut b);
    kernel_from_rref(&b, &pivots, cols)
}

fn kernel_from_rref(b: &QMatrix, pivots: &[usize], cols: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -b[r][f].clone();
        }
        out.push(v);
    }
    out
}

/// Solves `a·x = rhs`. Free variables are set to zero; pivots are taken
/// from the highest column index down, so a solution concentrates on the
/// last coordinates. Returns `None` when inconsistent.
pub fn solve_affine(a: &QMatrix, rhs: &[Rational], cols: usize) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut aug: QMatrix = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let order: Vec<usize> = (0..cols).rev().collect();
    let pivots = rref_ordered(&mut aug, &order);
    for row in aug.iter().skip(pivots.len()) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    let mut kernel = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -aug[r][f].clone();
        }
        kernel.push(v);
    }
    Some((x, kernel))
}

/// Solves the integer system `a·x = rhs` over ℚ by fraction-free
/// elimination, free variables set to zero. `None` when inconsistent.
pub fn solve_integer(a: &[Vec<BigInt>], rhs: &[BigInt], cols: usize) -> Option<Vec<Rational>> {
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    for c in 0..cols {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].bits()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pr = &head[r];
        for row in tail.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..=cols {
                let v = &pr[c] * &row[j] - &f * &pr[j];
                row[j] = v / &prev;
            }
        }
        prev = m[r][c].clone();
        pivots.push(c);
    }
    if m[pivots.len()..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (k, &pc) in pivots.iter().enumerate().rev() {
        let mut acc = Rational::from_integer(m[k][cols].clone());
        for &j in &pivots[k + 1..] {
            if !m[k][j].is_zero() {
                acc -= &x[j] * Rational::from_integer(m[k][j].clone());
            }
        }
        x[pc] = acc / Rational::from_integer(m[k][pc].clone());
    }
    Some(x)
}

const PRIME: u64 = (1 << 61) - 1;

/// Whether `a·x = rhs` is consistent modulo a large prime; a cheap
/// filter before [`solve_integer`], exact except for unlucky primes.
pub fn consistent_mod_prime(a: &[Vec<BigInt>], rhs: &[BigInt], cols: usize) -> bool {
    let big = BigInt::from(PRIME);
    let red = |x: &BigInt| x.mod_floor(&big).to_u64().expect("reduced below the prime");
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().chain(std::iter::once(b)).map(red).collect())
        .collect();
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % PRIME as u128) as u64;
    let inv = |x: u64| {
        let (mut base, mut e, mut acc) = (x, PRIME - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let rows = m.len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let pinv = inv(m[r][c]);
        let pivot_row: Vec<u64> = m[r].iter().map(|&v| mul(v, pinv)).collect();
        for row in m[r + 1..].iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..=cols {
                row[j] = (row[j] + PRIME - mul(f, pivot_row[j])) % PRIME;
            }
        }
        r += 1;
    }
    m[r..].iter().all(|row| row[cols] == 0)
}

/// Row-reduced basis of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut b: QMatrix = vectors.to_vec();
    let r = rref(&mut b).len();
    b.truncate(r);
    b
}

pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut with: QMatrix = basis.to_vec();
    with.push(v.to_vec());
    rank(&with) == rank(&basis.to_vec())
}

pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut aug: QMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let order: Vec<usize> = (0..n).collect();
    if rref_ordered(&mut aug, &order).len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn transpose(a: &QMatrix, cols: usize) -> QMatrix {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix, inner: usize, cols: usize) -> QMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = Rational::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &QMatrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |s, (x, y)| s + x * y))
        .collect()
}

pub fn identity(n: usize) -> QMatrix {
    (0..n).map(|i| crate::polyring::unit_vector(n, i)).collect()
}
