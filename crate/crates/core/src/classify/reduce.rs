//! Variable reduction `h ↦ h(Cx)` that keeps the Hessian rank.

use num_traits::{One, Zero};

use crate::diffcalc;
use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Rational};
use crate::qlinalg::QMatrix;
use crate::sample;
use crate::symlinalg::{self, SymMatrix};

/// Resampling budget per eliminated variable.
pub const MAX_TRIES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// `h(Cx)` in `n_target` variables.
    pub h: Polynomial,
    /// `N × n_target`: identity on the first `n_target − 1` coordinates, the
    /// last column carries the nonzero `c`-entries of the eliminated rows.
    pub c: QMatrix,
    /// Substitutions tried over all rounds.
    pub tries: usize,
}

/// Eliminates the last variable per round by `x_N ↦ c·x_{N−1}` with `c`
/// drawn from a seeded pool, keeping a round only when the Hessian rank is
/// unchanged.
pub fn db_reduce(h: &Polynomial, n_target: usize, seed: u64) -> Result<Reduction> {
    let big_n = h.arity();
    if n_target == 0 || n_target > big_n {
        return Err(Error::Precondition(format!("target {n_target} outside 1..={big_n}")));
    }
    let hess = diffcalc::hessian(h, big_n)?;
    let r = symlinalg::rank(&hess);
    let lead = SymMatrix::from_fn(n_target, big_n, |i, j| hess.get(i, j).clone());
    if symlinalg::rank(&lead) != r {
        return Err(Error::Precondition(format!(
            "the first {n_target} Hessian rows do not generate its row space"
        )));
    }
    let mut c: QMatrix = (0..big_n)
        .map(|i| (0..big_n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let mut cur = h.clone();
    let mut tries = 0;
    let mut rng = sample::rng(seed);
    for n in (n_target..big_n).rev() {
        // Variables 0..=n are present; x_n goes to c·x_{n−1}.
        let mut accepted = None;
        for _ in 0..MAX_TRIES {
            tries += 1;
            let k = Rational::from_integer(sample::nonzero_small_int(&mut rng).into());
            let mut values: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
            values.push(Polynomial::var(n, n - 1).scale(&k));
            let next = cur.compose(&values)?;
            if diffcalc::hessian_rank(&next, n)? == r {
                accepted = Some((next, k));
                break;
            }
        }
        let Some((next, k)) = accepted else {
            return Err(Error::RetriesExhausted(MAX_TRIES));
        };
        cur = next;
        // C ← C·C_round where C_round maps x_n to k·x_{n−1}.
        for row in c.iter_mut() {
            let moved = std::mem::replace(&mut row[n], Rational::zero());
            row[n - 1] += moved * &k;
            row.truncate(n);
        }
    }
    Ok(Reduction { h: cur, c, tries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, rat};

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, Some(n)).unwrap()
    }

    fn apply(h: &Polynomial, c: &QMatrix) -> Polynomial {
        let n = c[0].len();
        let values: Vec<Polynomial> = c
            .iter()
            .map(|row| {
                let mut s = Polynomial::zero(n);
                for (j, x) in row.iter().enumerate() {
                    s += &Polynomial::var(n, j).scale(x);
                }
                s
            })
            .collect();
        h.compose(&values).unwrap()
    }

    #[test]
    fn two_squares() {
        let h = p("(x1 + x2)^2 + (x3 + x4)^2", 4);
        let red = db_reduce(&h, 3, 0).unwrap();
        assert_eq!(red.h.arity(), 3);
        assert_eq!(diffcalc::hessian_rank(&red.h, 3).unwrap(), 2);
        let k = red.c[3][2].clone();
        assert_ne!(k, rat(-1));
        let one_plus = Polynomial::constant(3, rat(1) + &k);
        let expected = &p("(x1 + x2)^2", 3) + &(&one_plus.pow(2) * &p("x3^2", 3));
        assert_eq!(red.h, expected);
        assert_eq!(apply(&h, &red.c), red.h);
    }

    #[test]
    fn already_small() {
        let h = p("x1^2 + x2^2", 2);
        let red = db_reduce(&h, 2, 7).unwrap();
        assert_eq!(red.h, h);
        assert_eq!(red.tries, 0);
        assert_eq!(red.c, crate::qlinalg::identity(2));
    }

    #[test]
    fn cube_of_form() {
        let h = p("(x1 + x2 + x3)^2", 3);
        let red = db_reduce(&h, 2, 3).unwrap();
        let k = red.c[2][1].clone();
        let expected = (&p("x1", 2) + &Polynomial::var(2, 1).scale(&(rat(1) + &k))).pow(2);
        assert_eq!(red.h, expected);
        assert_eq!(diffcalc::hessian_rank(&red.h, 2).unwrap(), 1);
        // Cform: identity block, then nonzero entries in the last column.
        assert_eq!(red.c[0], vec![rat(1), rat(0)]);
        assert_eq!(red.c[1], vec![rat(0), rat(1)]);
        assert!(!red.c[2][1].is_zero());
    }

    #[test]
    fn precondition_checked() {
        let h = p("x1^2 + x2^2 + x3^2", 3);
        assert!(matches!(db_reduce(&h, 2, 0), Err(Error::Precondition(_))));
        assert!(db_reduce(&h, 4, 0).is_err());
    }
}
