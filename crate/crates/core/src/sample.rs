//! Seeded random generators for evaluation points and test corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyring::{rat, Monomial, Polynomial, Rational};

pub type SeededRng = ChaCha8Rng;

/// Integers for evaluation points and sampled constants lie in `[-POOL, POOL]`.
pub const POOL: i64 = 97;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut impl Rng) -> i64 {
    rng.gen_range(-POOL..=POOL)
}

pub fn nonzero_small_int(rng: &mut impl Rng) -> i64 {
    loop {
        let c = small_int(rng);
        if c != 0 {
            return c;
        }
    }
}

pub fn point(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rat(small_int(rng))).collect()
}

/// Random polynomial with up to `terms` terms of total degree ≤ `max_deg`
/// and integer coefficients in `[-coeff, coeff]`.
pub fn polynomial(rng: &mut impl Rng, arity: usize, max_deg: u32, terms: usize, coeff: i64) -> Polynomial {
    let mut p = Polynomial::zero(arity);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_deg);
        let mut exps = vec![0u32; arity];
        for _ in 0..d {
            if arity > 0 {
                exps[rng.gen_range(0..arity)] += 1;
            }
        }
        let c = rng.gen_range(-coeff..=coeff);
        p += &Polynomial::monomial(Monomial::new(exps), rat(c));
    }
    p
}

/// Random linear form in the given variables.
pub fn linear_form(rng: &mut impl Rng, arity: usize, vars: &[usize], coeff: i64) -> Polynomial {
    let mut p = Polynomial::zero(arity);
    for &v in vars {
        let c = rng.gen_range(-coeff..=coeff);
        p += &Polynomial::var(arity, v).scale(&rat(c));
    }
    p
}

pub fn shuffled<T: Clone>(rng: &mut impl Rng, items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.shuffle(rng);
    v
}
