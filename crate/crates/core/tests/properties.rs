use hessrank::apex;
use hessrank::batch::{self, Exec};
use hessrank::diffcalc::{self, Base, PolyMap};
use hessrank::normform::{self, Bezout, Mat, UniPoly};
use hessrank::polyring::{self, format_polynomial, parse_polynomial, rat, VarNames};
use hessrank::sample;
use hessrank::symlinalg::{self, SymMatrix};
use hessrank::Polynomial;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

fn poly(seed: u64, arity: usize, deg: u32) -> Polynomial {
    sample::polynomial(&mut sample::rng(seed), arity, deg, 4, 5)
}

fn int_matrix(seed: u64, m: usize, n: usize) -> Mat<BigInt> {
    let mut rng = sample::rng(seed);
    (0..m).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-4i64..=4))).collect()).collect()
}

fn polyt_matrix(seed: u64, m: usize, n: usize) -> Mat<UniPoly> {
    let mut rng = sample::rng(seed);
    (0..m)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let d = rng.gen_range(0..=2);
                    UniPoly::new((0..=d).map(|_| rat(rng.gen_range(-3..=3))).collect())
                })
                .collect()
        })
        .collect()
}

/// Unipotent upper triangular substitution composed with a reversal.
fn invertible_substitution(seed: u64, n: usize) -> Vec<Polynomial> {
    let mut rng = sample::rng(seed);
    (0..n)
        .map(|i| {
            let mut v = Polynomial::var(n, n - 1 - i);
            for j in (n - i)..n {
                v += &Polynomial::var(n, j).scale(&rat(rng.gen_range(-2..=2)));
            }
            v
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (poly(a, 3, 3), poly(b, 3, 3), poly(c, 3, 2));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn leibniz_rule(a in any::<u64>(), b in any::<u64>(), var in 0usize..3) {
        let (a, b) = (poly(a, 3, 3), poly(b, 3, 3));
        let lhs = (&a * &b).derivative(var);
        let rhs = &(&a.derivative(var) * &b) + &(&a * &b.derivative(var));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn text_round_trip(a in any::<u64>()) {
        let p = poly(a, 4, 4);
        let text = format_polynomial(&p, VarNames::all_x());
        prop_assert_eq!(parse_polynomial(&text, Some(4)).unwrap(), p);
    }

    #[test]
    fn gcd_divides_and_recovers_common_factor(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (poly(a, 2, 2), poly(b, 2, 2), poly(c, 2, 2));
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let (ac, bc) = (&a * &c, &b * &c);
        let g = polyring::gcd(&ac, &bc).unwrap();
        prop_assert!(ac.div_exact(&g).is_some());
        prop_assert!(bc.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c).is_some());
    }

    #[test]
    fn rank_is_transpose_invariant(seed in any::<u64>(), rows in 1usize..4, cols in 1usize..4) {
        let mut k = seed;
        let m = SymMatrix::from_fn(rows, cols, |_, _| {
            k = k.wrapping_add(1);
            poly(k, 2, 1)
        });
        prop_assert_eq!(symlinalg::rank(&m), symlinalg::rank(&m.transpose()));
        let kernel = symlinalg::right_kernel(&m);
        prop_assert_eq!(kernel.len(), cols - symlinalg::rank(&m));
        for v in &kernel.vectors {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Polynomial::is_zero));
        }
    }

    #[test]
    fn hessian_rank_is_invariant_under_substitution(a in any::<u64>(), t in any::<u64>()) {
        let h = poly(a, 3, 3);
        let hx = h.compose(&invertible_substitution(t, 3)).unwrap();
        prop_assert_eq!(diffcalc::hessian_rank(&h, 3).unwrap(), diffcalc::hessian_rank(&hx, 3).unwrap());
    }

    #[test]
    fn apex_space_members_are_apices(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let l = sample::linear_form(&mut rng, 3, &[0, 1, 2], 3);
        let comps = vec![l.pow(2), &l + &poly(seed, 3, 2), l.clone()];
        let h = PolyMap::full(comps, 3).unwrap();
        for p in apex::projective_apex_space(&h) {
            let pv = apex::constant_vector(&p, 3);
            prop_assert!(apex::is_projective_image_apex(&h, &pv, Base::K).unwrap());
        }
        if let Some(aff) = apex::image_apex_affine(&h) {
            let pv = apex::constant_vector(&aff.point, 3);
            prop_assert!(apex::is_image_apex(&h, &pv, Base::K).unwrap());
        }
    }

    #[test]
    fn weak_smith_over_integers(seed in any::<u64>(), m in 1usize..5, n in 1usize..5, extra in 0usize..2) {
        let p = int_matrix(seed, m, n);
        let rk = normform::rank(&p);
        prop_assume!(rk > 0);
        let r = (rk + extra).min(m);
        let ws = normform::weak_smith_upper(&p, r).unwrap();
        prop_assert!(ws.verify(&p));
        prop_assert!(ws.a_is_upper());
        let db = normform::de_bondt(&p).unwrap();
        prop_assert!(db.verify(&p));
    }

    #[test]
    fn weak_smith_over_polynomials(seed in any::<u64>(), m in 1usize..4, n in 1usize..4) {
        let p = polyt_matrix(seed, m, n);
        let r = normform::rank(&p);
        prop_assume!(r > 0);
        let ws = normform::weak_smith_leading(&p, r).unwrap();
        prop_assert!(ws.verify(&p));
        prop_assert_eq!(hessrank::qlinalg::rank(&normform::leading_matrix(&ws.q, r)), r);
        prop_assert!(normform::de_bondt(&p).unwrap().verify(&p));
    }

    #[test]
    fn bezout_identity(seed in any::<u64>()) {
        let p = polyt_matrix(seed, 1, 2);
        let (a, b) = (&p[0][0], &p[0][1]);
        prop_assume!(!a.is_zero() || !b.is_zero());
        let (g, u, v) = normform::bezout_gcd(a, b).unwrap();
        prop_assert_eq!(u.mul(a).add(&v.mul(b)), g.clone());
        prop_assert!(a.div_exact(&g).is_some() && b.div_exact(&g).is_some());
    }

    #[test]
    fn batch_keeps_order(items in proptest::collection::vec(any::<i32>(), 0..64)) {
        let f = |x: &i32| i64::from(*x) * 3 - 1;
        prop_assert_eq!(batch::map(&items, Exec::Parallel, f), batch::map(&items, Exec::Sequential, f));
    }
}
