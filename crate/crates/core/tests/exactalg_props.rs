use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use skeinlab::exactalg::isolate::eval_int_poly;
use skeinlab::exactalg::{
    cheb_e, cheb_t, compose_laurent, isolate_roots, multiplicity_at, rat, squarefree_part,
    ComplexBall, LaurentPoly1, UniPoly,
};

fn small_poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-6i64..=6, 1..7).prop_map(UniPoly::from_ints)
}

fn ball(q: &BigRational) -> ComplexBall {
    ComplexBall::from_rational(q, 128)
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-1000i64..=1000, 1i64..=97).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

#[test]
fn chebyshev_laurent_identities() {
    let z = LaurentPoly1::from_int_terms([(1, 1), (-1, 1)]);
    let w = LaurentPoly1::from_int_terms([(1, 1), (-1, -1)]);
    for k in 1..=64i64 {
        assert_eq!(
            compose_laurent(&cheb_t(k as u32), &z),
            LaurentPoly1::from_int_terms([(k, 1), (-k, 1)])
        );
    }
    for i in 0..=64i64 {
        assert_eq!(
            &compose_laurent(&cheb_e(i as u32), &z) * &w,
            LaurentPoly1::from_int_terms([(i + 1, 1), (-i - 1, -1)])
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn squarefree_part_is_idempotent(p in small_poly(), q in small_poly()) {
        let prod = &(&p * &q) * &q;
        prop_assume!(!prod.is_zero());
        let s = squarefree_part(&prod).unwrap();
        prop_assert_eq!(squarefree_part(&s).unwrap(), s.clone());
        prop_assert!(s.gcd(&s.derivative()).is_constant());
    }

    #[test]
    fn multiplicities_of_constructed_products(
        roots in prop::collection::btree_map(-5i64..=5, 1usize..4, 1..4),
    ) {
        let mut p = UniPoly::one();
        for (&r, &m) in &roots {
            p = &p * &UniPoly::linear_root(&rat(r)).pow(m as u32);
        }
        let mut total = 0;
        for (&r, &m) in &roots {
            let found = multiplicity_at(&p, &rat(r)).unwrap();
            prop_assert_eq!(found, m);
            total += found;
        }
        prop_assert_eq!(total, p.degree().unwrap());
    }

    #[test]
    fn gcd_divides_both(p in small_poly(), q in small_poly(), r in small_poly()) {
        let a = &p * &r;
        let b = &q * &r;
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(g.div_rem(&r.monic()).unwrap().1.is_zero());
    }

    #[test]
    fn ball_arithmetic_encloses_exact_values(a in rational(), b in rational()) {
        let (x, y) = (ball(&a), ball(&b));
        prop_assert!(x.add(&y).overlaps(&ball(&(&a + &b))));
        prop_assert!(x.mul(&y).overlaps(&ball(&(&a * &b))));
        prop_assert!(x.sub(&y).overlaps(&ball(&(&a - &b))));
        if !b.is_zero() {
            prop_assert!(x.div(&y).unwrap().overlaps(&ball(&(&a / &b))));
        }
    }

    #[test]
    fn isolated_roots_account_for_the_degree(p in small_poly()) {
        prop_assume!(p.degree().unwrap_or(0) >= 1);
        let sf = squarefree_part(&p).unwrap();
        let roots = isolate_roots(&sf, 128).unwrap();
        prop_assert_eq!(roots.len(), sf.degree().unwrap());
        let (_, ints) = sf.primitive_part();
        for z in &roots {
            prop_assert!(eval_int_poly(&ints, z).contains_zero());
            let at_mid = eval_int_poly(&ints, &z.midpoint());
            prop_assert!(at_mid.abs_upper().to_f64() < 1e-20);
        }
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                prop_assert!(roots[i].is_disjoint(&roots[j]));
            }
        }
    }
}

#[test]
fn integer_evaluation_matches_rational() {
    let coeffs: Vec<BigInt> = [3, -1, 4, 1].iter().map(|&c| BigInt::from(c)).collect();
    let v = eval_int_poly(&coeffs, &ComplexBall::from_int(2, 128));
    assert!(v.overlaps(&ComplexBall::from_int(3 - 2 + 16 + 8, 128)));
}
