use std::f64::consts::PI;
use std::sync::Arc;

use num_traits::ToPrimitive;
use proptest::prelude::*;

use skeinlab::rt::{
    colored_unknot_bracket, kirby_bracket, meridian_collapse, murakami_check, quantum_int, rt_lens,
    CycloElem, CycloField,
};

const ODD: [u64; 6] = [3, 5, 7, 9, 11, 13];
const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

/// Residue evaluated at `exp(i pi / N)`.
fn numeric(e: &CycloElem) -> (f64, f64) {
    let n = e.field().n() as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    for (k, c) in e.residue().coeffs().iter().enumerate() {
        let c = c.to_f64().unwrap();
        let a = PI * k as f64 / n;
        re += c * a.cos();
        im += c * a.sin();
    }
    (re, im)
}

fn field(n: u64) -> Arc<CycloField> {
    CycloField::new(n).unwrap()
}

#[test]
fn quantum_integers_numerically() {
    for n in ODD {
        let f = field(n);
        for i in -20..=20i64 {
            let (re, im) = numeric(&quantum_int(&f, i));
            let t = 2.0 * PI / n as f64;
            let expected = (t * i as f64).sin() / t.sin();
            assert!(
                (re - expected).abs() < 1e-9 && im.abs() < 1e-9,
                "N={n} i={i}"
            );
        }
    }
}

#[test]
fn quantum_integer_reflection() {
    for n in ODD {
        let f = field(n);
        for i in 0..=n as i64 {
            assert_eq!(
                quantum_int(&f, n as i64 - i),
                quantum_int(&f, i).neg(),
                "N={n} i={i}"
            );
        }
    }
}

#[test]
fn normalization_is_invertible_and_unit_on_spheres() {
    for n in ODD {
        let f = field(n);
        let plus = kirby_bracket(&f, 1).unwrap();
        let minus = kirby_bracket(&f, -1).unwrap();
        assert!(!plus.mul(&minus).unwrap().is_zero(), "N={n}");
        assert_eq!(rt_lens(&f, 1).unwrap(), CycloElem::one(&f));
        assert_eq!(rt_lens(&f, -1).unwrap(), CycloElem::one(&f));
    }
}

#[test]
fn mirror_conjugates_the_invariant() {
    for n in ODD {
        let f = field(n);
        for p in 1..=8 {
            assert_eq!(
                rt_lens(&f, -p).unwrap(),
                rt_lens(&f, p).unwrap().conj(),
                "N={n} p={p}"
            );
        }
    }
}

#[test]
fn murakami_congruence_for_prime_orders() {
    for n in PRIMES {
        let f = field(n);
        for p in (-10..=10i64).filter(|p| *p != 0 && p % n as i64 != 0) {
            let m = murakami_check(&f, p).unwrap();
            assert!(m.integral && m.congruent, "N={n} p={p}: {m:?}");
        }
    }
}

#[test]
fn meridian_surgery_collapses_to_trivial_color() {
    for n in ODD {
        let f = field(n);
        for p in -6..=6 {
            assert_eq!(
                meridian_collapse(&f, p).unwrap(),
                colored_unknot_bracket(&f, p, 0).unwrap(),
                "N={n} p={p}"
            );
        }
    }
}

proptest! {
    #[test]
    fn field_operations_match_numeric_embedding(
        n in prop::sample::select(ODD.to_vec()),
        a in prop::collection::vec(-5i64..=5, 1..6),
        b in prop::collection::vec(-5i64..=5, 1..6),
    ) {
        let f = field(n);
        let build = |cs: &[i64]| {
            cs.iter().enumerate().fold(CycloElem::zero(&f), |acc, (k, &c)| {
                acc.add(&CycloElem::zeta_pow(&f, k as i64).mul(&CycloElem::from_int(&f, c)).unwrap()).unwrap()
            })
        };
        let (x, y) = (build(&a), build(&b));
        let (xr, xi) = numeric(&x);
        let (yr, yi) = numeric(&y);
        let (pr, pi) = numeric(&x.mul(&y).unwrap());
        prop_assert!((pr - (xr * yr - xi * yi)).abs() < 1e-8);
        prop_assert!((pi - (xr * yi + xi * yr)).abs() < 1e-8);
        let (cr, ci) = numeric(&x.conj());
        prop_assert!((cr - xr).abs() < 1e-8 && (ci + xi).abs() < 1e-8);
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&x.inverse().unwrap()).unwrap(), CycloElem::one(&f));
        }
    }
}
