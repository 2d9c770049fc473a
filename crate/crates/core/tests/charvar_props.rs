use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

use skeinlab::charvar::characters::torus_nonabelian;
use skeinlab::charvar::trace::eval_generator;
use skeinlab::charvar::{
    basis, dimension_report, enumerate_characters, eval_trace, nonabelian_formula,
    nonabelian_oracle, BasisResult, CharacterKind, Dimension, Generator, Oracle, TraceMonomial,
};
use skeinlab::exactalg::{cheb_t, rat, squarefree_part, ComplexBall, UniPoly};
use skeinlab::knots::{tameness, torus_k, KnotFamily, Slope, VerdictStatus};

fn sl(p: i64, q: i64) -> Slope {
    Slope::new(p, q).unwrap()
}

/// Distinct roots of `T_k(t) - 2(-1)^q` other than `t = ±2`, counted from
/// the exact squarefree part.
fn chebyshev_root_count(k: i64, q: i64) -> i64 {
    let target = if q % 2 == 0 { 2 } else { -2 };
    let p = &cheb_t(k as u32) - &UniPoly::from_ints([target]);
    let sf = squarefree_part(&p).unwrap();
    let at_ends = [2, -2]
        .iter()
        .filter(|&&t| sf.eval(&rat(t)).is_zero())
        .count();
    sf.degree().unwrap() as i64 - at_ends as i64
}

#[test]
fn torus_counts_against_exact_polynomial_roots() {
    for n in 1..=5i64 {
        let zetas = n;
        for q in 1..=10i64 {
            for p in -20..=20i64 {
                if p == 0 || p.gcd(&q) != 1 || (q == 1 && p == 4 * n + 2) {
                    continue;
                }
                if p % 4 == 0 && p.gcd(&(2 * n + 1)) != 1 {
                    continue;
                }
                let s = sl(p, q);
                let expected = zetas * chebyshev_root_count(torus_k(n, s), q);
                let k = KnotFamily::Torus(n);
                assert_eq!(nonabelian_formula(k, s).value, expected, "n={n} {s}");
                assert_eq!(nonabelian_oracle(k, s).unwrap(), Oracle::Value(expected));
            }
        }
    }
}

#[test]
fn reducible_points_skipped_on_multiples_of_four() {
    for n in 1..=4i64 {
        for q in 1..=5i64 {
            for p in -40..=40i64 {
                if p == 0 || p.gcd(&q) != 1 || (q == 1 && p == 4 * n + 2) {
                    continue;
                }
                let (_, skipped) = torus_nonabelian(n, sl(p, q), 64);
                let expected = if p % 4 == 0 {
                    p.gcd(&(2 * n + 1)) - 1
                } else {
                    0
                };
                assert_eq!(skipped as i64, expected, "n={n} p={p} q={q}");
            }
        }
    }
}

#[test]
fn named_examples() {
    assert_eq!(nonabelian_formula(KnotFamily::Fig8, sl(1, 1)).value, 3);
    assert_eq!(nonabelian_formula(KnotFamily::Fig8, sl(5, 1)).value, 4);
    assert_eq!(nonabelian_formula(KnotFamily::Torus(1), sl(1, 1)).value, 2);
    assert_eq!(
        dimension_report(KnotFamily::Torus(1), sl(1, 1))
            .unwrap()
            .dimension,
        Dimension::Exact(3)
    );
    assert_eq!(
        dimension_report(KnotFamily::Fig8, sl(1, 1))
            .unwrap()
            .dimension,
        Dimension::Exact(4)
    );
    let r = dimension_report(KnotFamily::Fig8, sl(4, 1)).unwrap();
    assert_eq!(r.tameness.status, VerdictStatus::Excluded);
    assert_eq!(r.dimension, Dimension::NotDetermined);
    for n in 1..=6i64 {
        for q in 1..=10i64 {
            let tau = nonabelian_formula(KnotFamily::Torus(n), sl(1, q)).value;
            assert_eq!(4 * tau, 2 * n * (2 * (2 * n + 1) * q - 2));
        }
    }
}

#[test]
fn basis_examples() {
    let b = basis(KnotFamily::Torus(2), sl(1, 1));
    assert_eq!(b.supported().unwrap().cardinality, 9);
    let b = basis(KnotFamily::Fig8, sl(1, 2));
    let b = b.supported().unwrap();
    assert_eq!(b.dual, Some((0, 1)));
    let tsu = Generator::Tsu { s: 0, u: 1 };
    assert_eq!(
        b.monomials,
        (0..8)
            .map(|j| TraceMonomial::power(tsu, j))
            .collect::<Vec<_>>()
    );
    assert!(matches!(
        basis(KnotFamily::Torus(1), sl(2, 1)),
        BasisResult::Unsupported { .. }
    ));
}

fn family_generators(c: &skeinlab::charvar::Character) -> Vec<Generator> {
    match c.knot {
        KnotFamily::Torus(_) => vec![Generator::Tm, Generator::Tb],
        KnotFamily::Fig8 => {
            let (s, u) = c.slope.dual();
            vec![Generator::Tm, Generator::Tsu { s, u }, Generator::Tab]
        }
    }
}

fn admissible(k: KnotFamily) -> impl Strategy<Value = Slope> {
    (-14i64..=14, 1i64..=4)
        .prop_filter("coprime", |(p, q)| *p != 0 && p.gcd(q) == 1)
        .prop_map(|(p, q)| sl(p, q))
        .prop_filter("tame", move |s| {
            tameness(k, *s).status != VerdictStatus::Excluded
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fig8_characters_are_pairwise_separated(s in admissible(KnotFamily::Fig8)) {
        let chars = enumerate_characters(KnotFamily::Fig8, s, 128).unwrap();
        for i in 0..chars.len() {
            for j in i + 1..chars.len() {
                let separated = family_generators(&chars[i]).into_iter().any(|g| {
                    eval_generator(g, &chars[i]).unwrap().is_disjoint(&eval_generator(g, &chars[j]).unwrap())
                });
                prop_assert!(separated, "{} and {} at {}", chars[i].label(), chars[j].label(), s);
            }
        }
    }

    #[test]
    fn torus_characters_are_pairwise_separated(n in 1i64..=3, s in admissible(KnotFamily::Torus(3))) {
        prop_assume!(tameness(KnotFamily::Torus(n), s).status != VerdictStatus::Excluded);
        let chars = enumerate_characters(KnotFamily::Torus(n), s, 128).unwrap();
        for i in 0..chars.len() {
            for j in i + 1..chars.len() {
                let separated = family_generators(&chars[i]).into_iter().any(|g| {
                    eval_generator(g, &chars[i]).unwrap().is_disjoint(&eval_generator(g, &chars[j]).unwrap())
                });
                prop_assert!(separated);
            }
        }
    }

    #[test]
    fn meridian_trace_independent_of_representative(s in admissible(KnotFamily::Fig8)) {
        let tm = TraceMonomial::power(Generator::Tm, 1);
        for c in enumerate_characters(KnotFamily::Fig8, s, 128).unwrap() {
            if let CharacterKind::Fig8NonAb { x, .. } = &c.kind {
                let v = eval_trace(&tm, &c).unwrap();
                let q = s.q();
                let direct = x.powi(q).unwrap().add(&x.powi(-q).unwrap());
                let flipped = x.inv().unwrap();
                let other = flipped.powi(q).unwrap().add(&flipped.powi(-q).unwrap());
                prop_assert!(v.overlaps(&direct));
                prop_assert!(v.overlaps(&other));
            }
        }
    }
}

#[test]
fn trace_examples() {
    let chars = enumerate_characters(KnotFamily::Torus(1), sl(1, 1), 128).unwrap();
    let tb = TraceMonomial::power(Generator::Tb, 1);
    let tm = TraceMonomial::power(Generator::Tm, 1);
    assert!(eval_trace(&tb, &chars[1])
        .unwrap()
        .overlaps(&ComplexBall::one(128)));
    assert!(eval_trace(&tm, &chars[0])
        .unwrap()
        .overlaps(&ComplexBall::from_int(2, 128)));
}

#[test]
fn fig8_enumeration_matches_exact_root_count() {
    for q in 1..=6i64 {
        for p in -13..=13i64 {
            if p == 0 || p % 4 == 0 || p.gcd(&q) != 1 {
                continue;
            }
            let s = sl(p, q);
            let Oracle::Value(v) = nonabelian_oracle(KnotFamily::Fig8, s).unwrap() else {
                continue;
            };
            let chars = enumerate_characters(KnotFamily::Fig8, s, 128).unwrap();
            let nonab = chars.iter().filter(|c| !c.is_abelian()).count() as i64;
            assert_eq!(nonab, v, "{s}");
        }
    }
}
