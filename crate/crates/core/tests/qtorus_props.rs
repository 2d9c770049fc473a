use proptest::prelude::*;

use skeinlab::exactalg::LaurentPoly1;
use skeinlab::qtorus::{embed_curve, qt_mul, theta, QTorusElem};

fn element() -> impl Strategy<Value = QTorusElem> {
    prop::collection::vec(((-8i64..=8, -8i64..=8), (-3i64..=3, -2i64..=2)), 1..4).prop_map(|ts| {
        let mut e = QTorusElem::zero();
        for ((p, q), (a, c)) in ts {
            e.add_term((p, q), LaurentPoly1::from_int_terms([(a, c)]));
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn multiplication_is_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(qt_mul(&qt_mul(&a, &b), &c), qt_mul(&a, &qt_mul(&b, &c)));
    }

    #[test]
    fn theta_is_multiplicative(a in element(), b in element()) {
        prop_assert_eq!(theta(&qt_mul(&a, &b)), qt_mul(&theta(&a), &theta(&b)));
    }

    #[test]
    fn curves_are_theta_fixed(p in -12i64..=12, q in -12i64..=12) {
        let e = embed_curve(p, q);
        prop_assert_eq!(theta(&e), e);
    }

    #[test]
    fn product_to_sum_beyond_the_grid(p in -25i64..=25, q in -25i64..=25, r in -25i64..=25, s in -25i64..=25) {
        let w = p * s - q * r;
        let lhs = qt_mul(&embed_curve(p, q), &embed_curve(r, s));
        let rhs = embed_curve(p + r, q + s).shift_a(w).add(&embed_curve(p - r, q - s).shift_a(-w));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn squared_meridian() {
    let x = embed_curve(1, 0);
    let expected = embed_curve(2, 0).add(&QTorusElem::scalar(2));
    assert_eq!(qt_mul(&x, &x), expected);
}
