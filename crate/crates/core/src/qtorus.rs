//! Quantum torus `<mu, lambda> / (mu lambda - A^2 lambda mu)` in the basis
//! `e_{p,q} = A^{-pq} mu^p lambda^q`, and the image of curves on the torus.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::exactalg::{cheb_t, LaurentPoly1};

/// Finite sum `sum c_{p,q} e_{p,q}` with coefficients Laurent in `A`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QTorusElem {
    terms: BTreeMap<(i64, i64), LaurentPoly1>,
}

impl QTorusElem {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit `e_{0,0}`.
    pub fn unit() -> Self {
        Self::basis(0, 0)
    }

    pub fn basis(p: i64, q: i64) -> Self {
        Self::term(LaurentPoly1::one(), p, q)
    }

    pub fn term(c: LaurentPoly1, p: i64, q: i64) -> Self {
        let mut out = Self::zero();
        out.add_term((p, q), c);
        out
    }

    /// Integer multiple of the unit.
    pub fn scalar(n: i64) -> Self {
        Self::term(LaurentPoly1::from_int_terms([(0, n)]), 0, 0)
    }

    pub fn add_term(&mut self, key: (i64, i64), c: LaurentPoly1) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), LaurentPoly1> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: i64, q: i64) -> LaurentPoly1 {
        self.terms.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// Multiply every coefficient by `A^k`.
    pub fn shift_a(&self, k: i64) -> Self {
        QTorusElem {
            terms: self.terms.iter().map(|(e, c)| (*e, c.shift(k))).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

/// `e_{p,q} e_{r,s} = A^{ps - qr} e_{p+r, q+s}`, extended bilinearly.
pub fn qt_mul(a: &QTorusElem, b: &QTorusElem) -> QTorusElem {
    let mut out = QTorusElem::zero();
    for ((p, q), c) in &a.terms {
        for ((r, s), d) in &b.terms {
            let coeff = (c * d).shift(p * s - q * r);
            out.add_term((p + r, q + s), coeff);
        }
    }
    out
}

/// The involution `e_{p,q} -> e_{-p,-q}`.
pub fn theta(a: &QTorusElem) -> QTorusElem {
    QTorusElem {
        terms: a
            .terms
            .iter()
            .map(|((p, q), c)| ((-p, -q), c.clone()))
            .collect(),
    }
}

/// Image of the curve `(p,q)_T = T_d((p/d, q/d))`. `(0,0)` maps to `T_0 = 2`,
/// the value that keeps the product-to-sum rule exact; see [`QTorusElem::unit`]
/// for the empty multicurve.
pub fn embed_curve(p: i64, q: i64) -> QTorusElem {
    let d = p.gcd(&q);
    if d == 0 {
        return QTorusElem::scalar(2);
    }
    let (a, b) = (p / d, q / d);
    let x = QTorusElem::basis(a, b).add(&QTorusElem::basis(-a, -b));
    let t = cheb_t(d as u32);
    // Horner in the commutative subalgebra generated by x
    t.coeffs().iter().rev().fold(QTorusElem::zero(), |acc, c| {
        let mut next = qt_mul(&acc, &x);
        next.add_term((0, 0), LaurentPoly1::monomial(c.clone(), 0));
        next
    })
}

impl fmt::Display for QTorusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((p, q), c)| format!("({})·e[{p},{q}]", c.to_string_in("A")))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_pow(k: i64) -> LaurentPoly1 {
        LaurentPoly1::from_int_terms([(k, 1)])
    }

    #[test]
    fn basis_products() {
        let e10 = QTorusElem::basis(1, 0);
        let e01 = QTorusElem::basis(0, 1);
        assert_eq!(qt_mul(&e10, &e01), QTorusElem::term(a_pow(1), 1, 1));
        assert_eq!(qt_mul(&e01, &e10), QTorusElem::term(a_pow(-1), 1, 1));
        let prod = qt_mul(&QTorusElem::basis(3, 2), &QTorusElem::basis(-3, -2));
        assert_eq!(prod, QTorusElem::unit());
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&QTorusElem::basis(1, 0)), QTorusElem::basis(-1, 0));
        let e23 = QTorusElem::basis(2, 3);
        assert_eq!(theta(&theta(&e23)), e23);
        assert_eq!(theta(&embed_curve(1, 1)), embed_curve(1, 1));
    }

    #[test]
    fn curve_images() {
        let c10 = QTorusElem::basis(1, 0).add(&QTorusElem::basis(-1, 0));
        assert_eq!(embed_curve(1, 0), c10);
        let sq = qt_mul(&c10, &c10).sub(&QTorusElem::scalar(2));
        assert_eq!(embed_curve(2, 0), sq);
        assert_eq!(sq, QTorusElem::basis(2, 0).add(&QTorusElem::basis(-2, 0)));
        assert_eq!(embed_curve(0, 0), QTorusElem::scalar(2));
    }
}
