//! Sparse Laurent polynomials in one and two variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{rat, UniPoly};

/// Laurent polynomial in one variable; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly1 {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    pub fn monomial(c: BigRational, k: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn from_int_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, rat(c));
        }
        out
    }

    pub fn from_unipoly(p: &UniPoly, shift: i64) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(k as i64 + shift, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, k: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, k: i64) -> BigRational {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, a) in &self.terms {
            out.add_term(*k, a * c);
        }
        out
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly1 {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `x -> x^-1`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly1 {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Clears the minimal exponent: returns `(shift, poly)` with
    /// `self = x^shift * poly` and `poly(0) != 0`.
    pub fn to_unipoly(&self) -> (i64, UniPoly) {
        let Some(lo) = self.min_exp() else {
            return (0, UniPoly::zero());
        };
        let hi = self.max_exp().unwrap_or(lo);
        let mut coeffs = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (k, c) in &self.terms {
            coeffs[(k - lo) as usize] = c.clone();
        }
        (lo, UniPoly::new(coeffs))
    }

    /// Multiply by the monomial clearing the minimal exponent, then divide
    /// by the content; the result is primitive with positive leading
    /// coefficient and nonzero constant term. Root sets in `C*` are unchanged.
    pub fn normalized(&self) -> UniPoly {
        self.to_unipoly().1.primitive()
    }

    /// Evaluate at a nonzero rational.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, (k, c)| acc + c * pow_rat(x, *k))
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if *k == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match *k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

pub(crate) fn pow_rat(x: &BigRational, k: i64) -> BigRational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}

impl Add for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn add(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn sub(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn neg(self) -> LaurentPoly1 {
        LaurentPoly1 {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn mul(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

/// Evaluate a polynomial at a Laurent polynomial, e.g. `T_k(x + 1/x)`.
pub fn compose_laurent(p: &UniPoly, inner: &LaurentPoly1) -> LaurentPoly1 {
    p.coeffs()
        .iter()
        .rev()
        .fold(LaurentPoly1::zero(), |acc, c| {
            &(&acc * inner) + &LaurentPoly1::monomial(c.clone(), 0)
        })
}

/// Laurent polynomial in `mu` and `lambda`, keyed by `(mu_exp, lambda_exp)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), BigRational>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Build from `(mu_exp, lambda_exp, coefficient)` triples.
    pub fn from_int_terms<I: IntoIterator<Item = (i64, i64, i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in terms {
            out.add_term((i, j), rat(c));
        }
        out
    }

    pub fn add_term(&mut self, key: (i64, i64), c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitute `mu = a * x^e`, `lambda = b * x^f` with `a, b` nonzero.
    pub fn substitute_monomials(
        &self,
        mu: (&BigRational, i64),
        lambda: (&BigRational, i64),
    ) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for ((i, j), c) in &self.terms {
            let coeff = c * pow_rat(mu.0, *i) * pow_rat(lambda.0, *j);
            out.add_term(i * mu.1 + j * lambda.1, coeff);
        }
        out
    }

    /// Exact evaluation at nonzero rationals.
    pub fn eval(&self, mu: &BigRational, lambda: &BigRational) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, ((i, j), c)| {
                acc + c * pow_rat(mu, *i) * pow_rat(lambda, *j)
            })
    }

    /// Integer coefficients as `(mu_exp, lambda_exp, coeff)`, if all are integral.
    pub fn integer_terms(&self) -> Option<Vec<(i64, i64, BigInt)>> {
        self.terms
            .iter()
            .map(|((i, j), c)| c.is_integer().then(|| (*i, *j, c.to_integer())))
            .collect()
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        // lambda-major order reads like the usual presentation
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|(i, j)| (*i, *j));
        for (i, j) in keys {
            let c = &self.terms[&(i, j)];
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            for (name, e) in [("λ", j), ("μ", i)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("·"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_product_cancels() {
        let x_plus_inv = LaurentPoly1::from_int_terms([(1, 1), (-1, 1)]);
        let x_minus_inv = LaurentPoly1::from_int_terms([(1, 1), (-1, -1)]);
        let prod = &x_plus_inv * &x_minus_inv;
        assert_eq!(prod, LaurentPoly1::from_int_terms([(2, 1), (-2, -1)]));
    }

    #[test]
    fn normalization_clears_monomial_and_content() {
        // 2x^-3 + 4x^-1
        let l = LaurentPoly1::from_int_terms([(-3, 2), (-1, 4)]);
        assert_eq!(l.normalized(), UniPoly::from_ints([1, 0, 2]));
        let (shift, p) = l.to_unipoly();
        assert_eq!(shift, -3);
        assert_eq!(p, UniPoly::from_ints([2, 0, 4]));
    }

    #[test]
    fn substitution_into_two_variables() {
        // mu^2 lambda - 1 at mu = x^-1, lambda = x^3
        let a = LaurentPoly2::from_int_terms([(2, 1, 1), (0, 0, -1)]);
        let one = BigRational::one();
        let s = a.substitute_monomials((&one, -1), (&one, 3));
        assert_eq!(s, LaurentPoly1::from_int_terms([(1, 1), (0, -1)]));
    }
}
