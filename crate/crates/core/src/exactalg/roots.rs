//! Exact root bookkeeping: squarefree parts, multiplicities, distinct counts.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::UniPoly;
use crate::error::{Error, Result};

/// `P / gcd(P, P')`, monic.
pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    if p.is_constant() {
        return Ok(UniPoly::one());
    }
    let g = p.gcd(&p.derivative());
    Ok(p.exact_div(&g)?.monic())
}

/// Divide by `(x - r)` with synthetic division; returns the quotient when
/// the remainder vanishes.
fn deflate(p: &UniPoly, r: &BigRational) -> Option<UniPoly> {
    let deg = p.degree()?;
    if deg == 0 {
        return None;
    }
    let c = p.coeffs();
    let mut quot = vec![BigRational::zero(); deg];
    let mut acc = c[deg].clone();
    for k in (0..deg).rev() {
        quot[k] = acc.clone();
        acc = &acc * r + &c[k];
    }
    acc.is_zero().then(|| UniPoly::new(quot))
}

/// Largest `m` with `(x - r)^m | P`.
pub fn multiplicity_at(p: &UniPoly, r: &BigRational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut m = 0;
    let mut cur = p.clone();
    while let Some(q) = deflate(&cur, r) {
        m += 1;
        cur = q;
    }
    Ok(m)
}

/// Remove every factor `(x - r)` for `r` in `roots`; returns the quotient
/// and the multiplicities stripped.
pub fn strip_roots(p: &UniPoly, roots: &[BigRational]) -> Result<(UniPoly, Vec<usize>)> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut cur = p.clone();
    let mut mults = Vec::with_capacity(roots.len());
    for r in roots {
        let mut m = 0;
        while let Some(q) = deflate(&cur, r) {
            m += 1;
            cur = q;
        }
        mults.push(m);
    }
    Ok((cur, mults))
}

/// Number of distinct complex roots of `P` outside the set `s`.
pub fn distinct_roots_excluding(p: &UniPoly, s: &[BigRational]) -> Result<usize> {
    let sf = squarefree_part(p)?;
    let deg = sf.degree().unwrap_or(0);
    let excluded: BTreeSet<&BigRational> = s.iter().filter(|r| p.eval(r).is_zero()).collect();
    Ok(deg - excluded.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::rat;

    #[test]
    fn squarefree_examples() {
        let p = UniPoly::from_ints([1, 1]).pow(2) * UniPoly::from_ints([-2, 1]);
        assert_eq!(
            squarefree_part(&p).unwrap(),
            UniPoly::from_ints([1, 1]) * UniPoly::from_ints([-2, 1])
        );
        let q = UniPoly::from_ints([1, 0, 1]);
        assert_eq!(squarefree_part(&q).unwrap(), q);
        assert_eq!(squarefree_part(&UniPoly::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn multiplicities() {
        let p = UniPoly::from_ints([1, 1]).pow(2);
        assert_eq!(multiplicity_at(&p, &rat(-1)).unwrap(), 2);
        assert_eq!(
            multiplicity_at(&UniPoly::from_ints([-2, 1]), &rat(1)).unwrap(),
            0
        );
        assert!(multiplicity_at(&UniPoly::zero(), &rat(1)).is_err());
    }

    #[test]
    fn distinct_counts() {
        let p = UniPoly::from_ints([1, 0, 0, 0, 0, 1]);
        assert_eq!(distinct_roots_excluding(&p, &[rat(1), rat(-1)]).unwrap(), 4);
        let q = UniPoly::from_ints([1, 1]).pow(2);
        assert_eq!(distinct_roots_excluding(&q, &[rat(-1)]).unwrap(), 0);
        // duplicates in the exclusion set count once
        assert_eq!(
            distinct_roots_excluding(&q, &[rat(-1), rat(-1)]).unwrap(),
            0
        );
    }
}
