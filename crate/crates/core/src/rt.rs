//! Exact SO(3) Reshetikhin-Turaev invariants of lens spaces `L(p,1)` over
//! the cyclotomic field `Q(zeta)`, `zeta` a primitive `2N`-th root of unity
//! with `N` odd.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::linalg::solve_rational;
use crate::exactalg::{cheb_e, rat, UniPoly};

/// `Q[x] / Phi_{2N}`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    n: u64,
    modulus: UniPoly,
}

/// `Phi_m` by dividing `x^m - 1` by `Phi_d` for the proper divisors `d`.
pub fn cyclotomic(m: u64) -> UniPoly {
    let mut p = &UniPoly::monomial(BigRational::one(), m as usize) - &UniPoly::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = p
                .exact_div(&cyclotomic(d))
                .expect("cyclotomic factor divides");
        }
    }
    p
}

impl CycloField {
    /// Field of order `2N`; `N` must be odd and at least 3.
    pub fn new(n: u64) -> Result<Arc<CycloField>> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidField(n));
        }
        Ok(Arc::new(CycloField {
            n,
            modulus: cyclotomic(2 * n),
        }))
    }

    /// Accepts the root-of-unity order `2N` as used on the command line.
    pub fn from_order(order: u64) -> Result<Arc<CycloField>> {
        if !order.is_multiple_of(2) {
            return Err(Error::InvalidField(order));
        }
        CycloField::new(order / 2)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct CycloElem {
    field: Arc<CycloField>,
    residue: UniPoly,
}

impl PartialEq for CycloElem {
    fn eq(&self, o: &Self) -> bool {
        self.field.n == o.field.n && self.residue == o.residue
    }
}

impl Eq for CycloElem {}

impl CycloElem {
    pub fn new(field: &Arc<CycloField>, poly: UniPoly) -> CycloElem {
        let residue = poly.div_rem(&field.modulus).expect("nonzero modulus").1;
        CycloElem {
            field: Arc::clone(field),
            residue,
        }
    }

    pub fn from_int(field: &Arc<CycloField>, k: i64) -> CycloElem {
        CycloElem::new(field, UniPoly::from_ints([k]))
    }

    pub fn zero(field: &Arc<CycloField>) -> CycloElem {
        CycloElem::from_int(field, 0)
    }

    pub fn one(field: &Arc<CycloField>) -> CycloElem {
        CycloElem::from_int(field, 1)
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(field: &Arc<CycloField>, k: i64) -> CycloElem {
        let e = k.rem_euclid(2 * field.n as i64) as usize;
        CycloElem::new(field, UniPoly::monomial(BigRational::one(), e))
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn residue(&self) -> &UniPoly {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    fn check(&self, o: &CycloElem) -> Result<()> {
        if self.field.n != o.field.n {
            return Err(Error::FieldMismatch {
                left: self.field.n,
                right: o.field.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &CycloElem) -> Result<CycloElem> {
        self.check(o)?;
        Ok(CycloElem {
            field: Arc::clone(&self.field),
            residue: &self.residue + &o.residue,
        })
    }

    pub fn sub(&self, o: &CycloElem) -> Result<CycloElem> {
        self.check(o)?;
        Ok(CycloElem {
            field: Arc::clone(&self.field),
            residue: &self.residue - &o.residue,
        })
    }

    pub fn mul(&self, o: &CycloElem) -> Result<CycloElem> {
        self.check(o)?;
        Ok(CycloElem::new(&self.field, &self.residue * &o.residue))
    }

    pub fn neg(&self) -> CycloElem {
        CycloElem {
            field: Arc::clone(&self.field),
            residue: -&self.residue,
        }
    }

    pub fn scale(&self, c: &BigRational) -> CycloElem {
        CycloElem {
            field: Arc::clone(&self.field),
            residue: self.residue.scale(c),
        }
    }

    /// Inverse through the extended Euclidean algorithm against `Phi_{2N}`.
    pub fn inverse(&self) -> Result<CycloElem> {
        if self.is_zero() {
            return Err(Error::InverseOfZero);
        }
        let (g, s) = ext_gcd(&self.residue, &self.field.modulus);
        // Phi is irreducible, so g is a nonzero constant
        let c = g.coeff(0);
        if g.degree() != Some(0) {
            return Err(Error::Internal(
                "cyclotomic modulus not coprime to element".into(),
            ));
        }
        Ok(CycloElem::new(&self.field, s.scale(&c.recip())))
    }

    pub fn div(&self, o: &CycloElem) -> Result<CycloElem> {
        self.mul(&o.inverse()?)
    }

    pub fn pow(&self, k: i64) -> Result<CycloElem> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = CycloElem::one(&self.field);
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Galois conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> CycloElem {
        let two_n = 2 * self.field.n as usize;
        let mut poly = UniPoly::zero();
        for (j, c) in self.residue.coeffs().iter().enumerate() {
            if !c.is_zero() {
                poly = &poly + &UniPoly::monomial(c.clone(), (two_n - j) % two_n);
            }
        }
        CycloElem::new(&self.field, poly)
    }

    /// Evaluate a rational polynomial at this element.
    pub fn eval_poly(&self, p: &UniPoly) -> CycloElem {
        p.coeffs()
            .iter()
            .rev()
            .fold(CycloElem::zero(&self.field), |acc, c| {
                let prod = CycloElem::new(&self.field, &acc.residue * &self.residue);
                CycloElem {
                    field: Arc::clone(&self.field),
                    residue: &prod.residue + &UniPoly::constant(c.clone()),
                }
            })
    }

    /// Coordinates in the basis `1, zeta^2, zeta^4, ...` of the field.
    pub fn even_coordinates(&self) -> Vec<BigRational> {
        let f = &self.field;
        let d = f.degree();
        let cols: Vec<CycloElem> = (0..d)
            .map(|j| CycloElem::zeta_pow(f, 2 * j as i64))
            .collect();
        let a: Vec<Vec<BigRational>> = (0..d)
            .map(|row| cols.iter().map(|c| c.residue.coeff(row)).collect())
            .collect();
        let b: Vec<BigRational> = (0..d).map(|row| self.residue.coeff(row)).collect();
        solve_rational(a, b).expect("even powers of zeta form a basis for odd N")
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.residue.to_string_in("ζ"))
    }
}

/// `(g, s)` with `s a + t b = g = gcd(a, b)` for some `t`.
fn ext_gcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
        let s = &s0 - &(&q * &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

pub fn quantum_int(f: &Arc<CycloField>, i: i64) -> CycloElem {
    let num = CycloElem::zeta_pow(f, 2 * i)
        .sub(&CycloElem::zeta_pow(f, -2 * i))
        .unwrap();
    let den = CycloElem::zeta_pow(f, 2)
        .sub(&CycloElem::zeta_pow(f, -2))
        .unwrap();
    num.div(&den).expect("zeta^4 != 1 for N odd >= 3")
}

fn max_color(f: &CycloField) -> i64 {
    (f.n as i64 - 3) / 2
}

/// `c_i = (-1)^i [i+1]` for `i = 0..=(N-3)/2`.
pub fn kirby_coeffs(f: &Arc<CycloField>) -> Vec<CycloElem> {
    (0..=max_color(f))
        .map(|i| {
            let q = quantum_int(f, i + 1);
            if i % 2 == 0 {
                q
            } else {
                q.neg()
            }
        })
        .collect()
}

/// Twist eigenvalue `(-1)^i zeta^{i^2 + 2i}` of color `i`.
pub fn twist(f: &Arc<CycloField>, i: i64) -> CycloElem {
    let z = CycloElem::zeta_pow(f, i * i + 2 * i);
    if i % 2 == 0 {
        z
    } else {
        z.neg()
    }
}

/// `e_i(-zeta^2 - zeta^{-2})`.
pub fn unknot_value(f: &Arc<CycloField>, i: i64) -> CycloElem {
    let z = CycloElem::zeta_pow(f, 2)
        .add(&CycloElem::zeta_pow(f, -2))
        .unwrap()
        .neg();
    z.eval_poly(&cheb_e(i as u32))
}

/// `mu_i^framing * Delta_i` for the `framing`-framed unknot colored `i`.
pub fn colored_unknot_bracket(f: &Arc<CycloField>, framing: i64, color: i64) -> Result<CycloElem> {
    let max = max_color(f);
    if color < 0 || color > max {
        return Err(Error::ColorOutOfRange { color, max });
    }
    let sign = if (color * framing) % 2 == 0 { 1 } else { -1 };
    let mu = CycloElem::zeta_pow(f, framing * (color * color + 2 * color));
    let mu = if sign == 1 { mu } else { mu.neg() };
    mu.mul(&unknot_value(f, color))
}

/// Bracket of the `p`-framed unknot colored by the Kirby color.
pub fn kirby_bracket(f: &Arc<CycloField>, p: i64) -> Result<CycloElem> {
    kirby_coeffs(f)
        .iter()
        .enumerate()
        .try_fold(CycloElem::zero(f), |acc, (i, c)| {
            acc.add(&c.mul(&colored_unknot_bracket(f, p, i as i64)?)?)
        })
}

/// Invariant of `L(p,1)` (`S^3` for `p = ±1`, `S^2 x S^1` for `p = 0`).
pub fn rt_lens(f: &Arc<CycloField>, p: i64) -> Result<CycloElem> {
    let value = kirby_bracket(f, p)?;
    if p == 0 {
        return Ok(value);
    }
    let norm = kirby_bracket(f, p.signum())?;
    if norm.is_zero() {
        return Err(Error::NonInvertibleNormalization);
    }
    value.div(&norm)
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Legendre symbol by Euler's criterion.
pub fn legendre(a: i64, p: i64) -> Result<i64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let base = BigInt::from(a.rem_euclid(p));
    let r = base.modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
    Ok(match r.to_i64().unwrap_or(0) {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MurakamiCheck {
    pub h1: i64,
    pub integral: bool,
    /// Image of `h1 * RT` in `Z[zeta^2]/(zeta^2 - 1) = Z/N`, symmetric representative.
    pub residue: Option<i64>,
    pub legendre: i64,
    pub congruent: bool,
}

/// `h1 * RT(L(p,1))` lies in `Z[zeta^2]` and is congruent to `(h1/N)`
/// modulo `zeta^2 - 1`.
pub fn murakami_check(f: &Arc<CycloField>, p: i64) -> Result<MurakamiCheck> {
    let n = f.n as i64;
    if !is_prime(n) {
        return Err(Error::NotOddPrime(n));
    }
    if p == 0 {
        return Err(Error::Precondition("murakami check needs p != 0".into()));
    }
    if p % n == 0 {
        return Err(Error::Precondition(format!("N={n} divides p={p}")));
    }
    let h1 = p.abs();
    let value = rt_lens(f, p)?.scale(&rat(h1));
    let coords = value.even_coordinates();
    let integral = coords.iter().all(|c| c.is_integer());
    let leg = legendre(h1, n)?;
    let residue = integral.then(|| {
        let s: BigInt = coords.iter().map(|c| c.to_integer()).sum();
        let r = s.mod_floor(&BigInt::from(n)).to_i64().unwrap_or(0);
        if r > n / 2 {
            r - n
        } else {
            r
        }
    });
    let congruent = residue.is_some_and(|r| (r - leg).rem_euclid(n) == 0);
    Ok(MurakamiCheck {
        h1,
        integral,
        residue,
        legendre: leg,
        congruent,
    })
}

/// Meridian eigenvalue `-zeta^{2i+2} - zeta^{-2i-2}` on color `i`.
pub fn meridian_eigenvalue(f: &Arc<CycloField>, i: i64) -> CycloElem {
    CycloElem::zeta_pow(f, 2 * i + 2)
        .add(&CycloElem::zeta_pow(f, -2 * i - 2))
        .unwrap()
        .neg()
}

/// Lagrange interpolant `Q` with `Q(lambda_0) = 1` and `Q(lambda_i) = 0` for
/// `1 <= i <= (N-3)/2`; coefficients lowest degree first.
pub fn meridian_interpolant(f: &Arc<CycloField>) -> Result<Vec<CycloElem>> {
    let nodes: Vec<CycloElem> = (0..=max_color(f))
        .map(|i| meridian_eigenvalue(f, i))
        .collect();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i] == nodes[j] {
                return Err(Error::CoincidentNodes);
            }
        }
    }
    let mut q = vec![CycloElem::one(f)];
    for node in &nodes[1..] {
        let scale = nodes[0].sub(node)?.inverse()?;
        // multiply q by (z - node) * scale
        let mut next = vec![CycloElem::zero(f); q.len() + 1];
        for (k, c) in q.iter().enumerate() {
            next[k + 1] = next[k + 1].add(&c.mul(&scale)?)?;
            next[k] = next[k].sub(&c.mul(node)?.mul(&scale)?)?;
        }
        q = next;
    }
    Ok(q)
}

pub fn eval_cyclo_poly(coeffs: &[CycloElem], z: &CycloElem) -> Result<CycloElem> {
    coeffs
        .iter()
        .rev()
        .try_fold(CycloElem::zero(z.field()), |acc, c| acc.mul(z)?.add(c))
}

/// `sum_i c_i Q(lambda_i) mu_i^p Delta_i`, which collapses to the `e_0` term.
pub fn meridian_collapse(f: &Arc<CycloField>, p: i64) -> Result<CycloElem> {
    let q = meridian_interpolant(f)?;
    kirby_coeffs(f)
        .iter()
        .enumerate()
        .try_fold(CycloElem::zero(f), |acc, (i, c)| {
            let i = i as i64;
            let qv = eval_cyclo_poly(&q, &meridian_eigenvalue(f, i))?;
            acc.add(&c.mul(&qv)?.mul(&colored_unknot_bracket(f, p, i)?)?)
        })
}

/// Integer coefficient strings of the residue, lowest power first.
pub fn residue_strings(e: &CycloElem) -> Vec<String> {
    e.residue()
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_integer() {
                c.to_integer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(10), UniPoly::from_ints([1, -1, 1, -1, 1]));
        assert_eq!(cyclotomic(6), UniPoly::from_ints([1, -1, 1]));
    }

    #[test]
    fn field_arithmetic() {
        let f = CycloField::new(5).unwrap();
        let z = CycloElem::zeta_pow(&f, 1);
        let z9 = CycloElem::zeta_pow(&f, 9);
        assert_eq!(z.mul(&z9).unwrap(), CycloElem::one(&f));
        assert_eq!(z.inverse().unwrap(), z9);
        assert_eq!(z.pow(5).unwrap(), CycloElem::from_int(&f, -1));
        assert_eq!(CycloElem::zero(&f).inverse(), Err(Error::InverseOfZero));
        let g = CycloField::new(7).unwrap();
        assert!(z.add(&CycloElem::one(&g)).is_err());
        assert!(CycloField::new(4).is_err());
    }

    #[test]
    fn quantum_integers() {
        let f = CycloField::new(7).unwrap();
        assert!(quantum_int(&f, 0).is_zero());
        assert_eq!(quantum_int(&f, 1), CycloElem::one(&f));
        assert!(quantum_int(&f, 7).is_zero());
    }

    #[test]
    fn kirby_and_brackets() {
        let f3 = CycloField::new(3).unwrap();
        assert_eq!(kirby_coeffs(&f3), vec![CycloElem::one(&f3)]);
        let f5 = CycloField::new(5).unwrap();
        let c = kirby_coeffs(&f5);
        assert_eq!(c[1], quantum_int(&f5, 2).neg());
        assert_eq!(
            colored_unknot_bracket(&f5, 0, 0).unwrap(),
            CycloElem::one(&f5)
        );
        assert_eq!(
            colored_unknot_bracket(&f5, 0, 1).unwrap(),
            quantum_int(&f5, 2).neg()
        );
        let expected = CycloElem::zeta_pow(&f5, 3)
            .mul(&quantum_int(&f5, 2))
            .unwrap();
        assert_eq!(colored_unknot_bracket(&f5, 1, 1).unwrap(), expected);
        assert!(colored_unknot_bracket(&f5, 0, 2).is_err());
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(1, 7).unwrap(), 1);
        assert_eq!(legendre(10, 5).unwrap(), 0);
        assert_eq!(legendre(2, 5).unwrap(), -1);
        assert_eq!(legendre(2, 9), Err(Error::NotOddPrime(9)));
    }

    #[test]
    fn lens_space_examples() {
        let f = CycloField::new(5).unwrap();
        assert_eq!(rt_lens(&f, 1).unwrap(), CycloElem::one(&f));
        assert_eq!(rt_lens(&f, -1).unwrap(), CycloElem::one(&f));
        let m = murakami_check(&f, 2).unwrap();
        assert!(m.integral && m.congruent);
        assert_eq!(m.legendre, -1);
        assert!(murakami_check(&f, 5).is_err());
    }

    #[test]
    fn interpolant_normalization() {
        let f = CycloField::new(5).unwrap();
        let q = meridian_interpolant(&f).unwrap();
        assert_eq!(q.len(), 2);
        let v = eval_cyclo_poly(&q, &meridian_eigenvalue(&f, 0)).unwrap();
        assert_eq!(v, CycloElem::one(&f));
    }
}
