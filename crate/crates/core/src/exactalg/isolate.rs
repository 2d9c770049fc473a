//! Certified isolation of all complex roots of a squarefree polynomial.
//!
//! Approximations come from Aberth iteration (first in `f64`, then at the
//! working precision). Certification uses Weierstrass corrections
//! `W_i = P(z_i) / (lc * prod_{j != i} (z_i - z_j))`: the roots are the
//! eigenvalues of `diag(z) - 1 W^T`, so the column Gerschgorin discs
//! `D(z_i - W_i, (n-1)|W_i|)` cover them, and a disc disjoint from the
//! others holds exactly one root.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::ball::{ComplexBall, Dyadic, Mag};
use super::poly::UniPoly;
use crate::error::{Error, Result};

const MAX_DOUBLINGS: usize = 6;

pub fn ball_from_bigint(n: &BigInt, prec: u32) -> ComplexBall {
    ComplexBall::new(Dyadic::new(n.clone(), 0), Dyadic::zero(), Mag::ZERO, prec)
}

/// Ball enclosure of `P(z)` by Horner's rule over integer coefficients.
pub fn eval_int_poly(coeffs: &[BigInt], z: &ComplexBall) -> ComplexBall {
    let prec = z.prec();
    coeffs.iter().rev().fold(ComplexBall::zero(prec), |acc, c| {
        if c.is_zero() {
            acc.mul(z)
        } else {
            acc.mul(z).add(&ball_from_bigint(c, prec))
        }
    })
}

/// Isolating balls for the roots of a squarefree polynomial, sorted by
/// real then imaginary midpoint. Radii are at most `2^(-prec/2)`.
pub fn isolate_roots(p: &UniPoly, prec: u32) -> Result<Vec<ComplexBall>> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !p.is_squarefree() {
        return Err(Error::RootsNotSeparated);
    }
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let (_, ints) = p.primitive_part();
    if deg == 1 {
        let root = BigRational::new(-&ints[0], ints[1].clone());
        return Ok(vec![ComplexBall::from_rational(&root, prec)]);
    }
    let deriv: Vec<BigInt> = ints
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();
    let seeds = aberth_f64(&ints);
    let mut wp = prec + 32;
    let mut z: Vec<ComplexBall> = seeds
        .iter()
        .map(|s| ComplexBall::from_c64(*s, wp))
        .collect();
    for _ in 0..MAX_DOUBLINGS {
        z = z.iter().map(|b| b.with_prec(wp)).collect();
        refine(&ints, &deriv, &mut z, wp);
        if let Some(mut balls) = certify(&ints, &z, prec) {
            balls.sort_by(cmp_midpoints);
            return Ok(balls);
        }
        wp *= 2;
    }
    Err(Error::RootsNotSeparated)
}

fn horner_c64(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// Double-precision Aberth iteration; only a starting point.
fn aberth_f64(ints: &[BigInt]) -> Vec<Complex64> {
    let n = ints.len() - 1;
    let lc = ints[n].to_f64().unwrap_or(f64::MAX);
    let coeffs: Vec<f64> = ints
        .iter()
        .map(|c| c.to_f64().unwrap_or(0.0) / lc)
        .collect();
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let r0 = coeffs[0].abs().powf(1.0 / n as f64).clamp(1e-3, 1e3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(r0, std::f64::consts::TAU * j as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..800 {
        let mut worst = 0f64;
        for i in 0..n {
            let pv = horner_c64(&coeffs, z[i]);
            let dv = horner_c64(&deriv, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                worst = worst.max(w.norm() / (1.0 + z[i].norm()));
            } else {
                z[i] += Complex64::new(1e-6, 1e-6);
                worst = 1.0;
            }
        }
        if worst < 1e-14 {
            break;
        }
    }
    z
}

/// Aberth iteration at the working precision on ball midpoints.
fn refine(ints: &[BigInt], deriv: &[BigInt], z: &mut [ComplexBall], wp: u32) {
    let n = z.len();
    let target = -(wp as f64) + 8.0;
    for _ in 0..200 {
        let mut worst = f64::NEG_INFINITY;
        for i in 0..n {
            let pv = eval_int_poly(ints, &z[i]).midpoint();
            if pv.is_exact_zero() {
                continue;
            }
            let dv = eval_int_poly(deriv, &z[i]).midpoint();
            let Ok(ratio) = pv.div(&dv) else {
                z[i] = z[i].add(&ComplexBall::from_c64(Complex64::new(1e-9, 1e-9), wp));
                worst = f64::INFINITY;
                continue;
            };
            let mut s = ComplexBall::zero(wp);
            for j in (0..n).filter(|&j| j != i) {
                if let Ok(inv) = z[i].sub(&z[j]).midpoint().inv() {
                    s = s.add(&inv).midpoint();
                }
            }
            let denom = ComplexBall::one(wp).sub(&ratio.mul(&s)).midpoint();
            let w = match ratio.div(&denom) {
                Ok(w) => w.midpoint(),
                Err(_) => ratio,
            };
            z[i] = z[i].sub(&w).midpoint();
            let scale = z[i].mid_abs_upper().log2().max(0.0);
            worst = worst.max(w.mid_abs_upper().log2() - scale);
        }
        if worst < target {
            break;
        }
    }
}

/// Gerschgorin certificate; `None` when discs overlap or are too wide.
fn certify(ints: &[BigInt], z: &[ComplexBall], prec: u32) -> Option<Vec<ComplexBall>> {
    let n = z.len();
    let lc = ball_from_bigint(ints.last()?, z[0].prec());
    let max_rad = Mag::pow2(-(prec as i64) / 2);
    let mut discs = Vec::with_capacity(n);
    for i in 0..n {
        let zi = z[i].midpoint();
        let pv = eval_int_poly(ints, &zi);
        let mut denom = lc.clone();
        for (j, zj) in z.iter().enumerate() {
            if j != i {
                denom = denom.mul(&zi.sub(&zj.midpoint()));
            }
        }
        let w = pv.div(&denom).ok()?;
        let center = zi.sub(&w.midpoint());
        let radius = w
            .abs_upper()
            .mul(Mag::from_f64((n - 1) as f64))
            .add(center.rad())
            .add(w.rad());
        let disc = center.with_rad(radius).with_prec(prec);
        if !disc.rad().le(&max_rad) {
            return None;
        }
        discs.push(disc);
    }
    for i in 0..n {
        for j in i + 1..n {
            if !discs[i].is_disjoint(&discs[j]) {
                return None;
            }
        }
    }
    Some(discs)
}

/// Order used for deterministic output: real part, then imaginary part.
pub fn cmp_midpoints(a: &ComplexBall, b: &ComplexBall) -> Ordering {
    a.re()
        .cmp_value(b.re())
        .then_with(|| a.im().cmp_value(b.im()))
}
