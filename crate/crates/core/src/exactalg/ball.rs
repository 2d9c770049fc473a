//! Midpoint-radius complex balls over dyadic midpoints.
//!
//! Midpoints are exact dyadic numbers `m * 2^e`; every operation computes the
//! exact result, rounds it to the working precision and folds the rounding
//! error into the radius. Radii are [`Mag`] upper bounds, which keep their
//! own exponent so that radii far below `f64` range stay meaningful.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 128;
pub const MIN_PRECISION: u32 = 64;

const UP: f64 = 1.0 + 1.0 / (1u64 << 50) as f64;
const DOWN: f64 = 1.0 - 1.0 / (1u64 << 50) as f64;

fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    if exp == 0 {
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, exp - 1022)
}

fn ldexp(m: f64, e: i64) -> f64 {
    let e = e.clamp(-2000, 2000) as i32;
    // split to avoid intermediate overflow/underflow of powi
    let half = e / 2;
    m * 2f64.powi(half) * 2f64.powi(e - half)
}

/// Nonnegative magnitude `m * 2^e` with `m` in `[0.5, 1)` (or zero), used as
/// an upper bound unless stated otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mag {
    m: f64,
    e: i64,
}

#[allow(clippy::should_implement_trait)]
impl Mag {
    pub const ZERO: Mag = Mag { m: 0.0, e: 0 };

    fn norm(m: f64, e: i64) -> Mag {
        if m == 0.0 {
            return Mag::ZERO;
        }
        let (fm, fe) = frexp(m);
        Mag { m: fm, e: e + fe }
    }

    /// Upper bound for a nonnegative finite `f64`.
    pub fn from_f64(x: f64) -> Mag {
        assert!(
            x >= 0.0 && x.is_finite(),
            "magnitude must be finite and nonnegative"
        );
        Mag::norm(x * UP, 0)
    }

    /// Exactly `2^k`.
    pub fn pow2(k: i64) -> Mag {
        Mag { m: 0.5, e: k + 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0.0
    }

    pub fn add(self, o: Mag) -> Mag {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (big, small) = if self.e >= o.e { (self, o) } else { (o, self) };
        let diff = big.e - small.e;
        if diff > 60 {
            return Mag::norm(big.m * (1.0 + 2f64.powi(-58)) * UP, big.e);
        }
        Mag::norm((big.m + small.m * 2f64.powi(-(diff as i32))) * UP, big.e)
    }

    pub fn mul(self, o: Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        Mag::norm(self.m * o.m * UP, self.e + o.e)
    }

    pub fn mul_f64(self, x: f64) -> Mag {
        self.mul(Mag::from_f64(x))
    }

    pub fn mul_2exp(self, k: i64) -> Mag {
        if self.is_zero() {
            return self;
        }
        Mag {
            m: self.m,
            e: self.e + k,
        }
    }

    /// Upper bound for `self / lower` where `lower` is a lower bound (> 0).
    pub fn div_by_lower(self, lower: Mag) -> Mag {
        assert!(!lower.is_zero(), "division by zero magnitude");
        if self.is_zero() {
            return self;
        }
        Mag::norm(self.m / lower.m * UP, self.e - lower.e)
    }

    pub fn sqrt(self) -> Mag {
        if self.is_zero() {
            return self;
        }
        if self.e % 2 == 0 {
            Mag::norm(self.m.sqrt() * UP, self.e / 2)
        } else {
            Mag::norm((self.m * 2.0).sqrt() * UP, (self.e - 1) / 2)
        }
    }

    /// Lower bound for `self - o`, treating `self` as a lower bound and `o`
    /// as an upper bound; `None` when the difference cannot be shown positive.
    pub fn sub_lower(self, o: Mag) -> Option<Mag> {
        if o.is_zero() {
            return (!self.is_zero()).then_some(self);
        }
        if self.is_zero() || self.e < o.e {
            return None;
        }
        let diff = self.e - o.e;
        let small = if diff > 1000 {
            0.0
        } else {
            o.m * 2f64.powi(-(diff as i32)) * UP
        };
        let d = (self.m - small) * DOWN;
        (d > 0.0).then(|| Mag::norm(d, self.e))
    }

    /// Rescale a lower-bound magnitude downward by the rounding slack.
    pub fn lower_slack(self) -> Mag {
        Mag::norm(self.m * DOWN * DOWN, self.e)
    }

    pub fn to_f64(self) -> f64 {
        ldexp(self.m, self.e)
    }

    /// Approximate `log2` of the value; `-inf` for zero.
    pub fn log2(self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.m.log2() + self.e as f64
    }

    pub fn max(self, o: Mag) -> Mag {
        if self.cmp_value(&o) == Ordering::Less {
            o
        } else {
            self
        }
    }

    pub fn cmp_value(&self, o: &Mag) -> Ordering {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.e.cmp(&o.e).then(self.m.total_cmp(&o.m)),
        }
    }

    pub fn le(&self, o: &Mag) -> bool {
        self.cmp_value(o) != Ordering::Greater
    }

    pub fn lt(&self, o: &Mag) -> bool {
        self.cmp_value(o) == Ordering::Less
    }

    /// Scientific notation with four significant digits.
    pub fn to_sci_string(self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let l10 = self.log2() * std::f64::consts::LOG10_2;
        let mut exp10 = l10.floor();
        let mut mant = 10f64.powf(l10 - exp10);
        if mant >= 9.9995 {
            mant /= 10.0;
            exp10 += 1.0;
        }
        format!("{mant:.3}e{}", exp10 as i64)
    }
}

impl fmt::Display for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string())
    }
}

/// Exact dyadic number `mant * 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Dyadic {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn new(mant: BigInt, exp: i64) -> Dyadic {
        if mant.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant, exp }
    }

    pub fn from_int(n: i64) -> Dyadic {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        match self.exp.cmp(&o.exp) {
            Ordering::Equal => Dyadic::new(&self.mant + &o.mant, self.exp),
            Ordering::Less => {
                let shifted = &o.mant << ((o.exp - self.exp) as usize);
                Dyadic::new(&self.mant + shifted, self.exp)
            }
            Ordering::Greater => {
                let shifted = &self.mant << ((self.exp - o.exp) as usize);
                Dyadic::new(shifted + &o.mant, o.exp)
            }
        }
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.neg();
        }
        match self.exp.cmp(&o.exp) {
            Ordering::Equal => Dyadic::new(&self.mant - &o.mant, self.exp),
            Ordering::Less => {
                let shifted = &o.mant << ((o.exp - self.exp) as usize);
                Dyadic::new(&self.mant - shifted, self.exp)
            }
            Ordering::Greater => {
                let shifted = &self.mant << ((self.exp - o.exp) as usize);
                Dyadic::new(shifted - &o.mant, o.exp)
            }
        }
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() || o.is_zero() {
            return Dyadic::zero();
        }
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    pub fn mul_2exp(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Truncate to at most `prec` significant bits; returns the error bound.
    pub fn round(&self, prec: u32) -> (Dyadic, Mag) {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return (self.clone(), Mag::ZERO);
        }
        let shift = bits - prec as u64;
        let mant = &self.mant >> shift as usize;
        let exp = self.exp + shift as i64;
        (Dyadic::new(mant, exp), Mag::pow2(exp))
    }

    /// Leading 53 bits of `|mant|` (truncated) and the shift applied.
    fn top53(&self) -> (u64, i64) {
        let bits = self.mant.bits();
        let mag = self.mant.magnitude();
        if bits <= 53 {
            return (mag.iter_u64_digits().next().unwrap_or(0), 0);
        }
        let shift = bits - 53;
        let limb = (shift / 64) as usize;
        let off = shift % 64;
        let mut it = mag.iter_u64_digits().skip(limb);
        let lo = it.next().unwrap_or(0);
        let hi = it.next().unwrap_or(0);
        let top = if off == 0 {
            lo
        } else {
            (lo >> off) | (hi << (64 - off))
        };
        (top & ((1u64 << 53) - 1), shift as i64)
    }

    /// Upper bound on `|self|`.
    pub fn mag_upper(&self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let (top, shift) = self.top53();
        if shift == 0 {
            return Mag::norm(top as f64, self.exp);
        }
        Mag::norm((top as f64 + 1.0) * UP, self.exp + shift)
    }

    /// Lower bound on `|self|`.
    pub fn mag_lower(&self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let (top, shift) = self.top53();
        if shift == 0 {
            return Mag::norm(top as f64, self.exp);
        }
        Mag::norm(top as f64 * DOWN, self.exp + shift)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        if bits <= 60 {
            return ldexp(self.mant.to_f64().unwrap(), self.exp);
        }
        let sh = bits - 60;
        ldexp(
            (&self.mant >> sh as usize).to_f64().unwrap(),
            self.exp + sh as i64,
        )
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Round a rational to a dyadic with about `prec` significant bits.
    pub fn from_rational(q: &BigRational, prec: u32) -> (Dyadic, Mag) {
        if q.is_zero() {
            return (Dyadic::zero(), Mag::ZERO);
        }
        let num = q.numer();
        let den = q.denom();
        if den.is_one() {
            return Dyadic::new(num.clone(), 0).round(prec);
        }
        let k = prec as i64 + den.bits() as i64 - num.bits() as i64 + 2;
        let scaled = if k >= 0 {
            num << k as usize
        } else {
            num >> (-k) as usize
        };
        let (quot, rem) = (&scaled / den, &scaled % den);
        let err = if rem.is_zero() && k >= 0 {
            Mag::ZERO
        } else {
            Mag::pow2(-k + 1)
        };
        let (d, e2) = Dyadic::new(quot, -k).round(prec);
        (d, err.add(e2))
    }

    /// `self / o` to about `prec` bits, with the truncation bound.
    pub fn div(&self, o: &Dyadic, prec: u32) -> (Dyadic, Mag) {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return (Dyadic::zero(), Mag::ZERO);
        }
        let s = prec as i64 + o.mant.bits() as i64 - self.mant.bits() as i64 + 2;
        let s = s.max(0);
        let q = (&self.mant << s as usize) / &o.mant;
        let exp = self.exp - s - o.exp;
        let (d, e2) = Dyadic::new(q, exp).round(prec);
        (d, Mag::pow2(exp).add(e2))
    }

    pub fn cmp_value(&self, o: &Dyadic) -> Ordering {
        let d = self.sub(o);
        match d.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

/// Complex ball: every point within `rad` of `re + i im`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexBall {
    re: Dyadic,
    im: Dyadic,
    rad: Mag,
    prec: u32,
}

impl ComplexBall {
    pub fn new(re: Dyadic, im: Dyadic, rad: Mag, prec: u32) -> ComplexBall {
        let prec = prec.max(MIN_PRECISION);
        let (re, e1) = re.round(prec);
        let (im, e2) = im.round(prec);
        ComplexBall {
            re,
            im,
            rad: rad.add(e1).add(e2),
            prec,
        }
    }

    pub fn zero(prec: u32) -> ComplexBall {
        ComplexBall::new(Dyadic::zero(), Dyadic::zero(), Mag::ZERO, prec)
    }

    pub fn from_int(n: i64, prec: u32) -> ComplexBall {
        ComplexBall::new(Dyadic::from_int(n), Dyadic::zero(), Mag::ZERO, prec)
    }

    pub fn one(prec: u32) -> ComplexBall {
        ComplexBall::from_int(1, prec)
    }

    pub fn i(prec: u32) -> ComplexBall {
        ComplexBall::new(Dyadic::zero(), Dyadic::from_int(1), Mag::ZERO, prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> ComplexBall {
        let (re, err) = Dyadic::from_rational(q, prec.max(MIN_PRECISION));
        ComplexBall::new(re, Dyadic::zero(), err, prec)
    }

    pub fn from_complex_rational(re: &BigRational, im: &BigRational, prec: u32) -> ComplexBall {
        let (r, e1) = Dyadic::from_rational(re, prec.max(MIN_PRECISION));
        let (i, e2) = Dyadic::from_rational(im, prec.max(MIN_PRECISION));
        ComplexBall::new(r, i, e1.add(e2), prec)
    }

    /// Seed a ball from a double-precision approximation (radius zero).
    pub fn from_c64(z: Complex64, prec: u32) -> ComplexBall {
        let conv = |x: f64| {
            let (m, e) = frexp(x);
            let mant = BigInt::from((m * 2f64.powi(53)) as i64);
            Dyadic::new(mant, e - 53)
        };
        ComplexBall::new(conv(z.re), conv(z.im), Mag::ZERO, prec)
    }

    pub fn re(&self) -> &Dyadic {
        &self.re
    }

    pub fn im(&self) -> &Dyadic {
        &self.im
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_real_mid(&self) -> bool {
        self.im.is_zero()
    }

    pub fn with_prec(&self, prec: u32) -> ComplexBall {
        ComplexBall::new(self.re.clone(), self.im.clone(), self.rad, prec)
    }

    /// Same midpoint, radius replaced.
    pub fn with_rad(&self, rad: Mag) -> ComplexBall {
        ComplexBall {
            rad,
            ..self.clone()
        }
    }

    pub fn midpoint(&self) -> ComplexBall {
        self.with_rad(Mag::ZERO)
    }

    pub fn add_error(&self, err: Mag) -> ComplexBall {
        self.with_rad(self.rad.add(err))
    }

    fn join_prec(&self, o: &ComplexBall) -> u32 {
        self.prec.max(o.prec)
    }

    pub fn add(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall::new(
            self.re.add(&o.re),
            self.im.add(&o.im),
            self.rad.add(o.rad),
            self.join_prec(o),
        )
    }

    pub fn sub(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall::new(
            self.re.sub(&o.re),
            self.im.sub(&o.im),
            self.rad.add(o.rad),
            self.join_prec(o),
        )
    }

    pub fn neg(&self) -> ComplexBall {
        ComplexBall {
            re: self.re.neg(),
            im: self.im.neg(),
            rad: self.rad,
            prec: self.prec,
        }
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall {
            re: self.re.clone(),
            im: self.im.neg(),
            rad: self.rad,
            prec: self.prec,
        }
    }

    /// Multiply by `i` (exact).
    pub fn mul_i(&self) -> ComplexBall {
        ComplexBall {
            re: self.im.neg(),
            im: self.re.clone(),
            rad: self.rad,
            prec: self.prec,
        }
    }

    pub fn mul_2exp(&self, k: i64) -> ComplexBall {
        ComplexBall {
            re: self.re.mul_2exp(k),
            im: self.im.mul_2exp(k),
            rad: self.rad.mul_2exp(k),
            prec: self.prec,
        }
    }

    /// Upper bound on the midpoint modulus.
    pub fn mid_abs_upper(&self) -> Mag {
        hypot_upper(self.re.mag_upper(), self.im.mag_upper())
    }

    /// Lower bound on the midpoint modulus.
    pub fn mid_abs_lower(&self) -> Mag {
        hypot_lower(self.re.mag_lower(), self.im.mag_lower())
    }

    /// Upper bound on `|z|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        self.mid_abs_upper().add(self.rad)
    }

    /// Lower bound on `|z|` over the ball (zero if the ball meets zero).
    pub fn abs_lower(&self) -> Mag {
        self.mid_abs_lower()
            .sub_lower(self.rad)
            .unwrap_or(Mag::ZERO)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid_abs_lower().sub_lower(self.rad).is_none()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.rad.is_zero()
    }

    pub fn mul(&self, o: &ComplexBall) -> ComplexBall {
        let prec = self.join_prec(o);
        let (re, im) = if self.im.is_zero() && o.im.is_zero() {
            (self.re.mul(&o.re), Dyadic::zero())
        } else {
            (
                self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
                self.re.mul(&o.im).add(&self.im.mul(&o.re)),
            )
        };
        let rad = if self.rad.is_zero() && o.rad.is_zero() {
            Mag::ZERO
        } else {
            self.mid_abs_upper()
                .mul(o.rad)
                .add(o.mid_abs_upper().mul(self.rad))
                .add(self.rad.mul(o.rad))
        };
        ComplexBall::new(re, im, rad, prec)
    }

    pub fn mul_int(&self, n: i64) -> ComplexBall {
        self.mul(&ComplexBall::from_int(n, self.prec))
    }

    pub fn mul_rational(&self, q: &BigRational) -> ComplexBall {
        self.mul(&ComplexBall::from_rational(q, self.prec))
    }

    pub fn square(&self) -> ComplexBall {
        self.mul(self)
    }

    /// Reciprocal; fails when the ball may contain zero.
    pub fn inv(&self) -> Result<ComplexBall> {
        let lower = self.mid_abs_lower();
        let Some(gap) = lower.sub_lower(self.rad) else {
            return Err(Error::Precondition(
                "reciprocal of a ball containing zero".into(),
            ));
        };
        let prec = self.prec;
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let (re, e1) = self.re.div(&norm, prec + 8);
        let (im, e2) = self.im.neg().div(&norm, prec + 8);
        let rad = self.rad.div_by_lower(lower.mul(gap).lower_slack());
        Ok(ComplexBall::new(re, im, rad.add(e1).add(e2), prec))
    }

    pub fn div(&self, o: &ComplexBall) -> Result<ComplexBall> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn powi(&self, k: i64) -> Result<ComplexBall> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = ComplexBall::one(self.prec);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.square();
            }
        }
        Ok(acc)
    }

    /// True when the two balls certainly share no point.
    pub fn is_disjoint(&self, o: &ComplexBall) -> bool {
        let d = self.midpoint().sub(&o.midpoint());
        let dist = d.mid_abs_lower().sub_lower(d.rad);
        match dist {
            Some(dist) => dist.sub_lower(self.rad.add(o.rad)).is_some(),
            None => false,
        }
    }

    pub fn overlaps(&self, o: &ComplexBall) -> bool {
        !self.is_disjoint(o)
    }

    /// True when `o` lies entirely inside `self`.
    pub fn contains(&self, o: &ComplexBall) -> bool {
        let d = self.midpoint().sub(&o.midpoint());
        let reach = d.abs_upper().add(o.rad);
        reach.le(&self.rad)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Decimal rendering `re + im i` with radius.
    pub fn to_decimal(&self, digits: usize) -> (String, String, String) {
        (
            format_decimal(&self.re.to_rational(), digits),
            format_decimal(&self.im.to_rational(), digits),
            self.rad.to_sci_string(),
        )
    }

    /// `e^{i pi r}` for rational `r`.
    pub fn exp_i_pi(r: &BigRational, prec: u32) -> ComplexBall {
        let two = BigRational::from_integer(BigInt::from(2));
        let mut r = r % &two;
        if r.is_negative() {
            r += &two;
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
        // r in [0, 2)
        let mut negate = false;
        if r >= BigRational::one() {
            r -= BigRational::one();
            negate = true;
        }
        let mut rotate = false;
        if r > half {
            r -= &half;
            rotate = true;
        }
        // r in [0, 1/2]
        let mut reflect = false;
        if r > quarter {
            r = &half - r;
            reflect = true;
        }
        let mut z = if r.is_zero() {
            ComplexBall::one(prec)
        } else {
            let wp = prec + 16;
            let x = pi_ball(wp).mul_rational(&r);
            let (c, s) = cos_sin_small(&x, wp);
            ComplexBall::new(c.re, s.re, c.rad.add(s.rad), wp)
        };
        if reflect {
            z = z.conj().mul_i();
        }
        if rotate {
            z = z.mul_i();
        }
        if negate {
            z = z.neg();
        }
        z.with_prec(prec)
    }

    /// `sqrt(q)` for a nonnegative rational, as a real ball.
    pub fn sqrt_rational(q: &BigRational, prec: u32) -> ComplexBall {
        assert!(!q.is_negative(), "sqrt of a negative rational");
        if q.is_zero() {
            return ComplexBall::zero(prec);
        }
        let k = prec as usize + 8;
        let nd = q.numer() * q.denom();
        let s = (nd << (2 * k)).sqrt();
        // sqrt(q) lies in [s, s+1) / (den * 2^k)
        let scale = q.denom() << (k + 1);
        let mid = BigRational::new(2 * s + 1u32, scale.clone());
        let half_width = BigRational::new(BigInt::one(), scale);
        let ball = ComplexBall::from_rational(&mid, prec + 8);
        let w = ComplexBall::from_rational(&half_width, 64);
        ball.add_error(w.abs_upper()).with_prec(prec)
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im, rad) = self.to_decimal(20);
        write!(f, "({re} + {im}i) +/- {rad}")
    }
}

fn hypot_upper(a: Mag, b: Mag) -> Mag {
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    let e = a.e.max(b.e);
    let x = a.m * 2f64.powi((a.e - e).max(-1000) as i32);
    let y = b.m * 2f64.powi((b.e - e).max(-1000) as i32);
    Mag::norm(x.hypot(y) * UP * UP, e)
}

fn hypot_lower(a: Mag, b: Mag) -> Mag {
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    let e = a.e.max(b.e);
    let x = a.m * 2f64.powi((a.e - e).max(-1000) as i32);
    let y = b.m * 2f64.powi((b.e - e).max(-1000) as i32);
    Mag::norm(x.hypot(y) * DOWN * DOWN, e)
}

/// Ball enclosing pi at the given precision (cached).
pub fn pi_ball(prec: u32) -> ComplexBall {
    static CACHE: OnceLock<Mutex<HashMap<u32, ComplexBall>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("pi cache poisoned").get(&prec) {
        return b.clone();
    }
    let wp = prec + 32;
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let pi = atan_inv(5, wp)
        .mul_int(16)
        .sub(&atan_inv(239, wp).mul_int(4))
        .with_prec(prec);
    cache
        .lock()
        .expect("pi cache poisoned")
        .insert(prec, pi.clone());
    pi
}

/// `atan(1/m)` for an integer `m >= 2` by its alternating series.
fn atan_inv(m: i64, prec: u32) -> ComplexBall {
    let m_big = BigInt::from(m);
    let m2 = &m_big * &m_big;
    let mut power = m_big.clone();
    let mut sum = ComplexBall::zero(prec);
    let threshold = Mag::pow2(-(prec as i64) - 8);
    let mut k = 0i64;
    loop {
        let term = BigRational::new(BigInt::one(), BigInt::from(2 * k + 1) * &power);
        let tb = ComplexBall::from_rational(&term, prec);
        if tb.abs_upper().lt(&threshold) {
            // alternating, decreasing: the tail is bounded by this term
            return sum.add_error(tb.abs_upper());
        }
        sum = if k % 2 == 0 {
            sum.add(&tb)
        } else {
            sum.sub(&tb)
        };
        power *= &m2;
        k += 1;
    }
}

/// cos and sin of a real ball with |x| <= 1 by Taylor series.
fn cos_sin_small(x: &ComplexBall, prec: u32) -> (ComplexBall, ComplexBall) {
    let x2 = x.square();
    let threshold = Mag::pow2(-(prec as i64) - 8);
    let series = |first: ComplexBall, offset: i64| {
        let mut term = first;
        let mut sum = ComplexBall::zero(prec);
        let mut k = 0i64;
        loop {
            if term.abs_upper().lt(&threshold) {
                return sum.add_error(term.abs_upper());
            }
            sum = if k % 2 == 0 {
                sum.add(&term)
            } else {
                sum.sub(&term)
            };
            let a = 2 * k + 1 + offset;
            let denom = BigRational::new(BigInt::one(), BigInt::from(a * (a + 1)));
            term = term.mul(&x2).mul_rational(&denom);
            k += 1;
        }
    };
    let cos = series(ComplexBall::one(prec), 0);
    let sin = series(x.clone(), 1);
    (cos, sin)
}

/// Scientific-notation decimal with `digits` significant digits.
pub fn format_decimal(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    // estimate decimal exponent
    let approx = a.numer().bits() as f64 - a.denom().bits() as f64;
    let mut e10 = (approx * std::f64::consts::LOG10_2).floor() as i64;
    let ten = BigInt::from(10);
    let scaled = |e: i64| -> BigRational {
        let shift = digits as i64 - 1 - e;
        if shift >= 0 {
            &a * BigRational::from_integer(num_traits::pow(ten.clone(), shift as usize))
        } else {
            &a / BigRational::from_integer(num_traits::pow(ten.clone(), (-shift) as usize))
        }
    };
    let lower = num_traits::pow(ten.clone(), digits - 1);
    let upper = num_traits::pow(ten.clone(), digits);
    let mut s = scaled(e10);
    while s.to_integer() >= upper {
        e10 += 1;
        s = scaled(e10);
    }
    while s.to_integer() < lower {
        e10 -= 1;
        s = scaled(e10);
    }
    let mut m = (s + BigRational::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer();
    if m >= upper {
        m /= &ten;
        e10 += 1;
    }
    let ds = m.to_string();
    let (head, tail) = ds.split_at(1);
    let tail = tail.trim_end_matches('0');
    let body = if tail.is_empty() {
        head.to_string()
    } else {
        format!("{head}.{tail}")
    };
    format!("{}{}e{}", if neg { "-" } else { "" }, body, e10)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn mag_arithmetic_is_upward() {
        let a = Mag::from_f64(0.75);
        let b = Mag::from_f64(3.0);
        assert!(a.add(b).to_f64() >= 3.75);
        assert!(a.mul(b).to_f64() >= 2.25);
        let tiny = Mag::pow2(-3000);
        assert!(!tiny.is_zero());
        assert!(tiny.log2() < -2999.0);
        assert!(tiny.lt(&Mag::pow2(-2999)));
    }

    #[test]
    fn rational_balls_contain_their_value() {
        let b = ComplexBall::from_rational(&q(1, 3), 128);
        let diff = b.re().to_rational() - q(1, 3);
        let bound = Mag::pow2(-120);
        assert!(b.rad().le(&bound));
        assert!(diff.abs() < Dyadic::new(1.into(), -120).to_rational());
    }

    #[test]
    fn pi_matches_double() {
        let p = pi_ball(256);
        assert!((p.re().to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!(p.rad().log2() < -250.0);
    }

    #[test]
    fn roots_of_unity_are_on_the_circle() {
        for (n, d) in [(1, 3), (2, 5), (7, 4), (-3, 7), (11, 6)] {
            let z = ComplexBall::exp_i_pi(&q(n, d), 200);
            let c = z.to_c64();
            let angle = std::f64::consts::PI * n as f64 / d as f64;
            assert!((c.re - angle.cos()).abs() < 1e-14, "{n}/{d}");
            assert!((c.im - angle.sin()).abs() < 1e-14, "{n}/{d}");
            let norm = z.mul(&z.conj()).sub(&ComplexBall::one(200));
            assert!(norm.abs_upper().log2() < -190.0);
        }
        let i = ComplexBall::exp_i_pi(&q(1, 2), 128);
        assert_eq!(i, ComplexBall::i(128));
    }

    #[test]
    fn reciprocal_and_powers() {
        let z = ComplexBall::from_complex_rational(&q(3, 2), &q(-1, 3), 128);
        let w = z.inv().unwrap();
        let one = z.mul(&w).sub(&ComplexBall::one(128));
        assert!(one.abs_upper().log2() < -115.0);
        let z5 = z.powi(5).unwrap();
        let zm5 = z.powi(-5).unwrap();
        assert!(z5.mul(&zm5).sub(&ComplexBall::one(128)).abs_upper().log2() < -100.0);
        assert!(ComplexBall::zero(128).inv().is_err());
    }

    #[test]
    fn sqrt_of_five() {
        let s = ComplexBall::sqrt_rational(&q(5, 1), 128);
        assert!((s.re().to_f64() - 5f64.sqrt()).abs() < 1e-15);
        let sq = s.square().sub(&ComplexBall::from_int(5, 128));
        assert!(sq.contains_zero());
        assert!(sq.abs_upper().log2() < -110.0);
    }

    #[test]
    fn disjointness() {
        let a = ComplexBall::from_int(1, 128).with_rad(Mag::from_f64(0.25));
        let b = ComplexBall::from_int(2, 128).with_rad(Mag::from_f64(0.25));
        let c = ComplexBall::from_int(2, 128).with_rad(Mag::from_f64(0.8));
        assert!(a.is_disjoint(&b));
        assert!(a.overlaps(&c));
        assert!(c.contains(&b));
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(&q(1, 8), 5), "1.25e-1");
        assert_eq!(format_decimal(&q(-22, 7), 6), "-3.14286e0");
        assert_eq!(format_decimal(&q(1000, 1), 3), "1e3");
    }
}
