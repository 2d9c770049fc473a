//! Character counts: closed formulas and independent root-count oracles.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{distinct_roots_excluding, rat, strip_roots};
use crate::knots::{specialize, tameness, torus_k, KnotFamily, Slope, VerdictStatus};

/// `1 + floor(|p|/2)` abelian characters (`mu^p = 1` modulo inversion).
pub fn count_abelian(s: Slope) -> Result<i64> {
    if s.is_zero() {
        return Err(Error::ExcludedSlope);
    }
    Ok(1 + s.p().abs() / 2)
}

/// Number of `zeta` with `zeta^{2n+1} = -1`, `zeta != -1`, `Im zeta > 0`.
pub fn zeta_count(n: i64) -> i64 {
    ((2 * n + 1).abs() - 1) / 2
}

/// `d(p/q) = (|4q+p| + |4q-p|)/2 - delta`, `delta = 1` for odd `p`.
pub fn fig8_d(s: Slope) -> i64 {
    let (p, q) = (s.p(), s.q());
    ((4 * q + p).abs() + (4 * q - p).abs()) / 2 - p.rem_euclid(2)
}

/// `tau_{n,p,q} = (|p - (4n+2)q| - delta)/2`.
pub fn torus_tau(n: i64, s: Slope) -> i64 {
    (torus_k(n, s) - s.p().rem_euclid(2)) / 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaValue {
    pub value: i64,
    pub hypotheses_hold: bool,
    pub flags: Vec<String>,
}

pub fn nonabelian_formula(k: KnotFamily, s: Slope) -> FormulaValue {
    let mut flags = Vec::new();
    let tame = tameness(k, s);
    if tame.status == VerdictStatus::Excluded {
        flags.push(format!("tameness fails: {}", tame.evidence));
    }
    let value = match k {
        KnotFamily::Fig8 => fig8_d(s),
        KnotFamily::Torus(n) => {
            if s.p() % 4 == 0 && s.p().gcd(&(2 * n + 1)) != 1 {
                flags.push(format!(
                    "4 | p and gcd(p, 2n+1) = {} > 1",
                    s.p().gcd(&(2 * n + 1))
                ));
            }
            torus_tau(n, s) * zeta_count(n)
        }
    };
    FormulaValue {
        value,
        hypotheses_hold: flags.is_empty(),
        flags,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail")]
pub enum Oracle {
    Value(i64),
    Unavailable(String),
}

impl Oracle {
    pub fn value(&self) -> Option<i64> {
        match self {
            Oracle::Value(v) => Some(*v),
            Oracle::Unavailable(_) => None,
        }
    }
}

/// Fold an angle (in units of pi) into `[0, 1]`; `2 cos` is injective there.
pub fn fold_angle(theta: &BigRational) -> BigRational {
    let two = rat(2);
    let t = theta - (theta / &two).floor() * &two;
    if t > BigRational::one() {
        two - t
    } else {
        t
    }
}

/// Distinct angles `theta` in `(0, 1)` with `2cos(pi theta)` solving
/// `T_k(t) = 2(-1)^q`, i.e. `theta = (q + 2j)/k` folded.
pub fn torus_angles(k: i64, q: i64) -> Vec<BigRational> {
    if k == 0 {
        return Vec::new();
    }
    let set: BTreeSet<BigRational> = (0..k)
        .map(|j| fold_angle(&BigRational::new((q + 2 * j).into(), k.into())))
        .filter(|a| !a.is_zero() && !a.is_one())
        .collect();
    set.into_iter().collect()
}

pub fn nonabelian_oracle(k: KnotFamily, s: Slope) -> Result<Oracle> {
    if s.is_zero() {
        return Err(Error::ExcludedSlope);
    }
    match k {
        KnotFamily::Torus(n) => {
            let kk = torus_k(n, s);
            if kk == 0 {
                return Ok(Oracle::Unavailable(
                    "degenerate equation T_0 = 2(-1)^q".into(),
                ));
            }
            Ok(Oracle::Value(
                zeta_count(n) * torus_angles(kk, s.q()).len() as i64,
            ))
        }
        KnotFamily::Fig8 => {
            if s.p() % 4 == 0 {
                return Ok(Oracle::Unavailable(
                    "4 | p: the orbit over (±i, 1) carries two characters".into(),
                ));
            }
            let sp = specialize(k, s);
            let (stripped, _) = strip_roots(&sp, &[rat(1), rat(-1)])?;
            if !stripped.is_squarefree() {
                return Ok(Oracle::Unavailable(
                    "stripped specialization is not squarefree".into(),
                ));
            }
            let roots = distinct_roots_excluding(&sp, &[rat(1), rat(-1)])?;
            Ok(Oracle::Value(roots as i64 / 2))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountBreakdown {
    pub abelian: i64,
    pub nonabelian_formula: i64,
    pub formula_hypotheses_hold: bool,
    pub nonabelian_oracle: Oracle,
    pub total_formula: i64,
}

pub fn count_breakdown(k: KnotFamily, s: Slope) -> Result<CountBreakdown> {
    let abelian = count_abelian(s)?;
    let f = nonabelian_formula(k, s);
    Ok(CountBreakdown {
        abelian,
        nonabelian_formula: f.value,
        formula_hypotheses_hold: f.hypotheses_hold,
        nonabelian_oracle: nonabelian_oracle(k, s)?,
        total_formula: abelian + f.value,
    })
}
