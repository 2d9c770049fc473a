//! Trace monomials, their values at characters, and coordinate-ring bases.

use std::fmt;

use serde::Serialize;

use super::characters::{Character, CharacterKind};
use super::counts::{count_abelian, nonabelian_formula, torus_tau, zeta_count};
use crate::error::{Error, Result};
use crate::exactalg::ComplexBall;
use crate::knots::{tameness, KnotFamily, Slope, VerdictStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Meridian.
    Tm,
    /// Torus knot generator `b` with `b^2 = a^{2n+1}`.
    Tb,
    /// Curve `mu^s lambda^u` on the boundary torus.
    Tsu { s: i64, u: i64 },
    /// `t_{ab^{-1}}` of the figure-eight group.
    Tab,
}

impl Generator {
    fn family_ok(&self, k: KnotFamily) -> bool {
        matches!(
            (self, k),
            (Generator::Tm, _)
                | (Generator::Tb, KnotFamily::Torus(_))
                | (Generator::Tsu { .. } | Generator::Tab, KnotFamily::Fig8)
        )
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Tm => write!(f, "t_m"),
            Generator::Tb => write!(f, "t_b"),
            Generator::Tsu { s, u } => write!(f, "t_{{{s}/{u}}}"),
            Generator::Tab => write!(f, "t_{{ab^-1}}"),
        }
    }
}

/// Product of generators with positive exponents, kept sorted by
/// generator; the empty product is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceMonomial {
    factors: Vec<(Generator, u32)>,
}

impl TraceMonomial {
    pub fn one() -> TraceMonomial {
        TraceMonomial {
            factors: Vec::new(),
        }
    }

    pub fn new<I: IntoIterator<Item = (Generator, u32)>>(factors: I) -> TraceMonomial {
        let mut v: Vec<(Generator, u32)> = Vec::new();
        for (g, e) in factors {
            if e == 0 {
                continue;
            }
            match v.iter_mut().find(|(h, _)| *h == g) {
                Some(slot) => slot.1 += e,
                None => v.push((g, e)),
            }
        }
        v.sort();
        TraceMonomial { factors: v }
    }

    pub fn power(g: Generator, e: u32) -> TraceMonomial {
        TraceMonomial::new([(g, e)])
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        self.factors
            .iter()
            .find(|(h, _)| *h == g)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

impl fmt::Display for TraceMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(g, e)| {
                if *e == 1 {
                    g.to_string()
                } else {
                    format!("{g}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for TraceMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn mismatch(g: Generator, c: &Character) -> Error {
    Error::FamilyMismatch {
        generator: g.to_string(),
        family: match c.knot {
            KnotFamily::Fig8 => "fig8",
            KnotFamily::Torus(_) => "torus",
        },
    }
}

/// `z + 1/z`.
fn plus_inverse(z: &ComplexBall) -> Result<ComplexBall> {
    Ok(z.add(&z.inv()?))
}

pub fn eval_generator(g: Generator, c: &Character) -> Result<ComplexBall> {
    if !g.family_ok(c.knot) {
        return Err(mismatch(g, c));
    }
    let q = c.slope.q();
    match (&c.kind, g) {
        (CharacterKind::AbelianFig8 { mu, .. } | CharacterKind::AbelianTorus { mu, .. }, g) => {
            match g {
                Generator::Tm => plus_inverse(mu),
                Generator::Tb => plus_inverse(&mu.square()),
                Generator::Tsu { s, .. } => plus_inverse(&mu.powi(s)?),
                Generator::Tab => Ok(ComplexBall::from_int(2, mu.prec())),
            }
        }
        (CharacterKind::Fig8NonAb { x, tau, .. }, g) => match g {
            Generator::Tm => plus_inverse(&x.powi(q)?),
            Generator::Tsu { .. } => plus_inverse(x),
            Generator::Tab => Ok(ComplexBall::from_int(2, tau.prec()).sub(tau)),
            Generator::Tb => Err(mismatch(g, c)),
        },
        (CharacterKind::TorusNonAb { zeta, t_m, .. }, g) => match g {
            Generator::Tm => Ok(t_m.clone()),
            Generator::Tb => Ok(zeta.add(&zeta.conj())),
            _ => Err(mismatch(g, c)),
        },
    }
}

pub fn eval_trace(mono: &TraceMonomial, c: &Character) -> Result<ComplexBall> {
    let prec = match &c.kind {
        CharacterKind::AbelianFig8 { mu, .. } | CharacterKind::AbelianTorus { mu, .. } => mu.prec(),
        CharacterKind::Fig8NonAb { x, .. } => x.prec(),
        CharacterKind::TorusNonAb { t_m, .. } => t_m.prec(),
    };
    let mut acc = ComplexBall::one(prec);
    for &(g, e) in mono.factors() {
        acc = acc.mul(&eval_generator(g, c)?.powi(e as i64)?);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Basis {
    pub monomials: Vec<TraceMonomial>,
    pub cardinality: usize,
    /// `(s, u)` with `pu - qs = 1`, for figure-eight bases.
    pub dual: Option<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BasisResult {
    Supported(Basis),
    Unsupported { reason: String },
}

impl BasisResult {
    pub fn supported(&self) -> Option<&Basis> {
        match self {
            BasisResult::Supported(b) => Some(b),
            BasisResult::Unsupported { .. } => None,
        }
    }
}

/// Graded lexicographic order on exponent vectors over `order`.
fn sort_grlex(monos: &mut [TraceMonomial], order: &[Generator]) {
    monos.sort_by_key(|m| {
        let exps: Vec<u32> = order.iter().map(|&g| m.exponent(g)).collect();
        (m.degree(), exps)
    });
}

fn unsupported(reason: impl Into<String>) -> BasisResult {
    BasisResult::Unsupported {
        reason: reason.into(),
    }
}

pub fn basis(k: KnotFamily, s: Slope) -> BasisResult {
    if s.is_zero() {
        return unsupported("slope 0 is excluded");
    }
    if tameness(k, s).status == VerdictStatus::Excluded {
        return unsupported(format!("slope {s} is excluded"));
    }
    match k {
        KnotFamily::Torus(n) => {
            if s.p().abs() != 1 {
                return unsupported(format!("no basis known for torus slope {s} (need p = ±1)"));
            }
            let tau = torus_tau(n, s) as u32;
            let z = zeta_count(n) as u32;
            let mut monos: Vec<TraceMonomial> = (0..tau)
                .flat_map(|i| {
                    (0..z)
                        .map(move |j| TraceMonomial::new([(Generator::Tm, i), (Generator::Tb, j)]))
                })
                .collect();
            monos.push(TraceMonomial::power(Generator::Tm, tau));
            sort_grlex(&mut monos, &[Generator::Tm, Generator::Tb]);
            let cardinality = monos.len();
            BasisResult::Supported(Basis {
                monomials: monos,
                cardinality,
                dual: None,
            })
        }
        KnotFamily::Fig8 => {
            let (sd, u) = s.dual();
            let tsu = Generator::Tsu { s: sd, u };
            let total = count_abelian(s).unwrap_or(0) + nonabelian_formula(k, s).value;
            let mut monos = Vec::new();
            let mut powers = total;
            if s.p() % 4 == 0 {
                monos.extend([
                    TraceMonomial::power(Generator::Tab, 1),
                    TraceMonomial::power(Generator::Tab, 2),
                    TraceMonomial::new([(Generator::Tab, 1), (tsu, 1)]),
                    TraceMonomial::new([(Generator::Tab, 2), (tsu, 1)]),
                ]);
                powers -= 4;
            }
            monos.extend((0..powers.max(0) as u32).map(|j| TraceMonomial::power(tsu, j)));
            sort_grlex(&mut monos, &[Generator::Tab, tsu]);
            let cardinality = monos.len();
            BasisResult::Supported(Basis {
                monomials: monos,
                cardinality,
                dual: Some((sd, u)),
            })
        }
    }
}
