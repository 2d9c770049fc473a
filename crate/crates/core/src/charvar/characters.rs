//! Explicit enumeration of the characters of a Dehn filling.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::counts::{count_abelian, fold_angle, nonabelian_formula, torus_angles, zeta_count};
use crate::error::{Error, Result};
use crate::exactalg::{isolate_roots, rat, strip_roots, ComplexBall, UniPoly};
use crate::knots::{specialize, tameness, torus_k, KnotFamily, Slope, VerdictStatus};

#[derive(Clone, Debug, PartialEq)]
pub enum CharacterKind {
    /// `mu = exp(2 pi i j / |p|)`.
    AbelianFig8 {
        mu: ComplexBall,
        root_index: i64,
    },
    AbelianTorus {
        mu: ComplexBall,
        root_index: i64,
    },
    /// Orbit `{x, 1/x}` of roots of the specialized A-polynomial.
    Fig8NonAb {
        x: ComplexBall,
        tau: ComplexBall,
        special: bool,
    },
    /// `zeta = exp(i pi (2j+1)/|2n+1|)`, `t_m = 2 cos(pi angle)`.
    TorusNonAb {
        zeta_index: i64,
        zeta: ComplexBall,
        angle: BigRational,
        t_m: ComplexBall,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub knot: KnotFamily,
    pub slope: Slope,
    pub kind: CharacterKind,
}

impl Character {
    pub fn is_abelian(&self) -> bool {
        matches!(
            self.kind,
            CharacterKind::AbelianFig8 { .. } | CharacterKind::AbelianTorus { .. }
        )
    }

    pub fn label(&self) -> String {
        match &self.kind {
            CharacterKind::AbelianFig8 { root_index, .. }
            | CharacterKind::AbelianTorus { root_index, .. } => {
                format!("abelian mu=exp(2πi·{root_index}/{})", self.slope.p().abs())
            }
            CharacterKind::Fig8NonAb { special: true, .. } => "nonabelian special (±i, 1)".into(),
            CharacterKind::Fig8NonAb { .. } => "nonabelian orbit".into(),
            CharacterKind::TorusNonAb {
                zeta_index, angle, ..
            } => {
                format!("nonabelian zeta_{zeta_index}, t=2cos(π·{angle})")
            }
        }
    }
}

fn abelian_characters(k: KnotFamily, s: Slope, prec: u32) -> Result<Vec<Character>> {
    let count = count_abelian(s)?;
    let p = s.p().abs();
    Ok((0..count)
        .map(|j| {
            let mu = ComplexBall::exp_i_pi(&BigRational::new((2 * j).into(), p.into()), prec);
            let kind = match k {
                KnotFamily::Fig8 => CharacterKind::AbelianFig8 { mu, root_index: j },
                KnotFamily::Torus(_) => CharacterKind::AbelianTorus { mu, root_index: j },
            };
            Character {
                knot: k,
                slope: s,
                kind,
            }
        })
        .collect())
}

/// Angles (units of pi) of the two reducible traces `±2 sin(pi n a)` at
/// `zeta = exp(i pi a)`.
pub fn reducible_angles(n: i64, a: &BigRational) -> [BigRational; 2] {
    let half = BigRational::new(1.into(), 2.into());
    let na = a * BigRational::from_integer(BigInt::from(n));
    [fold_angle(&(&half - &na)), fold_angle(&(&half + &na))]
}

/// Nonabelian torus characters plus the number of reducible parameter
/// points that were skipped.
pub fn torus_nonabelian(n: i64, s: Slope, prec: u32) -> (Vec<Character>, usize) {
    let k = KnotFamily::Torus(n);
    let m = (2 * n + 1).abs();
    let angles = torus_angles(torus_k(n, s), s.q());
    let mut out = Vec::new();
    let mut skipped = 0;
    for j in 0..zeta_count(n) {
        let a = BigRational::new((2 * j + 1).into(), m.into());
        let zeta = ComplexBall::exp_i_pi(&a, prec);
        let reducible = reducible_angles(n, &a);
        for angle in &angles {
            if reducible.contains(angle) {
                skipped += 1;
                continue;
            }
            let e = ComplexBall::exp_i_pi(angle, prec);
            let t_m = e.add(&e.conj());
            out.push(Character {
                knot: k,
                slope: s,
                kind: CharacterKind::TorusNonAb {
                    zeta_index: j,
                    zeta: zeta.clone(),
                    angle: angle.clone(),
                    t_m,
                },
            });
        }
    }
    (out, skipped)
}

/// `tau = (mu^2 - 1)(1 - lambda)/(lambda + mu^2)` at `mu = x^{-q}`, `lambda = x^p`.
pub fn fig8_tau(x: &ComplexBall, s: Slope) -> Result<ComplexBall> {
    let prec = x.prec();
    let one = ComplexBall::one(prec);
    let mu2 = x.powi(-2 * s.q())?;
    let lambda = x.powi(s.p())?;
    let den = lambda.add(&mu2);
    if den.contains_zero() {
        return Err(Error::Internal(format!(
            "lambda + mu^2 not separated from zero at an orbit of slope {s}"
        )));
    }
    mu2.sub(&one).mul(&one.sub(&lambda)).div(&den)
}

/// Pair the roots into orbits `{x, 1/x}`; the representative is the
/// earlier root in the sorted order.
fn pair_orbits(roots: &[ComplexBall]) -> Result<Vec<ComplexBall>> {
    let prec = roots.first().map(|r| r.prec()).unwrap_or(128);
    let one = ComplexBall::one(prec);
    let mut used = vec![false; roots.len()];
    let mut reps = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let partners: Vec<usize> = (0..roots.len())
            .filter(|&j| j != i && !used[j] && roots[i].mul(&roots[j]).overlaps(&one))
            .collect();
        if partners.len() != 1 {
            return Err(Error::Internal(format!(
                "root orbit pairing found {} candidate partners",
                partners.len()
            )));
        }
        used[i] = true;
        used[partners[0]] = true;
        reps.push(roots[i].clone());
    }
    Ok(reps)
}

/// Polynomial left after removing the roots `±1` and, when `4 | p`, the
/// factor `x^2 + 1`; second value is whether that factor was present.
pub fn fig8_regular_part(s: Slope) -> Result<(UniPoly, bool)> {
    let sp = specialize(KnotFamily::Fig8, s);
    let (mut rest, _) = strip_roots(&sp, &[rat(1), rat(-1)])?;
    let mut special = false;
    if !s.is_infinity() && s.p() % 4 == 0 {
        let circle = UniPoly::from_ints([1, 0, 1]);
        loop {
            let (q, r) = rest.div_rem(&circle)?;
            if !r.is_zero() {
                break;
            }
            special = true;
            rest = q;
        }
    }
    Ok((rest, special))
}

fn fig8_nonabelian(s: Slope, prec: u32) -> Result<Vec<Character>> {
    let k = KnotFamily::Fig8;
    let (rest, special) = fig8_regular_part(s)?;
    let roots = isolate_roots(&rest, prec)?;
    let mut out = Vec::new();
    for x in pair_orbits(&roots)? {
        let tau = fig8_tau(&x, s)?;
        out.push(Character {
            knot: k,
            slope: s,
            kind: CharacterKind::Fig8NonAb {
                x,
                tau,
                special: false,
            },
        });
    }
    if special {
        let sqrt5 = ComplexBall::sqrt_rational(&rat(5), prec);
        let five = ComplexBall::from_int(5, prec);
        for tau in [five.sub(&sqrt5), five.add(&sqrt5)] {
            out.push(Character {
                knot: k,
                slope: s,
                kind: CharacterKind::Fig8NonAb {
                    x: ComplexBall::i(prec),
                    tau: tau.mul_2exp(-1),
                    special: true,
                },
            });
        }
    }
    Ok(out)
}

/// Every character of the filling: abelian ones first, then nonabelian in
/// a deterministic order. Counts are checked against the closed formula
/// whenever its hypotheses hold.
pub fn enumerate_characters(k: KnotFamily, s: Slope, prec: u32) -> Result<Vec<Character>> {
    if s.is_zero() || tameness(k, s).status == VerdictStatus::Excluded {
        return Err(Error::ExcludedSlope);
    }
    let mut chars = abelian_characters(k, s, prec)?;
    let nonab = match k {
        KnotFamily::Fig8 => fig8_nonabelian(s, prec)?,
        KnotFamily::Torus(n) => torus_nonabelian(n, s, prec).0,
    };
    let formula = nonabelian_formula(k, s);
    if formula.hypotheses_hold && nonab.len() as i64 != formula.value {
        return Err(Error::CountMismatch {
            enumerated: nonab.len(),
            formula: formula.value,
        });
    }
    chars.extend(nonab);
    Ok(chars)
}

/// JSON view of a character with decimal ball values.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterView {
    pub kind: &'static str,
    pub label: String,
    pub values: Vec<(String, BallView)>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BallView {
    pub re: String,
    pub im: String,
    pub radius: String,
}

impl BallView {
    pub fn new(b: &ComplexBall) -> BallView {
        let digits = ((b.prec() as f64) * std::f64::consts::LOG10_2).floor() as usize;
        let (re, im, radius) = b.to_decimal(digits.clamp(6, 40));
        BallView { re, im, radius }
    }
}

impl CharacterView {
    pub fn new(c: &Character) -> CharacterView {
        let (kind, values) = match &c.kind {
            CharacterKind::AbelianFig8 { mu, .. } => {
                ("abelian", vec![("mu".into(), BallView::new(mu))])
            }
            CharacterKind::AbelianTorus { mu, .. } => {
                ("abelian", vec![("mu".into(), BallView::new(mu))])
            }
            CharacterKind::Fig8NonAb { x, tau, special } => (
                if *special {
                    "fig8_special"
                } else {
                    "fig8_nonabelian"
                },
                vec![
                    ("x".into(), BallView::new(x)),
                    ("tau".into(), BallView::new(tau)),
                ],
            ),
            CharacterKind::TorusNonAb { zeta, t_m, .. } => (
                "torus_nonabelian",
                vec![
                    ("zeta".into(), BallView::new(zeta)),
                    ("t_m".into(), BallView::new(t_m)),
                ],
            ),
        };
        CharacterView {
            kind,
            label: c.label(),
            values,
        }
    }
}
