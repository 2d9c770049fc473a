//! Nonsingularity of the evaluation matrix of a basis on the characters.

use serde::Serialize;

use super::characters::{enumerate_characters, BallView};
use super::trace::{basis, eval_generator, eval_trace, BasisResult, TraceMonomial};
use crate::error::{Error, Result};
use crate::exactalg::ball::{Mag, MIN_PRECISION};
use crate::exactalg::linalg::det_ball;
use crate::exactalg::ComplexBall;
use crate::knots::{KnotFamily, Slope};

pub const DET_THRESHOLD: f64 = 1e-6;
pub const MAX_PRECISION: u32 = 1024;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub characters: usize,
    pub monomials: usize,
    pub square: bool,
    pub det: Option<BallView>,
    /// Certified lower bound for `|det|`, as a decimal string.
    pub det_abs_lower: Option<String>,
    pub precision: u32,
    /// Floating-point rank estimate, filled in when the check fails.
    pub rank_estimate: Option<usize>,
    pub passed: bool,
    pub reason: String,
}

/// Evaluation matrix rows indexed by characters, columns by monomials.
pub fn evaluation_matrix(k: KnotFamily, s: Slope, prec: u32) -> Result<Vec<Vec<ComplexBall>>> {
    let b = match basis(k, s) {
        BasisResult::Supported(b) => b,
        BasisResult::Unsupported { reason } => return Err(Error::Precondition(reason)),
    };
    let chars = enumerate_characters(k, s, prec)?;
    chars
        .iter()
        .map(|c| b.monomials.iter().map(|m| eval_trace(m, c)).collect())
        .collect()
}

/// True when lowering any exponent of a monomial stays inside the set.
fn downward_closed(monos: &[TraceMonomial]) -> bool {
    monos.iter().all(|m| {
        m.factors().iter().all(|&(g, e)| {
            let lower = TraceMonomial::new(m.factors().iter().map(|&(h, f)| {
                if h == g {
                    (h, e - 1)
                } else {
                    (h, f)
                }
            }));
            monos.contains(&lower)
        })
    })
}

/// `1, t, T_2(t), ..., T_e(t)` with `T_k(x + 1/x) = x^k + x^-k`.
fn monic_chebyshev(t: &ComplexBall, e: u32) -> Vec<ComplexBall> {
    let prec = t.prec();
    let mut out = vec![ComplexBall::one(prec)];
    if e == 0 {
        return out;
    }
    out.push(t.clone());
    let mut prev = ComplexBall::from_int(2, prec);
    for k in 2..=e as usize {
        let next = t.mul(&out[k - 1]).sub(&prev);
        prev = out[k - 1].clone();
        out.push(next);
    }
    out
}

/// Evaluation matrix after the column change `t^e -> T_e(t)` in every
/// generator. On a downward-closed monomial set this is unitriangular, so
/// the determinant is unchanged while the entries stay bounded.
fn chebyshev_matrix(
    monos: &[TraceMonomial],
    k: KnotFamily,
    s: Slope,
    prec: u32,
) -> Result<Vec<Vec<ComplexBall>>> {
    let chars = enumerate_characters(k, s, prec)?;
    let mut gens: Vec<_> = monos
        .iter()
        .flat_map(|m| m.factors().iter().map(|&(g, _)| g))
        .collect();
    gens.sort();
    gens.dedup();
    let top = |g| monos.iter().map(|m| m.exponent(g)).max().unwrap_or(0);
    chars
        .iter()
        .map(|c| {
            let tables = gens
                .iter()
                .map(|&g| Ok((g, monic_chebyshev(&eval_generator(g, c)?, top(g)))))
                .collect::<Result<Vec<_>>>()?;
            Ok(monos
                .iter()
                .map(|m| {
                    m.factors()
                        .iter()
                        .fold(ComplexBall::one(prec), |acc, &(g, e)| {
                            let table = &tables.iter().find(|(h, _)| *h == g).expect("generator").1;
                            acc.mul(&table[e as usize])
                        })
                })
                .collect())
        })
        .collect()
}

/// Rank of the midpoint matrix by complete-pivoting elimination at the
/// working precision, treating pivots below `2^(-prec/2)` of the largest
/// entry as zero.
pub fn rank_estimate(m: &[Vec<ComplexBall>]) -> usize {
    let mut a: Vec<Vec<ComplexBall>> = m
        .iter()
        .map(|r| r.iter().map(ComplexBall::midpoint).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map(Vec::len).unwrap_or(0);
    let Some(prec) = a.first().and_then(|r| r.first()).map(ComplexBall::prec) else {
        return 0;
    };
    let scale = a
        .iter()
        .flatten()
        .map(|z| z.mid_abs_upper())
        .fold(Mag::ZERO, Mag::max);
    let tol = scale.mul(Mag::pow2(-(prec as i64) / 2));
    let mut rank = 0;
    while rank < rows.min(cols) {
        let mut best = (rank, rank, Mag::ZERO);
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (j, z) in row.iter().enumerate().skip(rank) {
                let v = z.mid_abs_upper();
                if best.2.lt(&v) {
                    best = (i, j, v);
                }
            }
        }
        if best.2.le(&tol) {
            break;
        }
        a.swap(rank, best.0);
        for row in a.iter_mut() {
            row.swap(rank, best.1);
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let piv = &top[rank];
        let Ok(inv) = piv[rank].inv() else { break };
        for row in rest.iter_mut() {
            let f = row[rank].mul(&inv).midpoint();
            for j in rank..cols {
                row[j] = row[j].sub(&f.mul(&piv[j])).midpoint();
            }
        }
        rank += 1;
    }
    rank
}

pub fn verify_basis(k: KnotFamily, s: Slope, precision: u32) -> Result<VerificationReport> {
    let threshold = Mag::from_f64(DET_THRESHOLD);
    let monos = match basis(k, s) {
        BasisResult::Supported(b) => b.monomials,
        BasisResult::Unsupported { reason } => return Err(Error::Precondition(reason)),
    };
    // ball elimination loses roughly a bit per row
    let mut prec = precision
        .max(MIN_PRECISION)
        .max(monos.len().next_multiple_of(64) as u32);
    loop {
        let m = if downward_closed(&monos) {
            chebyshev_matrix(&monos, k, s, prec)?
        } else {
            evaluation_matrix(k, s, prec)?
        };
        let rows = m.len();
        let cols = monos.len();
        if rows != cols {
            return Ok(VerificationReport {
                characters: rows,
                monomials: cols,
                square: false,
                det: None,
                det_abs_lower: None,
                precision: prec,
                rank_estimate: None,
                passed: false,
                reason: format!("{rows} characters but {cols} basis monomials"),
            });
        }
        let rank = rank_estimate(&m);
        let det = det_ball(m);
        let lower = det.abs_lower();
        let upper = det.abs_upper();
        let passed = threshold.lt(&lower);
        let decided = passed || upper.le(&threshold);
        if decided || prec >= MAX_PRECISION {
            let reason = if passed {
                format!("|det| >= {} > 1e-6", lower.to_sci_string())
            } else if decided {
                format!("|det| <= {} <= 1e-6", upper.to_sci_string())
            } else {
                format!(
                    "determinant ball straddles 1e-6 at {prec} bits (|det| <= {})",
                    upper.to_sci_string()
                )
            };
            return Ok(VerificationReport {
                characters: rows,
                monomials: cols,
                square: true,
                det: Some(BallView::new(&det)),
                det_abs_lower: Some(lower.to_sci_string()),
                precision: prec,
                rank_estimate: (!passed).then_some(rank),
                passed,
                reason,
            });
        }
        prec = (prec * 2).min(MAX_PRECISION);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn small_cases_pass() {
        let r = verify_basis(KnotFamily::Torus(1), Slope::INFINITY, 128).unwrap();
        assert!(r.passed && r.characters == 1);
        let r = verify_basis(KnotFamily::Torus(1), sl(1, 1), 128).unwrap();
        assert!(r.passed && r.characters == 3);
        let r = verify_basis(KnotFamily::Fig8, sl(1, 2), 128).unwrap();
        assert!(r.passed && r.characters == 8, "{r:?}");
        assert_eq!(r.rank_estimate, None);
    }

    #[test]
    fn column_change_keeps_determinant() {
        let s = sl(1, 2);
        let k = KnotFamily::Torus(1);
        let BasisResult::Supported(b) = basis(k, s) else {
            panic!()
        };
        assert!(downward_closed(&b.monomials));
        let raw = det_ball(evaluation_matrix(k, s, 256).unwrap());
        let cheb = det_ball(chebyshev_matrix(&b.monomials, k, s, 256).unwrap());
        assert!(raw.overlaps(&cheb));
        assert!(!raw.contains_zero());
    }
}
