//! Per-slope dimension report.

use serde::Serialize;

use super::characters::{fig8_regular_part, torus_nonabelian};
use super::counts::{count_abelian, count_breakdown, CountBreakdown, Oracle};
use super::trace::{basis, BasisResult};
use super::verify::{verify_basis, VerificationReport};
use crate::error::{Error, Result};
use crate::exactalg::{squarefree_part, DEFAULT_PRECISION};
use crate::knots::{reducedness, tameness, KnotFamily, Slope, Verdict, VerdictStatus};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Dimension {
    Exact(i64),
    /// `|X(M)|` is a lower bound; the upper bound `dim C[X(M)]` is not computed.
    AtLeast(i64),
    NotDetermined,
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Exact(d) => write!(f, "{d}"),
            Dimension::AtLeast(d) => write!(f, ">= {d}"),
            Dimension::NotDetermined => write!(f, "not determined"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionReport {
    pub schema: u32,
    pub knot: String,
    pub slope: Slope,
    pub status: String,
    pub tameness: Verdict,
    pub reducedness: Option<Verdict>,
    pub counts: Option<CountBreakdown>,
    pub dimension: Dimension,
    pub basis: BasisResult,
    pub verification: Option<VerificationReport>,
    pub notes: Vec<String>,
}

/// Number of points of the character variety, counted without the closed
/// formula; used as a lower bound when reducedness is not certified.
pub fn point_count(k: KnotFamily, s: Slope) -> Result<i64> {
    let abelian = count_abelian(s)?;
    let nonab = match k {
        KnotFamily::Torus(n) => torus_nonabelian(n, s, 64).0.len() as i64,
        KnotFamily::Fig8 => {
            let (rest, special) = fig8_regular_part(s)?;
            let sf = squarefree_part(&rest)?;
            sf.degree().unwrap_or(0) as i64 / 2 + if special { 2 } else { 0 }
        }
    };
    Ok(abelian + nonab)
}

pub fn dimension_report(k: KnotFamily, s: Slope) -> Result<DimensionReport> {
    dimension_report_with(k, s, DEFAULT_PRECISION)
}

pub fn dimension_report_with(k: KnotFamily, s: Slope, precision: u32) -> Result<DimensionReport> {
    let tame = tameness(k, s);
    let mut notes = Vec::new();
    let base = |status: &str, notes: Vec<String>| DimensionReport {
        schema: 1,
        knot: k.name(),
        slope: s,
        status: status.to_string(),
        tameness: tame.clone(),
        reducedness: None,
        counts: None,
        dimension: Dimension::NotDetermined,
        basis: basis(k, s),
        verification: None,
        notes,
    };
    if tame.status == VerdictStatus::Excluded {
        notes.push(format!("tameness fails: {}", tame.evidence));
        return Ok(base("excluded slope: no dimension claim", notes));
    }
    let reduced = reducedness(k, s)?;
    let counts = count_breakdown(k, s)?;
    if let Oracle::Unavailable(why) = &counts.nonabelian_oracle {
        notes.push(format!("oracle unavailable: {why}"));
    }
    if let Oracle::Value(v) = counts.nonabelian_oracle {
        if counts.formula_hypotheses_hold && v != counts.nonabelian_formula {
            return Err(Error::CountMismatch {
                enumerated: v.max(0) as usize,
                formula: counts.nonabelian_formula,
            });
        }
    }
    if !counts.formula_hypotheses_hold {
        notes.push("closed formula hypotheses fail; formula value is not a count".into());
    }
    let mut report = base("ok", Vec::new());
    let dimension = if reduced.status == VerdictStatus::Reduced && counts.formula_hypotheses_hold {
        Dimension::Exact(counts.total_formula)
    } else {
        notes.push(format!("reducedness not certified: {}", reduced.evidence));
        Dimension::AtLeast(point_count(k, s)?)
    };
    if matches!(dimension, Dimension::Exact(_)) {
        match &report.basis {
            BasisResult::Supported(_) => {
                let v = verify_basis(k, s, precision)?;
                if !v.passed {
                    notes.push(format!("basis verification failed: {}", v.reason));
                }
                report.verification = Some(v);
            }
            BasisResult::Unsupported { reason } => {
                notes.push(format!("verification skipped: {reason}"));
            }
        }
    } else if let BasisResult::Supported(_) = &report.basis {
        let v = verify_basis(k, s, precision)?;
        if !v.passed {
            notes.push(format!(
                "evaluation matrix not certified nonsingular: {}",
                v.reason
            ));
        }
        report.verification = Some(v);
    }
    report.reducedness = Some(reduced);
    report.counts = Some(counts);
    report.dimension = dimension;
    report.notes = notes;
    Ok(report)
}
