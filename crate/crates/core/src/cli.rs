//! Command-line front end. Commands render to a string plus an exit code so
//! they can be exercised without spawning a process.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::charvar::{
    basis, count_breakdown, dimension_report_with, enumerate_characters, nonabelian_formula,
    BasisResult, CharacterView, DimensionReport, Oracle,
};
use crate::error::Error;
use crate::knots::{tameness, KnotFamily, Slope, VerdictStatus};
use crate::rt::{murakami_check, residue_strings, rt_lens, CycloField};
use crate::suite::run_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "skeinlab",
    version,
    about = "Skein module dimensions, character counts and lens space invariants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension report for one filling.
    Dim(SlopeArgs),
    /// Formula against oracle over a range of slopes.
    Scan(ScanArgs),
    /// Basis of the coordinate ring.
    Basis(SlopeArgs),
    /// All characters of the filling.
    Characters(SlopeArgs),
    /// Reshetikhin-Turaev invariants.
    #[command(subcommand)]
    Rt(RtCommand),
    /// Run the full verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KnotKind {
    Fig8,
    Torus,
}

#[derive(Args, Debug)]
pub struct SlopeArgs {
    #[arg(long, value_enum)]
    pub knot: KnotKind,
    /// Torus knot parameter: the (2, 2n+1) torus knot.
    #[arg(long)]
    pub n: Option<i64>,
    /// `p/q`, an integer, or `inf`.
    #[arg(long, allow_hyphen_values = true)]
    pub slope: String,
    #[arg(long, default_value_t = 128)]
    pub precision: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub knot: KnotKind,
    /// Single value or inclusive range `a..b`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long)]
    pub pmax: i64,
    #[arg(long)]
    pub qmax: i64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum RtCommand {
    /// Invariant of the lens space L(p, 1).
    Lens(LensArgs),
}

#[derive(Args, Debug)]
pub struct LensArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p: i64,
    /// Order 2N of the root of unity; N odd, at least 3.
    #[arg(long)]
    pub order: u64,
    #[arg(long)]
    pub murakami: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 128)]
    pub precision: u32,
    #[arg(long)]
    pub json: bool,
}

pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Output {
        Output {
            text,
            code: EXIT_OK,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CountMismatch { .. } | Error::Internal(_) | Error::RootsNotSeparated => {
            EXIT_INCONSISTENT
        }
        _ => EXIT_USAGE,
    }
}

fn fail(e: Error) -> Output {
    Output {
        text: format!("error: {e}\n"),
        code: exit_code(&e),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn knot_of(kind: KnotKind, n: Option<i64>) -> Result<KnotFamily, Error> {
    match kind {
        KnotKind::Fig8 => Ok(KnotFamily::Fig8),
        KnotKind::Torus => {
            let n = n.ok_or_else(|| Error::InvalidKnot("--knot torus needs --n".into()))?;
            KnotFamily::torus(n)
        }
    }
}

fn slope_args(a: &SlopeArgs) -> Result<(KnotFamily, Slope), Error> {
    Ok((knot_of(a.knot, a.n)?, a.slope.parse()?))
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>, Error> {
    let bad = || Error::Precondition(format!("malformed range {s:?}"));
    let r = match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            a.trim().parse().map_err(|_| bad())?..=b.trim().parse().map_err(|_| bad())?
        }
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            v..=v
        }
    };
    if r.is_empty() {
        return Err(Error::Precondition(format!("empty range {s:?}")));
    }
    Ok(r)
}

pub fn render_report(r: &DimensionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "knot          {}", r.knot);
    let _ = writeln!(out, "slope         {}", r.slope);
    let _ = writeln!(out, "status        {}", r.status);
    let _ = writeln!(
        out,
        "tameness      {:?} ({})",
        r.tameness.status, r.tameness.evidence
    );
    if let Some(v) = &r.reducedness {
        let _ = writeln!(out, "reducedness   {:?} ({})", v.status, v.evidence);
    }
    if let Some(c) = &r.counts {
        let oracle = match &c.nonabelian_oracle {
            Oracle::Value(v) => v.to_string(),
            Oracle::Unavailable(_) => "unavailable".into(),
        };
        let _ = writeln!(
            out,
            "characters    abelian {} + nonabelian {} (oracle {oracle}) = {}",
            c.abelian, c.nonabelian_formula, c.total_formula
        );
    }
    let _ = writeln!(out, "dimension     {}", r.dimension);
    match &r.basis {
        BasisResult::Supported(b) => {
            let _ = writeln!(out, "basis         {} monomials", b.cardinality);
        }
        BasisResult::Unsupported { reason } => {
            let _ = writeln!(out, "basis         unsupported ({reason})");
        }
    }
    if let Some(v) = &r.verification {
        let _ = writeln!(
            out,
            "verification  {} ({}x{}, {} bits): {}",
            if v.passed { "pass" } else { "fail" },
            v.characters,
            v.monomials,
            v.precision,
            v.reason
        );
    }
    for n in &r.notes {
        let _ = writeln!(out, "note          {n}");
    }
    out
}

pub fn cmd_dim(a: &SlopeArgs) -> Output {
    let (k, s) = match slope_args(a) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    match dimension_report_with(k, s, a.precision) {
        Ok(r) if a.json => Output::ok(to_json(&r)),
        Ok(r) => Output::ok(render_report(&r)),
        Err(e) => fail(e),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub n: Option<i64>,
    pub p: i64,
    pub q: i64,
    pub formula: i64,
    pub oracle: Oracle,
    /// `agree`, `mismatch`, `unavailable`, or `hypotheses fail`.
    pub status: &'static str,
}

fn scan_row(k: KnotFamily, s: Slope) -> Result<ScanRow, Error> {
    let f = nonabelian_formula(k, s);
    let c = count_breakdown(k, s)?;
    let status = match (&c.nonabelian_oracle, f.hypotheses_hold) {
        (Oracle::Unavailable(_), _) => "unavailable",
        (_, false) => "hypotheses fail",
        (Oracle::Value(v), true) if *v == f.value => "agree",
        _ => "mismatch",
    };
    Ok(ScanRow {
        n: match k {
            KnotFamily::Torus(n) => Some(n),
            KnotFamily::Fig8 => None,
        },
        p: s.p(),
        q: s.q(),
        formula: f.value,
        oracle: c.nonabelian_oracle,
        status,
    })
}

pub fn cmd_scan(a: &ScanArgs) -> Output {
    if a.pmax < 1 || a.qmax < 1 {
        return fail(Error::Precondition(
            "--pmax and --qmax must be at least 1".into(),
        ));
    }
    let knots: Vec<KnotFamily> = match a.knot {
        KnotKind::Fig8 => vec![KnotFamily::Fig8],
        KnotKind::Torus => {
            let Some(arg) = &a.n else {
                return fail(Error::InvalidKnot("--knot torus needs --n".into()));
            };
            let range = match parse_range(arg) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            match range.map(KnotFamily::torus).collect::<Result<Vec<_>, _>>() {
                Ok(v) => v,
                Err(e) => return fail(e),
            }
        }
    };
    let mut cases = Vec::new();
    for &k in &knots {
        for q in 1..=a.qmax {
            for p in -a.pmax..=a.pmax {
                if p == 0 || p.gcd(&q) != 1 {
                    continue;
                }
                let s = Slope::new(p, q).expect("coprime");
                if tameness(k, s).status != VerdictStatus::Excluded {
                    cases.push((k, s));
                }
            }
        }
    }
    let rows: Result<Vec<ScanRow>, Error> =
        cases.par_iter().map(|&(k, s)| scan_row(k, s)).collect();
    let mut rows = match rows {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    rows.sort_by_key(|r| (r.n, r.p, r.q));
    let count = |st: &str| rows.iter().filter(|r| r.status == st).count();
    let (agree, unavailable, hyp, mismatch) = (
        count("agree"),
        count("unavailable"),
        count("hypotheses fail"),
        count("mismatch"),
    );
    let code = if mismatch > 0 {
        EXIT_INCONSISTENT
    } else {
        EXIT_OK
    };
    let text = if a.json {
        to_json(&json!({
            "schema": 1,
            "rows": rows,
            "summary": {
                "agree": agree,
                "unavailable": unavailable,
                "hypotheses_fail": hyp,
                "mismatch": mismatch,
            },
        }))
    } else {
        let mut out = String::from("   n      p    q  formula   oracle  status\n");
        for r in &rows {
            let n = r.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
            let o = r
                .oracle
                .value()
                .map(|v| v.to_string())
                .unwrap_or_else(|| "n/a".into());
            let _ = writeln!(
                out,
                "{n:>4} {:>6} {:>4} {:>8} {o:>8}  {}",
                r.p, r.q, r.formula, r.status
            );
        }
        let _ = writeln!(
            out,
            "{} rows: {agree} agree, {unavailable} unavailable, {hyp} outside formula hypotheses, {mismatch} mismatches",
            rows.len()
        );
        out
    };
    Output { text, code }
}

pub fn cmd_basis(a: &SlopeArgs) -> Output {
    let (k, s) = match slope_args(a) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let b = basis(k, s);
    if a.json {
        return Output::ok(to_json(&json!({
            "schema": 1,
            "knot": k.name(),
            "slope": s,
            "basis": b,
        })));
    }
    let text = match b {
        BasisResult::Supported(b) => {
            let mut out = format!("{} monomials", b.cardinality);
            if let Some((su, u)) = b.dual {
                let _ = write!(out, ", (s,u) = ({su},{u})");
            }
            out.push('\n');
            for m in &b.monomials {
                let _ = writeln!(out, "  {m}");
            }
            out
        }
        BasisResult::Unsupported { reason } => format!("unsupported: {reason}\n"),
    };
    Output::ok(text)
}

pub fn cmd_characters(a: &SlopeArgs) -> Output {
    let (k, s) = match slope_args(a) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let chars = match enumerate_characters(k, s, a.precision) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let views: Vec<CharacterView> = chars.iter().map(CharacterView::new).collect();
    if a.json {
        return Output::ok(to_json(&json!({
            "schema": 1,
            "knot": k.name(),
            "slope": s,
            "count": views.len(),
            "characters": views,
        })));
    }
    let mut out = format!("{} characters\n", chars.len());
    for (i, c) in chars.iter().enumerate() {
        let _ = writeln!(out, "{i:>4}  {}", c.label());
        for (name, v) in &CharacterView::new(c).values {
            let _ = writeln!(out, "        {name} = {} + {}i ± {}", v.re, v.im, v.radius);
        }
    }
    Output::ok(out)
}

pub fn cmd_rt(a: &LensArgs) -> Output {
    if !a.order.is_multiple_of(2) {
        return fail(Error::InvalidField(a.order));
    }
    let f = match CycloField::from_order(a.order) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let value = match rt_lens(&f, a.p) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let murakami = if a.murakami {
        match murakami_check(&f, a.p) {
            Ok(m) => Some(m),
            Err(e) => return fail(e),
        }
    } else {
        None
    };
    if a.json {
        return Output::ok(to_json(&json!({
            "schema": 1,
            "p": a.p,
            "order": a.order,
            "value": value.to_string(),
            "residue": residue_strings(&value),
            "murakami": murakami,
        })));
    }
    let mut out = format!("RT(L({},1)) at order {} = {}\n", a.p, a.order, value);
    if let Some(m) = murakami {
        let _ = writeln!(out, "h1            {}", m.h1);
        let _ = writeln!(out, "integral      {}", m.integral);
        if let Some(r) = m.residue {
            let _ = writeln!(out, "residue       {r}");
        }
        let _ = writeln!(out, "legendre      {}", m.legendre);
        let _ = writeln!(out, "congruent     {}", m.congruent);
    }
    Output::ok(out)
}

pub fn cmd_verify(a: &VerifyArgs) -> Output {
    let outcomes = run_suite(a.precision);
    let all = outcomes.iter().all(|o| o.passed);
    let text = if a.json {
        to_json(&json!({ "schema": 1, "criteria": outcomes, "passed": all }))
    } else {
        let mut out: String = outcomes.iter().map(|o| o.line() + "\n").collect();
        let _ = writeln!(
            out,
            "{}",
            if all {
                "all criteria pass"
            } else {
                "some criteria FAIL"
            }
        );
        out
    };
    Output {
        text,
        code: if all { EXIT_OK } else { EXIT_INCONSISTENT },
    }
}

pub fn run(cli: &Cli) -> Output {
    match &cli.command {
        Command::Dim(a) => cmd_dim(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Basis(a) => cmd_basis(a),
        Command::Characters(a) => cmd_characters(a),
        Command::Rt(RtCommand::Lens(a)) => cmd_rt(a),
        Command::Verify(a) => cmd_verify(a),
    }
}
