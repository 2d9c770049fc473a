//! The full verification suite, one entry per checked property.

use std::collections::HashMap;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::charvar::{
    dimension_report, fig8_smoothness_witness, nonabelian_formula, nonabelian_oracle, torus_tau,
    verify_basis, Dimension, Oracle,
};
use crate::error::Result;
use crate::exactalg::{cheb_e, cheb_t, compose_laurent, LaurentPoly1, UniPoly};
use crate::knots::{rootsp1_poly, specialize, specialize_laurent, KnotFamily, Slope};
use crate::qtorus::{embed_curve, qt_mul, QTorusElem};
use crate::rt::{meridian_collapse, murakami_check, rt_lens, CycloElem, CycloField};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: f64,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let limit = if self.limit_seconds.is_finite() {
            format!("{}s", self.limit_seconds)
        } else {
            "no limit".to_string()
        };
        format!(
            "[{}] {:>2}. {} ({:.2}s / {}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            limit,
            self.detail
        )
    }
}

fn timed(
    id: u32,
    name: &'static str,
    limit_seconds: f64,
    f: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionOutcome {
    let start = Instant::now();
    let (ok, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    let seconds = start.elapsed().as_secs_f64();
    let passed = ok && seconds < limit_seconds;
    let detail = if ok && !passed {
        format!("{detail}; over time limit")
    } else {
        detail
    };
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
        seconds,
        limit_seconds,
    }
}

fn x_plus_inv() -> LaurentPoly1 {
    LaurentPoly1::from_int_terms([(1, 1), (-1, 1)])
}

pub fn chebyshev_identities(max: u32) -> Result<(bool, String)> {
    let z = x_plus_inv();
    let x_minus_inv = LaurentPoly1::from_int_terms([(1, 1), (-1, -1)]);
    let mut bad = Vec::new();
    for k in 0..=max {
        let k = k as i64;
        let lhs = compose_laurent(&cheb_t(k as u32), &z);
        let rhs = if k == 0 {
            LaurentPoly1::from_int_terms([(0, 2)])
        } else {
            LaurentPoly1::from_int_terms([(k, 1), (-k, 1)])
        };
        if lhs != rhs {
            bad.push(format!("T_{k}"));
        }
        // e_i(x + 1/x) (x - 1/x) = x^{i+1} - x^{-i-1}
        let lhs = &compose_laurent(&cheb_e(k as u32), &z) * &x_minus_inv;
        if lhs != LaurentPoly1::from_int_terms([(k + 1, 1), (-k - 1, -1)]) {
            bad.push(format!("e_{k}"));
        }
    }
    Ok((bad.is_empty(), format!("k, i <= {max}; failures: {bad:?}")))
}

pub fn product_to_sum(bound: i64) -> Result<(bool, String)> {
    let range: Vec<i64> = (-bound..=bound).collect();
    let mut cache: HashMap<(i64, i64), QTorusElem> = HashMap::new();
    for a in -2 * bound..=2 * bound {
        for b in -2 * bound..=2 * bound {
            cache.insert((a, b), embed_curve(a, b));
        }
    }
    let pairs: Vec<(i64, i64, i64, i64)> = range
        .iter()
        .flat_map(|&p| range.iter().map(move |&q| (p, q)))
        .flat_map(|(p, q)| {
            range
                .iter()
                .flat_map(move |&r| (-bound..=bound).map(move |s| (p, q, r, s)))
        })
        .collect();
    let get = |a: i64, b: i64| &cache[&(a, b)];
    let failures = pairs
        .par_iter()
        .filter(|&&(p, q, r, s)| {
            let lhs = qt_mul(get(p, q), get(r, s));
            let w = p * s - q * r;
            let rhs = get(p + r, q + s)
                .shift_a(w)
                .add(&get(p - r, q - s).shift_a(-w));
            lhs != rhs
        })
        .count();
    Ok((
        failures == 0,
        format!(
            "{} pairs in [-{bound},{bound}]^4, {failures} failures",
            pairs.len()
        ),
    ))
}

pub fn rootsp1_reproduction(max_q: i64) -> Result<(bool, String)> {
    let square = UniPoly::from_ints([1, 2, 1]);
    let mut bad = Vec::new();
    for q in (-max_q..=max_q).filter(|&q| q != 0) {
        let r = rootsp1_poly(q)?;
        let sp = specialize_laurent(KnotFamily::Fig8, 1, q).normalized();
        let (stripped, rem) = sp.div_rem(&square)?;
        if !r.is_squarefree() || !rem.is_zero() || stripped.primitive() != r.primitive() {
            bad.push(q);
        }
    }
    let inf_ok = specialize(KnotFamily::Fig8, Slope::INFINITY) == square;
    Ok((
        bad.is_empty() && inf_ok,
        format!("1 <= |q| <= {max_q}; failing q: {bad:?}; slope 1/0 gives (x+1)^2: {inf_ok}"),
    ))
}

fn coprime_slopes(pmax: i64, qmax: i64) -> impl Iterator<Item = Slope> {
    (1..=qmax).flat_map(move |q| {
        (-pmax..=pmax)
            .filter(move |p| *p != 0 && p.gcd(&q) == 1)
            .map(move |p| Slope::new(p, q).expect("coprime slope"))
    })
}

pub fn torus_formula_vs_oracle() -> Result<(bool, String)> {
    let cases: Vec<(i64, Slope)> = (1..=5)
        .flat_map(|n| coprime_slopes(20, 10).map(move |s| (n, s)))
        .filter(|&(n, s)| {
            !(s.q() == 1 && s.p() == 4 * n + 2) && (s.p() % 4 != 0 || s.p().gcd(&(2 * n + 1)) == 1)
        })
        .collect();
    let mut mismatches = Vec::new();
    for &(n, s) in &cases {
        let k = KnotFamily::Torus(n);
        let f = nonabelian_formula(k, s).value;
        if nonabelian_oracle(k, s)? != Oracle::Value(f) {
            mismatches.push(format!("n={n} {s}"));
        }
    }
    Ok((
        mismatches.is_empty(),
        format!("{} slopes, mismatches: {mismatches:?}", cases.len()),
    ))
}

pub fn fig8_formula_vs_oracle() -> Result<(bool, String)> {
    let slopes: Vec<Slope> = coprime_slopes(25, 10).filter(|s| s.p() % 4 != 0).collect();
    let results: Vec<(Slope, Oracle, i64)> = slopes
        .par_iter()
        .map(|&s| {
            let o = nonabelian_oracle(KnotFamily::Fig8, s)?;
            Ok((s, o, nonabelian_formula(KnotFamily::Fig8, s).value))
        })
        .collect::<Result<_>>()?;
    let mut mismatches = Vec::new();
    let mut not_squarefree = Vec::new();
    for (s, o, f) in &results {
        match o {
            Oracle::Value(v) if v != f => mismatches.push(s.to_string()),
            Oracle::Value(_) => {}
            Oracle::Unavailable(_) => not_squarefree.push(s.to_string()),
        }
    }
    let share = 1.0 - not_squarefree.len() as f64 / results.len() as f64;
    Ok((
        mismatches.is_empty() && share >= 0.95,
        format!(
            "{} slopes, squarefree share {:.1}%, mismatches: {mismatches:?}, not squarefree: {not_squarefree:?}",
            results.len(),
            100.0 * share
        ),
    ))
}

pub fn named_manifolds() -> Result<(bool, String)> {
    let poincare = dimension_report(KnotFamily::Torus(1), Slope::new(1, 1)?)?.dimension;
    let brieskorn = dimension_report(KnotFamily::Fig8, Slope::new(1, 1)?)?.dimension;
    let mut bad = Vec::new();
    for n in 1..=6i64 {
        for q in 1..=10i64 {
            let lhs = torus_tau(n, Slope::new(1, q)?) * n;
            let (a, b, c) = (2, 2 * n + 1, 2 * (2 * n + 1) * q - 1);
            if lhs * 4 != (a - 1) * (b - 1) * (c - 1) || lhs * 2 != 2 * n * ((2 * n + 1) * q - 1) {
                bad.push((n, q));
            }
        }
    }
    Ok((
        poincare == Dimension::Exact(3) && brieskorn == Dimension::Exact(4) && bad.is_empty(),
        format!("Poincare sphere {poincare}, Sigma(2,3,7) {brieskorn}, Brieskorn failures {bad:?}"),
    ))
}

pub fn basis_nonsingularity(precision: u32) -> Result<(bool, String)> {
    let mut cases: Vec<(KnotFamily, Slope)> = Vec::new();
    for n in 1..=4 {
        for q in 1..=8 {
            cases.push((KnotFamily::Torus(n), Slope::new(1, q)?));
        }
    }
    for q in 1..=8 {
        cases.push((KnotFamily::Fig8, Slope::new(1, q)?));
    }
    let reports: Vec<_> = cases
        .par_iter()
        .map(|&(k, s)| verify_basis(k, s, precision).map(|r| (k, s, r)))
        .collect::<Result<_>>()?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|(_, _, r)| !r.passed)
        .map(|(k, s, r)| format!("{k} {s}: {}", r.reason))
        .collect();
    let max = reports
        .iter()
        .map(|(_, _, r)| r.characters)
        .max()
        .unwrap_or(0);
    Ok((
        failed.is_empty(),
        format!(
            "{} slopes, largest matrix {max}x{max}, failures: {failed:?}",
            reports.len()
        ),
    ))
}

pub fn rt_checks() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for n in [3u64, 5, 7, 9, 11, 13] {
        let f = CycloField::new(n)?;
        for p in [1, -1] {
            if rt_lens(&f, p)? != CycloElem::one(&f) {
                bad.push(format!("rt_lens N={n} p={p}"));
            }
        }
    }
    let mut checked = 0;
    for n in [5u64, 7, 11, 13] {
        let f = CycloField::new(n)?;
        for p in [2i64, 3, 4, 6, 8] {
            if p % n as i64 == 0 {
                continue;
            }
            checked += 1;
            let m = murakami_check(&f, p)?;
            if !(m.integral && m.congruent) {
                bad.push(format!("murakami N={n} p={p}: {m:?}"));
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("{checked} Murakami cases; failures: {bad:?}"),
    ))
}

pub fn meridian_collapses() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for n in [5u64, 7, 11] {
        let f = CycloField::new(n)?;
        for p in 0..=3 {
            if meridian_collapse(&f, p)? != CycloElem::one(&f) {
                bad.push((n, p));
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("N in {{5,7,11}}, p in 0..=3; failures: {bad:?}"),
    ))
}

pub fn smoothness() -> Result<(bool, String)> {
    let ok = fig8_smoothness_witness();
    Ok((ok, format!("resultant certificate: {ok}")))
}

/// Runs every criterion in order.
pub fn run_suite(precision: u32) -> Vec<CriterionOutcome> {
    vec![
        timed(1, "Chebyshev identities", 1.0, || chebyshev_identities(64)),
        timed(2, "quantum torus product-to-sum", 10.0, || {
            product_to_sum(10)
        }),
        timed(3, "Fig8 1/q specialization polynomial", 30.0, || {
            rootsp1_reproduction(50)
        }),
        timed(4, "torus formula vs oracle", 30.0, torus_formula_vs_oracle),
        timed(5, "Fig8 formula vs oracle", 60.0, fig8_formula_vs_oracle),
        timed(
            6,
            "named manifolds and Brieskorn counts",
            f64::INFINITY,
            named_manifolds,
        ),
        timed(7, "basis nonsingularity", 60.0, || {
            basis_nonsingularity(precision)
        }),
        timed(
            8,
            "RT normalization and Murakami congruence",
            30.0,
            rt_checks,
        ),
        timed(9, "meridian interpolant collapse", 5.0, meridian_collapses),
        timed(10, "Fig8 smoothness certificate", 5.0, smoothness),
    ]
}
