//! Knot families, their A-polynomials, slopes and the finiteness and
//! reducedness verdicts for Dehn fillings.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{cheb_t, rat, strip_roots, LaurentPoly1, LaurentPoly2, UniPoly};

/// Reduced slope `p/q` with `q >= 0`; infinity is `1/0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Slope> {
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        if q == 0 {
            return match p.abs() {
                1 => Ok(Slope::INFINITY),
                _ => Err(Error::InvalidSlope {
                    p,
                    q,
                    reason: "p and q must be coprime",
                }),
            };
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidSlope {
                p,
                q,
                reason: "p and q must be coprime",
            });
        }
        Ok(Slope { p, q })
    }

    pub fn integral(p: i64) -> Slope {
        Slope { p, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0
    }

    pub fn is_infinity(&self) -> bool {
        self.q == 0
    }

    /// The pair `(s, u)` with `p u - q s = 1` and `u` the least positive choice.
    pub fn dual(&self) -> (i64, i64) {
        if self.q == 0 {
            return (0, 1);
        }
        let (p, q) = (self.p, self.q);
        let u = (1..=q)
            .find(|u| (p * u - 1).rem_euclid(q) == 0)
            .unwrap_or(1);
        (((p * u) - 1) / q, u)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let t = s.trim();
        let bad = |reason| Error::MalformedSlope {
            input: s.to_string(),
            reason,
        };
        if matches!(t, "inf" | "infinity" | "∞") {
            return Ok(Slope::INFINITY);
        }
        let (ps, qs) = t.split_once('/').unwrap_or((t, "1"));
        let p: i64 = ps
            .trim()
            .parse()
            .map_err(|_| bad("expected p/q, an integer or inf"))?;
        let q: i64 = qs
            .trim()
            .parse()
            .map_err(|_| bad("expected p/q, an integer or inf"))?;
        if p == 0 && q == 0 {
            return Err(bad("0/0 is not a slope"));
        }
        Slope::new(p, q)
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Figure-eight knot or the `(2, 2n+1)` torus knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KnotFamily {
    Fig8,
    Torus(i64),
}

impl KnotFamily {
    pub fn torus(n: i64) -> Result<KnotFamily> {
        if n == 0 || n == -1 {
            return Err(Error::InvalidKnot(format!(
                "torus parameter n={n} gives the unknot (need |2n+1| >= 3)"
            )));
        }
        Ok(KnotFamily::Torus(n))
    }

    pub fn name(&self) -> String {
        match self {
            KnotFamily::Fig8 => "fig8".to_string(),
            KnotFamily::Torus(n) => format!("torus(2,{})", 2 * n + 1),
        }
    }
}

impl fmt::Display for KnotFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictStatus {
    FinitelyGenerated,
    Excluded,
    Reduced,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub evidence: String,
}

impl Verdict {
    fn new(status: VerdictStatus, evidence: impl Into<String>) -> Verdict {
        Verdict {
            status,
            evidence: evidence.into(),
        }
    }
}

pub fn a_polynomial(k: KnotFamily) -> LaurentPoly2 {
    match k {
        KnotFamily::Fig8 => LaurentPoly2::from_int_terms([
            (0, 1, -1),
            (2, 1, 1),
            (4, 0, 1),
            (4, 1, 2),
            (4, 2, 1),
            (6, 1, 1),
            (8, 1, -1),
        ]),
        KnotFamily::Torus(n) => LaurentPoly2::from_int_terms([(0, 0, 1), (4 * n + 2, 1, 1)]),
    }
}

/// `A(x^{-q}, x^p)` as a Laurent polynomial, for any integers `p, q`.
pub fn specialize_laurent(k: KnotFamily, p: i64, q: i64) -> LaurentPoly1 {
    let one = BigRational::one();
    a_polynomial(k).substitute_monomials((&one, -q), (&one, p))
}

/// Specialization normalized to a primitive polynomial with nonzero
/// constant term.
pub fn specialize(k: KnotFamily, s: Slope) -> UniPoly {
    specialize_laurent(k, s.p(), s.q()).normalized()
}

/// `|p - (4n+2) q|`, the degree of the torus specialization.
pub fn torus_k(n: i64, s: Slope) -> i64 {
    (s.p() - (4 * n + 2) * s.q()).abs()
}

pub fn tameness(k: KnotFamily, s: Slope) -> Verdict {
    if s.is_infinity() {
        return Verdict::new(
            VerdictStatus::FinitelyGenerated,
            "meridian filling gives S^3",
        );
    }
    let excluded: Vec<i64> = match k {
        KnotFamily::Fig8 => vec![0, 4, -4],
        KnotFamily::Torus(n) => vec![0, 4 * n + 2],
    };
    if s.q() == 1 && excluded.contains(&s.p()) {
        return Verdict::new(
            VerdictStatus::Excluded,
            format!("slope {} lies in the excluded set {:?}", s, excluded),
        );
    }
    Verdict::new(
        VerdictStatus::FinitelyGenerated,
        format!("slope {} avoids the excluded set {:?}", s, excluded),
    )
}

pub fn reducedness(k: KnotFamily, s: Slope) -> Result<Verdict> {
    if s.is_zero() {
        return Err(Error::ExcludedSlope);
    }
    match k {
        KnotFamily::Torus(n) => {
            let m = 2 * n + 1;
            let g = s.p().gcd(&m);
            if s.p() % 4 != 0 {
                Ok(Verdict::new(
                    VerdictStatus::Reduced,
                    format!("4 does not divide p={}", s.p()),
                ))
            } else if g == 1 {
                Ok(Verdict::new(
                    VerdictStatus::Reduced,
                    format!("4 | p but gcd(p, 2n+1) = gcd({}, {m}) = 1", s.p()),
                ))
            } else {
                Ok(Verdict::new(
                    VerdictStatus::Unknown,
                    format!("4 | p and gcd(p, 2n+1) = gcd({}, {m}) = {g}", s.p()),
                ))
            }
        }
        KnotFamily::Fig8 => {
            let sp = specialize(k, s);
            let (stripped, mults) = strip_roots(&sp, &[rat(1), rat(-1)])?;
            let sf = stripped.is_squarefree();
            let deg = stripped.degree().unwrap_or(0);
            let evidence = format!(
                "specialization degree {}, multiplicity {} at x=1 and {} at x=-1; remaining degree {deg} is {}",
                sp.degree().unwrap_or(0),
                mults[0],
                mults[1],
                if sf { "squarefree" } else { "not squarefree" }
            );
            let status = if sf {
                VerdictStatus::Reduced
            } else {
                VerdictStatus::Unknown
            };
            Ok(Verdict::new(status, evidence))
        }
    }
}

/// `x^{4q-1} - (x^{4q} + x^{2q} + 1) ((x^{2q} - 1)/(x + 1))^2`, with the
/// lowest power of `x` cleared. Checked against the figure-eight
/// specialization at `1/q` with the factor `(x+1)^2` removed.
pub fn rootsp1_poly(q: i64) -> Result<UniPoly> {
    if q == 0 {
        return Err(Error::Precondition("rootsp1_poly needs q != 0".into()));
    }
    let xp = |k: i64| LaurentPoly1::from_int_terms([(k, 1)]);
    let one = LaurentPoly1::one();
    let (shift, num) = (&xp(2 * q) - &one).to_unipoly();
    let ratio = LaurentPoly1::from_unipoly(&num.exact_div(&UniPoly::from_ints([1, 1]))?, shift);
    let cubic = &(&xp(4 * q) + &xp(2 * q)) + &one;
    let p = &xp(4 * q - 1) - &(&cubic * &(&ratio * &ratio));
    let (_, poly) = p.to_unipoly();

    let sp = specialize_laurent(KnotFamily::Fig8, 1, q).normalized();
    let stripped = sp.exact_div(&UniPoly::from_ints([1, 1]).pow(2))?;
    if stripped.primitive() != poly.primitive() {
        return Err(Error::Internal(format!(
            "rootsp1_poly({q}) disagrees with the stripped specialization"
        )));
    }
    Ok(poly)
}

/// `T_k(t) - 2(-1)^q`, the torus nonabelian equation in `t = t_m`.
pub fn torus_trace_equation(n: i64, s: Slope) -> UniPoly {
    let k = torus_k(n, s) as u32;
    let target = if s.q() % 2 == 0 { 2 } else { -2 };
    &cheb_t(k) - &UniPoly::from_ints([target])
}
