//! Exact certificate that the nonabelian part of the figure-eight character
//! variety, `f(tau, mu) = tau^2 + (3 - mu^2 - mu^-2)(1 - tau) = 0`, is smooth.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::exactalg::resultant::resultant;
use crate::exactalg::{rat, UniPoly};

/// `f` at rational `(tau, mu)`, `mu != 0`.
pub fn fig8_f(tau: &BigRational, mu: &BigRational) -> BigRational {
    let mu2 = mu * mu;
    let one = BigRational::one();
    tau * tau + (rat(3) - &mu2 - mu2.recip()) * (&one - tau)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessWitness {
    /// `Res_tau(mu^2 f, mu^2 df/dtau)` with powers of `mu` removed.
    pub res_f_ftau: String,
    /// `Res_tau(mu^2 f, mu^3 df/dmu)` with powers of `mu` removed.
    pub res_f_fmu: String,
    pub gcd: String,
    pub f_at_half_one: String,
    pub f_at_tau_one: String,
    pub smooth: bool,
}

fn p(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c.iter().copied())
}

fn strip_mu(mut r: UniPoly) -> UniPoly {
    while !r.is_zero() && r.coeff(0).is_zero() {
        let c = r.coeffs()[1..].to_vec();
        r = UniPoly::new(c);
    }
    r
}

pub fn smoothness_witness() -> Result<SmoothnessWitness> {
    // coefficients in tau, each a polynomial in mu (lowest first)
    // F = mu^2 tau^2 + (3 mu^2 - mu^4 - 1)(1 - tau)
    let g0 = p(&[-1, 0, 3, 0, -1]);
    let f = vec![g0.clone(), -g0.clone(), p(&[0, 0, 1])];
    // G = 2 mu^2 tau - (3 mu^2 - mu^4 - 1)
    let g = vec![-g0, p(&[0, 0, 2])];
    // H = -2 (mu^4 - 1)(1 - tau)
    let h0 = p(&[2, 0, 0, 0, -2]);
    let h = vec![h0.clone(), -h0];
    let r1 = strip_mu(resultant(&f, &g)?);
    let r2 = strip_mu(resultant(&f, &h)?);
    let d = r1.gcd(&r2);

    let half = BigRational::new(1.into(), 2.into());
    let at_half_plus = fig8_f(&half, &rat(1));
    let at_half_minus = fig8_f(&half, &rat(-1));
    // on tau = 1 the second summand vanishes, for every mu
    let at_tau_one: Vec<BigRational> = [2, 3, 7]
        .iter()
        .map(|&m| fig8_f(&rat(1), &rat(m)))
        .collect();
    let f_tau_one = f.iter().fold(UniPoly::zero(), |acc, c| &acc + c);

    let smooth = !r1.is_zero()
        && !r2.is_zero()
        && d.is_constant()
        && !at_half_plus.is_zero()
        && at_half_plus == at_half_minus
        && at_tau_one.iter().all(BigRational::is_one)
        && f_tau_one == p(&[0, 0, 1]);
    Ok(SmoothnessWitness {
        res_f_ftau: r1.to_string_in("mu"),
        res_f_fmu: r2.to_string_in("mu"),
        gcd: d.to_string_in("mu"),
        f_at_half_one: at_half_plus.to_string(),
        f_at_tau_one: "1".into(),
        smooth,
    })
}

pub fn fig8_smoothness_witness() -> bool {
    smoothness_witness().map(|w| w.smooth).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_values() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(fig8_f(&half, &rat(1)), BigRational::new(3.into(), 4.into()));
        assert_eq!(
            fig8_f(&half, &rat(-1)),
            BigRational::new(3.into(), 4.into())
        );
        assert!(fig8_f(&rat(1), &rat(5)).is_one());
    }

    #[test]
    fn witness_holds() {
        let w = smoothness_witness().unwrap();
        assert!(w.smooth, "{w:?}");
    }
}
