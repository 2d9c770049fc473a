//! Resultants of polynomials whose coefficients are themselves polynomials.

use super::poly::UniPoly;
use crate::error::Result;

/// Resultant in the outer variable of `f = sum f_i t^i` and `g = sum g_i t^i`,
/// with coefficients in `Q[y]`, via a fraction-free (Bareiss) determinant of
/// the Sylvester matrix.
pub fn resultant(f: &[UniPoly], g: &[UniPoly]) -> Result<UniPoly> {
    let f = trim(f);
    let g = trim(g);
    if f.is_empty() || g.is_empty() {
        return Ok(UniPoly::zero());
    }
    let m = f.len() - 1;
    let n = g.len() - 1;
    if m == 0 && n == 0 {
        return Ok(UniPoly::one());
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    // highest coefficient first in each Sylvester row
    for i in 0..n {
        let mut row = vec![UniPoly::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![UniPoly::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

fn trim(p: &[UniPoly]) -> Vec<UniPoly> {
    let mut v = p.to_vec();
    while v.last().is_some_and(UniPoly::is_zero) {
        v.pop();
    }
    v
}

/// Fraction-free determinant over `Q[y]`.
pub fn bareiss_det(mut m: Vec<Vec<UniPoly>>) -> Result<UniPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(UniPoly::one());
    }
    let mut sign_flip = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(UniPoly::zero());
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev)?;
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign_flip { -det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::rat;
    use num_traits::Zero;

    fn c(v: i64) -> UniPoly {
        UniPoly::from_ints([v])
    }

    #[test]
    fn resultant_of_linear_forms() {
        // Res_t(t - y, t + y) = 2y
        let y = UniPoly::x();
        let f = vec![-&y, c(1)];
        let g = vec![y.clone(), c(1)];
        let r = resultant(&f, &g).unwrap();
        assert_eq!(r, UniPoly::from_ints([0, 2]));
        assert!(r.eval(&rat(0)).is_zero());
    }

    #[test]
    fn common_root_gives_zero() {
        // (t-1)(t-2) and (t-1)(t+5)
        let f = vec![c(2), c(-3), c(1)];
        let g = vec![c(-5), c(4), c(1)];
        assert!(resultant(&f, &g).unwrap().is_zero());
        // t^2 + 1 and t - 3: resultant is 10
        let f = vec![c(1), c(0), c(1)];
        let g = vec![c(-3), c(1)];
        assert_eq!(resultant(&f, &g).unwrap(), c(10));
    }
}
