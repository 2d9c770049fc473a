//! Dense linear algebra: ball determinants and exact rational solves.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ball::{ComplexBall, Mag};

/// Enclosure of the determinant of a square ball matrix by Gaussian
/// elimination with partial pivoting. When no pivot can be certified
/// nonzero the result is a ball around zero bounded by Hadamard's
/// inequality.
pub fn det_ball(mut m: Vec<Vec<ComplexBall>>) -> ComplexBall {
    let n = m.len();
    assert!(
        m.iter().all(|r| r.len() == n),
        "determinant of a non-square matrix"
    );
    let prec = m
        .first()
        .and_then(|r| r.first())
        .map(|b| b.prec())
        .unwrap_or(128);
    if n == 0 {
        return ComplexBall::one(prec);
    }
    let hadamard = m.iter().fold(Mag::from_f64(1.0), |acc, row| {
        let norm2 = row
            .iter()
            .fold(Mag::ZERO, |s, b| s.add(b.abs_upper().mul(b.abs_upper())));
        acc.mul(norm2.sqrt())
    });
    let mut det = ComplexBall::one(prec);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&a, &b| m[a][k].mid_abs_upper().cmp_value(&m[b][k].mid_abs_upper()))
            .unwrap_or(k);
        if m[pivot][k].contains_zero() {
            return ComplexBall::zero(prec).with_rad(hadamard);
        }
        if pivot != k {
            m.swap(pivot, k);
            det = det.neg();
        }
        det = det.mul(&m[k][k]);
        let Ok(inv) = m[k][k].inv() else {
            return ComplexBall::zero(prec).with_rad(hadamard);
        };
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            if row[k].is_exact_zero() {
                continue;
            }
            let factor = row[k].mul(&inv);
            for j in k + 1..n {
                let delta = factor.mul(&pivot_row[j]);
                row[j] = row[j].sub(&delta);
            }
        }
    }
    det
}

/// Solve `A x = b` exactly; `None` when `A` is singular.
pub fn solve_rational(
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let n = a.len();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, pivot);
        b.swap(k, pivot);
        let inv = a[k][k].recip();
        for x in &mut a[k][k..n] {
            *x = &*x * &inv;
        }
        b[k] = &b[k] * &inv;
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            let (row_k, row_i) = if i < k {
                let (lo, hi) = a.split_at_mut(k);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = a.split_at_mut(i);
                (&lo[k], &mut hi[0])
            };
            for (x, y) in row_i[k..n].iter_mut().zip(&row_k[k..n]) {
                *x -= &f * y;
            }
            let d = &f * &b[k];
            b[i] -= d;
        }
    }
    debug_assert!((0..n).all(|i| a[i][i].is_one()));
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::rat;

    #[test]
    fn vandermonde_determinant() {
        // det of Vandermonde on 1, 2, 3 is (2-1)(3-1)(3-2) = 2
        let rows: Vec<Vec<ComplexBall>> = [1i64, 2, 3]
            .iter()
            .map(|&x| {
                (0..3)
                    .map(|k| ComplexBall::from_int(x.pow(k), 128))
                    .collect()
            })
            .collect();
        let d = det_ball(rows);
        assert!(d.contains(&ComplexBall::from_int(2, 128)));
        assert!(d.rad().log2() < -100.0);
    }

    #[test]
    fn singular_matrix_straddles_zero() {
        let rows = vec![
            vec![ComplexBall::from_int(1, 128), ComplexBall::from_int(2, 128)],
            vec![ComplexBall::from_int(2, 128), ComplexBall::from_int(4, 128)],
        ];
        assert!(det_ball(rows).contains_zero());
    }

    #[test]
    fn rational_solve() {
        let a = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
        let x = solve_rational(a, vec![rat(3), rat(5)]).unwrap();
        assert_eq!(
            x,
            vec![
                BigRational::new(4.into(), 5.into()),
                BigRational::new(7.into(), 5.into())
            ]
        );
        let s = vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]];
        assert!(solve_rational(s, vec![rat(1), rat(1)]).is_none());
    }
}
