//! Chebyshev families used throughout: first kind `T_k` with
//! `T_k(x + 1/x) = x^k + x^-k`, and the color polynomials `e_i` of the
//! second kind with `e_0 = 1`, `e_1 = z`, `e_{i+1} = z e_i - e_{i-1}`.

use super::poly::{rat, UniPoly};

/// First-kind Chebyshev polynomial in trace normalization.
pub fn cheb_t(k: u32) -> UniPoly {
    let two = UniPoly::from_ints([2]);
    if k == 0 {
        return two;
    }
    let x = UniPoly::x();
    let (mut prev, mut cur) = (two, x.clone());
    for _ in 1..k {
        let next = &(&x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Second-kind Chebyshev polynomial `e_i`.
pub fn cheb_e(i: u32) -> UniPoly {
    let z = UniPoly::x();
    if i == 0 {
        return UniPoly::constant(rat(1));
    }
    let (mut prev, mut cur) = (UniPoly::one(), z.clone());
    for _ in 1..i {
        let next = &(&z * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_first_kind() {
        assert_eq!(cheb_t(0), UniPoly::from_ints([2]));
        assert_eq!(cheb_t(1), UniPoly::from_ints([0, 1]));
        assert_eq!(cheb_t(2), UniPoly::from_ints([-2, 0, 1]));
        assert_eq!(cheb_t(3), UniPoly::from_ints([0, -3, 0, 1]));
    }

    #[test]
    fn small_second_kind() {
        assert_eq!(cheb_e(0), UniPoly::from_ints([1]));
        assert_eq!(cheb_e(1), UniPoly::from_ints([0, 1]));
        assert_eq!(cheb_e(2), UniPoly::from_ints([-1, 0, 1]));
    }
}
