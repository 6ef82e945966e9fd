//! Chebyshev polynomials of the second kind in the normalization
//! `S_0 = 1`, `S_1 = z`, `S_k = z S_{k-1} - S_{k-2}`, extended to all integers.
//!
//! `P_k = S_0 + ... + S_k` is extended to negative `k` by keeping
//! `P_k - P_{k-1} = S_k`, so `P_{-1} = 0` and `P_{-2} = 0`.

use num_complex::Complex64;

/// `S_k(z)` by the linear recurrence. Negative indices run the recurrence
/// backward, which gives `S_{-1} = 0` and `S_{-k} = -S_{k-2}`.
pub fn s_cheb(k: i64, z: Complex64) -> Complex64 {
    if k == -1 {
        return Complex64::new(0.0, 0.0);
    }
    if k < 0 {
        // Backward run from (S_0, S_{-1}) = (1, 0) performs exactly the same
        // operations as the forward run from (S_{-1}, S_0), up to sign.
        return -s_cheb(-k - 2, z);
    }
    let (mut prev, mut cur) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    for _ in 0..k {
        let next = z * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(S_{k-1}(z), S_k(z))` in one pass.
pub fn s_pair(k: i64, z: Complex64) -> (Complex64, Complex64) {
    (s_cheb(k - 1, z), s_cheb(k, z))
}

/// `P_k(z)`, computed by summation so that `z = 2` needs no special case.
pub fn p_cheb(k: i64, z: Complex64) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    if k >= 0 {
        let (mut prev, mut cur) = (zero, Complex64::new(1.0, 0.0));
        let mut sum = cur;
        for _ in 0..k {
            let next = z * cur - prev;
            prev = cur;
            cur = next;
            sum += cur;
        }
        sum
    } else {
        // P_k = -(S_{k+1} + ... + S_{-1})
        (k + 1..=-1).map(|i| -s_cheb(i, z)).fold(zero, |acc, t| acc + t)
    }
}

/// `det(I + V + ... + V^k)` for `V` in SL2 with trace `z`; this is
/// `(S_{k+1} - S_{k-1} - 2)/(z - 2)` evaluated as `P_k + P_{k-1}`.
pub fn det_sum_ratio(k: i64, z: Complex64) -> Complex64 {
    p_cheb(k, z) + p_cheb(k - 1, z)
}

/// `(S_n(z) - S_{n-2}(z) - 2)/(z - 2)` for any integer `n`, without division.
///
/// The quotient is even under `n -> -n` after reflection, and for `n >= 1`
/// equals `P_{n-1} + P_{n-2}`.
pub fn torsion_ratio(n: i64, z: Complex64) -> Complex64 {
    det_sum_ratio(n.abs() - 1, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn base_values() {
        let z = c(0.3, -1.7);
        assert_eq!(s_cheb(0, z), c(1.0, 0.0));
        assert_eq!(s_cheb(1, z), z);
        assert_eq!(s_cheb(-1, z), c(0.0, 0.0));
        assert_eq!(s_cheb(-2, z), c(-1.0, 0.0));
        assert_eq!(s_cheb(-3, z), -z);
    }

    #[test]
    fn small_index_values() {
        let z = c(1.5, 0.5);
        assert!((s_cheb(2, z) - (z * z - 1.0)).norm() < 1e-15);
        // 2, 3, 4 by hand from S_0 = 1, S_1 = 2
        assert_eq!(s_cheb(3, c(2.0, 0.0)), c(4.0, 0.0));
        assert_eq!(s_cheb(25, c(2.0, 0.0)), c(26.0, 0.0));
    }

    #[test]
    fn partial_sums() {
        let z = c(-0.4, 0.9);
        assert_eq!(p_cheb(-1, z), c(0.0, 0.0));
        assert_eq!(p_cheb(-2, z), c(0.0, 0.0));
        assert_eq!(p_cheb(0, z), c(1.0, 0.0));
        assert_eq!(p_cheb(1, z), z + 1.0);
        assert_eq!(p_cheb(3, c(2.0, 0.0)), c(10.0, 0.0));
        for k in -6..6 {
            let d = p_cheb(k, z) - p_cheb(k - 1, z) - s_cheb(k, z);
            assert!(d.norm() < 1e-13, "k = {k}");
        }
    }

    #[test]
    fn det_sum_values() {
        let z = c(0.7, 0.2);
        assert_eq!(det_sum_ratio(0, z), c(1.0, 0.0));
        assert!((det_sum_ratio(1, z) - (z + 2.0)).norm() < 1e-15);
        assert_eq!(det_sum_ratio(4, c(2.0, 0.0)), c(25.0, 0.0));
    }

    #[test]
    fn torsion_ratio_matches_division_form() {
        let z = c(0.4, 1.1);
        for n in [-6i64, -3, -2, -1, 1, 2, 3, 7] {
            let div = (s_cheb(n, z) - s_cheb(n - 2, z) - 2.0) / (z - 2.0);
            let r = torsion_ratio(n, z);
            assert!((div - r).norm() < 1e-11 * (1.0 + r.norm()), "n = {n}");
        }
        assert_eq!(torsion_ratio(1, z), c(1.0, 0.0));
        assert_eq!(torsion_ratio(-1, z), c(1.0, 0.0));
    }

    #[test]
    fn reflection_is_exact() {
        let z = c(3.3, -2.1);
        for k in 0..=25 {
            assert_eq!(s_cheb(-k, z), -s_cheb(k - 2, z));
        }
    }

    #[test]
    fn backward_recurrence_agrees() {
        // Independent backward run: S_{k-2} = z S_{k-1} - S_k.
        let z = c(0.9, 0.35);
        let (mut s1, mut s0) = (z, c(1.0, 0.0));
        for k in 1..=20i64 {
            let prev = z * s0 - s1;
            s1 = s0;
            s0 = prev;
            assert!((s_cheb(-k, z) - s0).norm() < 1e-12 * (1.0 + s0.norm()));
        }
    }

    #[test]
    fn pair_is_consistent() {
        let z = c(-1.2, 0.4);
        let (a, b) = s_pair(5, z);
        assert_eq!(a, s_cheb(4, z));
        assert_eq!(b, s_cheb(5, z));
    }
}
