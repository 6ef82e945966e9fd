//! 2x2 complex matrices.
//!
//! Powers and geometric sums of an `SL2` matrix `V` with trace `t` come from
//! Cayley-Hamilton, `V^2 - tV + I = 0`, which gives
//! `V^k = S_k(t) I - S_{k-1}(t) V^{-1}` for every integer `k`.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;

use crate::chebyshev::{p_cheb, s_cheb};
use crate::error::{Error, Result};

const DEFAULT_SL2_TOL: f64 = 1e-9;

static SL2_TOL_BITS: AtomicU64 = AtomicU64::new(0);

/// Absolute tolerance on `|det - 1|` used by [`Mat2::check_sl2`].
pub fn sl2_tolerance() -> f64 {
    match SL2_TOL_BITS.load(Ordering::Relaxed) {
        0 => DEFAULT_SL2_TOL,
        bits => f64::from_bits(bits),
    }
}

/// Overrides the process-wide SL2 membership tolerance.
pub fn set_sl2_tolerance(tol: f64) {
    assert!(tol > 0.0 && tol.is_finite(), "SL2 tolerance must be positive");
    SL2_TOL_BITS.store(tol.to_bits(), Ordering::Relaxed);
}

/// Row-major `[[a11, a12], [a21, a22]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl Mat2 {
    pub const fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        let r = |v| Complex64::new(v, 0.0);
        Mat2::new(r(a11), r(a12), r(a21), r(a22))
    }

    pub fn identity() -> Self {
        Mat2::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn zero() -> Self {
        Mat2::real(0.0, 0.0, 0.0, 0.0)
    }

    pub fn scalar(v: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Mat2::new(v, z, z, v)
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    /// Adjugate, which is the inverse when `det = 1`.
    pub fn adjugate(&self) -> Self {
        Mat2::new(self.a22, -self.a12, -self.a21, self.a11)
    }

    /// General inverse; `None` when the determinant is exactly zero.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == Complex64::new(0.0, 0.0) {
            return None;
        }
        Some(self.adjugate().scale(d.inv()))
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Mat2::new(self.a11 * k, self.a12 * k, self.a21 * k, self.a22 * k)
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    /// Entrywise max-modulus norm.
    pub fn norm(&self) -> f64 {
        self.entries().iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &Mat2) -> f64 {
        (*self - *other).norm()
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|e| e.re.is_finite() && e.im.is_finite())
    }

    /// `P M P^{-1}`.
    pub fn conjugate_by(&self, p: &Mat2) -> Option<Self> {
        Some(*p * *self * p.inverse()?)
    }

    pub fn check_sl2(&self) -> Result<()> {
        let deviation = (self.det() - 1.0).norm();
        if deviation < sl2_tolerance() {
            Ok(())
        } else {
            Err(Error::NotSl2 { deviation })
        }
    }

    /// `self^k` for any integer `k` via `S_k(t) I - S_{k-1}(t) self^{-1}`.
    pub fn pow(&self, k: i64) -> Result<Self> {
        self.check_sl2()?;
        let t = self.trace();
        let (sk, sk1) = (s_cheb(k, t), s_cheb(k - 1, t));
        Ok(Mat2::new(sk - self.a22 * sk1, self.a12 * sk1, self.a21 * sk1, sk - self.a11 * sk1))
    }

    /// `I + self + ... + self^k`.
    pub fn geom_sum(&self, k: u32) -> Result<Self> {
        self.check_sl2()?;
        let t = self.trace();
        let k = i64::from(k);
        let (pk, pk1) = (p_cheb(k, t), p_cheb(k - 1, t));
        Ok(Mat2::new(pk - self.a22 * pk1, self.a12 * pk1, self.a21 * pk1, pk - self.a11 * pk1))
    }
}

/// Free-function spelling of [`Mat2::pow`].
pub fn mat_pow(v: &Mat2, k: i64) -> Result<Mat2> {
    v.pow(k)
}

/// Free-function spelling of [`Mat2::geom_sum`].
pub fn geom_sum(v: &Mat2, k: u32) -> Result<Mat2> {
    v.geom_sum(k)
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, b: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * b.a11 + self.a12 * b.a21,
            self.a11 * b.a12 + self.a12 * b.a22,
            self.a21 * b.a11 + self.a22 * b.a21,
            self.a21 * b.a12 + self.a22 * b.a22,
        )
    }
}

impl Mul<Complex64> for Mat2 {
    type Output = Mat2;

    fn mul(self, k: Complex64) -> Mat2 {
        self.scale(k)
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, b: Mat2) -> Mat2 {
        Mat2::new(self.a11 + b.a11, self.a12 + b.a12, self.a21 + b.a21, self.a22 + b.a22)
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, b: Mat2) {
        *self = *self + b;
    }
}

impl Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, b: Mat2) -> Mat2 {
        Mat2::new(self.a11 - b.a11, self.a12 - b.a12, self.a21 - b.a21, self.a22 - b.a22)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        Mat2::new(-self.a11, -self.a12, -self.a21, -self.a22)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    fn sample() -> Mat2 {
        // det = (1.2+0.3i)(a22) - (0.5-0.1i)(-0.7+0.4i) forced to 1
        let a11 = c(1.2, 0.3);
        let a12 = c(0.5, -0.1);
        let a21 = c(-0.7, 0.4);
        let a22 = (Complex64::new(1.0, 0.0) + a12 * a21) / a11;
        Mat2::new(a11, a12, a21, a22)
    }

    fn brute_pow(v: &Mat2, k: i64) -> Mat2 {
        let step = if k >= 0 { *v } else { v.inverse().unwrap() };
        (0..k.abs()).fold(Mat2::identity(), |acc, _| acc * step)
    }

    #[test]
    fn identity_and_inverse() {
        let v = sample();
        assert_eq!(Mat2::identity() * v, v);
        assert!((v * v.inverse().unwrap()).dist(&Mat2::identity()) < 1e-12);
        let rot = Mat2::real(0.0, 1.0, -1.0, 0.0);
        assert_eq!(rot * rot, -Mat2::identity());
    }

    #[test]
    fn low_powers() {
        let v = sample();
        assert!(v.pow(0).unwrap().dist(&Mat2::identity()) < 1e-15);
        assert!(v.pow(1).unwrap().dist(&v) < 1e-15);
        assert!(v.pow(-1).unwrap().dist(&v.adjugate()) < 1e-15);
    }

    #[test]
    fn power_matches_repeated_product() {
        let v = sample();
        for k in [-9i64, -4, 2, 7, 12] {
            let oracle = brute_pow(&v, k);
            let got = v.pow(k).unwrap();
            assert!(got.dist(&oracle) < 1e-10 * (1.0 + oracle.norm()), "k = {k}");
        }
    }

    #[test]
    fn geom_sum_matches_term_sum() {
        let v = sample();
        assert!(v.geom_sum(0).unwrap().dist(&Mat2::identity()) < 1e-15);
        assert!(v.geom_sum(1).unwrap().dist(&(Mat2::identity() + v)) < 1e-15);
        let mut acc = Mat2::zero();
        let mut term = Mat2::identity();
        for _ in 0..=9 {
            acc += term;
            term = term * v;
        }
        assert!(v.geom_sum(9).unwrap().dist(&acc) < 1e-10 * (1.0 + acc.norm()));
    }

    #[test]
    fn rejects_non_sl2() {
        let v = Mat2::real(2.0, 0.0, 0.0, 2.0);
        assert!(matches!(v.pow(3), Err(Error::NotSl2 { .. })));
        assert!(matches!(v.geom_sum(3), Err(Error::NotSl2 { .. })));
    }

    #[test]
    fn parabolic_geom_sum_det() {
        // tr = 2 exactly: V = [[1, 1], [0, 1]], sum of V^i for i <= k has det (k+1)^2.
        let v = Mat2::real(1.0, 1.0, 0.0, 1.0);
        let d = v.geom_sum(4).unwrap().det();
        assert_eq!(d, c(25.0, 0.0));
    }
}
