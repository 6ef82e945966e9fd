//! Nonabelian `SL2(C)` representations of the twist-knot group
//! `<a, b | w^n a = b w^n>`, `w = b a^-1 b^-1 a`.
//!
//! Up to conjugation such a representation is
//!
//! ```text
//! rho(a) = [[s, 1], [0, 1/s]]     rho(b) = [[s, 0], [-u, 1/s]]
//! ```
//!
//! with `(s, u)` a zero of the Riley polynomial
//! `phi(s, u) = S_n(z) - (u^2 - (u+1)(s^2 + s^-2 - 3)) S_{n-1}(z)`,
//! where `z = tr rho(w) = 2 + (2 - s^2 - s^-2) u + u^2`.
//!
//! Only the zero set of `phi` matters; its overall sign follows the
//! expression above.

use num_complex::Complex64;

use crate::chebyshev::s_cheb;
use crate::error::{Error, Result};
use crate::poly::PolyC;
use crate::sl2::Mat2;

/// The twist knot `J(2, 2n)`: `n = 1` is the trefoil, `n = -1` the figure-eight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistKnot {
    n: i64,
}

impl TwistKnot {
    pub fn new(n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroN);
        }
        Ok(TwistKnot { n })
    }

    pub fn n(&self) -> i64 {
        self.n
    }
}

/// A point `(s, u)` with `s, u` nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RileyPoint {
    pub s: Complex64,
    pub u: Complex64,
}

impl RileyPoint {
    pub fn new(s: Complex64, u: Complex64) -> Result<Self> {
        if s.norm() == 0.0 {
            return Err(Error::ZeroS);
        }
        Ok(RileyPoint { s, u })
    }

    /// `x = tr rho(a) = s + 1/s`.
    pub fn x(&self) -> Complex64 {
        self.s + self.s.inv()
    }

    /// `z = tr rho(w) = 2 + (2 - s^2 - s^-2) u + u^2`.
    pub fn z(&self) -> Complex64 {
        let s2 = self.s * self.s;
        2.0 + (2.0 - s2 - s2.inv()) * self.u + self.u * self.u
    }

    /// `z` written through `x`: `u^2 - (x^2 - 4) u + 2`.
    pub fn z_from_x(&self) -> Complex64 {
        let x = self.x();
        self.u * self.u - (x * x - 4.0) * self.u + 2.0
    }

    /// `s^2 + s^-2`.
    pub fn s2_sum(&self) -> Complex64 {
        let s2 = self.s * self.s;
        s2 + s2.inv()
    }

    /// Scaled distance from the Riley variety, see [`riley_residual`].
    pub fn residual(&self, n: i64) -> f64 {
        riley_residual(n, self.s, self.u)
    }
}

fn nonzero(s: Complex64) -> Result<()> {
    if s.norm() == 0.0 {
        Err(Error::ZeroS)
    } else {
        Ok(())
    }
}

pub fn rho_a(s: Complex64) -> Result<Mat2> {
    nonzero(s)?;
    let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    Ok(Mat2::new(s, one, zero, s.inv()))
}

pub fn rho_b(s: Complex64, u: Complex64) -> Result<Mat2> {
    nonzero(s)?;
    Ok(Mat2::new(s, Complex64::new(0.0, 0.0), -u, s.inv()))
}

/// `rho(w)` in closed form.
pub fn rho_w(s: Complex64, u: Complex64) -> Result<Mat2> {
    nonzero(s)?;
    let si = s.inv();
    Ok(Mat2::new(
        1.0 - s * s * u,
        si - s - s * u,
        (s - si) * u + s * u * u,
        1.0 + (2.0 - si * si) * u + u * u,
    ))
}

/// `rho(w^n)` in closed form: `S_n(z) I - S_{n-1}(z) rho(w)^{-1}`.
pub fn rho_w_pow(n: i64, s: Complex64, u: Complex64) -> Result<Mat2> {
    nonzero(s)?;
    let si = s.inv();
    let z = RileyPoint { s, u }.z();
    let (sn, sn1) = (s_cheb(n, z), s_cheb(n - 1, z));
    Ok(Mat2::new(
        sn - (1.0 + (2.0 - si * si) * u + u * u) * sn1,
        (si - s - s * u) * sn1,
        ((s - si) * u + s * u * u) * sn1,
        sn - (1.0 - s * s * u) * sn1,
    ))
}

/// `rho` of the reversed word `a b^-1 a^-1 b`, in closed form.
pub fn rho_w_rev(s: Complex64, u: Complex64) -> Result<Mat2> {
    nonzero(s)?;
    let si = s.inv();
    Ok(Mat2::new(
        1.0 + (2.0 - s * s) * u + u * u,
        s - si - si * u,
        (si - s) * u + si * u * u,
        1.0 - si * si * u,
    ))
}

/// `rho` of the `n`-th power of the reversed word, in closed form.
pub fn rho_w_rev_pow(n: i64, s: Complex64, u: Complex64) -> Result<Mat2> {
    nonzero(s)?;
    let si = s.inv();
    let z = RileyPoint { s, u }.z();
    let (sn, sn1) = (s_cheb(n, z), s_cheb(n - 1, z));
    Ok(Mat2::new(
        sn - (1.0 - si * si * u) * sn1,
        (s - si - si * u) * sn1,
        ((si - s) * u + si * u * u) * sn1,
        sn - (1.0 + (2.0 - s * s) * u + u * u) * sn1,
    ))
}

pub(crate) fn riley_terms(n: i64, s: Complex64, u: Complex64) -> (Complex64, Complex64) {
    let pt = RileyPoint { s, u };
    let z = pt.z();
    let factor = u * u - (u + 1.0) * (pt.s2_sum() - 3.0);
    (s_cheb(n, z), factor * s_cheb(n - 1, z))
}

/// `phi(s, u)`.
pub fn riley_eval(n: i64, s: Complex64, u: Complex64) -> Complex64 {
    let (lead, rest) = riley_terms(n, s, u);
    lead - rest
}

/// `|phi|` divided by `1 + |S_n(z)| + |(u^2 - ...) S_{n-1}(z)|`, the size of
/// the two terms that cancel on the variety.
pub fn riley_residual(n: i64, s: Complex64, u: Complex64) -> f64 {
    let (lead, rest) = riley_terms(n, s, u);
    (lead - rest).norm() / (1.0 + lead.norm() + rest.norm())
}

/// `S_k` of a polynomial argument, by the recurrence in the polynomial ring.
fn s_cheb_poly(k: i64, z: &PolyC) -> PolyC {
    if k == -1 {
        return PolyC::zero();
    }
    if k < -1 {
        return -&s_cheb_poly(-k - 2, z);
    }
    let mut prev = PolyC::zero();
    let mut cur = PolyC::constant(Complex64::new(1.0, 0.0));
    for _ in 0..k {
        let next = &(z * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Relative threshold below which leading coefficients of `phi(s, .)` are
/// treated as cancelled.
pub const LEADING_TRIM: f64 = 1e-12;

/// `phi(s, .)` expanded as a polynomial in `u`.
pub fn riley_poly_in_u(n: i64, s: Complex64) -> Result<PolyC> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    nonzero(s)?;
    let one = Complex64::new(1.0, 0.0);
    let s2 = s * s;
    let s2_sum = s2 + s2.inv();
    let z = PolyC::new(vec![Complex64::new(2.0, 0.0), 2.0 - s2_sum, one]);
    let c = s2_sum - 3.0;
    let factor = PolyC::new(vec![-c, -c, one]);
    let phi = &s_cheb_poly(n, &z) - &(&factor * &s_cheb_poly(n - 1, &z));
    let phi = phi.trimmed(LEADING_TRIM);
    if phi.is_zero() {
        return Err(Error::DegeneratePolynomial);
    }
    Ok(phi)
}

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    /// Target for the scaled residual after Newton polishing.
    pub tol: f64,
    /// Iteration cap for the simultaneous root iteration.
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { tol: 1e-12, max_iter: 500 }
    }
}

/// Roots `u` of `phi(s, .)` with bookkeeping.
#[derive(Debug, Clone)]
pub struct RileyRoots {
    pub points: Vec<RileyPoint>,
    /// Roots whose polished residual stayed above the tolerance.
    pub unconverged: Vec<RileyPoint>,
    pub notices: Vec<String>,
    /// Degree of `phi(s, .)` in `u` after trimming.
    pub degree: usize,
    pub leading: Complex64,
}

const ABELIAN_U: f64 = 1e-10;
const DEDUP_DIST: f64 = 1e-8;
const POLISH_ITERS: usize = 60;

fn polish(n: i64, s: Complex64, mut u: Complex64, dphi: &PolyC, tol: f64) -> Complex64 {
    let mut best = (riley_residual(n, s, u), u);
    for _ in 0..POLISH_ITERS {
        if best.0 < tol * 1e-2 {
            break;
        }
        let d = dphi.eval(u);
        if d.norm() == 0.0 {
            break;
        }
        u -= riley_eval(n, s, u) / d;
        let r = riley_residual(n, s, u);
        if !r.is_finite() {
            break;
        }
        if r < best.0 {
            best = (r, u);
        } else if r > 1e3 * best.0 {
            break;
        }
    }
    best.1
}

/// Nonabelian Riley points over a fixed `s`.
///
/// Roots come from Durand-Kerner on the expanded polynomial and are then
/// Newton-polished on [`riley_eval`]. `u ~ 0` (abelian) is dropped, and
/// coincident roots are merged. Output is sorted by `(re u, im u)`.
pub fn riley_roots(n: i64, s: Complex64, opts: &RootOptions) -> Result<RileyRoots> {
    let phi = riley_poly_in_u(n, s)?;
    let degree = phi.degree().unwrap_or(0);
    let leading = phi.leading().unwrap_or_default();
    let dphi = phi.derivative();
    let dk = phi.roots_durand_kerner(opts.max_iter, 1e-14);
    let mut notices = Vec::new();
    if !dk.converged {
        notices.push(format!("root iteration hit the {} iteration cap; polishing anyway", opts.max_iter));
    }

    let mut points: Vec<RileyPoint> = Vec::new();
    let mut unconverged = Vec::new();
    for u0 in dk.roots {
        let u = polish(n, s, u0, &dphi, opts.tol);
        if u.norm() < ABELIAN_U {
            notices.push(format!("dropped abelian root u = {u:e}"));
            continue;
        }
        let pt = RileyPoint { s, u };
        let target = if pt.residual(n) < opts.tol { &mut points } else { &mut unconverged };
        if target.iter().any(|q| (q.u - u).norm() < DEDUP_DIST * (1.0 + u.norm())) {
            continue;
        }
        target.push(pt);
    }
    for pt in &unconverged {
        notices.push(format!(
            "root u = {} did not polish below {:e} (residual {:e})",
            pt.u,
            opts.tol,
            pt.residual(n)
        ));
    }
    let key = |p: &RileyPoint| (p.u.re, p.u.im);
    points.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal));
    Ok(RileyRoots { points, unconverged, notices, degree, leading })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    #[test]
    fn meridian_images() {
        let a = rho_a(c(1.0, 0.0)).unwrap();
        assert_eq!(a, Mat2::real(1.0, 1.0, 0.0, 1.0));
        let s = c(0.7, 0.4);
        let u = c(-1.3, 2.2);
        assert!((rho_b(s, u).unwrap().det() - 1.0).norm() < 1e-15);
        assert!((rho_a(s).unwrap().trace() - (s + s.inv())).norm() < 1e-15);
        assert_eq!(rho_a(c(0.0, 0.0)), Err(Error::ZeroS));
        assert_eq!(rho_w(c(0.0, 0.0), u), Err(Error::ZeroS));
    }

    #[test]
    fn w_matches_product_of_generators() {
        let s = c(1.3, -0.2);
        let u = c(0.4, 0.9);
        let a = rho_a(s).unwrap();
        let b = rho_b(s, u).unwrap();
        let prod = b * a.adjugate() * b.adjugate() * a;
        assert!(rho_w(s, u).unwrap().dist(&prod) < 1e-12);
        let rev = a * b.adjugate() * a.adjugate() * b;
        assert!(rho_w_rev(s, u).unwrap().dist(&rev) < 1e-12);
        let pt = RileyPoint::new(s, u).unwrap();
        assert!((prod.trace() - pt.z()).norm() < 1e-12);
        assert!((pt.z() - pt.z_from_x()).norm() < 1e-12);
    }

    #[test]
    fn w_degenerates_at_u_zero() {
        // rho(a) and rho(b) still fail to commute at u = 0, so rho(w) is
        // unipotent rather than the identity.
        let s = c(1.7, 0.3);
        let w = rho_w(s, c(0.0, 0.0)).unwrap();
        let want = Mat2::new(c(1.0, 0.0), s.inv() - s, c(0.0, 0.0), c(1.0, 0.0));
        assert!(w.dist(&want) < 1e-15);
        assert!((w.trace() - 2.0).norm() < 1e-15);
    }

    #[test]
    fn w_powers() {
        let s = c(0.8, 0.5);
        let u = c(-0.6, 0.3);
        let w = rho_w(s, u).unwrap();
        assert!(rho_w_pow(0, s, u).unwrap().dist(&Mat2::identity()) < 1e-15);
        assert!(rho_w_pow(1, s, u).unwrap().dist(&w) < 1e-14);
        let winv = w.adjugate();
        let oracle = winv * winv * winv;
        assert!(rho_w_pow(-3, s, u).unwrap().dist(&oracle) < 1e-10 * (1.0 + oracle.norm()));
        let r = rho_w_rev(s, u).unwrap();
        let oracle = r * r * r * r;
        assert!(rho_w_rev_pow(4, s, u).unwrap().dist(&oracle) < 1e-10 * (1.0 + oracle.norm()));
    }

    #[test]
    fn trefoil_polynomial() {
        let s = c(2.0, 0.0);
        // x = 2.5, root u = x^2 - 3 = 3.25
        let phi = riley_poly_in_u(1, s).unwrap();
        assert_eq!(phi.degree(), Some(1));
        let roots = riley_roots(1, s, &RootOptions::default()).unwrap();
        assert_eq!(roots.points.len(), 1);
        assert!((roots.points[0].u - c(3.25, 0.0)).norm() < 1e-12);
        // phi = -(u - (x^2 - 3))
        let u = c(0.3, 0.1);
        assert!((riley_eval(1, s, u) + (u - 3.25)).norm() < 1e-13);
    }

    #[test]
    fn figure_eight_polynomial() {
        // s + 1/s = 3
        let s = c((3.0 + 5f64.sqrt()) / 2.0, 0.0);
        let phi = riley_poly_in_u(-1, s).unwrap();
        assert_eq!(phi.degree(), Some(2));
        let roots = riley_roots(-1, s, &RootOptions::default()).unwrap();
        let us: Vec<f64> = roots.points.iter().map(|p| p.u.re).collect();
        let r8 = 8f64.sqrt();
        assert_eq!(us.len(), 2);
        assert!((us[0] - (2.0 - r8)).abs() < 1e-12);
        assert!((us[1] - (2.0 + r8)).abs() < 1e-12);
        // u^2 - (u+1)(x^2-5) with x = 3
        let u = c(1.1, -0.4);
        assert!((riley_eval(-1, s, u) - (u * u - (u + 1.0) * 4.0)).norm() < 1e-12);
    }

    #[test]
    fn expansion_agrees_with_direct_evaluation() {
        let s = c(0.9, 0.45);
        for n in [-6i64, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6] {
            let phi = riley_poly_in_u(n, s).unwrap();
            for u in [c(0.3, 0.2), c(-1.1, 0.7), c(2.0, -1.5)] {
                let direct = riley_eval(n, s, u);
                let expanded = phi.eval(u);
                assert!((direct - expanded).norm() < 1e-10 * (1.0 + direct.norm()), "n = {n}");
            }
        }
    }

    #[test]
    fn roots_satisfy_the_group_relation() {
        let s = c(1.3, 0.0);
        for n in [-3i64, -2, 2, 3] {
            let roots = riley_roots(n, s, &RootOptions::default()).unwrap();
            assert!(roots.unconverged.is_empty(), "n = {n}: {:?}", roots.notices);
            assert_eq!(roots.points.len(), roots.degree);
            for pt in &roots.points {
                assert!(riley_eval(n, s, pt.u).norm() < 1e-10);
                let a = rho_a(s).unwrap();
                let b = rho_b(s, pt.u).unwrap();
                let wn = rho_w(s, pt.u).unwrap().pow(n).unwrap();
                let res = (wn * a).dist(&(b * wn));
                assert!(res < 1e-9 * (1.0 + wn.norm()), "n = {n}, residual {res:e}");
            }
        }
    }

    #[test]
    fn relation_defect_is_antidiagonal() {
        let s = c(0.75, -0.5);
        let u = c(0.2, 1.4);
        for n in [-2i64, 1, 3] {
            let a = rho_a(s).unwrap();
            let b = rho_b(s, u).unwrap();
            let wn = rho_w_pow(n, s, u).unwrap();
            let d = wn * a - b * wn;
            let phi = riley_eval(n, s, u);
            assert!(d.a11.norm() < 1e-10 && d.a22.norm() < 1e-10);
            assert!((d.a12 - phi).norm() < 1e-10 * (1.0 + phi.norm()));
            assert!((d.a21 - u * d.a12).norm() < 1e-10 * (1.0 + d.a21.norm()));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(riley_poly_in_u(0, c(1.0, 0.0)), Err(Error::ZeroN));
        assert_eq!(TwistKnot::new(0), Err(Error::ZeroN));
        assert_eq!(TwistKnot::new(-3).unwrap().n(), -3);
    }
}
