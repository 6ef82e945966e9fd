//! Dehn surgery on `J(2, 2n)`.
//!
//! The canonical longitude for the meridian `a` is `lambda = rev(w)^n w^n`,
//! where `rev(w) = a b^-1 a^-1 b` is `w` read backwards. A representation of
//! the knot group extends over `p/q` surgery when `rho(a)^p rho(lambda)^q = I`.
//! The surgered manifold then has
//!
//! ```text
//! tau(M) = tau(E_K) / (2 - tr rho(lambda))
//!        = ((x-2) (S_n - S_{n-2} - 2)/(z-2) - x S_{n-1}) (u^-2 (u+1)(x^2-4) - 1) x^-2
//! ```

use num_complex::Complex64;

use crate::chebyshev::{s_cheb, torsion_ratio};
use crate::error::{Error, Result};
use crate::fox::{twist_w, Word};
use crate::newton::{damped_newton, NewtonOptions, NewtonStatus};
use crate::par::{map_indexed, Execution};
use crate::riley::{rho_a, rho_w_pow, rho_w_rev_pow, riley_eval, riley_roots, RileyPoint, RootOptions};
use crate::sample;
use crate::sl2::Mat2;
use crate::torsion::{check_on_variety, torsion_complement};

/// A surgery slope `p/q` with `gcd(|p|, |q|) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slope {
    p: i64,
    q: i64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            return Err(Error::InvalidSlope { p, q });
        }
        Ok(Slope { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

/// A Riley point that satisfies the surgery relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurgeryRep {
    pub point: RileyPoint,
    pub slope: Slope,
    /// Max-modulus of `rho(a)^p rho(lambda)^q - I`.
    pub extension_residual: f64,
}

/// Default tolerance for [`extension_check`].
pub const EXTENSION_TOL: f64 = 1e-8;

/// `rho(lambda) = rho(rev(w)^n) rho(w^n)` from the closed forms for both powers.
pub fn rho_longitude(n: i64, pt: &RileyPoint) -> Result<Mat2> {
    Ok(rho_w_rev_pow(n, pt.s, pt.u)? * rho_w_pow(n, pt.s, pt.u)?)
}

/// The longitude as a word, for evaluation through the Fox machinery.
pub fn longitude_word(n: i64) -> Word {
    let w = twist_w();
    w.reversed().pow(n).concat(&w.pow(n))
}

/// `tr rho(lambda)` from the Riley-variety closed form
/// `2 + u^2 (s^2 + s^-2 + 2) / ((u+1)(s^2 + s^-2 - 2) - u^2)`.
pub fn trace_longitude(pt: &RileyPoint) -> Result<Complex64> {
    let s2 = pt.s2_sum();
    let u = pt.u;
    let den = (u + 1.0) * (s2 - 2.0) - u * u;
    if den.norm() < 1e-12 {
        return Err(Error::LongitudeDegenerate { den: den.norm() });
    }
    Ok(2.0 + u * u * (s2 + 2.0) / den)
}

/// `u^-2 (u+1)(x^2-4) - 1`; equals `x^2 / (tr rho(lambda) - 2)` on the variety.
pub fn longitude_factor(pt: &RileyPoint) -> Complex64 {
    let x = pt.x();
    let u = pt.u;
    (u + 1.0) * (x * x - 4.0) / (u * u) - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionCheck {
    pub accepted: bool,
    pub residual: f64,
}

/// `|| rho(a)^p rho(lambda)^q - I ||`.
pub fn extension_residual(n: i64, pt: &RileyPoint, slope: Slope) -> Result<f64> {
    Ok(surgery_matrix(n, pt, slope)?.dist(&Mat2::identity()))
}

fn surgery_matrix(n: i64, pt: &RileyPoint, slope: Slope) -> Result<Mat2> {
    let a = rho_a(pt.s)?.pow(slope.p)?;
    let l = rho_longitude(n, pt)?.pow(slope.q)?;
    Ok(a * l)
}

pub fn extension_check(n: i64, pt: &RileyPoint, slope: Slope, tol: f64) -> Result<ExtensionCheck> {
    let residual = extension_residual(n, pt, slope)?;
    Ok(ExtensionCheck { accepted: residual < tol, residual })
}

/// `|x|` or `|x - 2|` below this violates the surgery formula's hypothesis.
pub const SURGERY_X_TOL: f64 = 1e-8;
/// `|tr rho(lambda) - 2|` below this is refused.
pub const LONGITUDE_TWO_TOL: f64 = 1e-10;

fn check_surgery_hypotheses(n: i64, pt: &RileyPoint) -> Result<Complex64> {
    let x = pt.x();
    if x.norm() <= SURGERY_X_TOL || (x - 2.0).norm() <= SURGERY_X_TOL {
        return Err(Error::SurgeryHypothesis { x });
    }
    let tr = rho_longitude(n, pt)?.trace();
    let gap = (tr - 2.0).norm();
    if gap <= LONGITUDE_TWO_TOL {
        return Err(Error::LongitudeTraceTwo { gap });
    }
    Ok(tr)
}

/// Closed-form torsion of the surgered manifold at a Riley point.
///
/// The extension condition is not re-checked here: the expression is a
/// function on the whole Riley variety.
pub fn torsion_surgery(n: i64, pt: &RileyPoint) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    check_surgery_hypotheses(n, pt)?;
    check_on_variety(n, pt)?;
    let x = pt.x();
    let z = pt.z();
    let bracket = (x - 2.0) * torsion_ratio(n, z) - x * s_cheb(n - 1, z);
    Ok(bracket * longitude_factor(pt) / (x * x))
}

/// `tau(E_K) / (2 - tr rho(lambda))`, with the trace from the longitude matrix.
pub fn torsion_surgery_dehn(n: i64, pt: &RileyPoint) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    let tr = check_surgery_hypotheses(n, pt)?;
    Ok(torsion_complement(n, pt)? / (2.0 - tr))
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Radii of the start circles in the `s` plane.
    pub radii: Vec<f64>,
    /// Start angles per circle.
    pub angles: usize,
    /// Scaled Riley residual and `|F_2|` target for the Newton stage.
    pub tol: f64,
    pub max_iter: usize,
    /// Extension residual gate.
    pub extension_tol: f64,
    /// Jitters start angles.
    pub seed: u64,
    pub exec: Execution,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            radii: vec![0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8],
            angles: 12,
            tol: 1e-12,
            max_iter: 100,
            extension_tol: EXTENSION_TOL,
            seed: 0,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SurgerySolution {
    pub reps: Vec<SurgeryRep>,
    pub starts: usize,
    pub converged: usize,
    pub notices: Vec<String>,
}

const DEDUP_DIST: f64 = 1e-6;
/// Scaled Riley residual required of accepted solutions.
pub const SOLUTION_RILEY_TOL: f64 = 1e-10;

/// The system solved for surgery representations:
/// `F_1 = phi(s, u)` and `F_2 = (rho(a)^p rho(lambda)^q)_{11} - 1`.
///
/// On the Riley variety `rho(lambda)` commutes with the upper-triangular
/// `rho(a)`, so the product is upper triangular with diagonal `m, 1/m` and
/// `F_2 = m - 1` vanishes to first order exactly where its trace equals 2.
pub fn surgery_system(n: i64, slope: Slope, v: [Complex64; 2]) -> [Complex64; 2] {
    let nan = Complex64::new(f64::NAN, f64::NAN);
    let [s, u] = v;
    if s.norm() == 0.0 || !s.is_finite() || !u.is_finite() {
        return [nan, nan];
    }
    let f1 = riley_eval(n, s, u);
    let f2 = match surgery_matrix(n, &RileyPoint { s, u }, slope) {
        Ok(m) => m.a11 - 1.0,
        Err(_) => nan,
    };
    [f1, f2]
}

fn is_new(reps: &[SurgeryRep], pt: &RileyPoint) -> bool {
    !reps.iter().any(|r| (r.point.s - pt.s).norm() < DEDUP_DIST && (r.point.u - pt.u).norm() < DEDUP_DIST)
}

fn admissible(pt: &RileyPoint) -> bool {
    pt.u.norm() > 1e-8 && (pt.s * pt.s - 1.0).norm() > 1e-8
}

/// Multi-start damped Newton for representations that extend over `p/q`
/// surgery.
///
/// Starts: `s` on concentric circles (angles jittered by `seed`), `u` from
/// every Riley root over that `s`. Converged candidates must pass the full
/// matrix extension check; duplicates are merged and `s -> 1/s` partners
/// are added when they also pass.
pub fn solve_surgery_reps(n: i64, slope: Slope, opts: &SolveOptions) -> Result<SurgerySolution> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    let nstarts = opts.radii.len() * opts.angles;
    let newton = NewtonOptions { max_iter: opts.max_iter, tol: opts.tol, ..NewtonOptions::default() };
    let per_start = map_indexed(nstarts, opts.exec, |i| {
        let mut rng = sample::rng(opts.seed, i as u64);
        let r = opts.radii[i / opts.angles];
        let k = (i % opts.angles) as f64;
        let jitter: f64 = rand::Rng::gen_range(&mut rng, -0.25..0.25);
        let theta = std::f64::consts::TAU * (k + 0.5 + jitter) / opts.angles as f64;
        let s0 = Complex64::from_polar(r, theta);
        let Ok(roots) = riley_roots(n, s0, &RootOptions::default()) else {
            return Vec::new();
        };
        roots
            .points
            .iter()
            .map(|pt| damped_newton(|v| surgery_system(n, slope, v), [pt.s, pt.u], &newton))
            .collect::<Vec<_>>()
    });

    let mut reps: Vec<SurgeryRep> = Vec::new();
    let mut converged = 0;
    let mut starts = 0;
    for outcome in per_start.into_iter().flatten() {
        starts += 1;
        if matches!(outcome.status, NewtonStatus::SingularJacobian | NewtonStatus::NonFinite) {
            continue;
        }
        let [s, u] = outcome.x;
        let Ok(pt) = RileyPoint::new(s, u) else { continue };
        if !admissible(&pt) || pt.residual(n) >= SOLUTION_RILEY_TOL {
            continue;
        }
        converged += 1;
        for cand in [pt, RileyPoint { s: pt.s.inv(), u: pt.u }] {
            if !is_new(&reps, &cand) || cand.residual(n) >= SOLUTION_RILEY_TOL {
                continue;
            }
            let Ok(check) = extension_check(n, &cand, slope, opts.extension_tol) else { continue };
            if check.accepted {
                reps.push(SurgeryRep { point: cand, slope, extension_residual: check.residual });
            }
        }
    }
    let mut notices = Vec::new();
    if reps.is_empty() {
        notices.push(format!("no representation found from {starts} starts"));
    }
    Ok(SurgerySolution { reps, starts, converged, notices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::fox::{evaluate_word, parse_word, Macros};
    use crate::torsion::assignment;

    fn figure_eight_point() -> RileyPoint {
        let s = c((3.0 + 5f64.sqrt()) / 2.0, 0.0);
        RileyPoint::new(s, c(2.0 + 8f64.sqrt(), 0.0)).unwrap()
    }

    #[test]
    fn slopes() {
        assert!(Slope::new(1, 1).is_ok());
        assert!(Slope::new(-3, 2).is_ok());
        assert!(Slope::new(1, 0).is_ok());
        assert!(Slope::new(0, 1).is_ok());
        assert_eq!(Slope::new(2, 4), Err(Error::InvalidSlope { p: 2, q: 4 }));
        assert_eq!(Slope::new(0, 0), Err(Error::InvalidSlope { p: 0, q: 0 }));
    }

    #[test]
    fn figure_eight_longitude() {
        let pt = figure_eight_point();
        let tr = trace_longitude(&pt).unwrap();
        assert!((tr - 38.0).norm() < 1e-8);
        let m = rho_longitude(-1, &pt).unwrap();
        assert!((m.trace() - 38.0).norm() < 1e-8);
        let a = rho_a(pt.s).unwrap();
        assert!((m * a).dist(&(a * m)) < 1e-9 * (1.0 + m.norm()));
        assert!((m.det() - 1.0).norm() < 1e-9);
    }

    #[test]
    fn longitude_matches_word_evaluation() {
        let pt = RileyPoint::new(c(1.25, 0.4), c(-0.3, 0.8)).unwrap();
        let asg = assignment(&pt).unwrap();
        let text = "(a b^-1 a^-1 b)^n (b a^-1 b^-1 a)^n";
        for n in [-2i64, 1, 3] {
            let t = text.replace('n', &n.to_string());
            let w = parse_word(&t, &Macros::new()).unwrap();
            assert_eq!(w, longitude_word(n));
            let oracle = evaluate_word(&w, &asg);
            let got = rho_longitude(n, &pt).unwrap();
            assert!(got.dist(&oracle) < 1e-10 * (1.0 + oracle.norm()), "n = {n}");
        }
    }

    #[test]
    fn figure_eight_surgery_torsion() {
        let pt = figure_eight_point();
        let t = torsion_surgery(-1, &pt).unwrap();
        assert!((t - 1.0 / 9.0).norm() < 1e-8);
        let d = torsion_surgery_dehn(-1, &pt).unwrap();
        assert!((d - 1.0 / 9.0).norm() < 1e-8);
    }

    #[test]
    fn trefoil_surgery_torsion() {
        let pt = RileyPoint::new(c(2.0, 0.0), c(3.25, 0.0)).unwrap();
        let want = 2.0 / 66.015625;
        assert!((torsion_surgery(1, &pt).unwrap() - want).norm() < 1e-12);
        let tr = trace_longitude(&pt).unwrap();
        assert!((tr - rho_longitude(1, &pt).unwrap().trace()).norm() < 1e-8);
    }

    #[test]
    fn zero_slope_needs_trivial_longitude() {
        let pt = figure_eight_point();
        let slope = Slope::new(0, 1).unwrap();
        let chk = extension_check(-1, &pt, slope, EXTENSION_TOL).unwrap();
        assert!(!chk.accepted);
        assert!(chk.residual > 1.0);
    }

    #[test]
    fn surgery_hypotheses() {
        // s = i gives x = 0
        let s = c(0.0, 1.0);
        let roots = riley_roots(-1, s, &RootOptions::default()).unwrap();
        let pt = roots.points[0];
        assert!(matches!(torsion_surgery(-1, &pt), Err(Error::SurgeryHypothesis { .. })));
    }
}
