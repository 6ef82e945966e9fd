//! Torsion of the twist-knot complement.
//!
//! Closed form, for `x = tr rho(a) != 2`:
//!
//! ```text
//! tau = (2 - x) (S_n(z) - S_{n-2}(z) - 2)/(z - 2) + x S_{n-1}(z)
//! ```
//!
//! The quotient is a polynomial in `z` and is evaluated as
//! `P_{|n|-1} + P_{|n|-2}`, never by division.
//!
//! The Johnson route computes `det rho(dr/da) / det(rho(b) - I)` for the
//! relator `r = w^n a w^-n b^-1`. Writing `det rho(dr/da) = det(I + Omega)`
//! with `Omega = rho(a^-1 (1-b)(1-a)) Delta` gives the intermediate closed
//! forms [`omega_det`] and [`omega_trace`].

use num_complex::Complex64;

use crate::chebyshev::{s_cheb, torsion_ratio};
use crate::error::{Error, Result};
use crate::fox::{johnson_pair, johnson_torsion, twist_relator, Assignment, Gen, JohnsonPair};
use crate::riley::{rho_a, rho_b, rho_w, RileyPoint};
use crate::sl2::Mat2;

/// `|x - 2|` below this is treated as the excluded parabolic case.
pub const PARABOLIC_X: f64 = 1e-8;

/// Scaled Riley residual accepted for points handed to the torsion formulas.
pub const ON_VARIETY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    FoxOracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::FoxOracle => "fox_oracle",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TorsionReport {
    pub value: Complex64,
    pub method: Method,
    pub n: i64,
    pub point: RileyPoint,
    pub warnings: Vec<String>,
}

pub(crate) fn check_on_variety(n: i64, pt: &RileyPoint) -> Result<()> {
    let residual = pt.residual(n);
    if residual < ON_VARIETY_TOL {
        Ok(())
    } else {
        Err(Error::NotOnVariety { residual })
    }
}

fn check_not_parabolic(pt: &RileyPoint) -> Result<()> {
    if (pt.x() - 2.0).norm() <= PARABOLIC_X {
        Err(Error::ParabolicPoint { tol: PARABOLIC_X })
    } else {
        Ok(())
    }
}

/// Closed-form torsion of the complement of `J(2, 2n)` at a Riley point.
pub fn torsion_complement(n: i64, pt: &RileyPoint) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    check_not_parabolic(pt)?;
    check_on_variety(n, pt)?;
    Ok(torsion_closed_form_unchecked(n, pt))
}

/// The closed-form expression with no hypothesis checks; a function on all
/// of `(s, u)` space.
pub fn torsion_closed_form_unchecked(n: i64, pt: &RileyPoint) -> Complex64 {
    let x = pt.x();
    let z = pt.z();
    (2.0 - x) * torsion_ratio(n, z) + x * s_cheb(n - 1, z)
}

/// The generator images `a -> rho(a)`, `b -> rho(b)` at `pt`.
pub fn assignment(pt: &RileyPoint) -> Result<Assignment> {
    Ok(Assignment::new(rho_a(pt.s)?, rho_b(pt.s, pt.u)?))
}

/// Johnson's formula on the twist-knot relator, deleting `b`'s column.
pub fn torsion_fox(n: i64, pt: &RileyPoint) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    johnson_torsion(&twist_relator(n), &assignment(pt)?, Gen::B)
}

/// Johnson's formula for both column deletions.
pub fn torsion_fox_pair(n: i64, pt: &RileyPoint) -> Result<JohnsonPair> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    johnson_pair(&twist_relator(n), &assignment(pt)?)
}

pub fn torsion_report(n: i64, pt: &RileyPoint, method: Method) -> Result<TorsionReport> {
    let value = match method {
        Method::ClosedForm => torsion_complement(n, pt)?,
        Method::FoxOracle => {
            check_not_parabolic(pt)?;
            torsion_fox(n, pt)?
        }
    };
    let mut warnings = Vec::new();
    let residual = pt.residual(n);
    if residual > 1e-12 {
        warnings.push(format!("scaled Riley residual {residual:e}"));
    }
    Ok(TorsionReport { value, method, n, point: *pt, warnings })
}

/// `det Omega = (2 - x)^2 (S_n - S_{n-2} - 2)/(z - 2)`.
pub fn omega_det(n: i64, pt: &RileyPoint) -> Complex64 {
    let x = pt.x();
    (2.0 - x) * (2.0 - x) * torsion_ratio(n, pt.z())
}

/// `tr Omega = x (2 - x) S_{n-1}(z) - 1`, valid on the Riley variety.
pub fn omega_trace(n: i64, pt: &RileyPoint) -> Complex64 {
    let x = pt.x();
    x * (2.0 - x) * s_cheb(n - 1, pt.z()) - 1.0
}

/// `Delta` built from literal sums of powers of `rho(w)`:
/// `I + W^-1 + ... + W^-(n-1)` for `n > 0`, and `-(W + W^2 + ... + W^|n|)`
/// for `n < 0`.
pub fn delta_matrix(n: i64, pt: &RileyPoint) -> Result<Mat2> {
    let w = rho_w(pt.s, pt.u)?;
    let (step, terms, sign, mut term) =
        if n > 0 { (w.adjugate(), n, 1.0, Mat2::identity()) } else { (w, -n, -1.0, w) };
    let mut acc = Mat2::zero();
    for _ in 0..terms {
        acc += term;
        term = term * step;
    }
    Ok(acc.scale(Complex64::new(sign, 0.0)))
}

/// `rho(a^-1 (1 - b)(1 - a))` by matrix products.
pub fn omega_prefix(pt: &RileyPoint) -> Result<Mat2> {
    let a = rho_a(pt.s)?;
    let b = rho_b(pt.s, pt.u)?;
    let id = Mat2::identity();
    Ok(a.adjugate() * (id - b) * (id - a))
}

/// `Omega` as an explicit matrix.
pub fn omega_matrix(n: i64, pt: &RileyPoint) -> Result<Mat2> {
    Ok(omega_prefix(pt)? * delta_matrix(n, pt)?)
}
