//! Reidemeister torsion of twist-knot complements `J(2,2n)` and of the closed
//! manifolds obtained from them by Dehn surgery.
//!
//! The crate evaluates the closed-form torsion expressions on the nonabelian
//! `SL2(C)` representation variety and checks them against an independent
//! route: Fox free calculus plus Johnson's determinant formula, evaluated on
//! numerically solved representations.
//!
//! Module map:
//!
//! * [`chebyshev`]: `S_k`, `P_k` for all integer indices.
//! * [`sl2`]: 2x2 complex matrices, Cayley-Hamilton powers and geometric sums.
//! * [`poly`]: complex univariate polynomials and a Durand-Kerner root finder.
//! * [`riley`]: the representations `rho(a)`, `rho(b)`, the Riley polynomial, root solving.
//! * [`fox`]: free-group words, the word grammar, Fox derivatives, Johnson torsion.
//! * [`torsion`]: torsion of the knot complement.
//! * [`surgery`]: longitudes, surgery representations, torsion of the surgered manifold.
//! * [`verify`]: the randomized identity suite used by `torsionlab verify`.
//! * [`table`]: parameter sweeps.
//!
//! With the default `parallel` feature, batch work (identity trials, Newton
//! starts, sweep rows) runs on rayon; see [`par`].

pub mod chebyshev;
pub mod error;
pub mod fox;
pub mod newton;
pub mod par;
pub mod poly;
pub mod riley;
pub mod sample;
pub mod sl2;
pub mod surgery;
pub mod table;
pub mod torsion;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use poly::PolyC;
pub use riley::{RileyPoint, TwistKnot};
pub use sl2::Mat2;
pub use surgery::{Slope, SurgeryRep};

/// The scalar field used throughout.
pub type ComplexScalar = Complex64;

/// Library version, as reported by the CLI.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(test)]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
