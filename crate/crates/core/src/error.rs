use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not in SL2: |det - 1| = {deviation:e}")]
    NotSl2 { deviation: f64 },

    #[error("meridian eigenvalue s must be nonzero")]
    ZeroS,

    #[error("twist parameter n must be nonzero")]
    ZeroN,

    #[error("Riley polynomial vanishes identically in u at this s")]
    DegeneratePolynomial,

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown macro `{0}`")]
    UnknownMacro(String),

    #[error("parabolic meridian: torsion formula inapplicable (|det(rho(g) - I)| = {det:e})")]
    ParabolicMeridian { det: f64 },

    #[error("torsion formula hypothesis violated: x = tr rho(a) is within {tol:e} of 2")]
    ParabolicPoint { tol: f64 },

    #[error("surgery torsion formula hypothesis violated: x = {x} is too close to 0 or 2")]
    SurgeryHypothesis { x: num_complex::Complex64 },

    #[error("surgery torsion formula requires tr rho(lambda) != 2 (|tr - 2| = {gap:e})")]
    LongitudeTraceTwo { gap: f64 },

    #[error("longitude trace formula degenerate: |(u+1)(x^2-4) - u^2| = {den:e}")]
    LongitudeDegenerate { den: f64 },

    #[error("point is not on the Riley variety (scaled residual {residual:e})")]
    NotOnVariety { residual: f64 },

    #[error("invalid slope {p}/{q}: need gcd(|p|,|q|) = 1 and (p,q) != (0,0)")]
    InvalidSlope { p: i64, q: i64 },
}
