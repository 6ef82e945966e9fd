//! Free-group words, Fox free derivatives, and Johnson's determinant formula
//! for the torsion of a two-generator one-relator knot group.
//!
//! This is the independent route to the torsion: nothing here uses the
//! Chebyshev closed forms, only word expansion and 2x2 matrix products.

mod parse;
mod ring;
mod word;

pub use parse::{default_macros, parse_definition, parse_word, twist_w, Macros};
pub use ring::GroupRingElement;
pub use word::{reverse_word, Gen, Letter, Word};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sl2::Mat2;

/// Images of the generators; inverses are cached.
#[derive(Debug, Clone, Copy)]
pub struct Assignment {
    a: Mat2,
    b: Mat2,
    a_inv: Mat2,
    b_inv: Mat2,
}

impl Assignment {
    /// Panics if either matrix is singular.
    pub fn new(a: Mat2, b: Mat2) -> Self {
        let a_inv = a.inverse().expect("generator image must be invertible");
        let b_inv = b.inverse().expect("generator image must be invertible");
        Assignment { a, b, a_inv, b_inv }
    }

    pub fn image(&self, g: Gen) -> Mat2 {
        match g {
            Gen::A => self.a,
            Gen::B => self.b,
        }
    }

    fn letter(&self, l: Letter) -> Mat2 {
        match (l.gen, l.inverse) {
            (Gen::A, false) => self.a,
            (Gen::A, true) => self.a_inv,
            (Gen::B, false) => self.b,
            (Gen::B, true) => self.b_inv,
        }
    }

    /// The assignment `g -> P rho(g) P^{-1}`.
    pub fn conjugated(&self, p: &Mat2) -> Option<Assignment> {
        Some(Assignment::new(self.a.conjugate_by(p)?, self.b.conjugate_by(p)?))
    }
}

pub fn evaluate_word(w: &Word, asg: &Assignment) -> Mat2 {
    w.letters().iter().fold(Mat2::identity(), |acc, &l| acc * asg.letter(l))
}

/// The ring homomorphism `Z[F(a,b)] -> M_2(C)` induced by `asg`.
pub fn evaluate(e: &GroupRingElement, asg: &Assignment) -> Mat2 {
    e.terms()
        .fold(Mat2::zero(), |acc, (w, c)| acc + evaluate_word(w, asg).scale(Complex64::new(c as f64, 0.0)))
}

/// `d w / d g` by the Fox rules: `dg/dg = 1`, `dg^-1/dg = -g^-1`, and
/// `d(uv)/dg = du/dg + u dv/dg`.
pub fn fox_derivative(w: &Word, g: Gen) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::empty();
    for &l in w.letters() {
        if l.gen == g {
            if l.inverse {
                let mut term = prefix.clone();
                term.push(l);
                out.add_term(term, -1);
            } else {
                out.add_term(prefix.clone(), 1);
            }
        }
        prefix.push(l);
    }
    out
}

/// `w^n a w^-n b^-1`, the relator of the twist-knot group `J(2, 2n)`.
pub fn twist_relator(n: i64) -> Word {
    let w = twist_w();
    w.pow(n).concat(&Word::gen(Gen::A)).concat(&w.pow(-n)).concat(&Word::gen(Gen::B).inverse())
}

/// Threshold on `|det(rho(g) - I)|` below which the formula is refused.
pub const PARABOLIC_DET: f64 = 1e-10;

/// Johnson's torsion of `<a, b | r>` after deleting the Fox-matrix column of
/// `removed`: `det rho(dr/d kept) / det(rho(removed) - I)`.
///
/// With `removed = B` this is `det rho(dr/da) / det(rho(b) - I)`.
pub fn johnson_torsion(relator: &Word, asg: &Assignment, removed: Gen) -> Result<Complex64> {
    let den = (asg.image(removed) - Mat2::identity()).det();
    if den.norm() < PARABOLIC_DET {
        return Err(Error::ParabolicMeridian { det: den.norm() });
    }
    let kept = removed.other();
    let num = evaluate(&fox_derivative(relator, kept), asg).det();
    Ok(num / den)
}

/// Johnson torsion for both column deletions.
#[derive(Debug, Clone, Copy)]
pub struct JohnsonPair {
    /// Column of `b` deleted: `det rho(dr/da) / det(rho(b) - I)`. Canonical.
    pub remove_b: Complex64,
    /// Column of `a` deleted: `det rho(dr/db) / det(rho(a) - I)`.
    pub remove_a: Complex64,
}

pub fn johnson_pair(relator: &Word, asg: &Assignment) -> Result<JohnsonPair> {
    Ok(JohnsonPair {
        remove_b: johnson_torsion(relator, asg, Gen::B)?,
        remove_a: johnson_torsion(relator, asg, Gen::A)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    fn random_like_assignment() -> Assignment {
        let a = Mat2::new(c(1.1, 0.2), c(0.4, -0.3), c(-0.2, 0.5), c(0.0, 0.0));
        let a = Mat2 { a22: (c(1.0, 0.0) + a.a12 * a.a21) / a.a11, ..a };
        let b = Mat2::new(c(0.7, -0.6), c(0.1, 0.9), c(0.3, 0.2), c(0.0, 0.0));
        let b = Mat2 { a22: (c(1.0, 0.0) + b.a12 * b.a21) / b.a11, ..b };
        Assignment::new(a, b)
    }

    #[test]
    fn base_rules() {
        let a = Word::gen(Gen::A);
        assert_eq!(fox_derivative(&a, Gen::A), GroupRingElement::one());
        assert!(fox_derivative(&a, Gen::B).is_zero());
        let ainv = a.inverse();
        assert_eq!(fox_derivative(&ainv, Gen::A), GroupRingElement::term(ainv.clone(), -1));
    }

    #[test]
    fn derivative_of_w() {
        // dw/da = -b a^-1 + b a^-1 b^-1
        let m = default_macros();
        let w = twist_w();
        let want = &GroupRingElement::term(parse_word("b a^-1 b^-1", &m).unwrap(), 1)
            - &GroupRingElement::word(parse_word("b a^-1", &m).unwrap());
        assert_eq!(fox_derivative(&w, Gen::A), want);
    }

    #[test]
    fn evaluation_is_linear() {
        let asg = random_like_assignment();
        assert_eq!(evaluate(&GroupRingElement::one(), &asg), Mat2::identity());
        let e = &GroupRingElement::term(Word::gen(Gen::A), 2) - &GroupRingElement::gen(Gen::B);
        let want = asg.image(Gen::A).scale(c(2.0, 0.0)) - asg.image(Gen::B);
        assert!(evaluate(&e, &asg).dist(&want) < 1e-15);
    }

    #[test]
    fn fundamental_identity() {
        let asg = random_like_assignment();
        let m = default_macros();
        let v = parse_word("a^3 b^-2 w a b^-1 (a b)^-2", &m).unwrap();
        let lhs = evaluate_word(&v, &asg) - Mat2::identity();
        let rhs = evaluate(&fox_derivative(&v, Gen::A), &asg) * (asg.image(Gen::A) - Mat2::identity())
            + evaluate(&fox_derivative(&v, Gen::B), &asg) * (asg.image(Gen::B) - Mat2::identity());
        assert!(lhs.dist(&rhs) < 1e-9);
    }

    #[test]
    fn relator_shape() {
        // the a a^-1 at the junction cancels
        assert_eq!(twist_relator(1).to_string(), "b a^-1 b^-1 a b a b^-1 b^-1");
        assert_eq!(twist_relator(2).len(), 8 + 1 + 8 + 1 - 2);
        assert_eq!(twist_relator(-1).exponent_sum(Gen::A), 1);
        assert_eq!(twist_relator(-1).exponent_sum(Gen::B), -1);
    }

    #[test]
    fn parabolic_denominator_is_refused() {
        let asg = Assignment::new(Mat2::real(1.0, 1.0, 0.0, 1.0), Mat2::real(1.0, 0.0, -2.0, 1.0));
        let r = twist_relator(1);
        assert!(matches!(johnson_torsion(&r, &asg, Gen::B), Err(Error::ParabolicMeridian { .. })));
    }
}
