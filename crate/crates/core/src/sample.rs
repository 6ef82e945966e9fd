//! Seeded random draws for the identity suite, tests and benches.
//!
//! Every draw is a pure function of `(seed, stream)`, so trial `i` sees the
//! same numbers whether trials run sequentially or in parallel.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fox::{Gen, Letter, Word};
use crate::riley::{riley_roots, RileyPoint, RootOptions};
use crate::sl2::Mat2;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniform in angle, log-uniform in radius over `[r_min, r_max]`.
pub fn complex_in_annulus<R: Rng>(rng: &mut R, r_min: f64, r_max: f64) -> Complex64 {
    let r = (rng.gen_range(r_min.ln()..=r_max.ln())).exp();
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, theta)
}

pub fn complex_in_box<R: Rng>(rng: &mut R, half_width: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-half_width..=half_width), rng.gen_range(-half_width..=half_width))
}

/// A random SL2 matrix with determinant exactly 1 up to rounding.
fn raw_sl2<R: Rng>(rng: &mut R) -> Mat2 {
    loop {
        let a = Complex64::new(1.0, 0.0) + complex_in_box(rng, 0.5);
        let b = complex_in_box(rng, 0.8);
        let c = complex_in_box(rng, 0.8);
        if a.norm() > 0.3 {
            return Mat2::new(a, b, c, (1.0 + b * c) / a);
        }
    }
}

/// `P diag(l, 1/l) P^-1` with `|l|` in `[0.85, 1.15]`: generic SL2 matrices
/// whose powers up to about 25 stay well scaled.
pub fn sl2<R: Rng>(rng: &mut R) -> Mat2 {
    let l = complex_in_annulus(rng, 0.85, 1.15);
    diag_conj(rng, l)
}

/// Like [`sl2`] but with trace within about `eps` of 2.
pub fn sl2_near_parabolic<R: Rng>(rng: &mut R, eps: f64) -> Mat2 {
    // tr = 2 cosh(h) ~ 2 + h^2
    let h = complex_in_annulus(rng, 0.2 * eps.sqrt(), eps.sqrt());
    diag_conj(rng, h.exp())
}

fn diag_conj<R: Rng>(rng: &mut R, l: Complex64) -> Mat2 {
    let p = raw_sl2(rng);
    let zero = Complex64::new(0.0, 0.0);
    let d = Mat2::new(l, zero, zero, l.inv());
    p * d * p.adjugate()
}

/// A meridian eigenvalue with `x = s + 1/s` kept away from `0` and `+-2`.
pub fn meridian_s<R: Rng>(rng: &mut R) -> Complex64 {
    loop {
        let s = complex_in_annulus(rng, 0.6, 1.6);
        let x = s + s.inv();
        if (x - 2.0).norm() > 0.25 && (x + 2.0).norm() > 0.25 && x.norm() > 0.25 {
            return s;
        }
    }
}

/// One nonabelian Riley point for `J(2, 2n)` from a random `s` and a random
/// root over it.
pub fn riley_point<R: Rng>(rng: &mut R, n: i64) -> RileyPoint {
    loop {
        let s = meridian_s(rng);
        let Ok(roots) = riley_roots(n, s, &RootOptions::default()) else {
            continue;
        };
        if roots.points.is_empty() {
            continue;
        }
        let i = rng.gen_range(0..roots.points.len());
        return roots.points[i];
    }
}

/// A freely reduced word of length at most `max_len`.
pub fn word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| {
        let gen = if rng.gen_bool(0.5) { Gen::A } else { Gen::B };
        Letter::new(gen, rng.gen_bool(0.5))
    }))
}
