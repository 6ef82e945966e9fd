//! Univariate polynomials with complex coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Coefficients in ascending degree. An empty coefficient list is the zero
/// polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyC {
    coeffs: Vec<Complex64>,
}

/// Result of a simultaneous root iteration.
#[derive(Debug, Clone)]
pub struct DkRoots {
    pub roots: Vec<Complex64>,
    pub iterations: usize,
    pub converged: bool,
}

impl PolyC {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = PolyC { coeffs };
        p.strip_exact_zeros();
        p
    }

    pub fn zero() -> Self {
        PolyC { coeffs: Vec::new() }
    }

    pub fn constant(v: Complex64) -> Self {
        PolyC::new(vec![v])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn strip_exact_zeros(&mut self) {
        while self.coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            self.coeffs.pop();
        }
    }

    /// Drops leading coefficients whose modulus is below `rel` times the
    /// largest coefficient modulus.
    pub fn trimmed(&self, rel: f64) -> PolyC {
        let cutoff = rel * self.max_coeff_norm();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.norm() <= cutoff) {
            coeffs.pop();
        }
        PolyC { coeffs }
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> PolyC {
        PolyC::new(self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect())
    }

    pub fn scale(&self, k: Complex64) -> PolyC {
        PolyC::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    /// All roots by Durand-Kerner (Weierstrass) iteration.
    ///
    /// Starts sit on a circle of radius `1 + max |c_i / c_lead|` (a bound on
    /// every root modulus), at angles offset from the real axis so that real
    /// polynomials do not trap the iteration on a symmetric configuration.
    pub fn roots_durand_kerner(&self, max_iter: usize, tol: f64) -> DkRoots {
        let Some(deg) = self.degree().filter(|&d| d > 0) else {
            return DkRoots { roots: Vec::new(), iterations: 0, converged: true };
        };
        let lead = self.coeffs[deg];
        let monic: Vec<Complex64> = self.coeffs.iter().map(|&c| c / lead).collect();
        let monic = PolyC { coeffs: monic };
        if deg == 1 {
            return DkRoots { roots: vec![-monic.coeffs[0]], iterations: 0, converged: true };
        }

        let radius = 1.0 + monic.coeffs[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> = (0..deg)
            .map(|k| {
                let theta = std::f64::consts::TAU * k as f64 / deg as f64 + 0.4;
                Complex64::from_polar(radius * (1.0 + 0.01 * k as f64), theta)
            })
            .collect();

        for iter in 1..=max_iter {
            let mut max_step: f64 = 0.0;
            for i in 0..deg {
                let zi = z[i];
                let denom = z
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(Complex64::new(1.0, 0.0), |acc, (_, &zj)| acc * (zi - zj));
                if denom == Complex64::new(0.0, 0.0) {
                    // Coincident iterates; nudge one apart.
                    z[i] += Complex64::new(1e-8, 1e-8) * (1.0 + zi.norm());
                    max_step = f64::INFINITY;
                    continue;
                }
                let step = monic.eval(zi) / denom;
                z[i] = zi - step;
                max_step = max_step.max(step.norm() / (1.0 + zi.norm()));
            }
            if max_step < tol {
                return DkRoots { roots: z, iterations: iter, converged: true };
            }
        }
        DkRoots { roots: z, iterations: max_iter, converged: false }
    }
}

impl Add for &PolyC {
    type Output = PolyC;

    fn add(self, b: &PolyC) -> PolyC {
        let n = self.coeffs.len().max(b.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        PolyC::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(zero) + b.coeffs.get(i).copied().unwrap_or(zero)
                })
                .collect(),
        )
    }
}

impl Neg for &PolyC {
    type Output = PolyC;

    fn neg(self) -> PolyC {
        PolyC::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Sub for &PolyC {
    type Output = PolyC;

    fn sub(self, b: &PolyC) -> PolyC {
        self + &(-b)
    }
}

impl Mul for &PolyC {
    type Output = PolyC;

    fn mul(self, b: &PolyC) -> PolyC {
        if self.is_zero() || b.is_zero() {
            return PolyC::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        PolyC::new(out)
    }
}
