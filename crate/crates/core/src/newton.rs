//! Damped Newton iteration for square systems `F: C^2 -> C^2` of holomorphic
//! functions, with a central-difference Jacobian.

use num_complex::Complex64;

pub type Vec2 = [Complex64; 2];

#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    pub max_iter: usize,
    /// Converged once `max |F_i|` drops below this.
    pub tol: f64,
    pub max_halvings: usize,
    /// Relative finite-difference step.
    pub fd_step: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { max_iter: 100, tol: 1e-12, max_halvings: 20, fd_step: 1e-7 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NewtonStatus {
    Converged,
    /// No damped step reduced the residual; usually rounding-level stagnation.
    Stalled,
    SingularJacobian,
    MaxIterations,
    NonFinite,
}

#[derive(Debug, Clone, Copy)]
pub struct NewtonOutcome {
    pub x: Vec2,
    pub residual: f64,
    pub iterations: usize,
    pub status: NewtonStatus,
}

fn norm(f: &Vec2) -> f64 {
    let m = f[0].norm().max(f[1].norm());
    if m.is_nan() {
        f64::INFINITY
    } else {
        m
    }
}

/// Central-difference Jacobian, `J[i][j] = dF_i / dx_j`.
pub fn jacobian<F: Fn(Vec2) -> Vec2>(f: &F, x: Vec2, rel_step: f64) -> [[Complex64; 2]; 2] {
    let mut jac = [[Complex64::new(0.0, 0.0); 2]; 2];
    for j in 0..2 {
        let h = rel_step * x[j].norm().max(1.0);
        let mut xp = x;
        let mut xm = x;
        xp[j] += h;
        xm[j] -= h;
        let (fp, fm) = (f(xp), f(xm));
        for i in 0..2 {
            jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}

fn solve2(jac: &[[Complex64; 2]; 2], rhs: &Vec2) -> Option<Vec2> {
    let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    let scale = (jac[0][0] * jac[1][1]).norm() + (jac[0][1] * jac[1][0]).norm();
    if det.norm().is_nan() || det.norm() <= 1e-14 * scale {
        return None;
    }
    Some([(rhs[0] * jac[1][1] - rhs[1] * jac[0][1]) / det, (jac[0][0] * rhs[1] - jac[1][0] * rhs[0]) / det])
}

pub fn damped_newton<F: Fn(Vec2) -> Vec2>(f: F, x0: Vec2, opts: &NewtonOptions) -> NewtonOutcome {
    let mut x = x0;
    let mut fx = f(x);
    let mut res = norm(&fx);
    if !res.is_finite() {
        return NewtonOutcome { x, residual: res, iterations: 0, status: NewtonStatus::NonFinite };
    }
    for iter in 0..opts.max_iter {
        if res < opts.tol {
            return NewtonOutcome { x, residual: res, iterations: iter, status: NewtonStatus::Converged };
        }
        let jac = jacobian(&f, x, opts.fd_step);
        let Some(step) = solve2(&jac, &fx) else {
            return NewtonOutcome {
                x,
                residual: res,
                iterations: iter,
                status: NewtonStatus::SingularJacobian,
            };
        };
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..=opts.max_halvings {
            let trial = [x[0] - step[0] * lambda, x[1] - step[1] * lambda];
            let ft = f(trial);
            let rt = norm(&ft);
            if rt < res {
                x = trial;
                fx = ft;
                res = rt;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            let status = if res < opts.tol { NewtonStatus::Converged } else { NewtonStatus::Stalled };
            return NewtonOutcome { x, residual: res, iterations: iter, status };
        }
    }
    let status = if res < opts.tol { NewtonStatus::Converged } else { NewtonStatus::MaxIterations };
    NewtonOutcome { x, residual: res, iterations: opts.max_iter, status }
}
