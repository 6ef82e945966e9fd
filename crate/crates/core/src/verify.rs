//! Randomized identity suite.
//!
//! Every check pits a closed form against an independent computation
//! (repeated products, literal sums, word evaluation, Fox derivatives) on
//! seeded random inputs. A trial reports `error / allowed`; it fails at a
//! ratio of 1 or more.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::chebyshev::{det_sum_ratio, p_cheb, s_cheb};
use crate::fox::{
    evaluate, evaluate_word, fox_derivative, parse_word, twist_relator, twist_w, Assignment, Gen, Macros,
};
use crate::par::{map_indexed, Execution};
use crate::riley::{rho_a, rho_b, rho_w, rho_w_pow, riley_eval, riley_poly_in_u, riley_terms, RileyPoint};
use crate::sample;
use crate::sl2::Mat2;
use crate::surgery::{
    longitude_factor, longitude_word, rho_longitude, torsion_surgery, torsion_surgery_dehn, trace_longitude,
};
use crate::torsion::{
    assignment, delta_matrix, omega_det, omega_matrix, omega_trace, torsion_complement, torsion_fox,
    torsion_fox_pair,
};

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    /// Knot parameters cycled through by checks that need Riley points.
    pub n_values: Vec<i64>,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            trials: 200,
            seed: 0,
            n_values: (-5..=5).filter(|&n| n != 0).collect(),
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub description: &'static str,
    pub trials: usize,
    pub failures: usize,
    /// Largest `error / allowed` seen.
    pub worst: f64,
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.trials > 0 && self.failures == 0
    }
}

type TrialFn = fn(&mut ChaCha8Rng, &Ctx) -> Result<f64, String>;

pub struct Check {
    pub name: &'static str,
    pub description: &'static str,
    run: TrialFn,
}

struct Ctx {
    n: i64,
}

fn ratio(err: f64, allowed: f64) -> f64 {
    if err.is_nan() {
        f64::INFINITY
    } else {
        err / allowed
    }
}

fn rel(got: Complex64, want: Complex64, tol: f64) -> f64 {
    ratio((got - want).norm(), tol * (1.0 + want.norm()))
}

fn rel_mat(got: &Mat2, want: &Mat2, tol: f64) -> f64 {
    ratio(got.dist(want), tol * (1.0 + want.norm()))
}

fn fmt_err(e: crate::Error) -> String {
    e.to_string()
}

fn z_sample(rng: &mut ChaCha8Rng) -> Complex64 {
    sample::complex_in_annulus(rng, 0.1, 10.0)
}

fn cheb_cayley(rng: &mut ChaCha8Rng, _: &Ctx) -> Result<f64, String> {
    let z = z_sample(rng);
    let mut worst: f64 = 0.0;
    for k in -25..=25 {
        let (a, b) = (s_cheb(k, z), s_cheb(k - 1, z));
        let lhs = a * a - z * a * b + b * b;
        worst = worst.max(ratio((lhs - 1.0).norm(), 1e-10 * (1.0 + a.norm_sqr())));
    }
    Ok(worst)
}

fn cheb_partial_sum(rng: &mut ChaCha8Rng, _: &Ctx) -> Result<f64, String> {
    let z = loop {
        let z = z_sample(rng);
        if (z - 2.0).norm() > 1e-3 {
            break z;
        }
    };
    let mut worst: f64 = 0.0;
    for k in 0..=25 {
        let quotient = (s_cheb(k + 1, z) - s_cheb(k, z) - 1.0) / (z - 2.0);
        worst = worst.max(ratio((p_cheb(k, z) - quotient).norm(), 1e-9 * quotient.norm().max(1.0)));
    }
    Ok(worst)
}

fn cheb_partial_quadratic(rng: &mut ChaCha8Rng, _: &Ctx) -> Result<f64, String> {
    let z = z_sample(rng);
    let mut worst: f64 = 0.0;
    for k in 1..=25 {
        let (p, q) = (p_cheb(k, z), p_cheb(k - 1, z));
        let terms = [p * p, q * q, z * p * q];
        let lhs = terms[0] + terms[1] - terms[2];
        let scale = 1.0 + terms.iter().map(|t| t.norm()).sum::<f64>();
        worst = worst.max(ratio((lhs - (p + q)).norm(), 1e-9 * scale));
    }
    Ok(worst)
}

fn cheb_reflection(rng: &mut ChaCha8Rng, _: &Ctx) -> Result<f64, String> {
    let z = z_sample(rng);
    let mut worst: f64 = 0.0;
    for k in 0..=25 {
        let (a, b) = (s_cheb(-k, z), -s_cheb(k - 2, z));
        worst = worst.max(ratio((a - b).norm(), 1e-12 * (1.0 + b.norm())));
    }
    Ok(worst)
}

fn brute_pow(v: &Mat2, k: i64) -> Mat2 {
    let step = if k >= 0 { *v } else { v.adjugate() };
    (0..k.unsigned_abs()).fold(Mat2::identity(), |acc, _| acc * step)
}

fn sl2_power(rng: &mut ChaCha8Rng, _: &Ctx) -> Result<f64, String> {
    let v = sample::sl2(rng);
    let k = rng.gen_range(-20i64..=20);
    let pk = v.pow(k).map_err(fmt_err)?;
    let back = v.pow(-k).map_err(fmt_err)?;
    let (p1, p2) = (v.pow(k - 1).map_err(fmt_err)?, v.pow(k - 2).map_err(fmt_err)?);
    let recurrence = pk - p1.scale(v.trace()) + p2;
    Ok(rel_mat(&pk, &brute_pow(&v, k), 1e-10)
        .max(ratio((pk * back).dist(&Mat2::identity()), 1e-10))
        .max(ratio(recurrence.norm(), 1e-10 * (1.0 + pk.norm()))))
}

fn sl2_geom_sum(rng: &mut ChaCha8Rng, _: &Ctx) -> Result<f64, String> {
    let v = sample::sl2(rng);
    let k = rng.gen_range(0u32..=20);
    let mut acc = Mat2::zero();
    let mut term = Mat2::identity();
    for _ in 0..=k {
        acc += term;
        term = term * v;
    }
    Ok(rel_mat(&v.geom_sum(k).map_err(fmt_err)?, &acc, 1e-10))
}

fn sl2_det_geom_sum(rng: &mut ChaCha8Rng, _: &Ctx) -> Result<f64, String> {
    let v = if rng.gen_bool(0.5) { sample::sl2(rng) } else { sample::sl2_near_parabolic(rng, 1e-6) };
    let k = rng.gen_range(0i64..=20);
    // literal sum, then its determinant
    let mut acc = Mat2::zero();
    let mut term = Mat2::identity();
    for _ in 0..=k {
        acc += term;
        term = term * v;
    }
    Ok(rel(acc.det(), det_sum_ratio(k, v.trace()), 1e-9))
}

fn riley_point(rng: &mut ChaCha8Rng, ctx: &Ctx) -> RileyPoint {
    sample::riley_point(rng, ctx.n)
}

fn riley_relation(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<f64, String> {
    let n = ctx.n;
    let pt = riley_point(rng, ctx);
    let a = rho_a(pt.s).map_err(fmt_err)?;
    let b = rho_b(pt.s, pt.u).map_err(fmt_err)?;
    // only products, no closed form for w^n
    let wn = brute_pow(&(b * a.adjugate() * b.adjugate() * a), n);
    let at_root = ratio((wn * a).dist(&(b * wn)), 1e-9 * (1.0 + wn.norm() * a.norm()));

    // off the variety: antidiagonal defect [[0, phi], [u phi, 0]]
    let u = pt.u + sample::complex_in_box(rng, 1.0);
    let b = rho_b(pt.s, u).map_err(fmt_err)?;
    let wn = rho_w_pow(n, pt.s, u).map_err(fmt_err)?;
    let d = wn * a - b * wn;
    let scale = 1.0 + wn.norm() * a.norm();
    let phi = riley_eval(n, pt.s, u);
    let shape = ratio(d.a11.norm().max(d.a22.norm()), 1e-10 * scale)
        .max(rel(d.a12, phi, 1e-10 * scale))
        .max(rel(d.a21, u * d.a12, 1e-10 * scale));
    Ok(at_root.max(shape))
}

fn riley_expansion(rng: &mut ChaCha8Rng, _: &Ctx) -> Result<f64, String> {
    let n = *[-6i64, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6].get(rng.gen_range(0..12)).unwrap_or(&1);
    let s = sample::meridian_s(rng);
    let u = sample::complex_in_box(rng, 2.0);
    let phi = riley_poly_in_u(n, s).map_err(fmt_err)?;
    let (lead, rest) = riley_terms(n, s, u);
    // both sides cancel heavily; compare at the size of their terms
    let mut scale = 1.0 + lead.norm() + rest.norm();
    let mut power = 1.0;
    for c in phi.coeffs() {
        scale += c.norm() * power;
        power *= u.norm();
    }
    Ok(ratio((phi.eval(u) - (lead - rest)).norm(), 1e-10 * scale))
}

fn riley_s_squared(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<f64, String> {
    let pt = riley_point(rng, ctx);
    let (s2, u) = (pt.s2_sum(), pt.u);
    let sn1 = s_cheb(ctx.n - 1, pt.z());
    let lhs = sn1 * sn1 * (u + 2.0 - s2) * (u * u - (s2 - 2.0) * (u + 1.0));
    Ok(ratio((lhs - 1.0).norm(), 1e-8))
}

fn riley_s_shift(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<f64, String> {
    let pt = riley_point(rng, ctx);
    let z = pt.z();
    let want = (pt.s2_sum() - 1.0 - pt.u) * s_cheb(ctx.n - 1, z);
    Ok(rel(s_cheb(ctx.n - 2, z), want, 1e-8))
}

fn longitude_trace(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<f64, String> {
    let pt = riley_point(rng, ctx);
    let m = rho_longitude(ctx.n, &pt).map_err(fmt_err)?;
    let closed = trace_longitude(&pt).map_err(fmt_err)?;
    let (s2, u) = (pt.s2_sum(), pt.u);
    let sn1 = s_cheb(ctx.n - 1, pt.z());
    let middle = 2.0 + u * u * (s2 + 2.0) * (s2 - 2.0 - u) * sn1 * sn1;
    let x = pt.x();
    let gap_from_x = x * x / longitude_factor(&pt);
    Ok(rel(closed, m.trace(), 1e-8).max(rel(middle, m.trace(), 1e-8)).max(rel(
        gap_from_x,
        closed - 2.0,
        1e-9,
    )))
}

fn longitude_matrix(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<f64, String> {
    let pt = riley_point(rng, ctx);
    let m = rho_longitude(ctx.n, &pt).map_err(fmt_err)?;
    let asg = assignment(&pt).map_err(fmt_err)?;
    let oracle = evaluate_word(&longitude_word(ctx.n), &asg);
    let a = rho_a(pt.s).map_err(fmt_err)?;
    let scale = 1.0 + m.norm() * a.norm();
    Ok(rel_mat(&m, &oracle, 1e-10)
        .max(ratio((m * a).dist(&(a * m)), 1e-9 * scale))
        .max(ratio((m.det() - 1.0).norm(), 1e-9 * (1.0 + m.norm() * m.norm()))))
}

fn omega_det_check(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<f64, String> {
    let pt = riley_point(rng, ctx);
    let om = omega_matrix(ctx.n, &pt).map_err(fmt_err)?;
    Ok(rel(omega_det(ctx.n, &pt), om.det(), 1e-9))
}

fn omega_trace_check(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<f64, String> {
    let pt = riley_point(rng, ctx);
    let om = omega_matrix(ctx.n, &pt).map_err(fmt_err)?;
    Ok(rel(omega_trace(ctx.n, &pt), om.trace(), 1e-9))
}

fn omega_sum(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<f64, String> {
    let pt = riley_point(rng, ctx);
    let om = omega_matrix(ctx.n, &pt).map_err(fmt_err)?;
    let full = (Mat2::identity() + om).det();
    Ok(rel(1.0 + omega_det(ctx.n, &pt) + omega_trace(ctx.n, &pt), full, 1e-9))
}

fn random_assignment(rng: &mut ChaCha8Rng) -> Assignment {
    Assignment::new(sample::sl2(rng), sample::sl2(rng))
}

fn fox_identity(rng: &mut ChaCha8Rng, _: &Ctx) -> Result<f64, String> {
    let asg = random_assignment(rng);
    let v = sample::word(rng, 30);
    let id = Mat2::identity();
    let lhs = evaluate_word(&v, &asg) - id;
    let rhs = evaluate(&fox_derivative(&v, Gen::A), &asg) * (asg.image(Gen::A) - id)
        + evaluate(&fox_derivative(&v, Gen::B), &asg) * (asg.image(Gen::B) - id);
    // rounding grows with the products being summed
    let mut scale = 1.0 + evaluate_word(&v, &asg).norm();
    for g in [Gen::A, Gen::B] {
        let step = (asg.image(g) - id).norm();
        for (word, coef) in fox_derivative(&v, g).terms() {
            scale += coef.unsigned_abs() as f64 * evaluate_word(word, &asg).norm() * step;
        }
    }
    Ok(ratio(lhs.dist(&rhs), 1e-9 * scale))
}

fn fox_product_rule(rng: &mut ChaCha8Rng, _: &Ctx) -> Result<f64, String> {
    let (u, v) = (sample::word(rng, 15), sample::word(rng, 15));
    let uv = u.concat(&v);
    for g in [Gen::A, Gen::B] {
        let lhs = fox_derivative(&uv, g);
        let rhs = &fox_derivative(&u, g) + &fox_derivative(&v, g).left_mul(&u);
        if lhs != rhs {
            return Err(format!("product rule fails for u = {u}, v = {v}"));
        }
    }
    Ok(0.0)
}

fn fox_parser_roundtrip(rng: &mut ChaCha8Rng, _: &Ctx) -> Result<f64, String> {
    // a random expression with macros, parentheses and exponents
    let mut macros = Macros::new();
    macros.insert("w".into(), twist_w());
    let mut text = String::new();
    for _ in 0..rng.gen_range(1..6) {
        let atom = match rng.gen_range(0..4) {
            0 => "a".to_string(),
            1 => "b".to_string(),
            2 => "w".to_string(),
            _ => format!("({})", sample::word(rng, 6)),
        };
        let exp = rng.gen_range(-3i64..=3);
        text.push_str(&format!("{atom}^{exp} "));
    }
    let w = parse_word(&text, &macros).map_err(|e| format!("{text}: {e}"))?;
    let again = parse_word(&w.to_string(), &Macros::new()).map_err(|e| format!("{w}: {e}"))?;
    if again != w {
        return Err(format!("`{text}` reparsed differently"));
    }
    Ok(0.0)
}

/// `rho(w^n (1 + (1 - a) Delta a^-1 (1 - b)))`.
fn closed_fox_expression(n: i64, pt: &RileyPoint) -> crate::Result<Mat2> {
    let a = rho_a(pt.s)?;
    let b = rho_b(pt.s, pt.u)?;
    let id = Mat2::identity();
    let delta = delta_matrix(n, pt)?;
    Ok(rho_w(pt.s, pt.u)?.pow(n)? * (id + (id - a) * delta * a.adjugate() * (id - b)))
}

fn fox_closed_expression(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<f64, String> {
    let pt = riley_point(rng, ctx);
    let asg = assignment(&pt).map_err(fmt_err)?;
    let symbolic = evaluate(&fox_derivative(&twist_relator(ctx.n), Gen::A), &asg);
    let closed = closed_fox_expression(ctx.n, &pt).map_err(fmt_err)?;
    Ok(rel_mat(&symbolic, &closed, 1e-9))
}

fn fox_columns(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<f64, String> {
    let pt = riley_point(rng, ctx);
    let pair = torsion_fox_pair(ctx.n, &pt).map_err(fmt_err)?;
    let p = sample::sl2(rng);
    let asg = assignment(&pt).map_err(fmt_err)?.conjugated(&p).ok_or("singular conjugator")?;
    let gauged = crate::fox::johnson_torsion(&twist_relator(ctx.n), &asg, Gen::B).map_err(fmt_err)?;
    Ok(rel(pair.remove_a, pair.remove_b, 1e-8).max(rel(gauged, pair.remove_b, 1e-8)))
}

fn torsion_vs_fox(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<f64, String> {
    let pt = riley_point(rng, ctx);
    let closed = torsion_complement(ctx.n, &pt).map_err(fmt_err)?;
    let fox = torsion_fox(ctx.n, &pt).map_err(fmt_err)?;
    Ok(rel(closed, fox, 1e-8))
}

fn torsion_det_identity(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<f64, String> {
    let pt = riley_point(rng, ctx);
    let closed = torsion_complement(ctx.n, &pt).map_err(fmt_err)?;
    let asg = assignment(&pt).map_err(fmt_err)?;
    let det = evaluate(&fox_derivative(&twist_relator(ctx.n), Gen::A), &asg).det();
    Ok(rel(closed * (2.0 - pt.x()), det, 1e-8))
}

fn surgery_dehn(rng: &mut ChaCha8Rng, ctx: &Ctx) -> Result<f64, String> {
    let pt = riley_point(rng, ctx);
    let closed = torsion_surgery(ctx.n, &pt).map_err(fmt_err)?;
    let dehn = torsion_surgery_dehn(ctx.n, &pt).map_err(fmt_err)?;
    Ok(rel(closed, dehn, 1e-8))
}

macro_rules! check {
    ($name:literal, $desc:literal, $f:ident) => {
        Check { name: $name, description: $desc, run: $f }
    };
}

/// All checks, in reporting order.
pub fn checks() -> Vec<Check> {
    vec![
        check!("cheb_cayley", "S_k^2 - z S_k S_{k-1} + S_{k-1}^2 = 1", cheb_cayley),
        check!("cheb_partial_sum", "P_k = (S_{k+1} - S_k - 1)/(z - 2)", cheb_partial_sum),
        check!(
            "cheb_partial_quadratic",
            "P_k^2 + P_{k-1}^2 - z P_k P_{k-1} = P_k + P_{k-1}",
            cheb_partial_quadratic
        ),
        check!("cheb_reflection", "S_{-k} = -S_{k-2}", cheb_reflection),
        check!("sl2_power", "V^k = S_k I - S_{k-1} V^-1 against repeated products", sl2_power),
        check!("sl2_geom_sum", "sum V^i = P_k I - P_{k-1} V^-1 against literal sums", sl2_geom_sum),
        check!("sl2_det_geom_sum", "det(sum V^i) = (S_{k+1} - S_{k-1} - 2)/(z - 2)", sl2_det_geom_sum),
        check!(
            "riley_relation",
            "rho(w^n a) = rho(b w^n) at roots; antidiagonal defect elsewhere",
            riley_relation
        ),
        check!("riley_expansion", "expanded phi(s, u) agrees with direct evaluation", riley_expansion),
        check!(
            "riley_s_squared",
            "S_{n-1}^2 (u + 2 - s^2 - s^-2)(u^2 - (s^2 + s^-2 - 2)(u + 1)) = 1",
            riley_s_squared
        ),
        check!("riley_s_shift", "S_{n-2} = (s^2 + s^-2 - 1 - u) S_{n-1} at roots", riley_s_shift),
        check!("longitude_trace", "tr rho(lambda) closed forms against the matrix trace", longitude_trace),
        check!(
            "longitude_matrix",
            "rho(lambda) against word evaluation; commutes with rho(a)",
            longitude_matrix
        ),
        check!("omega_det", "det Omega = (2 - x)^2 (S_n - S_{n-2} - 2)/(z - 2)", omega_det_check),
        check!("omega_trace", "tr Omega = x (2 - x) S_{n-1} - 1", omega_trace_check),
        check!("omega_sum", "det(I + Omega) = 1 + det Omega + tr Omega", omega_sum),
        check!("fox_identity", "rho(v) - I = rho(dv/da)(rho(a) - I) + rho(dv/db)(rho(b) - I)", fox_identity),
        check!("fox_product_rule", "d(uv) = du + u dv symbolically", fox_product_rule),
        check!("fox_parser_roundtrip", "formatted words reparse identically", fox_parser_roundtrip),
        check!(
            "fox_closed_expression",
            "rho(dr/da) = rho(w^n (1 + (1 - a) Delta a^-1 (1 - b)))",
            fox_closed_expression
        ),
        check!("fox_columns", "both column deletions and conjugated assignments agree", fox_columns),
        check!("torsion_vs_fox", "closed-form torsion equals Johnson's determinant", torsion_vs_fox),
        check!("torsion_det_identity", "tau (2 - x) = det rho(dr/da)", torsion_det_identity),
        check!("surgery_dehn", "surgery closed form equals tau / (2 - tr rho(lambda))", surgery_dehn),
    ]
}

fn n_values_for(name: &str, opts: &VerifyOptions) -> Vec<i64> {
    let base = opts.n_values.iter().copied().filter(|&n| n != 0);
    match name {
        "surgery_dehn" => base.filter(|n| n.abs() <= 4).collect(),
        _ => base.collect(),
    }
}

pub fn run_check(index: usize, check: &Check, opts: &VerifyOptions) -> CheckResult {
    let ns = n_values_for(check.name, opts);
    let ns = if ns.is_empty() { vec![1] } else { ns };
    let seed = opts.seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let outcomes = map_indexed(opts.trials, opts.exec, |i| {
        let mut rng = sample::rng(seed, i as u64);
        let ctx = Ctx { n: ns[i % ns.len()] };
        (ctx.n, (check.run)(&mut rng, &ctx))
    });
    let mut result = CheckResult {
        name: check.name,
        description: check.description,
        trials: outcomes.len(),
        failures: 0,
        worst: 0.0,
        first_failure: None,
    };
    for (i, (n, out)) in outcomes.into_iter().enumerate() {
        let failure = match out {
            Ok(r) if r < 1.0 => {
                result.worst = result.worst.max(r);
                None
            }
            Ok(r) => {
                result.worst = result.worst.max(r);
                Some(format!("trial {i} (n = {n}): error/tolerance = {r:e}"))
            }
            Err(e) => Some(format!("trial {i} (n = {n}): {e}")),
        };
        if let Some(msg) = failure {
            result.failures += 1;
            result.first_failure.get_or_insert(msg);
        }
    }
    result
}

/// Runs every check, or only those whose names appear in `only`.
pub fn run_suite(opts: &VerifyOptions, only: Option<&[String]>) -> Vec<CheckResult> {
    checks()
        .iter()
        .enumerate()
        .filter(|(_, c)| only.is_none_or(|names| names.iter().any(|n| n == c.name)))
        .map(|(i, c)| run_check(i, c, opts))
        .collect()
}
