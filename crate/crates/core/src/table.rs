//! Sweeps of the meridian trace `x` along the real axis.

use num_complex::Complex64;

use crate::par::{map_indexed, Execution};
use crate::riley::{riley_roots, RileyPoint, RootOptions};
use crate::surgery::{rho_longitude, torsion_surgery, torsion_surgery_dehn};
use crate::torsion::torsion_complement;

/// One Riley point of a sweep and the invariants evaluated there.
#[derive(Debug, Clone)]
pub struct TableRow {
    /// Sweep position.
    pub index: usize,
    pub x: f64,
    pub point: RileyPoint,
    pub tau_complement: Option<Complex64>,
    pub trace_longitude: Complex64,
    pub tau_surgery: Option<Complex64>,
    pub tau_surgery_dehn: Option<Complex64>,
    /// The known closed form in `x` alone, for the trefoil and figure-eight.
    pub tau_surgery_reference: Option<Complex64>,
    pub error: Option<String>,
}

/// `(start, end, count)` parsed from `start:end:count`.
pub fn parse_sweep(text: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, k] = parts.as_slice() else {
        return Err(format!("sweep must look like start:end:count, got `{text}`"));
    };
    let start: f64 = a.trim().parse().map_err(|_| format!("bad sweep start `{a}`"))?;
    let end: f64 = b.trim().parse().map_err(|_| format!("bad sweep end `{b}`"))?;
    let count: usize = k.trim().parse().map_err(|_| format!("bad sweep count `{k}`"))?;
    if count == 0 {
        return Err("sweep count must be positive".into());
    }
    Ok((start, end, count))
}

/// Sweep positions: `count` evenly spaced values including both ends.
pub fn sweep_points(start: f64, end: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    (0..count).map(|i| start + (end - start) * i as f64 / (count - 1) as f64).collect()
}

/// The root `s` of `s + 1/s = x` with `|s| >= 1`.
pub fn s_from_x(x: Complex64) -> Complex64 {
    let r = (x * x - 4.0).sqrt();
    let (s1, s2) = ((x + r) / 2.0, (x - r) / 2.0);
    if s1.norm() >= s2.norm() {
        s1
    } else {
        s2
    }
}

/// `2 / (x^2 (x^2 - 3)^2)` for `n = 1` and `(2x - 2) / (x^2 (x^2 - 5))` for
/// `n = -1`; `None` otherwise.
pub fn reference_surgery_torsion(n: i64, x: Complex64) -> Option<Complex64> {
    let x2 = x * x;
    match n {
        1 => Some(2.0 / (x2 * (x2 - 3.0) * (x2 - 3.0))),
        -1 => Some((2.0 * x - 2.0) / (x2 * (x2 - 5.0))),
        _ => None,
    }
}

pub fn sweep_x(n: i64, start: f64, end: f64, count: usize, exec: Execution) -> Vec<TableRow> {
    let xs = sweep_points(start, end, count);
    let per_x = map_indexed(xs.len(), exec, |i| rows_at(n, i, xs[i]));
    per_x.into_iter().flatten().collect()
}

fn rows_at(n: i64, index: usize, x: f64) -> Vec<TableRow> {
    let xc = Complex64::new(x, 0.0);
    let s = s_from_x(xc);
    let roots = match riley_roots(n, s, &RootOptions::default()) {
        Ok(r) => r,
        Err(e) => {
            return vec![TableRow {
                index,
                x,
                point: RileyPoint { s, u: Complex64::new(f64::NAN, f64::NAN) },
                tau_complement: None,
                trace_longitude: Complex64::new(f64::NAN, f64::NAN),
                tau_surgery: None,
                tau_surgery_dehn: None,
                tau_surgery_reference: reference_surgery_torsion(n, xc),
                error: Some(e.to_string()),
            }]
        }
    };
    roots
        .points
        .iter()
        .map(|pt| {
            let mut errors = Vec::new();
            let mut keep = |r: crate::Result<Complex64>| match r {
                Ok(v) => Some(v),
                Err(e) => {
                    errors.push(e.to_string());
                    None
                }
            };
            let tau_complement = keep(torsion_complement(n, pt));
            let tau_surgery = keep(torsion_surgery(n, pt));
            let tau_surgery_dehn = keep(torsion_surgery_dehn(n, pt));
            let trace_longitude =
                rho_longitude(n, pt).map(|m| m.trace()).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
            errors.dedup();
            TableRow {
                index,
                x,
                point: *pt,
                tau_complement,
                trace_longitude,
                tau_surgery,
                tau_surgery_dehn,
                tau_surgery_reference: reference_surgery_torsion(n, xc),
                error: (!errors.is_empty()).then(|| errors.join("; ")),
            }
        })
        .collect()
}
