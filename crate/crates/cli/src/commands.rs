use torsionlab::fox::{
    default_macros, evaluate_word, johnson_torsion, parse_definition, parse_word, Gen, Word,
};
use torsionlab::riley::{riley_roots, RileyRoots, RootOptions};
use torsionlab::surgery::{
    solve_surgery_reps, torsion_surgery, torsion_surgery_dehn, trace_longitude, SolveOptions,
};
use torsionlab::table::{parse_sweep, sweep_x};
use torsionlab::torsion::{assignment, torsion_complement, torsion_fox, PARABOLIC_X};
use torsionlab::verify::{checks, run_suite, VerifyOptions};
use torsionlab::{Complex64, Error, Mat2, RileyPoint, Slope};

use crate::report::{Field, Record, Report};
use crate::{Cli, Command, Failure, Outcome, SurgeryArgs, TableArgs, TorsionArgs, VerifyArgs};

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let c = &cli.common;
    if !(c.tol.is_finite() && c.tol > 0.0) {
        return Err(Failure::usage(format!("--tol must be positive, got {}", c.tol)));
    }
    match &cli.command {
        Command::RileyRoots => cmd_riley_roots(cli),
        Command::Torsion(args) => cmd_torsion(cli, args),
        Command::Surgery(args) => cmd_surgery(cli, args),
        Command::Verify(args) => cmd_verify(cli, args),
        Command::Table(args) => cmd_table(cli, args),
    }
}

fn require_n(cli: &Cli) -> Result<i64, Failure> {
    match cli.common.n {
        None => Err(Failure::usage("--n is required")),
        Some(0) => Err(Failure::usage("n must be nonzero (n ≠ 0)")),
        Some(n) => Ok(n),
    }
}

fn require_s(cli: &Cli) -> Result<Complex64, Failure> {
    let s = cli.common.s.ok_or_else(|| Failure::usage("--s \"re,im\" is required"))?;
    if s.norm() == 0.0 {
        return Err(Failure::usage("s must be nonzero"));
    }
    Ok(s)
}

fn base_config(cli: &Cli) -> Record {
    let c = &cli.common;
    Record::new()
        .with("tol", c.tol)
        .with("seed", c.seed as i64)
        .with("output", c.output.name())
        .with("sequential", c.sequential)
}

fn roots_for(n: i64, s: Complex64) -> Result<RileyRoots, Failure> {
    riley_roots(n, s, &RootOptions::default()).map_err(|e| match e {
        Error::ZeroN | Error::ZeroS => Failure::usage(e.to_string()),
        other => Failure::numeric(other.to_string()),
    })
}

fn cmd_riley_roots(cli: &Cli) -> Result<Outcome, Failure> {
    let n = require_n(cli)?;
    let s = require_s(cli)?;
    let config = base_config(cli).with("n", n).with("s", s);
    let mut report = Report::new("riley-roots", config);
    let roots = roots_for(n, s)?;
    let rows = roots.points.iter().map(|p| (p, true)).chain(roots.unconverged.iter().map(|p| (p, false)));
    for (i, (pt, converged)) in rows.enumerate() {
        report.results.push(
            Record::new()
                .with("index", i)
                .with("u", pt.u)
                .with("x", pt.x())
                .with("z", pt.z())
                .with("residual", pt.residual(n))
                .with("converged", converged),
        );
    }
    report.warnings.extend(roots.notices);
    let code = if roots.unconverged.is_empty() { 0 } else { 1 };
    if code != 0 {
        report.warnings.push(format!("{} root(s) did not converge", roots.unconverged.len()));
    }
    Ok(Outcome { report, code })
}

struct Oracle {
    relator: Option<Word>,
}

impl Oracle {
    fn from_args(args: &TorsionArgs) -> Result<Self, Failure> {
        let Some(text) = &args.relator else {
            return Ok(Oracle { relator: None });
        };
        let mut macros = default_macros();
        for def in &args.defines {
            let (name, word) = parse_definition(def, &macros)
                .map_err(|e| Failure::usage(format!("--define `{def}`: {e}")))?;
            macros.insert(name, word);
        }
        let word =
            parse_word(text, &macros).map_err(|e| Failure::usage(format!("--relator `{text}`: {e}")))?;
        Ok(Oracle { relator: Some(word) })
    }

    /// Oracle torsion, plus `|rho(r) - I|` for a user relator.
    fn evaluate(&self, n: i64, pt: &RileyPoint) -> torsionlab::Result<(Complex64, Option<f64>)> {
        match &self.relator {
            None => Ok((torsion_fox(n, pt)?, None)),
            Some(r) => {
                let asg = assignment(pt)?;
                let defect = evaluate_word(r, &asg).dist(&Mat2::identity());
                Ok((johnson_torsion(r, &asg, Gen::B)?, Some(defect)))
            }
        }
    }
}

fn cmd_torsion(cli: &Cli, args: &TorsionArgs) -> Result<Outcome, Failure> {
    let n = require_n(cli)?;
    let s = require_s(cli)?;
    if !args.defines.is_empty() && args.relator.is_none() {
        return Err(Failure::usage("--define only applies together with --relator"));
    }
    let oracle = Oracle::from_args(args)?;
    let verify = args.verify || oracle.relator.is_some();
    let tol = cli.common.tol;
    let mut config = base_config(cli).with("n", n).with("s", s).with("verify", verify);
    if let Some(r) = &oracle.relator {
        config.push("relator", r.to_string());
    }
    let x = s + s.inv();
    if (x - 2.0).norm() <= PARABOLIC_X {
        return Err(Failure::numeric(format!(
            "torsion formula hypothesis violated: x = tr rho(a) = {x} must differ from 2"
        )));
    }
    let mut report = Report::new("torsion", config);
    let roots = roots_for(n, s)?;
    report.warnings.extend(roots.notices);
    let mut code = if roots.unconverged.is_empty() { 0 } else { 1 };
    if code != 0 {
        report
            .warnings
            .push(format!("{} root(s) did not converge and were skipped", roots.unconverged.len()));
    }
    for (i, pt) in roots.points.iter().enumerate() {
        let mut row = Record::new().with("index", i).with("u", pt.u).with("x", pt.x());
        let tau = match torsion_complement(n, pt) {
            Ok(t) => Some(t),
            Err(e) => {
                report.warnings.push(format!("root {i}: {e}"));
                code = 1;
                None
            }
        };
        row.push("tau", tau);
        row.push("method", "closed_form");
        if verify {
            let (oracle_tau, defect) = match oracle.evaluate(n, pt) {
                Ok((t, d)) => (Some(t), d),
                Err(e) => {
                    report.warnings.push(format!("root {i}: oracle: {e}"));
                    (None, None)
                }
            };
            let diff = tau.zip(oracle_tau).map(|(a, b)| (a - b).norm());
            let pass = match (tau, diff) {
                (Some(t), Some(d)) => d <= tol * (1.0 + t.norm()),
                _ => false,
            };
            if !pass {
                code = 1;
            }
            row.push("tau_oracle", oracle_tau);
            row.push("diff", diff);
            if oracle.relator.is_some() {
                row.push("relator_defect", defect);
            }
            row.push("pass", pass);
        }
        report.results.push(row);
    }
    Ok(Outcome { report, code })
}

fn cmd_surgery(cli: &Cli, args: &SurgeryArgs) -> Result<Outcome, Failure> {
    let n = require_n(cli)?;
    let slope = Slope::new(args.p, args.q).map_err(|e| Failure::usage(e.to_string()))?;
    let c = &cli.common;
    let config = base_config(cli)
        .with("n", n)
        .with("slope", Field::Object(Record::new().with("p", args.p).with("q", args.q)));
    let opts = SolveOptions { extension_tol: c.tol, seed: c.seed, exec: c.exec(), ..SolveOptions::default() };
    let solution = solve_surgery_reps(n, slope, &opts).map_err(|e| Failure::numeric(e.to_string()))?;
    let mut report = Report::new("surgery", config);
    report.warnings.extend(solution.notices);
    let mut code = 0;
    for (i, rep) in solution.reps.iter().enumerate() {
        let pt = &rep.point;
        let mut keep = |label: &str, r: torsionlab::Result<Complex64>| match r {
            Ok(v) => Some(v),
            Err(e) => {
                report.warnings.push(format!("rep {i}: {label}: {e}"));
                None
            }
        };
        let tr = keep("longitude trace", trace_longitude(pt));
        let tau_e = keep("complement torsion", torsion_complement(n, pt));
        let tau_m = keep("surgery torsion", torsion_surgery(n, pt));
        let tau_d = keep("surgery torsion (Dehn)", torsion_surgery_dehn(n, pt));
        let diff = tau_m.zip(tau_d).map(|(a, b)| (a - b).norm());
        // reps outside the formula's hypotheses carry a warning, not a verdict
        let agree = tau_m.zip(diff).map(|(t, d)| d <= c.tol * (1.0 + t.norm()));
        if agree == Some(false) {
            code = 1;
        }
        report.results.push(
            Record::new()
                .with("index", i)
                .with("s", pt.s)
                .with("u", pt.u)
                .with("x", pt.x())
                .with("extension_residual", rep.extension_residual)
                .with("trace_longitude", tr)
                .with("tau_complement", tau_e)
                .with("tau_surgery", tau_m)
                .with("tau_surgery_dehn", tau_d)
                .with("diff", diff)
                .with("agree", agree.map_or(Field::Null, Field::Bool)),
        );
    }
    if solution.reps.is_empty() {
        code = 3;
    }
    Ok(Outcome { report, code })
}

fn parse_n_range(text: &str) -> Result<Vec<i64>, Failure> {
    let bad = || Failure::usage(format!("--n-range expects \"lo:hi\", got `{text}`"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    let ns: Vec<i64> = (lo..=hi).filter(|&n| n != 0).collect();
    if ns.is_empty() {
        return Err(Failure::usage(format!("--n-range `{text}` contains no nonzero n")));
    }
    Ok(ns)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<Outcome, Failure> {
    let c = &cli.common;
    if args.trials == 0 {
        return Err(Failure::usage("--trials must be positive"));
    }
    let n_values = match (&args.n_range, c.n) {
        (Some(_), Some(_)) => return Err(Failure::usage("use either --n or --n-range")),
        (Some(r), None) => parse_n_range(r)?,
        (None, Some(0)) => return Err(Failure::usage("n must be nonzero (n ≠ 0)")),
        (None, Some(n)) => vec![n],
        (None, None) => VerifyOptions::default().n_values,
    };
    let known: Vec<&str> = checks().iter().map(|k| k.name).collect();
    if let Some(bad) = args.checks.iter().find(|name| !known.contains(&name.as_str())) {
        return Err(Failure::usage(format!("unknown check `{bad}`; available: {}", known.join(", "))));
    }
    let opts =
        VerifyOptions { trials: args.trials, seed: c.seed, n_values: n_values.clone(), exec: c.exec() };
    let config = base_config(cli)
        .with("trials", args.trials)
        .with("n_values", Field::List(n_values.into_iter().map(Field::Int).collect()));
    let mut report = Report::new("verify", config);
    let only = (!args.checks.is_empty()).then_some(args.checks.as_slice());
    let results = run_suite(&opts, only);
    let mut code = 0;
    for r in results {
        if !r.passed() {
            code = 1;
            report.warnings.push(format!("{} failed {} of {} trials", r.name, r.failures, r.trials));
        }
        report.results.push(
            Record::new()
                .with("check", r.name)
                .with("description", r.description)
                .with("trials", r.trials)
                .with("failures", r.failures)
                .with("worst_ratio", r.worst)
                .with("passed", r.passed())
                .with("first_failure", r.first_failure),
        );
    }
    Ok(Outcome { report, code })
}

fn cmd_table(cli: &Cli, args: &TableArgs) -> Result<Outcome, Failure> {
    let n = require_n(cli)?;
    let (start, end, count) = parse_sweep(&args.sweep_x).map_err(Failure::usage)?;
    let c = &cli.common;
    let config = base_config(cli).with("n", n).with("sweep_x", args.sweep_x.as_str());
    let mut report = Report::new("table", config);
    let mut code = 0;
    for row in sweep_x(n, start, end, count, c.exec()) {
        let ref_diff = row.tau_surgery.zip(row.tau_surgery_reference).map(|(a, b)| (a - b).norm());
        if let (Some(d), Some(r)) = (ref_diff, row.tau_surgery_reference) {
            if d > c.tol * (1.0 + r.norm()) {
                code = 1;
                report.warnings.push(format!(
                    "row {} (x = {}): surgery torsion differs from reference by {d:e}",
                    row.index, row.x
                ));
            }
        }
        report.results.push(
            Record::new()
                .with("index", row.index)
                .with("x", row.x)
                .with("s", row.point.s)
                .with("u", row.point.u)
                .with("tau_complement", row.tau_complement)
                .with("trace_longitude", row.trace_longitude)
                .with("tau_surgery", row.tau_surgery)
                .with("tau_surgery_dehn", row.tau_surgery_dehn)
                .with("tau_surgery_reference", row.tau_surgery_reference)
                .with("reference_diff", ref_diff)
                .with("error", row.error),
        );
    }
    Ok(Outcome { report, code })
}
