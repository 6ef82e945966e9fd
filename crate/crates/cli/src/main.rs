//! `torsionlab`: Riley roots, torsion of twist-knot complements and their
//! Dehn surgeries, the identity suite, and formula sweeps.
//!
//! Exit codes: 0 success, 1 numeric or verification failure, 2 usage error,
//! 3 surgery found no representation.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use torsionlab::par::{self, Execution};
use torsionlab::Complex64;

use report::OutputFormat;

#[derive(Parser, Debug)]
#[command(name = "torsionlab", version, about = "Torsion of twist knots and their Dehn surgeries")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Twist parameter of J(2, 2n); must be nonzero
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub n: Option<i64>,

    /// Meridian eigenvalue as "re,im"
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub s: Option<Complex64>,

    /// Tolerance for pass/fail comparisons
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,

    /// Seed for randomized starts and trials
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Run batches on one thread
    #[arg(long, global = true)]
    pub sequential: bool,
}

impl Common {
    pub fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Roots u of the Riley polynomial over a meridian eigenvalue s
    RileyRoots,
    /// Torsion of the knot complement at every Riley root over s
    Torsion(TorsionArgs),
    /// Solve for representations extending over p/q surgery
    Surgery(SurgeryArgs),
    /// Run the randomized identity suite
    Verify(VerifyArgs),
    /// Sweep real x = s + 1/s and tabulate torsions
    Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct TorsionArgs {
    /// Also evaluate the Fox-calculus oracle and compare
    #[arg(long)]
    pub verify: bool,
    /// Relator word for the oracle instead of the twist-knot relator
    #[arg(long)]
    pub relator: Option<String>,
    /// Macro definition `name=word`, usable in --relator; repeatable
    #[arg(long = "define")]
    pub defines: Vec<String>,
}

#[derive(Args, Debug)]
pub struct SurgeryArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub q: i64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Trials per check
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Run only the named check; repeatable
    #[arg(long = "check")]
    pub checks: Vec<String>,
    /// Knot parameters "lo:hi" (zero skipped); defaults to -5:5
    #[arg(long, allow_hyphen_values = true)]
    pub n_range: Option<String>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// "start:end:count" sweep of real x
    #[arg(long)]
    pub sweep_x: String,
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').collect();
    let [re, im] = parts.as_slice() else {
        return Err(format!("expected \"re,im\", got `{text}`"));
    };
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part `{re}`"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part `{im}`"))?;
    if !(re.is_finite() && im.is_finite()) {
        return Err("complex value must be finite".into());
    }
    Ok(Complex64::new(re, im))
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

/// Report plus the exit code it should produce.
pub struct Outcome {
    pub report: report::Report,
    pub code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match par::threads_from_env() {
        Ok(t) => par::init_threads(t),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = outcome.report.write(cli.common.output, &mut stdout).and_then(|_| stdout.flush())
            {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
