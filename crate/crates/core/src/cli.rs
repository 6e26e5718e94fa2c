//! Command-line front end. Exit codes: 0 success, 1 property failure,
//! 2 input error, 3 domain error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::correlations::analyze;
use crate::error::Error;
use crate::quantum::{parse_state_json, random_density, state_to_json, Side};
use crate::rra::{self, linspace, sweep_to_csv};
use crate::verify::{render_table, run_suite, Tolerances, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "superdiscord",
    version,
    about = "Discord and weak-measurement super discord of two-qubit states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute I, C, D and D_w for a state file and write a JSON report.
    Analyze(AnalyzeArgs),
    /// Sweep the assisted-discrimination super discord over (c, x) into CSV.
    #[command(name = "rra-sweep")]
    RraSweep(SweepArgs),
    /// Run the seeded property suites and print a pass/fail table.
    Verify(VerifyArgs),
    /// Write a seeded Ginibre two-qubit state file.
    Random(RandomArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub state: PathBuf,
    /// Measurement strength; must be nonzero.
    #[arg(long = "x", default_value_t = 1.0, allow_hyphen_values = true)]
    pub x: f64,
    /// Measured qubit.
    #[arg(long, default_value = "B")]
    pub side: Side,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = rra::DEFAULT_C_RANGE.0, allow_hyphen_values = true)]
    pub c_min: f64,
    #[arg(long, default_value_t = rra::DEFAULT_C_RANGE.1, allow_hyphen_values = true)]
    pub c_max: f64,
    #[arg(long, default_value_t = rra::DEFAULT_C_STEPS)]
    pub c_steps: usize,
    #[arg(long, default_value_t = rra::DEFAULT_X_RANGE.0, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = rra::DEFAULT_X_RANGE.1, allow_hyphen_values = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = rra::DEFAULT_X_STEPS)]
    pub x_steps: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Harness self-test: make one tolerance impossible to meet.
    #[arg(long, hide = true)]
    pub corrupt_tolerance: bool,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            code
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Analyze(a) => cmd_analyze(&a.state, a.x, a.side, &a.out),
        Command::RraSweep(s) => cmd_rra_sweep(&s),
        Command::Verify(v) => cmd_verify(v.seed, v.trials, v.corrupt_tolerance),
        Command::Random(r) => cmd_random(r.seed, &r.out),
    }
}

fn fail(code: i32, msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    code
}

fn domain_or_input(e: &Error) -> i32 {
    match e {
        Error::ZeroStrength
        | Error::NonFiniteStrength(_)
        | Error::NoConvergence(_)
        | Error::NonFiniteObjective { .. }
        | Error::PhiDependence(_) => EXIT_DOMAIN,
        _ => EXIT_INPUT,
    }
}

pub fn cmd_analyze(state_path: &Path, x: f64, side: Side, out_path: &Path) -> i32 {
    let text = match fs::read_to_string(state_path) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_INPUT, format_args!("{}: {e}", state_path.display())),
    };
    let rho = match parse_state_json(&text) {
        Ok(r) if r.dim() == 4 => r,
        Ok(r) => return fail(EXIT_INPUT, Error::BadDim(r.dim())),
        Err(e) => return fail(EXIT_INPUT, format_args!("{}: {e}", state_path.display())),
    };
    let report = match analyze(&rho, x, side) {
        Ok(r) => r,
        Err(e) => return fail(domain_or_input(&e), e),
    };
    match fs::write(out_path, report.to_json()) {
        Ok(()) => EXIT_OK,
        Err(e) => fail(EXIT_INPUT, format_args!("{}: {e}", out_path.display())),
    }
}

fn check_sweep_args(a: &SweepArgs) -> Result<(), String> {
    if !(0.0 <= a.c_min && a.c_min <= a.c_max && a.c_max <= 1.0) {
        return Err(format!("need 0 <= c-min <= c-max <= 1, got [{}, {}]", a.c_min, a.c_max));
    }
    if !(0.0 < a.x_min && a.x_min <= a.x_max && a.x_max.is_finite()) {
        return Err(format!("need 0 < x-min <= x-max, got [{}, {}]", a.x_min, a.x_max));
    }
    if a.c_steps < 2 || a.x_steps < 2 {
        return Err(format!("steps must be >= 2, got c-steps={} x-steps={}", a.c_steps, a.x_steps));
    }
    Ok(())
}

pub fn cmd_rra_sweep(args: &SweepArgs) -> i32 {
    if let Err(msg) = check_sweep_args(args) {
        return fail(EXIT_INPUT, msg);
    }
    let c_grid = linspace(args.c_min, args.c_max, args.c_steps);
    let x_grid = linspace(args.x_min, args.x_max, args.x_steps);
    let records = match rra::sweep(&c_grid, &x_grid) {
        Ok(r) => r,
        Err(e) => return fail(domain_or_input(&e), e),
    };
    match fs::write(&args.out, sweep_to_csv(&records)) {
        Ok(()) => EXIT_OK,
        Err(e) => fail(EXIT_INPUT, format_args!("{}: {e}", args.out.display())),
    }
}

pub fn cmd_verify(seed: u64, trials: usize, corrupt_tolerance: bool) -> i32 {
    if trials < 1 {
        return fail(EXIT_INPUT, "trials must be >= 1");
    }
    let mut cfg = VerifyConfig::new(seed, trials);
    if corrupt_tolerance {
        cfg.tolerances = Tolerances::corrupted();
    }
    let outcomes = match run_suite(&cfg) {
        Ok(o) => o,
        Err(e) => return fail(EXIT_DOMAIN, e),
    };
    print!("{}", render_table(&outcomes));
    if outcomes.iter().all(|o| o.passed()) {
        EXIT_OK
    } else {
        EXIT_PROPERTY_FAILURE
    }
}

pub fn cmd_random(seed: u64, out_path: &Path) -> i32 {
    match fs::write(out_path, state_to_json(&random_density(seed))) {
        Ok(()) => EXIT_OK,
        Err(e) => fail(EXIT_INPUT, format_args!("{}: {e}", out_path.display())),
    }
}
