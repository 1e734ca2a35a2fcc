//! The `sylvester` command line.
//!
//! Exit codes: 0 ok, 1 malformed input, 2 state not real, 3 half-integer
//! degree where an integer is needed, 4 grid too small, 5 verification failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::degree::Degree;
use crate::error::Error;
use crate::harmonics::{eval_function, SphereGrid, SpinState};
use crate::io::{FileError, InputFile, MultipoleFile, StateFile};
use crate::multipole::{extract_multipoles, reconstruct};
use crate::sphere::EulerRotation;
use crate::verify::{run_suite, VerifyConfig, MAX_VERIFY_DEGREE};
use crate::wigner::rotate_state;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MALFORMED: u8 = 1;
pub const EXIT_NOT_REAL: u8 = 2;
pub const EXIT_HALF_INTEGER: u8 = 3;
pub const EXIT_GRID: u8 = 4;
pub const EXIT_VERIFY: u8 = 5;

/// Real-valuedness threshold for `eval` output.
const EVAL_REAL_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "sylvester", version, about = "Maxwell multipoles and Majorana constellations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract the multipole directions of a real state file.
    Decompose {
        input: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Rebuild a state file from a multipole file.
    Reconstruct {
        input: PathBuf,
        #[command(flatten)]
        grid: GridArg,
        #[command(flatten)]
        out: Output,
    },
    /// Rotate a state by z-y-z Euler angles (radians).
    Rotate {
        input: PathBuf,
        #[arg(long, num_args = 3, value_names = ["ALPHA", "BETA", "GAMMA"], allow_negative_numbers = true, required = true)]
        euler: Vec<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the seeded property suite and print a JSON summary.
    Verify {
        /// `j` as an integer or `n/2`.
        #[arg(long)]
        degree: Degree,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Negate one Majorana factor; the suite must then fail.
        #[arg(long, hide = true)]
        corrupt_mu: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Sample a state or multipole file on a grid as CSV.
    Eval {
        input: PathBuf,
        #[command(flatten)]
        grid: GridArg,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Args)]
pub struct GridArg {
    /// Quadrature grid size; defaults to (2j+2, 4j+2).
    #[arg(long, num_args = 2, value_names = ["N_THETA", "N_PHI"])]
    grid: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; standard output when omitted.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

/// Error with a message and the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotRealState { .. } | Error::PairingFailure { .. } => EXIT_NOT_REAL,
            Error::NonIntegerDegree { .. } => EXIT_HALF_INTEGER,
            Error::GridTooSmall { .. } => EXIT_GRID,
            Error::InvalidIndex(_) | Error::NullState | Error::InvalidInput(_) => EXIT_MALFORMED,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        CliError::new(EXIT_MALFORMED, e.to_string())
    }
}

fn grid_for(arg: &GridArg, j: u32) -> Result<SphereGrid, CliError> {
    match &arg.grid {
        None => Ok(SphereGrid::auto(j)),
        Some(v) => Ok(SphereGrid::new(v[0], v[1])?),
    }
}

fn emit(out: &Output, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            CliError::new(EXIT_MALFORMED, format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs one command and returns its exit code.
pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Decompose { input, tol, out } => decompose(&input, tol, &out),
        Command::Reconstruct { input, grid, out } => {
            let file = MultipoleFile::read(&input)?;
            let g = grid_for(&grid, file.multipoles.degree())?;
            let state = reconstruct(&file.multipoles, &g)?;
            emit(&out, &StateFile::new(state).to_string_pretty())?;
            Ok(EXIT_OK)
        }
        Command::Rotate { input, euler, out } => {
            let file = StateFile::read(&input)?;
            if euler.iter().any(|x| !x.is_finite()) {
                return Err(CliError::new(EXIT_MALFORMED, "Euler angles must be finite"));
            }
            let r = EulerRotation::new(euler[0], euler[1], euler[2]);
            let rotated = StateFile {
                state: rotate_state(&file.state, &r),
                metadata: file.metadata,
            };
            emit(&out, &rotated.to_string_pretty())?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            degree,
            trials,
            seed,
            corrupt_mu,
            out,
        } => {
            if degree.two_j() > 2 * MAX_VERIFY_DEGREE {
                return Err(CliError::new(
                    EXIT_MALFORMED,
                    format!("verify supports j <= {MAX_VERIFY_DEGREE}, got {degree}"),
                ));
            }
            let mut cfg = VerifyConfig::new(degree, trials, seed);
            if corrupt_mu {
                cfg = cfg.with_corrupted_factor();
            }
            let report = run_suite(&cfg);
            emit(&out, &crate::io::to_pretty_string(&report.to_json()))?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Eval { input, grid, out } => {
            let (state, real) = match InputFile::read(&input)? {
                InputFile::State(f) => {
                    f.state.degree().integer_value()?;
                    let real = f.state.reality_residual() <= EVAL_REAL_TOL;
                    (f.state, real)
                }
                InputFile::Multipoles(f) => {
                    let g = SphereGrid::auto(f.multipoles.degree());
                    (reconstruct(&f.multipoles, &g)?, true)
                }
            };
            let j = state.degree().integer_value()?;
            let g = grid_for(&grid, j)?;
            emit(&out, &eval_csv(&state, &g, real)?)?;
            Ok(EXIT_OK)
        }
    }
}

fn decompose(input: &Path, tol: f64, out: &Output) -> Result<u8, CliError> {
    let file = StateFile::read(input)?;
    if !(tol > 0.0) {
        return Err(CliError::new(EXIT_MALFORMED, "--tol must be positive"));
    }
    let s = &file.state;
    let j = s.degree().integer_value()?;
    let mp = extract_multipoles(s, tol)?;
    let back = reconstruct(&mp, &SphereGrid::auto(j))?;
    let result = MultipoleFile::new(mp)
        .with_residual("reality", s.reality_residual())
        .with_residual("roundtrip", back.relative_distance(s));
    emit(out, &result.to_string_pretty())?;
    Ok(EXIT_OK)
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV rows `theta,phi,value`, θ outer. Complex functions get `value_re,value_im`.
pub fn eval_csv(s: &SpinState, grid: &SphereGrid, real: bool) -> Result<String, Error> {
    let mut text = String::new();
    text.push_str(if real {
        "theta,phi,value\n"
    } else {
        "theta,phi,value_re,value_im\n"
    });
    for (t, p) in grid.nodes() {
        let v: Complex64 = eval_function(s, t, p)?;
        if real {
            let _ = writeln!(text, "{},{},{}", fmt17(t), fmt17(p), fmt17(v.re));
        } else {
            let _ = writeln!(text, "{},{},{},{}", fmt17(t), fmt17(p), fmt17(v.re), fmt17(v.im));
        }
    }
    Ok(text)
}

/// Entry point shared by the binary: parses arguments, runs, reports errors.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
