//! Command-line front end. All file and process side effects live here.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | analysis finished (any verdict) |
//! | 1 | internal error |
//! | 2 | unreadable or invalid input |
//! | 3 | generator is identically zero |
//! | 4 | `K` is not contained in `L` |
//! | 5 | unknown verification suite |
//! | 6 | output could not be written |
//! | 7 | a verification check failed |

mod input;
mod report;
mod reproduce;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::group::{is_sublattice, FiniteAbelianGroup, Lattice};
use crate::spectra::Spectrum;
use crate::suites::{run_suite, SuiteOptions, SUITES};
use crate::{Error, DEFAULT_TOL};

pub use input::parse_psi;
pub use report::{group_report, line_csv, line_report, GroupReport, LineReport};
pub use reproduce::{reproduce_worked_examples, ReproduceSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_EMPTY_GENERATOR: i32 = 3;
pub const EXIT_NOT_NESTED: i32 = 4;
pub const EXIT_UNKNOWN_SUITE: i32 = 5;
pub const EXIT_WRITE: i32 = 6;
pub const EXIT_CHECK_FAILED: i32 = 7;

#[derive(Debug, Parser)]
#[command(
    name = "zakinv",
    version,
    about = "Zak-transform extra-invariance checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide (1/N)Z-invariance of a generator given by its spectrum.
    Line {
        #[arg(long, value_name = "FILE")]
        spectrum: PathBuf,
        #[arg(long = "N", value_name = "INT")]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Time point for the CSV curves.
        #[arg(long, default_value_t = 0.0)]
        x0: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Decide L-invariance of <psi>_K on a finite abelian group.
    Group {
        #[arg(long, value_name = "SPEC")]
        group: String,
        #[arg(long = "lattice-k", value_name = "SPEC")]
        lattice_k: String,
        #[arg(long = "lattice-l", value_name = "SPEC")]
        lattice_l: String,
        #[arg(long, value_name = "FILE")]
        psi: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run a verification suite: identities, line-equivalence, agreement,
    /// line-oracle, or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        /// Random spectra in the line equivalence sweep.
        #[arg(long, default_value_t = 500)]
        spectra: usize,
        #[arg(long = "max-order", default_value_t = 64)]
        max_order: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Recompute the two worked line examples and write their tables.
    ReproducePaper {
        #[arg(long, value_name = "DIR", default_value = "zakinv-examples")]
        out: PathBuf,
    },
}

/// Validated command, ready to dispatch.
#[derive(Debug)]
enum RunConfig {
    Line {
        spectrum: Spectrum,
        n: u32,
        tol: f64,
        x0: f64,
        format: Format,
        out: Option<PathBuf>,
    },
    Group {
        k: Lattice,
        l: Lattice,
        psi: crate::group::GroupSignal,
        tol: f64,
        out: Option<PathBuf>,
    },
    Verify {
        suite: String,
        opts: SuiteOptions,
        out: Option<PathBuf>,
    },
    Reproduce {
        out: PathBuf,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::NonRationalEndpoint(_)
            | Error::GridMismatch(_)
            | Error::GroupTooLarge(_)
            | Error::InvalidArgument(_)
            | Error::NotInLattice(_) => EXIT_PARSE,
            Error::EmptyGenerator => EXIT_EMPTY_GENERATOR,
            Error::NotNested => EXIT_NOT_NESTED,
            Error::NotInvariant | Error::TruncationTooSmall { .. } => EXIT_INTERNAL,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn write_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_WRITE,
        message: format!("cannot write {}: {e}", path.display()),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn check_tol(tol: f64) -> Result<f64, Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Error::InvalidArgument(format!("--tol must be positive (got {tol})")).into())
    }
}

fn validate(cmd: Command) -> Result<RunConfig, Failure> {
    Ok(match cmd {
        Command::Line {
            spectrum,
            n,
            tol,
            x0,
            format,
            out,
        } => {
            let tol = check_tol(tol)?;
            if n < 2 {
                return Err(
                    Error::InvalidArgument(format!("--N must be at least 2 (got {n})")).into(),
                );
            }
            if !x0.is_finite() {
                return Err(Error::InvalidArgument("--x0 must be finite".into()).into());
            }
            let spectrum = Spectrum::from_json(&read_input(&spectrum)?)?;
            RunConfig::Line {
                spectrum,
                n,
                tol,
                x0,
                format,
                out,
            }
        }
        Command::Group {
            group,
            lattice_k,
            lattice_l,
            psi,
            tol,
            out,
        } => {
            let tol = check_tol(tol)?;
            let g = FiniteAbelianGroup::parse(&group)?;
            let k = Lattice::parse(&g, &lattice_k)?;
            let l = Lattice::parse(&g, &lattice_l)?;
            let psi = parse_psi(&read_input(&psi)?, &g)?;
            if !is_sublattice(&k, &l) {
                return Err(Error::NotNested.into());
            }
            RunConfig::Group {
                k,
                l,
                psi,
                tol,
                out,
            }
        }
        Command::Verify {
            suite,
            seed,
            trials,
            spectra,
            max_order,
            tol,
            out,
        } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Failure {
                    code: EXIT_UNKNOWN_SUITE,
                    message: format!(
                        "unknown suite {suite:?}; expected one of {}",
                        SUITES.join(", ")
                    ),
                });
            }
            if trials == 0 {
                return Err(Error::InvalidArgument("--trials must be at least 1".into()).into());
            }
            let opts = SuiteOptions {
                seed,
                trials,
                spectra,
                max_order,
                tol: check_tol(tol)?,
            };
            RunConfig::Verify { suite, opts, out }
        }
        Command::ReproducePaper { out } => RunConfig::Reproduce { out },
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| write_failure(parent, e))?;
            }
            std::fs::write(path, text).map_err(|e| write_failure(path, e))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| write_failure(Path::new("<stdout>"), e))
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Failure {
            code: EXIT_INTERNAL,
            message: e.to_string(),
        })
}

fn dispatch(config: RunConfig) -> Result<i32, Failure> {
    match config {
        RunConfig::Line {
            spectrum,
            n,
            tol,
            x0,
            format,
            out,
        } => {
            let text = match format {
                Format::Json => to_json(&line_report(&spectrum, n, tol)?)?,
                Format::Csv => line_csv(&spectrum, n, x0),
            };
            emit(out.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        RunConfig::Group {
            k,
            l,
            psi,
            tol,
            out,
        } => {
            let report = group_report(&psi, &k, &l, tol)?;
            emit(out.as_deref(), &to_json(&report)?)?;
            Ok(if report.oracle_agrees {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        RunConfig::Verify { suite, opts, out } => {
            let report = run_suite(&suite, &opts)?;
            emit(out.as_deref(), &to_json(&report)?)?;
            Ok(if report.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        RunConfig::Reproduce { out } => {
            let summary =
                reproduce_worked_examples(&out).map_err(|(path, e)| write_failure(&path, e))?;
            emit(None, &to_json(&summary)?)?;
            Ok(if summary.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("ZAKINV_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.trim().parse().map_err(|_| Failure {
        code: EXIT_PARSE,
        message: format!("ZAKINV_THREADS must be a thread count (got {value:?})"),
    })?;
    // a second initialisation in the same process is harmless
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

/// Parses `args` (including the program name), runs the command, and returns
/// the process exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = configure_threads()
        .and_then(|_| validate(cli.command))
        .and_then(dispatch);
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("zakinv: {}", f.message);
            f.code
        }
    }
}
