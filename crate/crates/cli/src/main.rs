use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use freenorm::expr;
use freenorm::fockrep::PowerOptions;
use freenorm::report::Report;
use freenorm::suites::{self, Suite};
use freenorm::vncheck::{SampleMode, VnConfig};
use freenorm::{Alphabet, CMatrix, Error, Poly, Word};
use freenorm::{GroupWord, MonoidWord};

#[derive(Parser)]
#[command(
    name = "freenorm",
    version,
    about = "Norms in free group algebras and non-commutative disk algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Group,
    Monoid,
}

#[derive(Subcommand)]
enum Command {
    /// Certified lower bound for the operator norm of a polynomial.
    Norm {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = 1)]
        level: usize,
        /// Scalar polynomial; with --matrix-coeffs it is added as `I ⊗ p`.
        #[arg(long, required_unless_present = "matrix_coeffs")]
        expr: Option<String>,
        /// JSON object mapping word strings to row-major matrices of `[re, im]`.
        #[arg(long)]
        matrix_coeffs: Option<PathBuf>,
        #[arg(long, default_value_t = PowerOptions::default().seed)]
        seed: u64,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Check the von Neumann inequality on random row contractions.
    Vn {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Rescale every tuple onto the boundary of the row ball.
        #[arg(long)]
        boundary: bool,
        /// Also estimate the disk algebra norm at this radius.
        #[arg(long)]
        estimate_radius: Option<usize>,
    },
    /// Compare the disk algebra norm with the group algebra norm of a positive polynomial.
    CompareRemark {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 8)]
        radius: usize,
        /// Number of generators; defaults to the largest one used.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = PowerOptions::default().seed)]
        seed: u64,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite '{s}' (expected one of {})", names.join(", "))
    })
}

enum Failure {
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn read_matrix_coeffs<W: Word>(
    path: &Path,
    alphabet: &Alphabet,
    level: usize,
) -> Result<Poly<W>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let raw: BTreeMap<String, Vec<Vec<[f64; 2]>>> = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let mut terms = Vec::with_capacity(raw.len());
    for (key, rows) in raw {
        let word = expr::parse::<W>(&key, alphabet)?;
        let mut it = word.terms();
        let w = match (it.next(), it.next()) {
            (Some((w, a)), None) if (a[(0, 0)] - Complex64::new(1.0, 0.0)).norm() == 0.0 => {
                w.clone()
            }
            _ => {
                return Err(Failure::Usage(format!(
                    "matrix key '{key}' is not a single word"
                )))
            }
        };
        if rows.len() != level || rows.iter().any(|r| r.len() != level) {
            return Err(Failure::Usage(format!(
                "matrix for '{key}' is not {level}x{level}"
            )));
        }
        let m = CMatrix::from_fn(level, level, |i, j| {
            Complex64::new(rows[i][j][0], rows[i][j][1])
        });
        terms.push((w, m));
    }
    Ok(Poly::from_terms(alphabet.clone(), level, terms)?)
}

fn norm<W: Word>(
    k: u32,
    radius: usize,
    level: usize,
    text: Option<&str>,
    coeffs: Option<&Path>,
    seed: u64,
) -> Result<Report, Failure> {
    let al = Alphabet::plain(k);
    let mut p = Poly::<W>::zero(al.clone(), level);
    if let Some(path) = coeffs {
        p = read_matrix_coeffs(path, &al, level)?;
    }
    if let Some(t) = text {
        let q = expr::parse::<W>(t, &al)?;
        let q = q.left_matrix(&CMatrix::identity(level, level))?;
        p = p.add(&q)?;
    } else if coeffs.is_none() {
        return Err(Failure::Usage(
            "either --expr or --matrix-coeffs is required".into(),
        ));
    }
    let label = text.map(String::from).unwrap_or_else(|| p.to_string());
    let opts = PowerOptions {
        seed,
        ..Default::default()
    };
    Ok(suites::norm_report(&label, &p, radius, &opts)?)
}

/// Number of plain generators an expression needs.
fn generators_needed(text: &str) -> Result<u32, Failure> {
    for k in 1..=26 {
        if expr::parse_monoid(text, &Alphabet::plain(k)).is_ok() {
            return Ok(k);
        }
    }
    Err(Failure::Usage(
        expr::parse_monoid(text, &Alphabet::plain(26))
            .unwrap_err()
            .to_string(),
    ))
}

fn execute(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::Norm {
            mode,
            k,
            radius,
            level,
            expr,
            matrix_coeffs,
            seed,
        } => {
            if level == 0 {
                return Err(Failure::Usage("--level must be at least 1".into()));
            }
            let (t, f) = (expr.as_deref(), matrix_coeffs.as_deref());
            match mode {
                ModeArg::Group => norm::<GroupWord>(k, radius, level, t, f, seed),
                ModeArg::Monoid => norm::<MonoidWord>(k, radius, level, t, f, seed),
            }
        }
        Command::Verify { suite, seed } => Ok(suites::run(suite, seed)?),
        Command::Vn {
            expr,
            k,
            dim,
            trials,
            seed,
            boundary,
            estimate_radius,
        } => {
            let p = expr::parse_monoid(&expr, &Alphabet::plain(k))?;
            let mode = if boundary {
                SampleMode::Boundary
            } else {
                SampleMode::Strict
            };
            let cfg = VnConfig {
                dim,
                trials,
                seed,
                mode,
                estimate_radius,
            };
            Ok(suites::vn_report(&expr, &p, k as usize, &cfg)?)
        }
        Command::CompareRemark {
            expr,
            radius,
            k,
            seed,
        } => {
            let k = match k {
                Some(k) => k,
                None => generators_needed(&expr)?,
            };
            let p = expr::parse_monoid(&expr, &Alphabet::plain(k))?;
            let opts = PowerOptions {
                seed,
                ..Default::default()
            };
            Ok(suites::compare_remark(&expr, &p, radius, &opts)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(report) => {
            // A closed pipe (e.g. `| head`) is not an error of the run.
            let _ = writeln!(std::io::stdout().lock(), "{}", report.to_json());
            for a in report.failures() {
                eprintln!("assertion failed [{}]: {}", a.tag, a.name);
            }
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
