//! Batch command-line front end: parses group, measure, representation and
//! sequence specs, dispatches to the library modules and writes one report
//! record per line as JSON or tab-separated values.

mod commands;
mod report;

pub use report::{Format, Report};

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::almostinv::AlmostInvError;
use crate::duality::DualityError;
use crate::exactalg::ExactError;
use crate::groups::GroupError;
use crate::markov::MarkovError;
use crate::reps::RepError;
use crate::zconj::ZconjError;

/// Environment variable overriding ball and order caps.
pub const CAP_ENV: &str = "BOHRGAP_CAP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("cannot write report: {0}")]
    Output(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Markov(#[from] MarkovError),
    #[error(transparent)]
    AlmostInv(#[from] AlmostInvError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Zconj(#[from] ZconjError),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Io { .. } => "IoError",
            CliError::Output(_) => "OutputError",
            CliError::Exact(e) => e.name(),
            CliError::Group(e) => e.name(),
            CliError::Rep(e) => e.name(),
            CliError::Markov(e) => e.name(),
            CliError::AlmostInv(e) => e.name(),
            CliError::Duality(e) => e.name(),
            CliError::Zconj(e) => e.name(),
        }
    }

    /// Exit status for errors: always 2.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Result of a successful run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// The verdict was negative (exit status 1).
    Negative,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Negative => 1,
        }
    }

    fn negative_if(cond: bool) -> Self {
        if cond {
            Outcome::Negative
        } else {
            Outcome::Success
        }
    }
}

/// A strictly increasing radius schedule: `a..b`, `a..b:step` (both ends
/// inclusive) or a comma-separated list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radii(pub Vec<usize>);

impl FromStr for Radii {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let bad = || format!("invalid radius schedule {text:?}");
        let t = text.trim();
        let radii: Vec<usize> = if let Some((a, rest)) = t.split_once("..") {
            let (b, step) = match rest.split_once(':') {
                Some((b, s)) => (b, s.trim().parse::<usize>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            if step == 0 || a > b {
                return Err(bad());
            }
            (a..=b).step_by(step).collect()
        } else {
            t.split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        };
        if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("radius schedule {text:?} is not strictly increasing"));
        }
        Ok(Radii(radii))
    }
}

impl fmt::Display for Radii {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

const EXIT_CODES: &str = "Exit status: 0 on success (including Inconclusive verdicts, which carry \
\"inconclusive\": true), 1 on a negative verdict as listed per subcommand, 2 on input or module \
errors, printed as `error: <Name>: <message>`.\n\nArguments naming an existing file are read from \
it; otherwise the argument text itself is parsed, with `/` separating matrix rows and `;` \
separating measure lines. The environment variable BOHRGAP_CAP sets ball and order caps unless \
--cap is given.";

/// Run configuration: one subcommand plus shared knobs.
#[derive(Parser, Clone, Debug)]
#[command(name = "bohrgap", version, about = "Spectral gaps, almost-invariant vectors, finite duality and conjugacy of Z-representations", after_help = EXIT_CODES)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    /// Seed for randomized audits.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on Cayley ball sizes and finite group orders.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Convergence tolerance for iterative solvers.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Number of random samples for audits.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Group spec: free:k, z:d or perm:n:<cycles>,…
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Measure: lazy-uniform, or lines `elem weight`.
    #[arg(long, global = true)]
    pub measure: Option<String>,
    /// Radius schedule: a..b, a..b:step or a comma list.
    #[arg(long, global = true)]
    pub radii: Option<Radii>,
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Kesten test: top eigenvalue of truncated P_μ over a radius schedule.
    #[command(after_help = "Exit 1 when the group is reported non-amenable (verdict Gap on an infinite group).")]
    Amenable {
        /// Gap threshold θ for the plateau.
        #[arg(long, default_value_t = 0.95)]
        theta: f64,
    },
    /// Truncated spectral radius sweep, or the top eigenvalue of a matrix rep.
    #[command(after_help = "Never exits 1.")]
    Spectral {
        /// Matrix rep file (`gen <name>` headers, d rows of d entries).
        #[arg(long)]
        rep: Option<String>,
    },
    /// Orthogonalize an almost-invariant sequence and tabulate defects.
    #[command(after_help = "Exit 1 if the step defect inequality fails anywhere.")]
    Orthogonalize {
        /// windows:N, basis:N, householder:N or a sequence file.
        #[arg(long)]
        sequence: String,
        /// Matrix rep for a sequence file with index labels.
        #[arg(long)]
        rep: Option<String>,
        /// Required number of outputs.
        #[arg(long)]
        target: Option<usize>,
    },
    /// Select ε_n < 2^{-n}, rescale and build the witness w.
    #[command(after_help = "Never exits 1.")]
    Witness {
        #[arg(long)]
        sequence: String,
        #[arg(long)]
        rep: Option<String>,
        /// Number of vectors to select.
        #[arg(long)]
        n: usize,
        /// Use floating point even when the input is rational.
        #[arg(long)]
        float: bool,
    },
    /// Weak-null sparsification of a sequence.
    #[command(after_help = "Never exits 1.")]
    Sparsify {
        #[arg(long)]
        sequence: String,
        #[arg(long)]
        rep: Option<String>,
        /// Comma-separated group elements; defaults to the generators.
        #[arg(long)]
        elems: Option<String>,
        /// Number of vectors to select.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        float: bool,
    },
    /// Fixed elements versus fixed characters of a finite abelian action.
    #[command(after_help = "Exit 1 if the two counts differ.")]
    Duality {
        /// Invariant factors, e.g. `abelian = 2,4,8` or `2,4,8`.
        #[arg(long)]
        abelian: String,
        /// Integer matrices, one per generator, separated by `--`.
        #[arg(long)]
        action: String,
        /// Intertwiner ξ to transport along.
        #[arg(long)]
        transport: Option<String>,
        /// Target action for the transport; defaults to `--action`.
        #[arg(long)]
        action2: Option<String>,
    },
    /// Ergodicity of a toral automorphism.
    #[command(after_help = "Exit 1 if the automorphism is not ergodic.")]
    Ergodic {
        #[arg(long)]
        matrix: String,
    },
    /// Additive conjugacy of multiplication by unit-modulus numbers.
    #[command(after_help = "Exit 1 if the numbers are not conjugate.")]
    Zconj {
        /// alg:<coeffs>:<x0,x1,y0,y1>, root:<n>:<a> or trans:<label>.
        z: String,
        w: String,
        /// Polynomial in z (coefficients, constant first) to push through Ξ.
        #[arg(long)]
        trace: Option<String>,
    },
    /// Audit ‖P_μ v‖² ≤ 1 − ½ε²μ(e)min μ on random unit vectors.
    #[command(after_help = "Exit 1 if any sample violates the bound.")]
    Audit {
        #[arg(long)]
        rep: String,
    },
}

impl RunConfig {
    /// The effective cap: `--cap`, then `BOHRGAP_CAP`, then `default`.
    pub fn cap_or(&self, default: usize) -> Result<usize, CliError> {
        if let Some(c) = self.cap {
            return Ok(c);
        }
        match std::env::var(CAP_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{CAP_ENV}={v:?} is not a count"))),
            Err(_) => Ok(default),
        }
    }

    pub fn tol_or(&self, default: f64) -> Result<f64, CliError> {
        match self.tol {
            Some(t) if !(t > 0.0 && t.is_finite()) => {
                Err(CliError::Usage(format!("tolerance {t} must be positive")))
            }
            Some(t) => Ok(t),
            None => Ok(default),
        }
    }
}

/// Reads `arg` as a file if one exists at that path, else returns it as is.
pub(crate) fn read_arg(arg: &str) -> Result<Option<String>, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| CliError::Io {
                path: arg.to_string(),
                message: e.to_string(),
            })
    } else {
        Ok(None)
    }
}

/// Runs one subcommand, writing report records to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut report = Report::new(out, config.format);
    let outcome = commands::dispatch(config, &mut report)?;
    report.flush()?;
    Ok(outcome)
}

/// Parses arguments, runs, prints errors and returns the exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let rendered = e.to_string();
            let line = rendered
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            let _ = writeln!(err, "error: UsageError: {line}");
            return 2;
        }
    };
    match run(&config, out) {
        Ok(o) => o.exit_code(),
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            e.exit_code()
        }
    }
}
