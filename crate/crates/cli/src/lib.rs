//! Command-line surface over the workspace: coefficient sums, direct Rademacher
//! sums, Kloosterman zeta values, moonshine identities and group data.
//!
//! [`run`] takes the argument vector and returns the process exit code:
//! 0 on success, 2 on invalid input or usage errors, 3 for unsupported groups,
//! 1 for anything else.

pub mod cache;
mod commands;
pub mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub use cache::{cache_key, Cache, CacheEntry, Lookup, CACHE_DIR_ENV, CODE_VERSION};
pub use output::{emit, Format, Record};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
            CliError::Failed(_) => EXIT_FAILED,
        }
    }
}

impl From<psl2::Psl2Error> for CliError {
    fn from(e: psl2::Psl2Error) -> Self {
        match e {
            psl2::Psl2Error::Unsupported(m) => CliError::Unsupported(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<coefficients::CoeffError> for CliError {
    fn from(e: coefficients::CoeffError) -> Self {
        match e {
            coefficients::CoeffError::UnsupportedSpec(m) => CliError::Unsupported(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<radsum::RadsumError> for CliError {
    fn from(e: radsum::RadsumError) -> Self {
        match e {
            radsum::RadsumError::Unsupported(m) => CliError::Unsupported(m),
            radsum::RadsumError::Coeff(c) => c.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<qseries::SeriesError> for CliError {
    fn from(e: qseries::SeriesError) -> Self {
        match e {
            qseries::SeriesError::Unsupported(m) => CliError::Unsupported(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<moonshine::MoonshineError> for CliError {
    fn from(e: moonshine::MoonshineError) -> Self {
        use moonshine::MoonshineError as M;
        match e {
            M::Unsupported(m) => CliError::Unsupported(m),
            M::Inconsistent(m) => CliError::Failed(m),
            M::Series(s) => s.into(),
            M::Coeff(c) => c.into(),
            M::Radsum(r) => r.into(),
            M::Psl2(p) => p.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rademacher",
    version,
    about = "Rademacher sums, Kloosterman coefficients and moonshine identities"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Coefficient cache directory; caching is off when neither this nor the environment variable is set.
    #[arg(long = "cache-dir", env = CACHE_DIR_ENV, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Fill `elapsed_ms`; off by default so output is byte-identical across runs.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Group and cusp pair.
#[derive(Clone, Debug, Args)]
pub struct Target {
    /// `PSL2Z`, `Gamma0:N`, `Gamma0Plus:N[:S]`, `Gamma0Pipe:n:h[:S]` or `Gamma0DoublePipe:n:h[:S]`.
    #[arg(long, default_value = "PSL2Z")]
    pub group: String,
    #[arg(long = "cusp-p", default_value = "inf")]
    pub cusp_p: String,
    #[arg(long = "cusp-q", default_value = "inf")]
    pub cusp_q: String,
}

#[derive(Clone, Debug, Args)]
pub struct CoeffArgs {
    #[command(flatten)]
    pub target: Target,
    /// Weight index; the weight is `2 s`.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub s: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long, default_value_t = 10_000)]
    pub cmax: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CacheOp {
    Get,
    Put,
    Purge,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fourier coefficient `fc^s(m, n)` from its Kloosterman-Bessel series.
    Coeff {
        #[command(flatten)]
        args: CoeffArgs,
        #[arg(long = "no-cache")]
        no_cache: bool,
    },
    /// Direct rectangle evaluation of a Rademacher sum or its conjugate.
    Eval {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        s: i64,
        /// Point in the upper half plane, e.g. `i` or `0.25+1.5i`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long = "K", default_value_t = 100.0)]
        k: f64,
        #[arg(long)]
        conjugate: bool,
        /// Fractional order `g/h` in place of `m`.
        #[arg(long)]
        fraction: Option<String>,
    },
    /// Partial Kloosterman zeta function.
    Zeta {
        #[command(flatten)]
        target: Target,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Complex argument, e.g. `1` or `1.5+2i`.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 10_000)]
        cmax: i64,
    },
    /// Hecke operators against order-n sums at squarefree n.
    Hecke {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3)]
        kmax: i64,
        #[arg(long, default_value_t = 2_000)]
        cmax: i64,
        #[arg(long, default_value = "i", allow_hyphen_values = true)]
        z: String,
        #[arg(long = "K", default_value_t = 200.0)]
        k: f64,
    },
    /// Verma-module generating function and its logarithmic derivative.
    Verma {
        #[arg(long, default_value = "PSL2Z")]
        group: String,
        #[arg(long = "trunc-p", default_value_t = 4)]
        trunc_p: usize,
        #[arg(long = "trunc-q", default_value_t = 4)]
        trunc_q: i64,
    },
    /// Branching of the modular-group sums over Gamma0(2).
    Branch {
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long, default_value_t = 3)]
        nmax: i64,
        #[arg(long, default_value_t = 1_000)]
        cmax: i64,
    },
    /// Genus-zero probe from the coefficients `fc(1, -n)`.
    Genus {
        #[arg(long, default_value = "PSL2Z")]
        group: String,
        #[arg(long, default_value_t = 4)]
        nmax: i64,
        #[arg(long, default_value_t = 16_000)]
        cmax: i64,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Exact-divisor groups and cusp data.
    Groups {
        /// Print `Ex(n)` with its product table.
        #[arg(long)]
        ex: Option<u64>,
        /// Print the cusps of a group with widths and scaling elements.
        #[arg(long)]
        group: Option<String>,
    },
    /// Four-condition moonshine-group characterization.
    Char {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 4)]
        nmax: i64,
        #[arg(long, default_value_t = 16_000)]
        cmax: i64,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Inspect or maintain the coefficient cache.
    Cache {
        #[arg(value_enum)]
        op: CacheOp,
        #[arg(long, allow_hyphen_values = true)]
        group: Option<String>,
        #[arg(long = "cusp-p", default_value = "inf")]
        cusp_p: String,
        #[arg(long = "cusp-q", default_value = "inf")]
        cusp_q: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[arg(long, default_value_t = 10_000)]
        cmax: i64,
        /// Age in seconds beyond which `purge` removes entries.
        #[arg(long = "older-than", default_value_t = 0)]
        older_than: u64,
    },
}

/// Parses `args` (including the program name), runs the command and writes its
/// records to `out`; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let target: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match commands::execute(&cli, err) {
        Ok(records) => match emit(&records, cli.format, out) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_FAILED
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
