//! The `bwb` command line: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error, 3 consistency
//! failure (two independent computations disagreed).

pub mod commands;
pub mod config;
pub mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{Config, Format, CONFIG_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CONSISTENCY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bwb", version, about = "Equivariant index of the cubic Dirac operator on flag manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Root system label such as A2, B3, G2
    #[arg(long = "type", value_name = "TYPE")]
    pub group_type: Option<String>,
    /// Output format: json or table
    #[arg(long)]
    pub format: Option<String>,
    /// Show weights in simple-root coordinates instead of Dynkin labels
    #[arg(long)]
    pub root_coords: bool,
    /// Configuration file (key = value); defaults to $BWB_CONFIG
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root system data
    Rootsys {
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form index for a weight
    Index {
        #[command(flatten)]
        common: Common,
        /// Weight in Dynkin labels, comma separated
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Compare the closed form with the shell oracle over a label box
    Verify {
        #[command(flatten)]
        common: Common,
        /// Labels range over [-N, N]
        #[arg(long = "box", value_name = "N", default_value_t = 3)]
        box_size: i64,
    },
    /// Graded pairings of V_lambda with S+ and S- against U_{mu+rho}
    Pairing {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Truncated heat supertrace at several times
    Supertrace {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Comma-separated positive times
        #[arg(long, default_value = "0.1,1,10")]
        ts: String,
        /// Torus point, one angle per rank; defaults to the identity
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        /// Truncation radius; defaults to the shell of mu
        #[arg(long)]
        radius_sq: Option<String>,
    },
    /// Matrix model of the cubic Dirac operator, one report per lambda
    Dirac {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Restrict to a single lambda
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Truncation radius; defaults to the shell of mu
        #[arg(long)]
        radius_sq: Option<String>,
    },
    /// Index for a maximal-rank Levi subgroup H
    GhIndex {
        #[command(flatten)]
        common: Common,
        /// Simple roots of H, 1-based, comma separated; empty for the torus
        #[arg(long, default_value = "")]
        sub: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Also compute the H-oracle and fail on disagreement
        #[arg(long)]
        check: bool,
    },
    /// Evaluate a character-ring expression
    Eval {
        #[command(flatten)]
        common: Common,
        /// Expression such as "dim(V[1,1])"
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Rootsys { common }
            | Command::Index { common, .. }
            | Command::Verify { common, .. }
            | Command::Pairing { common, .. }
            | Command::Supertrace { common, .. }
            | Command::Dirac { common, .. }
            | Command::GhIndex { common, .. }
            | Command::Eval { common, .. } => common,
        }
    }
}

/// A failure together with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DOMAIN, message: message.into() }
    }

    pub fn consistency(message: impl Into<String>) -> Self {
        Failure { code: EXIT_CONSISTENCY, message: message.into() }
    }
}

impl From<bwb_core::Error> for Failure {
    fn from(e: bwb_core::Error) -> Self {
        use bwb_core::Error as E;
        let code = match &e {
            E::Consistency(_) => EXIT_CONSISTENCY,
            E::Parse { .. } | E::InvalidType { .. } => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<bwb_dirac::Error> for Failure {
    fn from(e: bwb_dirac::Error) -> Self {
        match e {
            bwb_dirac::Error::Core(inner) => inner.into(),
            other if other.is_consistency() => Failure::consistency(other.to_string()),
            other => Failure::domain(other.to_string()),
        }
    }
}

/// Settings resolved from the config file and the command line.
#[derive(Debug, Clone)]
pub struct Context {
    pub config: Config,
    pub rs: bwb_core::RootSystem,
    pub format: Format,
    pub root_coords: bool,
}

impl Context {
    fn resolve(common: &Common, env_config: Option<PathBuf>) -> Result<Context, Failure> {
        let config = match common.config.clone().or(env_config) {
            Some(path) => Config::load(&path).map_err(|e| Failure::usage(e.to_string()))?,
            None => Config::default(),
        };
        let label = common
            .group_type
            .clone()
            .or_else(|| config.group_type.clone())
            .ok_or_else(|| Failure::usage("missing --type (or `type` in the config file)"))?;
        let rs = bwb_core::RootSystem::from_label(&label)?;
        let format = match &common.format {
            Some(f) => Format::parse(f).ok_or_else(|| Failure::usage(format!("unknown format '{f}' (json or table)")))?,
            None => config.format,
        };
        Ok(Context { config, rs, format, root_coords: common.root_coords })
    }

    pub fn style(&self) -> render::WeightStyle<'_> {
        render::WeightStyle { rs: &self.rs, root_coords: self.root_coords }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let env_config = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
    let result = Context::resolve(cli.command.common(), env_config)
        .and_then(|ctx| commands::dispatch(&cli.command, &ctx, out, err));
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
