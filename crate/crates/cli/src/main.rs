use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hzeta::PrecisionContext;

mod eval;
mod output;
mod table;

use eval::Function;
use output::Format;
use table::TableKind;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hzeta::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(hzeta::Error::Accuracy { .. }) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrecisionMode {
    Double,
    High,
}

/// Numerical and formatting options shared by every subcommand.
#[derive(Debug, Clone, clap::Args)]
pub struct CliConfig {
    #[arg(long = "precision", value_enum, default_value_t = PrecisionMode::Double, global = true)]
    pub precision_mode: PrecisionMode,
    #[arg(long, global = true)]
    pub max_terms: Option<u64>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long = "format", value_enum, default_value_t = Format::Text, global = true)]
    pub output_format: Format,
    #[arg(long = "out", global = true)]
    pub output_path: Option<PathBuf>,
}

impl CliConfig {
    pub fn context(&self) -> CliResult<PrecisionContext> {
        let mut ctx = match self.precision_mode {
            PrecisionMode::Double => PrecisionContext::default(),
            PrecisionMode::High => PrecisionContext::high(),
        };
        if let Some(n) = self.max_terms {
            ctx = ctx.with_max_terms(n);
        }
        if let Some(t) = self.tol {
            ctx = ctx.with_tol(t);
        }
        ctx.validate()?;
        Ok(ctx)
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.output_path {
            Some(path) => fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(name = "hzeta", version, about = "Evaluate the h-zeta function and verify its identities")]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one function, e.g. `eval zeta_h 2+3i` or `eval hurwitz_zeta 3 0.5`.
    Eval {
        #[arg(value_enum)]
        function: Function,
        /// A negative complex value such as -0.5+1i is accepted here.
        #[arg(allow_hyphen_values = true, value_name = "ARG")]
        first: String,
        #[arg(allow_negative_numbers = true, value_name = "ARG")]
        rest: Vec<String>,
    },
    /// Run the identity suite; exits with 1 when any instance fails.
    Verify {
        /// Glob over identity ids, e.g. "COR*".
        #[arg(long, default_value = "*")]
        filter: String,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Emit a table of values for plotting.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        /// `a..b`; each kind has its own default.
        #[arg(allow_hyphen_values = true)]
        range: Option<String>,
        #[arg(long)]
        step: Option<f64>,
    },
}

fn run(cli: Cli) -> CliResult<bool> {
    let cfg = &cli.config;
    let ctx = cfg.context()?;
    match cli.command {
        Command::Eval { function, first, rest } => {
            let args: Vec<String> = std::iter::once(first).chain(rest).collect();
            let v = eval::evaluate(function, &args, &ctx)?;
            if let Some(w) = &v.warning {
                eprintln!("warning: {w}");
            }
            cfg.emit(&output::eval_output(&v, cfg.output_format)?)?;
            Ok(true)
        }
        Command::Verify { filter, jobs } => {
            if jobs == Some(0) {
                return Err(CliError::Usage("--jobs must be at least 1".into()));
            }
            let suite = hzeta::harness::run_suite(&filter, &ctx, jobs)?;
            cfg.emit(&output::suite_output(&suite, cfg.output_format)?)?;
            if cfg.output_path.is_some() || cfg.output_format != Format::Text {
                eprintln!("{}", output::summary_line(&suite));
            }
            Ok(suite.all_passed())
        }
        Command::Table { kind, range, step } => {
            let t = table::build(kind, range.as_deref(), step, &ctx)?;
            cfg.emit(&output::table_output(&t, cfg.output_format)?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
