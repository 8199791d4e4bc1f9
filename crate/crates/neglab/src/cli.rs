//! Argument parsing and exit-code handling.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::commands::{execute, Command, RunConfig};
use crate::error::{exit, CliError};
use crate::input::{parse_dist, read_file};
use crate::output::{vector, Document, Format};

/// Environment variable overriding the default validation tolerance.
pub const TOLERANCE_ENV: &str = "NEGLAB_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "neglab",
    version,
    about = "Negation of discrete probability distributions"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Distribution as comma-separated decimals or rationals (`1/3,2/3`),
    /// or `uniform:<n>`. May be repeated.
    #[arg(long = "dist", value_name = "LIST")]
    dist: Vec<String>,

    /// JSON array of distributions, a previously emitted JSON document, or
    /// a CSV file with one distribution per row.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,

    /// Validation tolerance on the input (for `converge`: the stopping
    /// tolerance).
    #[arg(long, value_name = "REAL")]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// Write the document here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Negation and double negation.
    Negate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Entropy, self-information and the entropy orderings.
    Entropy {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Iterate negation towards the uniform distribution.
    Converge {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Give up after this many negations.
        #[arg(long, default_value_t = neglab_core::negation::DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Run every applicable inequality certificate.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Function for the Jensen-based checks: neg_log, x_log_x or square.
        #[arg(long = "fn", value_name = "NAME", default_value = neglab_core::jensen::NEG_LOG)]
        function: String,
    },
    /// I_alpha dissimilarity between each distribution and its negation.
    Dissim {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Comma-separated integer alphas, each at most 1000.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        alpha: Vec<u32>,
        /// Also compare against the first DEPTH iterated negations.
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Reproduce the built-in worked examples.
    Report {
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn positive(value: f64, what: &str) -> Result<f64, CliError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::Usage(format!(
            "{what} must be a positive real, got {value}"
        )))
    }
}

fn env_tolerance() -> Result<Option<f64>, CliError> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("{TOLERANCE_ENV}: cannot parse `{s}`")))
            .and_then(|t| positive(t, TOLERANCE_ENV))
            .map(Some),
        Err(_) => Ok(None),
    }
}

fn read_inputs(input: &InputArgs) -> Result<Vec<Vec<f64>>, CliError> {
    let mut out = Vec::new();
    for spec in &input.dist {
        out.push(parse_dist(spec)?);
    }
    if let Some(path) = &input.file {
        out.extend(read_file(path)?);
    }
    Ok(out)
}

fn config_from(cli: Cli) -> Result<RunConfig, CliError> {
    let default_tol = env_tolerance()?;
    let mut extra = RunConfig::new(Command::Report);
    let (command, input, output) = match cli.command {
        Sub::Negate { input, output } => (Command::Negate, Some(input), output),
        Sub::Entropy { input, output } => (Command::Entropy, Some(input), output),
        Sub::Converge {
            input,
            output,
            max_steps,
        } => {
            if max_steps == 0 {
                return Err(CliError::Usage("--max-steps must be at least 1".into()));
            }
            extra.max_steps = max_steps;
            (Command::Converge, Some(input), output)
        }
        Sub::Verify {
            input,
            output,
            function,
        } => {
            extra.function_name = function;
            (Command::Verify, Some(input), output)
        }
        Sub::Dissim {
            input,
            output,
            alpha,
            depth,
        } => {
            if alpha.is_empty() {
                return Err(CliError::Usage("--alpha needs at least one value".into()));
            }
            if depth == Some(0) {
                return Err(CliError::Usage("--depth must be at least 1".into()));
            }
            extra.alphas = alpha;
            extra.depth = depth;
            (Command::Dissim, Some(input), output)
        }
        Sub::Report { output } => (Command::Report, None, output),
    };
    let mut config = RunConfig {
        command,
        format: output.format,
        out: output.out,
        ..extra
    };
    if let Some(tol) = default_tol {
        config.tolerance = tol;
    }
    if let Some(input) = &input {
        config.inputs = read_inputs(input)?;
        match (command, input.tol) {
            (Command::Converge, Some(t)) => config.convergence_tolerance = positive(t, "--tol")?,
            (_, Some(t)) => config.tolerance = positive(t, "--tol")?,
            (_, None) => {}
        }
    }
    Ok(config)
}

fn error_document(command: &str, err: &CliError) -> serde_json::Value {
    let mut doc = json!({
        "command": command,
        "error": match err {
            CliError::Validation { .. } => "validation",
            CliError::Usage(_) => "usage",
            _ => "input",
        },
        "message": err.to_string(),
        "all_hold": false,
    });
    if let CliError::Validation {
        position,
        values,
        report,
    } = err
    {
        doc["position"] = json!(position);
        doc["input"] = vector(values);
        doc["report"] = json!({
            "ok": report.ok,
            "sum_error": crate::output::num(report.sum_error),
            "bad_indices": report.bad_indices,
        });
    }
    doc
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn render_error(command: &str, err: &CliError, format: Format) -> String {
    let doc = error_document(command, err);
    match format {
        Format::Json => {
            serde_json::to_string_pretty(&doc).expect("serializing a JSON value cannot fail") + "\n"
        }
        other => Document {
            command: command.into(),
            input: Vec::new(),
            results: vec![doc],
            all_hold: false,
        }
        .render(other),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code: 0 success, 2 input or validation error, 3 a failed
/// certificate or fixture, 4 usage error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
        }
    };
    let config = match config_from(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let command = config.command.name();
    match execute(&config) {
        Ok(doc) => match emit(&doc.render(config.format), config.out.as_ref()) {
            Ok(()) if doc.all_hold => exit::OK,
            Ok(()) => {
                eprintln!("error: one or more certificates or fixtures failed");
                exit::FAILURE
            }
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            let _ = emit(
                &render_error(command, &e, config.format),
                config.out.as_ref(),
            );
            e.exit_code()
        }
    }
}
