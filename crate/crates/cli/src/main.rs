//! `esgai`: validate banks, score sessions, render reports and serve the API.
//!
//! Exit codes: 0 success, 1 usage, 2 validation or domain error, 3 revision
//! conflict, 4 not found, 5 storage or I/O failure. Errors are written to
//! stderr as one JSON object `{code, message, details}`.

mod commands;
mod config;

use std::io::Write as _;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use esgai_api::ApiError;

use config::ConfigArgs;

#[derive(Debug, Parser)]
#[command(
    name = "esgai",
    version,
    about = "Responsible-AI investor assessment toolkit"
)]
struct Cli {
    /// Session store directory
    #[arg(
        long,
        global = true,
        env = "ESGAI_STORE",
        default_value = "esgai-store",
        value_name = "DIR"
    )]
    store: PathBuf,
    /// Extra question banks (*.json) next to the built-in ones
    #[arg(long, global = true, env = "ESGAI_BANK_DIR", value_name = "DIR")]
    bank_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Question bank tools
    #[command(subcommand)]
    Bank(BankCommand),
    /// Score a session; <SESSION> is a session or archive file, or a store id
    #[command(subcommand)]
    Score(ScoreCommand),
    /// Render a session report
    Report(ReportArgs),
    /// Manage stored sessions
    #[command(subcommand)]
    Session(SessionCommand),
    /// Serve the HTTP API over the store
    Serve(ServeArgs),
    /// Write a stored session and its audit journal as an archive
    Export {
        id: String,
        /// Output file (default: stdout)
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Load an exported archive into the store
    Import { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum BankCommand {
    /// Check a bank file against the schema and its structural rules
    Validate { bank: String },
    /// Counts, obligation splits and provenance shares
    Stats { bank: String },
    /// List sub-questions matching every given criterion
    Filter(FilterArgs),
    /// Principle x ESG topic question counts
    Mapping {
        bank: String,
        #[arg(long, default_value = "csv")]
        format: String,
    },
}

#[derive(Debug, Args)]
struct FilterArgs {
    /// Bank file or built-in bank version
    bank: String,
    /// developer, purchaser or both
    #[arg(long)]
    org_type: Option<String>,
    /// high-risk, foundation-model, limited or minimal
    #[arg(long)]
    category: Option<String>,
    /// Topic code or name, e.g. E1 or "Carbon emissions"
    #[arg(long)]
    esg_topic: Option<String>,
    /// Principle code; repeatable or comma-separated
    #[arg(long)]
    principle: Vec<String>,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum ScoreCommand {
    /// Impact count, materiality score and level of every use case
    UseCase(ScoreArgs),
    /// Governance indicator score and level
    Governance(ScoreArgs),
    /// Principle averages, levels and mandatory metric gaps
    DeepDive(ScoreArgs),
}

#[derive(Debug, Args)]
struct ScoreArgs {
    session: String,
    /// Bank file for deep-dive scoring (default: the session's bank version)
    #[arg(long, value_name = "FILE")]
    bank: Option<PathBuf>,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Debug, Args)]
struct ReportArgs {
    session: String,
    /// json, csv or markdown
    #[arg(long, default_value = "json")]
    format: String,
    /// CSV section: materiality, governance, principles, evidence, metrics, mapping, provenance
    #[arg(long)]
    section: Option<String>,
    #[arg(long, value_name = "FILE")]
    bank: Option<PathBuf>,
    /// Output file (default: stdout)
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Debug, Subcommand)]
enum SessionCommand {
    /// Start a session with the bundled use cases (or your own)
    New(NewSessionArgs),
    /// List stored sessions
    List {
        #[arg(long)]
        json: bool,
    },
    /// Print a session document
    Show { session: String },
}

#[derive(Debug, Args)]
struct NewSessionArgs {
    #[arg(long)]
    company: String,
    /// Session id (default: generated by the store, or `session` with --out)
    #[arg(long)]
    id: Option<String>,
    /// Bank version for the deep dive
    #[arg(long, default_value = "synthetic-complete-1")]
    bank_version: String,
    /// JSON array of use-case profiles replacing the bundled ones
    #[arg(long, value_name = "FILE")]
    use_cases: Option<PathBuf>,
    /// Write the session to this file instead of the store
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1:8080")]
    addr: SocketAddr,
    /// Allowed CORS origin; repeatable. Without any, every origin is allowed.
    #[arg(long = "cors-origin", value_name = "ORIGIN")]
    cors_origins: Vec<String>,
    /// Bank for sessions created without one
    #[arg(long, default_value = "synthetic-complete-1")]
    default_bank: String,
}

/// Read a text input; a missing file is a not-found error.
pub(crate) fn read_input(path: &Path) -> Result<String, ApiError> {
    std::fs::read_to_string(path).map_err(|e| {
        let code = if e.kind() == std::io::ErrorKind::NotFound {
            "io.not_found"
        } else {
            "io.read"
        };
        ApiError::new(code, format!("{}: {e}", path.display()))
    })
}

/// Process exit code for an error code.
pub(crate) fn exit_code(code: &str) -> u8 {
    if code.starts_with("usage.") {
        1
    } else if code.ends_with("not_found") {
        4
    } else if matches!(code, "store.conflict" | "store.exists") {
        3
    } else if matches!(code, "store.io" | "store.corrupt") || code.starts_with("io.") {
        5
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let failed = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if failed { 1 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(5);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            let line = serde_json::to_string(&err).expect("errors serialize");
            eprintln!("{line}");
            ExitCode::from(exit_code(&err.code))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code("usage.argument"), 1);
        assert_eq!(exit_code("session.invalid"), 2);
        assert_eq!(exit_code("override.note.required"), 2);
        assert_eq!(exit_code("filter.unknown_value"), 2);
        assert_eq!(exit_code("store.conflict"), 3);
        assert_eq!(exit_code("store.exists"), 3);
        assert_eq!(exit_code("store.not_found"), 4);
        assert_eq!(exit_code("bank.not_found"), 4);
        assert_eq!(exit_code("io.not_found"), 4);
        assert_eq!(exit_code("store.io"), 5);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
