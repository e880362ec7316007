use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use esgai_api::{ApiError, AppState, CorsOrigins};
use esgai_core::bank::{
    bank_stats, filter_summary, load_bank, seed_use_cases, BankCatalog, BankManifest,
    FilterCriteria,
};
use esgai_core::model::{EsgTopic, Principle, UseCaseProfile, Validate};
use esgai_core::report::{bank_report, materiality_rows, session_report, ReportFormat, Section};
use esgai_core::scoring::display2;
use esgai_core::store::{FileStore, Session, SessionArchive, SessionStore};
use esgai_core::workflow;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::ConfigArgs;
use crate::{
    read_input, BankCommand, Cli, Command, FilterArgs, NewSessionArgs, ReportArgs, ScoreCommand,
    ServeArgs, SessionCommand,
};

type Result<T> = std::result::Result<T, ApiError>;

pub fn run(cli: Cli) -> Result<String> {
    let ctx = Context {
        store_dir: cli.store,
        bank_dir: cli.bank_dir,
    };
    match cli.command {
        Command::Bank(cmd) => bank(&ctx, cmd),
        Command::Score(cmd) => score(&ctx, cmd),
        Command::Report(args) => report(&ctx, args),
        Command::Session(cmd) => session(&ctx, cmd),
        Command::Serve(args) => serve(&ctx, args),
        Command::Export { id, out } => {
            let archive = ctx.store()?.export_session(&id)?;
            emit(pretty(&archive), out.as_deref())
        }
        Command::Import { file } => {
            let text = read_input(&file)?;
            let archive: SessionArchive = serde_json::from_str(&text)
                .map_err(|e| ApiError::new("archive.schema", format!("{}: {e}", file.display())))?;
            let imported = ctx.store()?.import_session(archive)?;
            Ok(pretty(&imported.summary()))
        }
    }
}

struct Context {
    store_dir: std::path::PathBuf,
    bank_dir: Option<std::path::PathBuf>,
}

impl Context {
    fn store(&self) -> Result<FileStore> {
        Ok(FileStore::open(&self.store_dir)?)
    }

    fn catalog(&self) -> Result<BankCatalog> {
        let mut catalog = BankCatalog::builtin();
        if let Some(dir) = &self.bank_dir {
            catalog.load_dir(dir)?;
        }
        Ok(catalog)
    }

    /// A bank given as a file path or as a loaded bank version.
    fn bank_arg(&self, arg: &str) -> Result<Arc<BankManifest>> {
        let path = Path::new(arg);
        if path.is_file() {
            return Ok(Arc::new(load_bank(&read_input(path)?)?));
        }
        if let Some(bank) = self.catalog()?.get(arg) {
            return Ok(bank);
        }
        if looks_like_path(arg) {
            return Err(ApiError::new(
                "io.not_found",
                format!("{arg}: no such file"),
            ));
        }
        Err(ApiError::new(
            "bank.not_found",
            format!("no bank file or loaded bank version `{arg}`"),
        ))
    }

    /// The bank a session is scored against: an explicit file, else its
    /// version from the catalog.
    fn session_bank(
        &self,
        session: &Session,
        explicit: Option<&Path>,
    ) -> Result<Option<Arc<BankManifest>>> {
        match explicit {
            Some(path) => Ok(Some(Arc::new(load_bank(&read_input(path)?)?))),
            None => Ok(self.catalog()?.get(&session.bank_version)),
        }
    }

    /// A session from a session file, an archive file or a store id.
    fn session_arg(&self, arg: &str) -> Result<Session> {
        let path = Path::new(arg);
        if path.is_file() {
            return read_session_file(path);
        }
        if looks_like_path(arg) {
            return Err(ApiError::new(
                "io.not_found",
                format!("{arg}: no such file"),
            ));
        }
        Ok(self.store()?.get_session(arg)?)
    }
}

fn looks_like_path(arg: &str) -> bool {
    arg.contains('/') || arg.contains('\\') || arg.ends_with(".json")
}

fn read_session_file(path: &Path) -> Result<Session> {
    let text = read_input(path)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| ApiError::new("session.schema", format!("{}: {e}", path.display())))?;
    let is_archive = value.get("schema").is_some() && value.get("session").is_some();
    let session: Session = if is_archive {
        serde_json::from_value::<SessionArchive>(value).map(|a| a.session)
    } else {
        serde_json::from_value(value)
    }
    .map_err(|e| ApiError::new("session.schema", format!("{}: {e}", path.display())))?;
    let issues = session.validate();
    if !issues.is_empty() {
        return Err(ApiError::new(
            "session.invalid",
            format!("{} is not a valid session", path.display()),
        )
        .with_details(json!({ "violations": issues })));
    }
    Ok(session)
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("output serializes");
    out.push('\n');
    out
}

/// Write to a file and print nothing, or return the text for stdout.
fn emit(text: String, out: Option<&Path>) -> Result<String> {
    match out {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| ApiError::new("io.write", format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn bank(ctx: &Context, cmd: BankCommand) -> Result<String> {
    match cmd {
        BankCommand::Validate { bank } => {
            let b = ctx.bank_arg(&bank)?;
            Ok(format!(
                "ok {} ({}): {} key questions, {} sub-questions, {} indicators, {} metrics\n",
                b.version,
                serde_json::to_value(b.completeness)
                    .unwrap()
                    .as_str()
                    .unwrap_or_default(),
                b.key_questions.len(),
                b.questions.len(),
                b.indicators().len(),
                b.metrics.len(),
            ))
        }
        BankCommand::Stats { bank } => Ok(pretty(&bank_stats(&*ctx.bank_arg(&bank)?))),
        BankCommand::Filter(args) => filter(ctx, args),
        BankCommand::Mapping { bank, format } => {
            let b = ctx.bank_arg(&bank)?;
            match format.parse::<ReportFormat>()? {
                ReportFormat::Json => Ok(pretty(&json!({
                    "principles": Principle::ALL.iter().map(|p| p.as_str()).collect::<Vec<_>>(),
                    "topics": EsgTopic::ALL.iter().map(|t| t.as_str()).collect::<Vec<_>>(),
                    "cells": esgai_core::bank::mapping_matrix(&b).cells,
                }))),
                f => Ok(bank_report(&b).render(f, Some(Section::Mapping))?),
            }
        }
    }
}

fn filter(ctx: &Context, args: FilterArgs) -> Result<String> {
    let bank = ctx.bank_arg(&args.bank)?;
    let criteria = FilterCriteria::parse(
        args.org_type.as_deref(),
        args.category.as_deref(),
        args.esg_topic.as_deref(),
        &args.principle,
    )?;
    let summary = filter_summary(&bank, &criteria);
    if args.json {
        return Ok(pretty(&summary));
    }
    let mut out = format!(
        "{} questions ({} mandatory, {} optional)\n",
        summary.count, summary.mandatory, summary.optional
    );
    let width = summary
        .questions
        .iter()
        .map(|q| q.question.id.len())
        .max()
        .unwrap_or(0);
    for q in &summary.questions {
        let obligation = q.selected_obligation.map_or("-", |o| o.as_str());
        let _ = writeln!(
            out,
            "{:width$}  {:3}  {:9}  {}",
            q.question.id,
            q.question.principle.as_str(),
            obligation,
            q.question.text
        );
    }
    Ok(out)
}

/// Load a session, apply a what-if config when one was resolved, and
/// recompute every derived value from the inputs.
fn scored_session(
    ctx: &Context,
    arg: &str,
    bank: Option<&Path>,
    config: &ConfigArgs,
) -> Result<(Session, Option<Arc<BankManifest>>)> {
    let mut session = ctx.session_arg(arg)?;
    if let Some(cfg) = config.resolve()? {
        session.config = cfg;
    }
    let bank = ctx.session_bank(&session, bank)?;
    workflow::recompute(&mut session, bank.as_deref())?;
    Ok((session, bank))
}

fn score(ctx: &Context, cmd: ScoreCommand) -> Result<String> {
    match cmd {
        ScoreCommand::UseCase(args) => {
            let (session, _) =
                scored_session(ctx, &args.session, args.bank.as_deref(), &args.config)?;
            let rows = materiality_rows(&session);
            if args.json {
                return Ok(pretty(&rows));
            }
            let width = rows.iter().map(|r| r.use_case_id.len()).max().unwrap_or(0);
            let mut out = String::new();
            for r in &rows {
                let _ = write!(
                    out,
                    "{:width$}  flag={} N={} impact={} scope={} F={} default={}",
                    r.use_case_id,
                    r.regulatory_flag.as_str(),
                    r.impacted,
                    r.impact_level.label(),
                    r.impact_scope.as_str(),
                    display2(r.score),
                    r.materiality_default.label(),
                );
                if let Some(adjusted) = r.materiality_adjusted {
                    let _ = write!(out, " adjusted={}", adjusted.label());
                }
                if r.action_required {
                    let _ = write!(out, " {}", esgai_core::report::ACTION_MARKER);
                }
                out.push('\n');
            }
            Ok(out)
        }
        ScoreCommand::Governance(args) => {
            let (session, _) =
                scored_session(ctx, &args.session, args.bank.as_deref(), &args.config)?;
            let g = &session.governance;
            if args.json {
                return Ok(pretty(g));
            }
            let mut out = String::new();
            for j in &g.judgments {
                let _ = writeln!(
                    out,
                    "{:20}  {}",
                    j.indicator.as_str(),
                    if j.met { "met" } else { "not met" }
                );
            }
            let _ = writeln!(out, "F={}, level={}", g.score, g.level.label());
            Ok(out)
        }
        ScoreCommand::DeepDive(args) => {
            let (session, bank) =
                scored_session(ctx, &args.session, args.bank.as_deref(), &args.config)?;
            let Some(bank) = bank else {
                return Err(ApiError::new(
                    "bank.not_found",
                    format!(
                        "question bank `{}` is not loaded; pass --bank or --bank-dir",
                        session.bank_version
                    ),
                ));
            };
            let report = session_report(&session, Some(&bank))
                .deep_dive_report
                .expect("session reports carry a deep dive");
            if args.json {
                return Ok(pretty(&report));
            }
            let mut out = String::new();
            for p in &report.principles {
                let _ = write!(
                    out,
                    "{:3}  answered={} average={} suggested={} final={}",
                    p.principle.as_str(),
                    p.answered,
                    display2(p.average),
                    p.suggested_level.label(),
                    p.final_level.label(),
                );
                if p.overridden {
                    let _ = write!(out, " (override: {})", p.override_note);
                }
                out.push('\n');
            }
            let mandatory = report.metrics.iter().filter(|m| m.mandatory).count();
            let gaps: Vec<_> = report
                .metrics
                .iter()
                .filter(|m| m.gap)
                .map(|m| m.metric_id.as_str())
                .collect();
            let _ = writeln!(
                out,
                "mandatory metrics disclosed: {} of {}",
                mandatory - gaps.len(),
                mandatory
            );
            if !gaps.is_empty() {
                let _ = writeln!(
                    out,
                    "{} gaps: {}",
                    esgai_core::report::ACTION_MARKER,
                    gaps.join(", ")
                );
            }
            Ok(out)
        }
    }
}

fn report(ctx: &Context, args: ReportArgs) -> Result<String> {
    let format: ReportFormat = args.format.parse()?;
    let section: Option<Section> = args.section.as_deref().map(str::parse).transpose()?;
    let (session, bank) = scored_session(ctx, &args.session, args.bank.as_deref(), &args.config)?;
    let text = session_report(&session, bank.as_deref()).render(format, section)?;
    emit(text, args.out.as_deref())
}

fn session(ctx: &Context, cmd: SessionCommand) -> Result<String> {
    match cmd {
        SessionCommand::New(args) => new_session(ctx, args),
        SessionCommand::List { json } => {
            let sessions = ctx.store()?.list_sessions()?;
            if json {
                return Ok(pretty(&sessions));
            }
            let mut out = String::new();
            for s in &sessions {
                let _ = writeln!(
                    out,
                    "{}  {}  {}  {}  rev {}",
                    s.id,
                    s.company,
                    s.bank_version,
                    s.status.as_str(),
                    s.revision
                );
            }
            Ok(out)
        }
        SessionCommand::Show { session } => Ok(ctx.session_arg(&session)?.to_json()),
    }
}

fn new_session(ctx: &Context, args: NewSessionArgs) -> Result<String> {
    let config = args.config.resolve_or_default()?;
    let use_cases: Vec<UseCaseProfile> = match &args.use_cases {
        Some(path) => serde_json::from_str(&read_input(path)?)
            .map_err(|e| ApiError::new("use_case.schema", format!("{}: {e}", path.display())))?,
        None => seed_use_cases(),
    };
    let bank = ctx.catalog()?.get(&args.bank_version).ok_or_else(|| {
        ApiError::new(
            "bank.not_found",
            format!("question bank `{}` is not loaded", args.bank_version),
        )
    })?;
    let mut session = Session::new(args.company, args.bank_version, config, use_cases);
    workflow::recompute(&mut session, Some(&bank))?;
    match args.out {
        Some(path) => {
            session.id = args.id.unwrap_or_else(|| "session".to_string());
            let issues = session.validate();
            if !issues.is_empty() {
                return Err(ApiError::new("session.invalid", "invalid session")
                    .with_details(json!({ "violations": issues })));
            }
            emit(session.to_json(), Some(&path))
        }
        None => {
            session.id = args.id.unwrap_or_default();
            let created = ctx.store()?.create_session(session, Vec::new())?;
            Ok(pretty(&created.summary()))
        }
    }
}

fn serve(ctx: &Context, args: ServeArgs) -> Result<String> {
    tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .init();
    let store = ctx.store()?;
    let mut state = AppState::new(Arc::new(store), ctx.catalog()?);
    if state.banks.get(&args.default_bank).is_none() {
        return Err(ApiError::new(
            "bank.not_found",
            format!("default bank `{}` is not loaded", args.default_bank),
        ));
    }
    state.default_bank = args.default_bank;
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| ApiError::new("io.runtime", e.to_string()))?;
    runtime
        .block_on(esgai_api::serve(
            args.addr,
            state,
            CorsOrigins(args.cors_origins),
        ))
        .map_err(|e| ApiError::new("io.listen", format!("{}: {e}", args.addr)))?;
    Ok(String::new())
}
