use std::collections::BTreeMap;

use axum::body::Bytes;
use axum::extract::rejection::QueryRejection;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use esgai_core::bank::{bank_stats, filter_summary, mapping_matrix, BankManifest, FilterCriteria};
use esgai_core::model::{
    AuditAction, AuditRecord, EsgTopic, FinalLevel, MaterialityLevel, Principle, ScoringConfig,
    UseCaseProfile, Validate,
};
use esgai_core::report::{materiality_rows, session_report, MaterialityRow, ReportFormat, Section};
use esgai_core::store::{Session, SessionArchive, StoreError};
use esgai_core::workflow::{self, AnswersUpdate, GovernanceUpdate, UseCaseUpdate};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::{ApiError, AppState, ACTOR_HEADER, DEFAULT_ACTOR};

/// Every (method, path) the service answers, in the order of the contract
/// document.
pub const ROUTES: &[(&str, &str)] = &[
    ("GET", "/v1/health"),
    ("GET", "/v1/banks"),
    ("GET", "/v1/banks/{version}/questions"),
    ("GET", "/v1/banks/{version}/stats"),
    ("GET", "/v1/banks/{version}/mapping"),
    ("GET", "/v1/sessions"),
    ("POST", "/v1/sessions"),
    ("POST", "/v1/sessions/import"),
    ("GET", "/v1/sessions/{id}"),
    ("PUT", "/v1/sessions/{id}"),
    ("POST", "/v1/sessions/{id}/use-cases/{use_case}/marks"),
    ("POST", "/v1/sessions/{id}/use-cases/{use_case}/override"),
    ("POST", "/v1/sessions/{id}/governance"),
    ("POST", "/v1/sessions/{id}/deep-dive/answers"),
    (
        "POST",
        "/v1/sessions/{id}/deep-dive/principles/{principle}/override",
    ),
    ("POST", "/v1/sessions/{id}/preview"),
    ("POST", "/v1/sessions/{id}/fork"),
    ("GET", "/v1/sessions/{id}/report"),
    ("GET", "/v1/sessions/{id}/audit"),
    ("GET", "/v1/sessions/{id}/export"),
    ("GET", "/v1/config"),
    ("PUT", "/v1/config"),
    ("GET", "/v1/config/audit"),
];

const SAVE_ATTEMPTS: usize = 5;

type ApiResult<T = Response> = Result<T, ApiError>;

pub(crate) fn routes() -> Router<AppState> {
    Router::new()
        .route("/v1/health", get(health))
        .route("/v1/banks", get(list_banks))
        .route("/v1/banks/{version}/questions", get(bank_questions))
        .route("/v1/banks/{version}/stats", get(bank_stats_handler))
        .route("/v1/banks/{version}/mapping", get(bank_mapping))
        .route("/v1/sessions", get(list_sessions).post(create_session))
        .route("/v1/sessions/import", post(import_session))
        .route("/v1/sessions/{id}", get(get_session).put(put_session))
        .route(
            "/v1/sessions/{id}/use-cases/{use_case}/marks",
            post(post_marks),
        )
        .route(
            "/v1/sessions/{id}/use-cases/{use_case}/override",
            post(post_override),
        )
        .route("/v1/sessions/{id}/governance", post(post_governance))
        .route("/v1/sessions/{id}/deep-dive/answers", post(post_answers))
        .route(
            "/v1/sessions/{id}/deep-dive/principles/{principle}/override",
            post(post_final_override),
        )
        .route("/v1/sessions/{id}/preview", post(post_preview))
        .route("/v1/sessions/{id}/fork", post(post_fork))
        .route("/v1/sessions/{id}/report", get(get_report))
        .route("/v1/sessions/{id}/audit", get(get_audit))
        .route("/v1/sessions/{id}/export", get(get_export))
        .route("/v1/config", get(get_config).put(put_config))
        .route("/v1/config/audit", get(get_config_audit))
        .fallback(not_found)
        .method_not_allowed_fallback(method_not_allowed)
}

async fn not_found() -> ApiError {
    ApiError::new("route.not_found", "no such endpoint")
}

async fn method_not_allowed() -> ApiError {
    ApiError::new("request.method", "method not allowed on this endpoint")
}

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(body)
        .map_err(|e| ApiError::new("request.body", format!("invalid request body: {e}")))
}

fn parse_query(
    query: Result<Query<BTreeMap<String, String>>, QueryRejection>,
) -> ApiResult<BTreeMap<String, String>> {
    query
        .map(|Query(q)| q)
        .map_err(|e| ApiError::new("request.query", e.body_text()))
}

fn actor(headers: &HeaderMap) -> String {
    headers
        .get(ACTOR_HEADER)
        .and_then(|v| v.to_str().ok())
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .unwrap_or(DEFAULT_ACTOR)
        .to_string()
}

/// Revision from `If-Match`. Accepts `3`, `"3"` and `W/"3"`.
fn if_match(headers: &HeaderMap) -> ApiResult<Option<u64>> {
    let Some(raw) = headers.get(header::IF_MATCH) else {
        return Ok(None);
    };
    raw.to_str()
        .ok()
        .map(|s| s.trim().trim_start_matches("W/").trim_matches('"'))
        .and_then(|s| s.parse().ok())
        .map(Some)
        .ok_or_else(|| {
            ApiError::new(
                "request.if_match",
                "If-Match must carry a session revision number",
            )
        })
}

fn etag(revision: u64) -> HeaderValue {
    HeaderValue::from_str(&format!("\"{revision}\"")).expect("digits are valid header text")
}

fn bank(state: &AppState, version: &str) -> ApiResult<std::sync::Arc<BankManifest>> {
    state.banks.get(version).ok_or_else(|| {
        ApiError::new(
            "bank.not_found",
            format!("question bank `{version}` is not loaded"),
        )
    })
}

/// Session plus the per-use-case figures that are not stored (N and F).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionView {
    pub session: Session,
    pub materiality: Vec<MaterialityRow>,
}

fn session_response(status: StatusCode, session: Session) -> Response {
    let revision = session.revision;
    let materiality = materiality_rows(&session);
    let mut resp = (
        status,
        Json(SessionView {
            session,
            materiality,
        }),
    )
        .into_response();
    resp.headers_mut().insert(header::ETAG, etag(revision));
    resp
}

fn with_etag(revision: u64, body: impl Serialize) -> Response {
    let mut resp = Json(body).into_response();
    resp.headers_mut().insert(header::ETAG, etag(revision));
    resp
}

/// Load, edit and save a session. With `If-Match` a stale revision fails
/// at once; without it the edit is retried on the latest revision.
fn mutate<R>(
    state: &AppState,
    id: &str,
    headers: &HeaderMap,
    mut edit: impl FnMut(&mut Session, Option<&BankManifest>, &str) -> ApiResult<(R, Vec<AuditRecord>)>,
) -> ApiResult<(Session, R)> {
    let expected = if_match(headers)?;
    let actor = actor(headers);
    for _ in 0..SAVE_ATTEMPTS {
        let current = state.store.get_session(id)?;
        if let Some(rev) = expected {
            if rev != current.revision {
                return Err(StoreError::Conflict {
                    id: id.to_string(),
                    expected: rev,
                    actual: current.revision,
                }
                .into());
            }
        }
        let bank = state.banks.get(&current.bank_version);
        let mut next = current.clone();
        let (out, records) = edit(&mut next, bank.as_deref(), &actor)?;
        match state.store.save_session(next, current.revision, records) {
            Ok(saved) => return Ok((saved, out)),
            Err(StoreError::Conflict { .. }) if expected.is_none() => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(ApiError::new(
        "store.conflict",
        "the session kept changing; retry the request",
    ))
}

async fn health() -> Json<serde_json::Value> {
    Json(json!({ "status": "ok" }))
}

async fn list_banks(State(state): State<AppState>) -> Json<serde_json::Value> {
    let banks: Vec<_> = state
        .banks
        .iter()
        .map(|b| {
            json!({
                "version": b.version,
                "completeness": b.completeness,
                "title": b.title,
                "sub_questions": b.questions.len(),
                "metrics": b.metrics.len(),
            })
        })
        .collect();
    Json(json!(banks))
}

async fn bank_questions(
    State(state): State<AppState>,
    Path(version): Path<String>,
    query: Result<Query<BTreeMap<String, String>>, QueryRejection>,
) -> ApiResult {
    let q = parse_query(query)?;
    let bank = bank(&state, &version)?;
    let principles: Vec<String> = q.get("principle").into_iter().cloned().collect();
    let criteria = FilterCriteria::parse(
        q.get("org_type").map(String::as_str),
        q.get("category").map(String::as_str),
        q.get("esg_topic").map(String::as_str),
        &principles,
    )?;
    Ok(Json(filter_summary(&bank, &criteria)).into_response())
}

async fn bank_stats_handler(
    State(state): State<AppState>,
    Path(version): Path<String>,
) -> ApiResult {
    let bank = bank(&state, &version)?;
    Ok(Json(bank_stats(&bank)).into_response())
}

async fn bank_mapping(
    State(state): State<AppState>,
    Path(version): Path<String>,
    query: Result<Query<BTreeMap<String, String>>, QueryRejection>,
) -> ApiResult {
    let q = parse_query(query)?;
    let bank = bank(&state, &version)?;
    let matrix = mapping_matrix(&bank);
    match q
        .get("format")
        .map(String::as_str)
        .unwrap_or("json")
        .parse()?
    {
        ReportFormat::Csv => {
            let table = esgai_core::report::bank_report(&bank)
                .table(Section::Mapping)
                .expect("bank reports carry a mapping");
            Ok((
                [(header::CONTENT_TYPE, "text/csv; charset=utf-8")],
                table.to_csv(),
            )
                .into_response())
        }
        ReportFormat::Json => Ok(Json(json!({
            "principles": Principle::ALL.iter().map(|p| p.as_str()).collect::<Vec<_>>(),
            "topics": EsgTopic::ALL.iter().map(|t| t.as_str()).collect::<Vec<_>>(),
            "cells": matrix.cells,
        }))
        .into_response()),
        ReportFormat::Markdown => Err(ApiError::new(
            "report.format",
            "mapping is available as json or csv",
        )),
    }
}

async fn list_sessions(State(state): State<AppState>) -> ApiResult {
    Ok(Json(state.store.list_sessions()?).into_response())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NewSessionRequest {
    #[serde(default)]
    id: String,
    company: String,
    #[serde(default)]
    bank_version: Option<String>,
    #[serde(default)]
    config: Option<ScoringConfig>,
    /// Defaults to the bundled seed use cases.
    #[serde(default)]
    use_cases: Option<Vec<UseCaseProfile>>,
}

async fn create_session(
    State(state): State<AppState>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult {
    let req: NewSessionRequest = parse_body(&body)?;
    let bank_version = req
        .bank_version
        .unwrap_or_else(|| state.default_bank.clone());
    let bank = bank(&state, &bank_version)?;
    let config = match req.config {
        Some(c) => c,
        None => state.store.config()?,
    };
    let use_cases = req
        .use_cases
        .unwrap_or_else(esgai_core::bank::seed_use_cases);
    let mut session = Session::new(req.company, bank_version, config, use_cases);
    session.id = req.id;
    workflow::recompute(&mut session, Some(&bank))?;
    let actor = actor(&headers);
    // overrides supplied at creation are journaled like later ones
    let records = session
        .use_cases
        .iter()
        .filter(|u| u.is_overridden())
        .map(|u| AuditRecord {
            actor: actor.clone(),
            action: AuditAction::MaterialityOverride,
            target: format!("use_cases.{}.materiality", u.id),
            before: serde_json::Value::Null,
            after: json!({
                "default": u.materiality_default,
                "adjusted": u.materiality_adjusted,
                "effective": u.effective_materiality(),
            }),
            note: u.override_note.clone().unwrap_or_default(),
        })
        .collect();
    let created = state.store.create_session(session, records)?;
    Ok(session_response(StatusCode::CREATED, created))
}

async fn import_session(State(state): State<AppState>, body: Bytes) -> ApiResult {
    let archive: SessionArchive = parse_body(&body)?;
    let imported = state.store.import_session(archive)?;
    Ok(session_response(StatusCode::CREATED, imported))
}

async fn get_session(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult {
    Ok(session_response(
        StatusCode::OK,
        state.store.get_session(&id)?,
    ))
}

async fn put_session(
    State(state): State<AppState>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult {
    if if_match(&headers)?.is_none() {
        return Err(ApiError::new(
            "request.precondition",
            "replacing a session requires an If-Match header with the revision being replaced",
        ));
    }
    let mut incoming: Session = parse_body(&body)?;
    if incoming.id.is_empty() {
        incoming.id = id.clone();
    } else if incoming.id != id {
        return Err(ApiError::new(
            "request.body",
            "session id in the body does not match the path",
        ));
    }
    let (saved, ()) = mutate(&state, &id, &headers, |current, bank, actor| {
        let (next, records) =
            workflow::replace_session(current, incoming.clone(), bank, actor, "")?;
        *current = next;
        Ok(((), records))
    })?;
    Ok(session_response(StatusCode::OK, saved))
}

#[derive(Debug, Serialize)]
struct UseCaseView {
    revision: u64,
    use_case: MaterialityRow,
    profile: UseCaseProfile,
}

fn use_case_view(session: &Session, use_case_id: &str) -> Response {
    let row = materiality_rows(session)
        .into_iter()
        .find(|r| r.use_case_id == use_case_id)
        .expect("edited use case exists");
    let profile = session
        .use_case(use_case_id)
        .expect("edited use case exists")
        .clone();
    with_etag(
        session.revision,
        UseCaseView {
            revision: session.revision,
            use_case: row,
            profile,
        },
    )
}

async fn post_marks(
    State(state): State<AppState>,
    Path((id, use_case)): Path<(String, String)>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult {
    let update: UseCaseUpdate = parse_body(&body)?;
    let (saved, ()) = mutate(&state, &id, &headers, |s, _, actor| {
        let (_, record) = workflow::update_use_case(s, &use_case, &update, actor)?;
        Ok(((), vec![record]))
    })?;
    Ok(use_case_view(&saved, &use_case))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MaterialityOverrideRequest {
    /// `null` removes the override.
    level: Option<MaterialityLevel>,
    #[serde(default)]
    note: String,
}

async fn post_override(
    State(state): State<AppState>,
    Path((id, use_case)): Path<(String, String)>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult {
    let req: MaterialityOverrideRequest = parse_body(&body)?;
    let (saved, ()) = mutate(&state, &id, &headers, |s, _, actor| {
        let record = match req.level {
            Some(level) => workflow::override_materiality(s, &use_case, level, &req.note, actor)?,
            None => workflow::clear_materiality_override(s, &use_case, &req.note, actor)?,
        };
        Ok(((), vec![record]))
    })?;
    Ok(use_case_view(&saved, &use_case))
}

async fn post_governance(
    State(state): State<AppState>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult {
    let update: GovernanceUpdate = parse_body(&body)?;
    let (saved, ()) = mutate(&state, &id, &headers, |s, _, actor| {
        Ok(((), vec![workflow::update_governance(s, &update, actor)?]))
    })?;
    Ok(with_etag(
        saved.revision,
        json!({ "revision": saved.revision, "governance": saved.governance }),
    ))
}

fn require_bank(bank: Option<&BankManifest>, session: &Session) -> ApiResult<()> {
    if bank.is_none() {
        return Err(ApiError::new(
            "bank.not_found",
            format!("question bank `{}` is not loaded", session.bank_version),
        ));
    }
    Ok(())
}

async fn post_answers(
    State(state): State<AppState>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult {
    let update: AnswersUpdate = parse_body(&body)?;
    let (saved, ()) = mutate(&state, &id, &headers, |s, bank, actor| {
        require_bank(bank, s)?;
        let bank = bank.expect("checked above");
        Ok(((), vec![workflow::update_answers(s, bank, &update, actor)?]))
    })?;
    Ok(with_etag(
        saved.revision,
        json!({ "revision": saved.revision, "deep_dive": saved.deep_dive }),
    ))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FinalOverrideRequest {
    level: FinalLevel,
    #[serde(default)]
    note: String,
}

async fn post_final_override(
    State(state): State<AppState>,
    Path((id, principle)): Path<(String, String)>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult {
    let principle: Principle =
        principle
            .parse()
            .map_err(|e: esgai_core::model::UnknownVariant| {
                ApiError::new("request.path", e.to_string())
            })?;
    let req: FinalOverrideRequest = parse_body(&body)?;
    let (saved, ()) = mutate(&state, &id, &headers, |s, _, actor| {
        Ok((
            (),
            vec![workflow::override_final_level(
                s, principle, req.level, &req.note, actor,
            )?],
        ))
    })?;
    Ok(with_etag(
        saved.revision,
        json!({ "revision": saved.revision, "deep_dive": saved.deep_dive }),
    ))
}

async fn post_preview(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult {
    let config: ScoringConfig = parse_body(&body)?;
    let mut session = state.store.get_session(&id)?;
    session.config = config;
    workflow::recompute(&mut session, None)?;
    Ok(
        Json(json!({ "config": session.config, "materiality": materiality_rows(&session) }))
            .into_response(),
    )
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ForkRequest {
    config: ScoringConfig,
    #[serde(default)]
    note: String,
}

async fn post_fork(
    State(state): State<AppState>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult {
    let req: ForkRequest = parse_body(&body)?;
    let parent = state.store.get_session(&id)?;
    let bank = state.banks.get(&parent.bank_version);
    let (child, record) = workflow::fork_with_config(
        &parent,
        req.config,
        bank.as_deref(),
        &actor(&headers),
        &req.note,
    )?;
    let created = state.store.create_session(child, vec![record])?;
    Ok(session_response(StatusCode::CREATED, created))
}

async fn get_report(
    State(state): State<AppState>,
    Path(id): Path<String>,
    query: Result<Query<BTreeMap<String, String>>, QueryRejection>,
) -> ApiResult {
    let q = parse_query(query)?;
    let format: ReportFormat = q
        .get("format")
        .map(String::as_str)
        .unwrap_or("json")
        .parse()?;
    let section: Option<Section> = q.get("section").map(|s| s.parse()).transpose()?;
    let session = state.store.get_session(&id)?;
    let bank = state.banks.get(&session.bank_version);
    let text = session_report(&session, bank.as_deref()).render(format, section)?;
    let content_type = match format {
        ReportFormat::Json => "application/json",
        ReportFormat::Csv => "text/csv; charset=utf-8",
        ReportFormat::Markdown => "text/markdown; charset=utf-8",
    };
    Ok(([(header::CONTENT_TYPE, content_type)], text).into_response())
}

async fn get_audit(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult {
    Ok(Json(state.store.audit_log(&id)?).into_response())
}

async fn get_export(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult {
    Ok(Json(state.store.export_session(&id)?).into_response())
}

async fn get_config(State(state): State<AppState>) -> ApiResult {
    Ok(Json(state.store.config()?).into_response())
}

async fn put_config(
    State(state): State<AppState>,
    headers: HeaderMap,
    query: Result<Query<BTreeMap<String, String>>, QueryRejection>,
    body: Bytes,
) -> ApiResult {
    let q = parse_query(query)?;
    let config: ScoringConfig = parse_body(&body)?;
    let issues = config.validate();
    if !issues.is_empty() {
        return Err(
            ApiError::new("config.invalid", "invalid scoring configuration")
                .with_details(json!({ "violations": issues })),
        );
    }
    let note = q.get("note").cloned().unwrap_or_default();
    let entry = state
        .store
        .put_config(config.clone(), &actor(&headers), &note)?;
    Ok(Json(json!({ "config": config, "audit": entry })).into_response())
}

async fn get_config_audit(State(state): State<AppState>) -> ApiResult {
    Ok(Json(state.store.config_audit_log()?).into_response())
}
