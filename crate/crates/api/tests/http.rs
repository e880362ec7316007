use std::collections::BTreeSet;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use esgai_api::{router, AppState, CorsOrigins, SessionView, ROUTES};
use esgai_core::bank::BankCatalog;
use esgai_core::model::{
    EsgTopic, FinalLevel, GovernanceIndicator, ImpactMark, ImpactScope, MaterialityLevel,
    Principle, RegulatoryFlag, SessionStatus, SystemCategory,
};
use esgai_core::report::materiality_rows;
use esgai_core::scoring::score_use_case;
use esgai_core::store::{FileStore, MemoryStore, SessionStore};
use esgai_core::workflow;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

struct Harness {
    app: Router,
    store: Arc<dyn SessionStore>,
}

fn harness_with(store: Arc<dyn SessionStore>, origins: CorsOrigins) -> Harness {
    let state = AppState::new(store.clone(), BankCatalog::builtin());
    Harness {
        app: router(state, &origins),
        store,
    }
}

fn harness() -> Harness {
    harness_with(Arc::new(MemoryStore::new()), CorsOrigins::default())
}

struct Reply {
    status: StatusCode,
    headers: axum::http::HeaderMap,
    body: Vec<u8>,
}

impl Reply {
    fn json(&self) -> Value {
        serde_json::from_slice(&self.body).unwrap_or_else(|e| {
            panic!(
                "body is not JSON ({e}): {}",
                String::from_utf8_lossy(&self.body)
            )
        })
    }

    fn text(&self) -> String {
        String::from_utf8(self.body.clone()).unwrap()
    }
}

impl Harness {
    async fn send(&self, req: Request<Body>) -> Reply {
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let headers = resp.headers().clone();
        let body = resp
            .into_body()
            .collect()
            .await
            .unwrap()
            .to_bytes()
            .to_vec();
        Reply {
            status,
            headers,
            body,
        }
    }

    async fn call(
        &self,
        method: Method,
        uri: &str,
        body: Option<Value>,
        extra: &[(&str, &str)],
    ) -> Reply {
        let mut b = Request::builder().method(method).uri(uri);
        for (k, v) in extra {
            b = b.header(*k, *v);
        }
        let req = match body {
            Some(v) => b
                .header(header::CONTENT_TYPE, "application/json")
                .body(Body::from(v.to_string()))
                .unwrap(),
            None => b.body(Body::empty()).unwrap(),
        };
        self.send(req).await
    }

    async fn get(&self, uri: &str) -> Reply {
        self.call(Method::GET, uri, None, &[]).await
    }

    async fn post(&self, uri: &str, body: Value) -> Reply {
        self.call(Method::POST, uri, Some(body), &[("x-actor", "analyst")])
            .await
    }

    async fn create(&self, id: &str) -> Value {
        let r = self
            .post("/v1/sessions", json!({ "id": id, "company": "Acme" }))
            .await;
        assert_eq!(r.status, StatusCode::CREATED, "{}", r.text());
        r.json()
    }
}

fn all_marks(mark: &str) -> Value {
    let mut m = serde_json::Map::new();
    for t in EsgTopic::IMPACT_TOPICS {
        m.insert(t.as_str().to_string(), json!(mark));
    }
    Value::Object(m)
}

#[tokio::test]
async fn create_defaults_to_seed_use_cases() {
    let h = harness();
    let body = h.create("acme").await;
    let view: SessionView = serde_json::from_value(body).unwrap();
    assert_eq!(view.session.use_cases.len(), 27);
    assert_eq!(view.session.revision, 1);
    assert_eq!(view.materiality.len(), 27);
    let clinical = view
        .materiality
        .iter()
        .find(|r| r.use_case == "Clinical care")
        .unwrap();
    assert_eq!(clinical.materiality_default, MaterialityLevel::High);
    assert!(!clinical.action_required);
    let undetermined = view
        .materiality
        .iter()
        .filter(|r| r.action_required)
        .count();
    assert_eq!(undetermined, 2);
}

#[tokio::test]
async fn marks_on_every_topic_give_high_impact() {
    let h = harness();
    h.create("acme").await;
    let r = h
        .post(
            "/v1/sessions/acme/use-cases/financials.fraud-detection/marks",
            json!({ "marks": all_marks("negative") }),
        )
        .await;
    assert_eq!(r.status, StatusCode::OK, "{}", r.text());
    let body = r.json();
    assert_eq!(body["use_case"]["impacted"], 9);
    assert_eq!(body["use_case"]["impact_level"], "high");
    // Medium flag 0.5 + high impact 1 + industry 0.5 = 2
    assert_eq!(body["use_case"]["score"], 2.0);
    assert_eq!(body["use_case"]["materiality_default"], "high");
    assert_eq!(body["revision"], 2);
    assert_eq!(r.headers[header::ETAG], "\"2\"");
}

#[tokio::test]
async fn stale_if_match_is_a_conflict_with_both_revisions() {
    let h = harness();
    h.create("acme").await;
    let uri = "/v1/sessions/acme/use-cases/financials.fraud-detection/marks";
    let first = h
        .call(
            Method::POST,
            uri,
            Some(json!({ "marks": { "E1": "positive" } })),
            &[("if-match", "\"1\"")],
        )
        .await;
    assert_eq!(first.status, StatusCode::OK);
    let stale = h
        .call(
            Method::POST,
            uri,
            Some(json!({ "marks": { "E2": "positive" } })),
            &[("if-match", "\"1\"")],
        )
        .await;
    assert_eq!(stale.status, StatusCode::CONFLICT);
    let err = stale.json();
    assert_eq!(err["code"], "store.conflict");
    assert_eq!(err["details"]["expected_revision"], 1);
    assert_eq!(err["details"]["current_revision"], 2);
    // the losing edit left no trace
    let session = h.store.get_session("acme").unwrap();
    assert_eq!(
        session
            .use_case("financials.fraud-detection")
            .unwrap()
            .impact_marks[&EsgTopic::E2],
        ImpactMark::NotApplicable
    );
    assert_eq!(h.store.audit_log("acme").unwrap().len(), 1);
}

#[tokio::test]
async fn override_requires_note_and_keeps_default() {
    let h = harness();
    h.create("acme").await;
    let uri = "/v1/sessions/acme/use-cases/financials.fraud-detection/override";
    let r = h.post(uri, json!({ "level": "high" })).await;
    assert_eq!(r.status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(r.json()["code"], "override.note.required");

    let r = h
        .post(uri, json!({ "level": "high", "note": "regulator focus" }))
        .await;
    assert_eq!(r.status, StatusCode::OK, "{}", r.text());
    let body = r.json();
    assert_eq!(body["use_case"]["materiality_default"], "medium");
    assert_eq!(body["use_case"]["materiality_adjusted"], "high");
    assert_eq!(body["use_case"]["overridden"], true);

    let audit = h.get("/v1/sessions/acme/audit").await.json();
    let entries = audit.as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["action"], "materiality_override");
    assert_eq!(entries[0]["actor"], "analyst");
    assert_eq!(entries[0]["note"], "regulator focus");

    let cleared = h
        .post(uri, json!({ "level": null, "note": "back to default" }))
        .await;
    assert_eq!(cleared.status, StatusCode::OK);
    assert_eq!(cleared.json()["use_case"]["overridden"], false);
}

#[tokio::test]
async fn derived_values_match_the_library() {
    let h = harness();
    h.create("acme").await;
    h.post(
        "/v1/sessions/acme/use-cases/health-care.clinical-care/marks",
        json!({ "marks": { "S2": "both", "S5": "negative", "S6": "negative", "E1": "positive" } }),
    )
    .await;
    h.post(
        "/v1/sessions/acme/governance",
        json!({ "judgments": workflow::all_judgments(&GovernanceIndicator::ALL[..5]) }),
    )
    .await;
    let bank = BankCatalog::builtin().get("synthetic-complete-1").unwrap();
    let qs: Vec<_> = bank
        .questions
        .iter()
        .filter(|q| q.principle == Principle::Far)
        .take(3)
        .collect();
    let answers: serde_json::Map<_, _> = qs
        .iter()
        .zip([5, 4, 2])
        .map(|(q, v)| (q.id.clone(), json!({ "value": v })))
        .collect();
    let r = h
        .post(
            "/v1/sessions/acme/deep-dive/answers",
            json!({ "answers": answers }),
        )
        .await;
    assert_eq!(r.status, StatusCode::OK, "{}", r.text());

    let view: SessionView =
        serde_json::from_value(h.get("/v1/sessions/acme").await.json()).unwrap();
    let stored = h.store.get_session("acme").unwrap();
    assert_eq!(view.session, stored);
    assert_eq!(view.materiality, materiality_rows(&stored));
    assert!(workflow::stale_values(&stored, Some(&bank))
        .unwrap()
        .is_empty());

    let mut recomputed = stored.clone();
    workflow::recompute(&mut recomputed, Some(&bank)).unwrap();
    assert_eq!(recomputed, stored);

    for row in &view.materiality {
        let profile = stored.use_case(&row.use_case_id).unwrap();
        let score = score_use_case(profile, &stored.config).unwrap();
        assert_eq!(row.impacted, score.impact.impacted);
        assert_eq!(row.score, score.materiality.total);
        assert_eq!(row.materiality_default, score.materiality.level);
    }
    assert_eq!(stored.governance.score, 5.0);
    let far = &stored.deep_dive.principle_results[&Principle::Far];
    assert_eq!(far.average, 11.0 / 3.0);
    assert_eq!(far.final_level, FinalLevel::Moderate);
}

#[tokio::test]
async fn reads_do_not_mutate() {
    let h = harness();
    h.create("acme").await;
    let before = h.store.export_session("acme").unwrap();
    for uri in [
        "/v1/sessions",
        "/v1/sessions/acme",
        "/v1/sessions/acme/report",
        "/v1/sessions/acme/report?format=csv",
        "/v1/sessions/acme/report?format=markdown",
        "/v1/sessions/acme/audit",
        "/v1/sessions/acme/export",
    ] {
        assert_eq!(h.get(uri).await.status, StatusCode::OK, "{uri}");
    }
    let preview = h
        .post(
            "/v1/sessions/acme/preview",
            json!({ "t_high": 1.0, "t_low": 0.5 }),
        )
        .await;
    assert_eq!(preview.status, StatusCode::OK);
    let rows = preview.json()["materiality"].as_array().unwrap().clone();
    assert!(rows.iter().all(|r| r["materiality_default"] == "high"));
    assert_eq!(h.store.export_session("acme").unwrap(), before);
}

#[tokio::test]
async fn bank_filter_counts() {
    let h = harness();
    let r = h
        .get("/v1/banks/synthetic-complete-1/questions?category=high_risk")
        .await;
    assert_eq!(r.status, StatusCode::OK);
    let body = r.json();
    assert_eq!(
        (
            body["count"].as_u64(),
            body["mandatory"].as_u64(),
            body["optional"].as_u64()
        ),
        (Some(22), Some(17), Some(5))
    );

    let r = h
        .get("/v1/banks/synthetic-complete-1/questions?category=foundation_model")
        .await;
    let body = r.json();
    assert_eq!(
        (body["mandatory"].as_u64(), body["optional"].as_u64()),
        (Some(13), Some(8))
    );

    let r = h
        .get("/v1/banks/synthetic-complete-1/questions?esg_topic=Carbon%20emissions&org_type=both")
        .await;
    let principles: Vec<_> = r.json()["questions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| q["principle"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(principles, ["HSE", "HSE", "HSE", "ACC"]);

    let r = h
        .get("/v1/banks/synthetic-complete-1/questions?principle=FAR,PRV")
        .await;
    let got: BTreeSet<_> = r.json()["questions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| q["principle"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(got, BTreeSet::from(["FAR".to_string(), "PRV".to_string()]));

    let bad = h
        .get("/v1/banks/synthetic-complete-1/questions?category=huge")
        .await;
    assert_eq!(bad.status, StatusCode::BAD_REQUEST);
    assert_eq!(bad.json()["code"], "filter.unknown_value");

    let missing = h.get("/v1/banks/nope/stats").await;
    assert_eq!(missing.status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn mapping_and_stats() {
    let h = harness();
    let csv = h
        .get("/v1/banks/synthetic-complete-1/mapping?format=csv")
        .await;
    assert_eq!(csv.status, StatusCode::OK);
    assert!(csv
        .text()
        .starts_with("principle,E1,E2,E3,S1,S2,S3,S4,S5,S6,G1,G2,G3\n"));
    let json = h.get("/v1/banks/synthetic-complete-1/mapping").await.json();
    assert_eq!(json["cells"].as_array().unwrap().len(), 8);

    let stats = h.get("/v1/banks/synthetic-complete-1/stats").await.json();
    assert_eq!(stats["provenance"]["percent"]["combined"], 67);
}

#[tokio::test]
async fn put_replaces_and_journals() {
    let h = harness();
    let created = h.create("acme").await;
    let mut session = created["session"].clone();
    let idx = session["use_cases"]
        .as_array()
        .unwrap()
        .iter()
        .position(|u| u["id"] == "financials.fraud-detection")
        .unwrap();
    session["use_cases"][idx]["impact_marks"] = all_marks("positive");

    let no_precondition = h
        .call(Method::PUT, "/v1/sessions/acme", Some(session.clone()), &[])
        .await;
    assert_eq!(no_precondition.status, StatusCode::PRECONDITION_REQUIRED);

    let r = h
        .call(
            Method::PUT,
            "/v1/sessions/acme",
            Some(session.clone()),
            &[("if-match", "\"1\"")],
        )
        .await;
    assert_eq!(r.status, StatusCode::OK, "{}", r.text());
    let view: SessionView = serde_json::from_value(r.json()).unwrap();
    assert_eq!(view.session.revision, 2);
    // the client-sent default was stale; the server recomputed it
    assert_eq!(
        view.session
            .use_case("financials.fraud-detection")
            .unwrap()
            .materiality_default,
        MaterialityLevel::High
    );
    assert!(!h.store.audit_log("acme").unwrap().is_empty());

    let again = h
        .call(
            Method::PUT,
            "/v1/sessions/acme",
            Some(session),
            &[("if-match", "\"1\"")],
        )
        .await;
    assert_eq!(again.status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn final_level_override() {
    let h = harness();
    h.create("acme").await;
    let uri = "/v1/sessions/acme/deep-dive/principles/ACC/override";
    let r = h.post(uri, json!({ "level": "strong", "note": "x" })).await;
    assert_eq!(r.status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(r.json()["code"], "principle.no_answers");

    let bank = BankCatalog::builtin().get("synthetic-complete-1").unwrap();
    let q = bank
        .questions
        .iter()
        .find(|q| q.principle == Principle::Acc)
        .unwrap();
    h.post(
        "/v1/sessions/acme/deep-dive/answers",
        json!({ "answers": { q.id.clone(): { "value": 2 } } }),
    )
    .await;
    let r = h.post(uri, json!({ "level": "strong" })).await;
    assert_eq!(r.json()["code"], "override.note.required");
    let r = h
        .post(uri, json!({ "level": "strong", "note": "board evidence" }))
        .await;
    assert_eq!(r.status, StatusCode::OK);
    let acc = &r.json()["deep_dive"]["principle_results"]["ACC"];
    assert_eq!(acc["suggested_level"], "weak");
    assert_eq!(acc["final_level"], "strong");
}

#[tokio::test]
async fn fork_export_import_and_config() {
    let h = harness();
    h.create("acme").await;
    let fork = h
        .post(
            "/v1/sessions/acme/fork",
            json!({ "config": { "t_high": 1.5 }, "note": "stricter" }),
        )
        .await;
    assert_eq!(fork.status, StatusCode::CREATED, "{}", fork.text());
    let child: SessionView = serde_json::from_value(fork.json()).unwrap();
    assert_eq!(child.session.parent.as_deref(), Some("acme"));
    assert_eq!(child.session.config.t_high, 1.5);

    let archive = h.get("/v1/sessions/acme/export").await.json();
    let other = harness();
    let imported = other.post("/v1/sessions/import", archive.clone()).await;
    assert_eq!(imported.status, StatusCode::CREATED);
    assert_eq!(other.get("/v1/sessions/acme/export").await.json(), archive);
    assert_eq!(
        other.post("/v1/sessions/import", archive).await.status,
        StatusCode::CONFLICT
    );

    let put = h
        .call(
            Method::PUT,
            "/v1/config?note=tighter",
            Some(json!({ "t_high": 3.0 })),
            &[("x-actor", "admin")],
        )
        .await;
    assert_eq!(put.status, StatusCode::OK);
    assert_eq!(h.get("/v1/config").await.json()["t_high"], 3.0);
    let log = h.get("/v1/config/audit").await.json();
    assert_eq!(log[0]["actor"], "admin");
    assert_eq!(log[0]["action"], "config_change");

    let bad = h
        .call(
            Method::PUT,
            "/v1/config",
            Some(json!({ "t_high": 0.5 })),
            &[],
        )
        .await;
    assert_eq!(bad.status, StatusCode::BAD_REQUEST);
    assert_eq!(bad.json()["code"], "config.invalid");
}

#[tokio::test]
async fn finalized_sessions_reject_edits() {
    let h = harness();
    h.create("acme").await;
    let mut s = h.store.get_session("acme").unwrap();
    s.status = SessionStatus::Finalized;
    h.store.save_session(s, 1, Vec::new()).unwrap();
    let r = h
        .post(
            "/v1/sessions/acme/use-cases/financials.fraud-detection/marks",
            json!({ "marks": { "E1": "positive" } }),
        )
        .await;
    assert_eq!(r.status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(r.json()["code"], "store.finalized");
}

#[tokio::test]
async fn error_bodies() {
    let h = harness();
    let r = h.get("/v1/nothing").await;
    assert_eq!(r.status, StatusCode::NOT_FOUND);
    assert_eq!(r.json()["code"], "route.not_found");

    let r = h.call(Method::DELETE, "/v1/sessions", None, &[]).await;
    assert_eq!(r.status, StatusCode::METHOD_NOT_ALLOWED);
    assert_eq!(r.json()["code"], "request.method");

    let r = h
        .post("/v1/sessions", json!({ "company": "A", "colour": "red" }))
        .await;
    assert_eq!(r.status, StatusCode::BAD_REQUEST);
    assert_eq!(r.json()["code"], "request.body");

    let r = h.get("/v1/sessions/ghost").await;
    assert_eq!(r.status, StatusCode::NOT_FOUND);
    assert_eq!(r.json()["code"], "store.not_found");

    h.create("acme").await;
    let r = h
        .post(
            "/v1/sessions/acme/use-cases/ghost/marks",
            json!({ "marks": {} }),
        )
        .await;
    assert_eq!(r.status, StatusCode::NOT_FOUND);
    assert_eq!(r.json()["code"], "use_case.not_found");

    let r = h
        .post(
            "/v1/sessions/acme/use-cases/financials.fraud-detection/marks",
            json!({ "marks": { "G1": "positive" } }),
        )
        .await;
    assert_eq!(r.status, StatusCode::UNPROCESSABLE_ENTITY);

    let r = h.get("/v1/sessions/acme/report?format=pdf").await;
    assert_eq!(r.status, StatusCode::BAD_REQUEST);
    assert_eq!(r.json()["code"], "report.format");
}

#[tokio::test]
async fn cors_preflight() {
    let h = harness_with(
        Arc::new(MemoryStore::new()),
        CorsOrigins(vec!["http://localhost:5173".to_string()]),
    );
    let req = Request::builder()
        .method(Method::OPTIONS)
        .uri("/v1/sessions")
        .header(header::ORIGIN, "http://localhost:5173")
        .header(header::ACCESS_CONTROL_REQUEST_METHOD, "POST")
        .header(
            header::ACCESS_CONTROL_REQUEST_HEADERS,
            "content-type,if-match,x-actor",
        )
        .body(Body::empty())
        .unwrap();
    let r = h.send(req).await;
    assert!(r.status.is_success());
    assert_eq!(
        r.headers[header::ACCESS_CONTROL_ALLOW_ORIGIN],
        "http://localhost:5173"
    );

    let req = Request::builder()
        .uri("/v1/health")
        .header(header::ORIGIN, "http://evil.example")
        .body(Body::empty())
        .unwrap();
    let r = h.send(req).await;
    assert!(r.headers.get(header::ACCESS_CONTROL_ALLOW_ORIGIN).is_none());
}

#[tokio::test]
async fn file_store_survives_a_new_router() {
    let dir = tempfile::tempdir().unwrap();
    let store: Arc<dyn SessionStore> = Arc::new(FileStore::open(dir.path()).unwrap());
    let h = harness_with(store, CorsOrigins::default());
    h.create("acme").await;
    h.post(
        "/v1/sessions/acme/use-cases/financials.credit-scoring-approval/override",
        json!({ "level": "low", "note": "limited book" }),
    )
    .await;
    let before = h.get("/v1/sessions/acme/export").await.json();
    drop(h);

    let reopened: Arc<dyn SessionStore> = Arc::new(FileStore::open(dir.path()).unwrap());
    let h = harness_with(reopened, CorsOrigins::default());
    assert_eq!(h.get("/v1/sessions/acme/export").await.json(), before);
}

// Contract: docs/openapi.json lists exactly the served routes, every route is
// reachable, and every enum in the document uses the library's spellings.

fn openapi() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/openapi.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn contract_lists_exactly_the_served_routes() {
    let doc = openapi();
    let mut documented = BTreeSet::new();
    for (path, ops) in doc["paths"].as_object().unwrap() {
        for method in ops.as_object().unwrap().keys() {
            documented.insert((method.to_uppercase(), path.clone()));
        }
    }
    let served: BTreeSet<_> = ROUTES
        .iter()
        .map(|(m, p)| (m.to_string(), p.to_string()))
        .collect();
    assert_eq!(documented, served);
}

#[tokio::test]
async fn every_documented_route_is_reachable() {
    let h = harness();
    h.create("acme").await;
    for (method, path) in ROUTES {
        let uri = path
            .replace("{version}", "synthetic-complete-1")
            .replace("{id}", "acme")
            .replace("{use_case}", "financials.fraud-detection")
            .replace("{principle}", "ACC");
        let method: Method = method.parse().unwrap();
        let body = (method != Method::GET).then(|| json!({}));
        let r = h.call(method.clone(), &uri, body, &[]).await;
        assert_ne!(r.status, StatusCode::METHOD_NOT_ALLOWED, "{method} {uri}");
        if r.status == StatusCode::NOT_FOUND {
            assert_ne!(r.json()["code"], "route.not_found", "{method} {uri}");
        }
    }
}

fn wire<T: serde::Serialize>(items: &[T]) -> BTreeSet<String> {
    items
        .iter()
        .map(|v| {
            serde_json::to_value(v)
                .unwrap()
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect()
}

fn documented_enum(doc: &Value, pointer: &str) -> BTreeSet<String> {
    doc.pointer(pointer)
        .unwrap_or_else(|| panic!("missing {pointer}"))
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn contract_enums_match_the_library() {
    let doc = openapi();
    let s = "/components/schemas";
    let uc = format!("{s}/UseCaseProfile/properties");
    assert_eq!(
        documented_enum(&doc, &format!("{uc}/regulatory_flag/enum")),
        wire(RegulatoryFlag::ALL)
    );
    assert_eq!(
        documented_enum(&doc, &format!("{uc}/impact_scope/enum")),
        wire(ImpactScope::ALL)
    );
    assert_eq!(
        documented_enum(
            &doc,
            &format!("{uc}/impact_marks/additionalProperties/enum")
        ),
        wire(ImpactMark::ALL)
    );
    assert_eq!(
        documented_enum(&doc, &format!("{uc}/impact_marks/propertyNames/enum")),
        wire(&EsgTopic::IMPACT_TOPICS)
    );
    assert_eq!(
        documented_enum(&doc, &format!("{uc}/materiality_default/enum")),
        wire(MaterialityLevel::ALL)
    );
    assert_eq!(
        documented_enum(&doc, &format!("{s}/Session/properties/status/enum")),
        wire(SessionStatus::ALL)
    );
    assert_eq!(
        documented_enum(&doc, &format!("{s}/FinalOverride/properties/level/enum")),
        wire(FinalLevel::ALL)
    );
    assert_eq!(
        documented_enum(
            &doc,
            &format!("{s}/AnswersUpdate/properties/system_category/enum")
        ),
        wire(SystemCategory::ALL)
    );
    assert_eq!(
        documented_enum(
            &doc,
            &format!("{s}/GovernanceUpdate/properties/judgments/items/properties/indicator/enum")
        ),
        wire(&GovernanceIndicator::ALL)
    );
    assert_eq!(
        documented_enum(&doc, &format!("{s}/AuditEntry/properties/action/enum")),
        wire(esgai_core::model::AuditAction::ALL)
    );
}
