use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use ontoseer_core::axioms::{recommend_axioms, AxiomOptions};
use ontoseer_core::cq::seed_suggestions;
use ontoseer_core::naming::check_document;
use ontoseer_core::odp::{recommend_odps, OdpOptions, OntologyMeta};
use ontoseer_core::ontoclean::{profile_from_answers, validate_hierarchy, Answers};
use ontoseer_core::ontology::{parse_turtle, Iri};
use ontoseer_service::{router, AppState, ServiceConfig};

const SCHOOL: &str = "http://example.org/school#";

fn core_fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(rel)
}

fn config() -> ServiceConfig {
    ServiceConfig {
        corpus_dir: Some(core_fixture("corpus")),
        odp_dir: Some(core_fixture("odps")),
        ..ServiceConfig::default()
    }
}

fn app_with(config: ServiceConfig) -> (Arc<AppState>, Router) {
    let state = Arc::new(AppState::from_config(config).expect("state loads"));
    (state.clone(), router(state))
}

fn app() -> (Arc<AppState>, Router) {
    app_with(config())
}

fn turtle(name: &str) -> String {
    std::fs::read_to_string(core_fixture(&format!("working/{name}.ttl"))).unwrap()
}

async fn call(app: &Router, method: &str, uri: &str, body: Body, json_body: bool) -> (StatusCode, Vec<u8>) {
    let mut req = Request::builder().method(method).uri(uri);
    if json_body {
        req = req.header("content-type", "application/json");
    }
    let res = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, bytes)
}

async fn get(app: &Router, uri: &str) -> (StatusCode, Value) {
    let (s, b) = call(app, "GET", uri, Body::empty(), false).await;
    (s, serde_json::from_slice(&b).unwrap_or(Value::Null))
}

async fn post_json(app: &Router, uri: &str, body: Value) -> (StatusCode, Value) {
    let (s, b) = call(app, "POST", uri, Body::from(body.to_string()), true).await;
    (s, serde_json::from_slice(&b).unwrap_or(Value::Null))
}

async fn create(app: &Router, text: &str) -> String {
    let (s, b) = call(app, "POST", "/ontology", Body::from(text.to_string()), false).await;
    assert_eq!(s, StatusCode::CREATED);
    let v: Value = serde_json::from_slice(&b).unwrap();
    v["session"].as_str().unwrap().to_string()
}

fn envelope<T: serde::Serialize>(kind: &str, k: Option<usize>, items: T) -> Value {
    json!({ "items": items, "kind": kind, "k": k })
}

#[tokio::test]
async fn create_returns_distinct_sessions() {
    let (_, app) = app();
    let a = create(&app, &turtle("college")).await;
    let b = create(&app, &turtle("college")).await;
    assert_ne!(a, b);
    let (s, v) = get(&app, &format!("/sessions/{a}")).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["session"], a.as_str());
    assert_eq!(v["classes"], 2);
}

#[tokio::test]
async fn bad_turtle_reports_position() {
    let (_, app) = app();
    let text = std::fs::read_to_string(core_fixture("negative/unknown-prefix.ttl")).unwrap();
    let expected = parse_turtle(&text).unwrap_err().position();
    let (s, b) = call(&app, "POST", "/ontology", Body::from(text), false).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let v: Value = serde_json::from_slice(&b).unwrap();
    assert_eq!((v["line"].as_u64().unwrap() as usize, v["column"].as_u64().unwrap() as usize), expected);
    assert!(v["error"].is_string());
}

#[tokio::test]
async fn oversized_body_is_rejected() {
    let (_, app) = app_with(ServiceConfig {
        max_body_bytes: 1024,
        ..config()
    });
    let mut text = turtle("college");
    while text.len() <= 1024 {
        text.push_str("# padding padding padding\n");
    }
    let (s, _) = call(&app, "POST", "/ontology", Body::from(text), false).await;
    assert_eq!(s, StatusCode::PAYLOAD_TOO_LARGE);
}

#[tokio::test]
async fn unknown_session_is_404() {
    let (_, app) = app();
    for uri in ["/sessions/nope/recommend/terms?query=book", "/sessions/nope/hierarchy/questions", "/sessions/nope"] {
        assert_eq!(get(&app, uri).await.0, StatusCode::NOT_FOUND, "{uri}");
    }
    assert_eq!(post_json(&app, "/sessions/nope/meta", json!({})).await.0, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn terms_match_library() {
    let (state, app) = app();
    let id = create(&app, &turtle("college")).await;
    let (s, v) = get(&app, &format!("/sessions/{id}/recommend/terms?query=Book")).await;
    assert_eq!(s, StatusCode::OK);
    let direct = state.catalog().index.recommend_terms("Book", None, 5, 0.5).unwrap();
    assert_eq!(v, envelope("terms", Some(5), &direct));
    assert!(!direct.is_empty());

    let (_, v) = get(&app, &format!("/sessions/{id}/recommend/terms?query=person&k=2&floor=0.9&term_kind=class")).await;
    let direct = state
        .catalog()
        .index
        .recommend_terms("person", Some("class".parse().unwrap()), 2, 0.9)
        .unwrap();
    assert_eq!(v, envelope("terms", Some(2), &direct));
}

#[tokio::test]
async fn bad_params_are_400() {
    let (_, app) = app();
    let id = create(&app, &turtle("college")).await;
    for q in ["terms", "terms?query=x&k=0", "terms?query=x&floor=1.5", "axioms?threshold=-1", "nonsense"] {
        assert_eq!(get(&app, &format!("/sessions/{id}/recommend/{q}")).await.0, StatusCode::BAD_REQUEST, "{q}");
    }
    // Remote lookups are off unless configured.
    let (s, _) = get(&app, &format!("/sessions/{id}/recommend/terms?query=x&remote=lov")).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn axioms_match_library() {
    let (state, app) = app();
    let text = std::fs::read_to_string(core_fixture("corpus/agents.ttl")).unwrap();
    let id = create(&app, &text).await;
    let (s, v) = get(&app, &format!("/sessions/{id}/recommend/axioms")).await;
    assert_eq!(s, StatusCode::OK);
    let catalog = state.catalog();
    let working = parse_turtle(&text).unwrap();
    let direct: Vec<_> = recommend_axioms(&working, &catalog.corpus, &catalog.index, AxiomOptions::default())
        .iter()
        .map(|r| r.to_recommendation())
        .collect();
    assert_eq!(v, envelope("axioms", Some(3), &direct));
}

#[tokio::test]
async fn odps_use_session_meta() {
    let (state, app) = app();
    let id = create(&app, &turtle("college")).await;
    let meta = OntologyMeta {
        description: Some("College".into()),
        domain: None,
        cqs: vec!["Who teaches a course?".into()],
    };
    let (s, v) = post_json(&app, &format!("/sessions/{id}/meta"), serde_json::to_value(&meta).unwrap()).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["seeds"], serde_json::to_value(seed_suggestions(&meta.cqs)).unwrap());

    let (_, v) = get(&app, &format!("/sessions/{id}/recommend/odps?k=4")).await;
    let working = parse_turtle(&turtle("college")).unwrap();
    let options = OdpOptions {
        k: 4,
        ..OdpOptions::default()
    };
    let direct = recommend_odps(&working, &meta, &state.catalog().odps, options);
    assert_eq!(v, envelope("odps", Some(4), &direct));
    assert!(direct.iter().any(|r| r.item == "AgentRole"));
}

#[tokio::test]
async fn names_match_library() {
    let (_, app) = app();
    let id = create(&app, &turtle("naming")).await;
    let (_, v) = get(&app, &format!("/sessions/{id}/recommend/names")).await;
    let direct = check_document(&parse_turtle(&turtle("naming")).unwrap());
    assert_eq!(v, envelope("names", None, &direct));
}

#[tokio::test]
async fn hierarchy_round_trip() {
    let (_, app) = app();
    let id = create(&app, &turtle("student")).await;
    let (s, v) = get(&app, &format!("/sessions/{id}/hierarchy/questions")).await;
    assert_eq!(s, StatusCode::OK);
    let groups = v.as_array().unwrap();
    assert_eq!(groups.len(), 2);
    assert_eq!(groups[0]["questions"].as_array().unwrap().len(), 3);

    let person = format!("{SCHOOL}Person");
    let student = format!("{SCHOOL}Student");
    let body = json!({ person.clone(): { "q3": true }, student.clone(): { "q3": false } });
    let (s, v) = post_json(&app, &format!("/sessions/{id}/hierarchy/answers"), body).await;
    assert_eq!(s, StatusCode::OK);

    let working = parse_turtle(&turtle("student")).unwrap();
    let profiles = BTreeMap::from([
        (Iri::new(&person).unwrap(), profile_from_answers(Iri::new(&person).unwrap(), Answers { q3: Some(true), ..Answers::default() })),
        (Iri::new(&student).unwrap(), profile_from_answers(Iri::new(&student).unwrap(), Answers { q3: Some(false), ..Answers::default() })),
    ]);
    let direct = validate_hierarchy(&working, &profiles);
    assert_eq!(v["verdicts"], serde_json::to_value(&direct).unwrap());
    let unity = v["verdicts"].as_array().unwrap().iter().find(|x| x["rule"] == "Unity").unwrap();
    assert_eq!(unity["status"], "Violated");
    assert_eq!(v["pending"].as_array().unwrap().len(), 2);

    // Answering everything for Person leaves only Student pending.
    let body = json!({ person.clone(): { "q1": false, "q2": true } });
    let (_, v) = post_json(&app, &format!("/sessions/{id}/hierarchy/answers"), body).await;
    let pending = v["pending"].as_array().unwrap();
    assert_eq!(pending.len(), 1);
    assert_eq!(pending[0]["class"], student.as_str());
    let unity = v["verdicts"].as_array().unwrap().iter().find(|x| x["rule"] == "Unity").unwrap();
    assert_eq!(unity["status"], "Violated");
}

#[tokio::test]
async fn answers_for_unknown_class_are_rejected() {
    let (_, app) = app();
    let id = create(&app, &turtle("student")).await;
    let body = json!({ "http://example.org/school#Dragon": { "q1": true } });
    let (s, v) = post_json(&app, &format!("/sessions/{id}/hierarchy/answers"), body).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert!(v["error"].as_str().unwrap().contains("Dragon"));
}

#[tokio::test]
async fn sessions_are_isolated() {
    let (_, app) = app();
    let a = create(&app, &turtle("college")).await;
    let b = create(&app, &turtle("college")).await;
    let meta = json!({ "description": "Chemistry of gases", "cqs": [] });
    post_json(&app, &format!("/sessions/{a}/meta"), meta).await;
    let (_, va) = get(&app, &format!("/sessions/{a}")).await;
    let (_, vb) = get(&app, &format!("/sessions/{b}")).await;
    assert_eq!(va["meta"]["description"], "Chemistry of gases");
    assert_eq!(vb["meta"]["description"], Value::Null);
}

#[tokio::test]
async fn reindex_rebuilds_and_writes_index() {
    let dir = tempfile::tempdir().unwrap();
    let index_path = dir.path().join("index.json");
    let (_, app) = app_with(ServiceConfig {
        index_path: Some(index_path.clone()),
        ..config()
    });
    let (s, v) = post_json(&app, "/admin/reindex", json!({})).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["ontologies"], 20);
    assert_eq!(v["odps"], 12);
    assert!(index_path.exists());

    let (_, bare) = app_with(ServiceConfig::default());
    assert_eq!(post_json(&bare, "/admin/reindex", json!({})).await.0, StatusCode::CONFLICT);
}

#[tokio::test]
async fn ui_is_served_statically() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<html>workbench</html>").unwrap();
    std::fs::write(dir.path().join("app.js"), "console.log(1)").unwrap();
    let (_, app) = app_with(ServiceConfig {
        ui_dir: Some(dir.path().to_path_buf()),
        ..config()
    });
    let (s, b) = call(&app, "GET", "/ui/", Body::empty(), false).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(b, b"<html>workbench</html>");
    let (s, b) = call(&app, "GET", "/ui/app.js", Body::empty(), false).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(b, b"console.log(1)");
    assert_eq!(call(&app, "GET", "/ui/missing.js", Body::empty(), false).await.0, StatusCode::NOT_FOUND);
    assert!(call(&app, "GET", "/", Body::empty(), false).await.0.is_redirection());

    let (_, no_ui) = app_with(config());
    assert_eq!(call(&no_ui, "GET", "/ui/", Body::empty(), false).await.0, StatusCode::NOT_FOUND);
}
