//! Session-oriented HTTP front end over the ontoseer recommenders.
//!
//! Every handler delegates to the library with the session's ontology and
//! metadata plus the configured thresholds, so responses match direct
//! library calls on the same inputs.

pub mod config;
mod error;
mod session;

use std::collections::BTreeMap;
use std::net::SocketAddr;
use std::path::Path;
use std::sync::{Arc, RwLock};

use axum::extract::{DefaultBodyLimit, Path as UrlPath, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Redirect, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;

use ontoseer_core::axioms::{recommend_axioms, AxiomOptions, DEFAULT_AXIOM_K};
use ontoseer_core::cq::{seed_suggestions, SeedSuggestions};
use ontoseer_core::exec::Execution;
use ontoseer_core::index::CorpusIndex;
use ontoseer_core::naming::check_document;
use ontoseer_core::odp::{load_odp_dir, recommend_odps, OdpOptions, OdpRecord, OntologyMeta, DEFAULT_ODP_K};
use ontoseer_core::ontoclean::{questions_for, validate_hierarchy, Answers, Verdict};
use ontoseer_core::ontology::{load_corpus, parse_turtle, Iri, OntologyDocument, TermKind};

pub use config::{ConfigError, ServiceConfig, Thresholds};
pub use error::ServiceError;
use session::{Session, SessionStore};

pub const DEFAULT_TERM_K: usize = 5;

/// Corpus-derived state shared by every session. Replaced wholesale on
/// reindex.
#[derive(Debug, Default)]
pub struct Catalog {
    pub corpus: Vec<OntologyDocument>,
    pub index: CorpusIndex,
    pub odps: Vec<OdpRecord>,
}

impl Catalog {
    /// Load the corpus and ODP catalogue named by `config`. The index is
    /// read from `index_path` when that file exists, else built from the
    /// corpus.
    pub fn load(config: &ServiceConfig) -> Result<Self, ServiceError> {
        let corpus = match &config.corpus_dir {
            Some(dir) => load_corpus(dir, Execution::default()).map_err(|e| ServiceError::Startup(e.to_string()))?,
            None => Vec::new(),
        };
        let index = match &config.index_path {
            Some(path) if path.exists() => CorpusIndex::load(path).map_err(|e| ServiceError::Startup(e.to_string()))?,
            _ => CorpusIndex::build(&corpus).map_err(|e| ServiceError::Startup(e.to_string()))?,
        };
        let odps = match &config.odp_dir {
            Some(dir) => load_odp_dir(dir).map_err(|e| ServiceError::Startup(e.to_string()))?,
            None => Vec::new(),
        };
        Ok(Catalog { corpus, index, odps })
    }
}

pub struct AppState {
    pub config: ServiceConfig,
    catalog: RwLock<Arc<Catalog>>,
    sessions: SessionStore,
}

impl AppState {
    pub fn new(config: ServiceConfig, catalog: Catalog) -> Self {
        AppState {
            config,
            catalog: RwLock::new(Arc::new(catalog)),
            sessions: SessionStore::default(),
        }
    }

    pub fn from_config(config: ServiceConfig) -> Result<Self, ServiceError> {
        let catalog = Catalog::load(&config)?;
        Ok(Self::new(config, catalog))
    }

    pub fn catalog(&self) -> Arc<Catalog> {
        self.catalog.read().expect("catalog lock").clone()
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    let limit = state.config.max_body_bytes;
    let mut app = Router::new()
        .route("/ontology", post(create_session))
        .route("/sessions/{id}", get(session_summary))
        .route("/sessions/{id}/recommend/{kind}", get(recommend))
        .route("/sessions/{id}/meta", post(set_meta))
        .route("/sessions/{id}/hierarchy/questions", get(hierarchy_questions))
        .route("/sessions/{id}/hierarchy/answers", post(hierarchy_answers))
        .route("/admin/reindex", post(reindex));
    if let Some(dir) = &state.config.ui_dir {
        app = app
            .nest_service("/ui", ServeDir::new(dir).append_index_html_on_directories(true))
            .route("/", get(|| async { Redirect::temporary("/ui/") }));
    }
    app.layer(DefaultBodyLimit::max(limit)).with_state(state)
}

/// Bind and serve until Ctrl-C.
pub async fn serve(config: ServiceConfig) -> Result<(), ServiceError> {
    let addr = SocketAddr::from(([127, 0, 0, 1], config.port));
    let state = Arc::new(AppState::from_config(config)?);
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .map_err(|e| ServiceError::Startup(format!("bind {addr}: {e}")))?;
    eprintln!("listening on http://{addr}");
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
        .map_err(|e| ServiceError::Startup(e.to_string()))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Created {
    pub session: String,
}

async fn create_session(State(state): State<Arc<AppState>>, body: String) -> Result<Response, ServiceError> {
    let doc = parse_turtle(&body)?;
    let id = state.sessions.insert(doc);
    Ok((StatusCode::CREATED, Json(Created { session: id })).into_response())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SessionSummary {
    pub session: String,
    pub created_at: u64,
    pub ontology_id: String,
    pub classes: usize,
    pub object_properties: usize,
    pub data_properties: usize,
    pub axioms: usize,
    pub skipped_constructs: usize,
    pub meta: OntologyMeta,
}

async fn session_summary(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<SessionSummary>, ServiceError> {
    let session = state.sessions.get(&id)?;
    let doc = session.working();
    Ok(Json(SessionSummary {
        session: session.id.clone(),
        created_at: session
            .created_at
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or_default(),
        ontology_id: doc.ontology_id.clone(),
        classes: doc.classes.len(),
        object_properties: doc.object_properties.len(),
        data_properties: doc.data_properties.len(),
        axioms: doc.axioms.len(),
        skipped_constructs: doc.skipped_constructs,
        meta: session.meta(),
    }))
}

/// Shared response shape for every recommender.
#[derive(Debug, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub items: Vec<T>,
    pub kind: String,
    pub k: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
pub struct RecommendParams {
    pub query: Option<String>,
    pub k: Option<usize>,
    pub threshold: Option<f64>,
    pub floor: Option<f64>,
    pub term_kind: Option<String>,
    pub remote: Option<String>,
}

fn check_unit(name: &str, v: Option<f64>, default: f64) -> Result<f64, ServiceError> {
    match v {
        None => Ok(default),
        Some(v) if (0.0..=1.0).contains(&v) => Ok(v),
        Some(v) => Err(ServiceError::BadParams(format!("{name}={v} is outside [0,1]"))),
    }
}

fn check_k(k: Option<usize>, default: usize) -> Result<usize, ServiceError> {
    match k {
        Some(0) => Err(ServiceError::BadParams("k must be at least 1".into())),
        Some(k) => Ok(k),
        None => Ok(default),
    }
}

fn envelope<T: Serialize>(kind: &str, k: Option<usize>, items: Vec<T>) -> Response {
    Json(Envelope {
        items,
        kind: kind.to_string(),
        k,
    })
    .into_response()
}

async fn recommend(
    State(state): State<Arc<AppState>>,
    UrlPath((id, kind)): UrlPath<(String, String)>,
    Query(params): Query<RecommendParams>,
) -> Result<Response, ServiceError> {
    let session = state.sessions.get(&id)?;
    let catalog = state.catalog();
    let t = state.config.thresholds;
    match kind.as_str() {
        "terms" => {
            let k = check_k(params.k, DEFAULT_TERM_K)?;
            let query = params
                .query
                .filter(|q| !q.trim().is_empty())
                .ok_or_else(|| ServiceError::BadParams("query is required".into()))?;
            if let Some(provider) = params.remote {
                return remote_terms(&state, &provider, &query, k).await;
            }
            let floor = check_unit("floor", params.floor, t.term_floor)?;
            let term_kind = params
                .term_kind
                .map(|s| s.parse::<TermKind>())
                .transpose()
                .map_err(ServiceError::BadParams)?;
            let items = catalog
                .index
                .recommend_terms(&query, term_kind, k, floor)
                .map_err(|e| ServiceError::BadParams(e.to_string()))?;
            Ok(envelope("terms", Some(k), items))
        }
        "axioms" => {
            let options = AxiomOptions {
                k: check_k(params.k, DEFAULT_AXIOM_K)?,
                threshold: check_unit("threshold", params.threshold, t.axiom)?,
                exec: Execution::default(),
            };
            let working = session.working();
            let items: Vec<_> = recommend_axioms(&working, &catalog.corpus, &catalog.index, options)
                .iter()
                .map(|r| r.to_recommendation())
                .collect();
            Ok(envelope("axioms", Some(options.k), items))
        }
        "odps" => {
            let options = OdpOptions {
                k: check_k(params.k, DEFAULT_ODP_K)?,
                threshold: check_unit("threshold", params.threshold, t.odp)?,
                exec: Execution::default(),
            };
            let (working, meta) = (session.working(), session.meta());
            let items = recommend_odps(&working, &meta, &catalog.odps, options);
            Ok(envelope("odps", Some(options.k), items))
        }
        "names" => Ok(envelope("names", None, check_document(&session.working()))),
        other => Err(ServiceError::BadParams(format!(
            "unknown recommendation kind {other:?} (expected terms, axioms, odps or names)"
        ))),
    }
}

#[cfg(feature = "remote")]
async fn remote_terms(state: &AppState, provider: &str, query: &str, k: usize) -> Result<Response, ServiceError> {
    use ontoseer_core::index::remote::{query_remote, Provider, BIOPORTAL_KEY_ENV};
    if !state.config.remote_enabled {
        return Err(ServiceError::BadParams("remote lookups are disabled".into()));
    }
    let provider: Provider = provider.parse().map_err(ServiceError::BadParams)?;
    let query = query.to_string();
    let key = std::env::var(BIOPORTAL_KEY_ENV).ok();
    let mut items = tokio::task::spawn_blocking(move || query_remote(provider, &query, key.as_deref()))
        .await
        .map_err(|e| ServiceError::Remote(e.to_string()))?
        .map_err(|e| ServiceError::Remote(e.to_string()))?;
    items.truncate(k);
    Ok(envelope("terms", Some(k), items))
}

#[cfg(not(feature = "remote"))]
async fn remote_terms(_: &AppState, _: &str, _: &str, _: usize) -> Result<Response, ServiceError> {
    Err(ServiceError::BadParams("built without remote support".into()))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MetaResponse {
    pub meta: OntologyMeta,
    pub seeds: SeedSuggestions,
}

async fn set_meta(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    Json(meta): Json<OntologyMeta>,
) -> Result<Json<MetaResponse>, ServiceError> {
    let session = state.sessions.get(&id)?;
    let seeds = seed_suggestions(&meta.cqs);
    session.set_meta(meta.clone());
    Ok(Json(MetaResponse { meta, seeds }))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct QuestionGroup {
    pub class: Iri,
    pub questions: Vec<String>,
}

fn pending_questions(session: &Session) -> Vec<QuestionGroup> {
    let answers = session.answers();
    session
        .hierarchy_classes()
        .into_iter()
        .filter(|c| {
            let a = answers.get(c).copied().unwrap_or_default();
            a.q1.is_none() || a.q2.is_none() || a.q3.is_none()
        })
        .map(|class| QuestionGroup {
            questions: questions_for(&class).to_vec(),
            class,
        })
        .collect()
}

async fn hierarchy_questions(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<Vec<QuestionGroup>>, ServiceError> {
    let session = state.sessions.get(&id)?;
    Ok(Json(pending_questions(&session)))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HierarchyReport {
    pub verdicts: Vec<Verdict>,
    pub pending: Vec<QuestionGroup>,
}

/// Body: `{ "<class IRI>": { "q1": true, "q3": false }, ... }`.
async fn hierarchy_answers(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    Json(posted): Json<BTreeMap<String, Answers>>,
) -> Result<Json<HierarchyReport>, ServiceError> {
    let session = state.sessions.get(&id)?;
    let working = session.working();
    let mut parsed = Vec::with_capacity(posted.len());
    for (class, answers) in posted {
        let iri = Iri::new(class.as_str()).map_err(|_| ServiceError::UnknownClass(class.clone()))?;
        if !working.classes.contains(&iri) {
            return Err(ServiceError::UnknownClass(class));
        }
        parsed.push((iri, answers));
    }
    session.merge_answers(parsed);
    let verdicts = validate_hierarchy(&working, &session.profiles());
    Ok(Json(HierarchyReport {
        verdicts,
        pending: pending_questions(&session),
    }))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReindexReport {
    pub ontologies: usize,
    pub tokens: usize,
    pub odps: usize,
}

async fn reindex(State(state): State<Arc<AppState>>) -> Result<Json<ReindexReport>, ServiceError> {
    let config = state.config.clone();
    if config.corpus_dir.is_none() {
        return Err(ServiceError::NoCorpus);
    }
    let catalog = tokio::task::spawn_blocking(move || -> Result<Catalog, ServiceError> {
        let fresh = ServiceConfig {
            index_path: None,
            ..config.clone()
        };
        let catalog = Catalog::load(&fresh)?;
        if let Some(path) = &config.index_path {
            catalog
                .index
                .save(Path::new(path))
                .map_err(|e| ServiceError::Startup(e.to_string()))?;
        }
        Ok(catalog)
    })
    .await
    .map_err(|e| ServiceError::Startup(e.to_string()))??;
    let report = ReindexReport {
        ontologies: catalog.index.registry().len(),
        tokens: catalog.index.tokens().count(),
        odps: catalog.odps.len(),
    };
    *state.catalog.write().expect("catalog lock") = Arc::new(catalog);
    Ok(Json(report))
}
