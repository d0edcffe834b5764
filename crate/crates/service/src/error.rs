use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::json;

use ontoseer_core::ontology::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown session {0:?}")]
    UnknownSession(String),
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("{0}")]
    BadParams(String),
    #[error("no corpus directory is configured")]
    NoCorpus,
    #[error("remote provider failed: {0}")]
    Remote(String),
    #[error("{0}")]
    Startup(String),
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let message = self.to_string();
        let (status, body) = match &self {
            ServiceError::Parse(e) => {
                let (line, column) = e.position();
                (StatusCode::BAD_REQUEST, json!({ "error": message, "line": line, "column": column }))
            }
            ServiceError::UnknownSession(_) => (StatusCode::NOT_FOUND, json!({ "error": message })),
            ServiceError::UnknownClass(_) | ServiceError::BadParams(_) => {
                (StatusCode::BAD_REQUEST, json!({ "error": message }))
            }
            ServiceError::NoCorpus => (StatusCode::CONFLICT, json!({ "error": message })),
            ServiceError::Remote(_) => (StatusCode::BAD_GATEWAY, json!({ "error": message })),
            ServiceError::Startup(_) => (StatusCode::INTERNAL_SERVER_ERROR, json!({ "error": message })),
        };
        (status, Json(body)).into_response()
    }
}
