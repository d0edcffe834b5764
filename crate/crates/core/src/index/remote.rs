//! Clients for the remote term/vocabulary services (LOV term suggest and the
//! BioPortal recommender). Both map provider results onto [`Recommendation`].

use std::time::Duration;

use serde_json::Value;

use crate::recommendation::{rank_order, Recommendation};

pub const LOV_SUGGEST_URL: &str = "https://lov.linkeddata.es/dataset/lov/api/v2/term/suggest";
pub const BIOPORTAL_RECOMMENDER_URL: &str = "http://data.bioontology.org/recommender";

/// Environment variable holding the BioPortal API key.
pub const BIOPORTAL_KEY_ENV: &str = "ONTOSEER_BIOPORTAL_KEY";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provider {
    Lov,
    BioPortal,
}

impl std::str::FromStr for Provider {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lov" => Ok(Provider::Lov),
            "bioportal" => Ok(Provider::BioPortal),
            other => Err(format!("unknown provider {other:?} (expected lov or bioportal)")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RemoteError {
    #[error("network unavailable: {0}")]
    NetworkUnavailable(String),
    #[error("provider returned HTTP {0}")]
    ProviderError(u16),
    #[error("BioPortal requires an API key (set {BIOPORTAL_KEY_ENV})")]
    MissingApiKey,
    #[error("malformed provider response: {0}")]
    MalformedResponse(String),
}

#[derive(Debug, Clone)]
pub struct RemoteClient {
    pub lov_url: String,
    pub bioportal_url: String,
    pub timeout: Duration,
}

impl Default for RemoteClient {
    fn default() -> Self {
        RemoteClient {
            lov_url: LOV_SUGGEST_URL.to_string(),
            bioportal_url: BIOPORTAL_RECOMMENDER_URL.to_string(),
            timeout: Duration::from_secs(15),
        }
    }
}

impl RemoteClient {
    /// The GET URL for a query, with the query URL-encoded.
    pub fn request_url(&self, provider: Provider, query: &str, api_key: Option<&str>) -> Result<String, RemoteError> {
        let (base, params): (&str, Vec<(&str, &str)>) = match provider {
            Provider::Lov => (&self.lov_url, vec![("q", query)]),
            Provider::BioPortal => {
                let key = api_key.filter(|k| !k.is_empty()).ok_or(RemoteError::MissingApiKey)?;
                (&self.bioportal_url, vec![("input", query), ("apikey", key)])
            }
        };
        let url = url::Url::parse_with_params(base, params).map_err(|e| RemoteError::NetworkUnavailable(e.to_string()))?;
        Ok(url.into())
    }

    /// Query a provider. No partial results are returned on failure.
    pub fn query(&self, provider: Provider, query: &str, api_key: Option<&str>) -> Result<Vec<Recommendation>, RemoteError> {
        let url = self.request_url(provider, query, api_key)?;
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.timeout))
            .build()
            .into();
        let body = match agent.get(&url).header("Accept", "application/json").call() {
            Ok(mut response) => response
                .body_mut()
                .read_to_string()
                .map_err(|e| RemoteError::NetworkUnavailable(e.to_string()))?,
            Err(ureq::Error::StatusCode(code)) => return Err(RemoteError::ProviderError(code)),
            Err(e) => return Err(RemoteError::NetworkUnavailable(e.to_string())),
        };
        let json: Value = serde_json::from_str(&body).map_err(|e| RemoteError::MalformedResponse(e.to_string()))?;
        match provider {
            Provider::Lov => parse_lov(&json),
            Provider::BioPortal => parse_bioportal(&json),
        }
    }
}

/// Query a provider with the default endpoints.
pub fn query_remote(provider: Provider, query: &str, api_key: Option<&str>) -> Result<Vec<Recommendation>, RemoteError> {
    RemoteClient::default().query(provider, query, api_key)
}

// LOV wraps most fields in single-element arrays.
fn first_str(v: &Value) -> Option<&str> {
    match v {
        Value::String(s) => Some(s),
        Value::Array(items) => items.first().and_then(Value::as_str),
        _ => None,
    }
}

/// Map a LOV term-suggest response. Scores are normalized by the best score
/// in the response.
pub fn parse_lov(json: &Value) -> Result<Vec<Recommendation>, RemoteError> {
    let results = json
        .get("results")
        .and_then(Value::as_array)
        .ok_or_else(|| RemoteError::MalformedResponse("missing results array".into()))?;
    let raw: Vec<(String, String, f64, String)> = results
        .iter()
        .filter_map(|r| {
            let uri = first_str(r.get("uri")?)?.to_string();
            let vocab = r.get("vocabulary.prefix").and_then(first_str).unwrap_or("").to_string();
            let score = r.get("score").and_then(Value::as_f64).unwrap_or(0.0).max(0.0);
            let kind = r.get("type").and_then(first_str).unwrap_or("term");
            let name = r.get("prefixedName").and_then(first_str).unwrap_or(&uri);
            Some((uri.clone(), vocab, score, format!("LOV {kind} {name}")))
        })
        .collect();
    let max = raw.iter().map(|r| r.2).fold(0.0, f64::max);
    let mut recs: Vec<Recommendation> = raw
        .into_iter()
        .map(|(item, source, score, why)| {
            let normalized = if max > 0.0 { score / max } else { 0.0 };
            Recommendation::new(item, source, normalized, why)
        })
        .collect();
    recs.sort_by(rank_order);
    Ok(recs)
}

/// Map a BioPortal recommender response: one recommendation per
/// recommended ontology set, scored by its evaluation score.
pub fn parse_bioportal(json: &Value) -> Result<Vec<Recommendation>, RemoteError> {
    let results = json
        .as_array()
        .ok_or_else(|| RemoteError::MalformedResponse("expected a JSON array".into()))?;
    let mut recs: Vec<Recommendation> = results
        .iter()
        .filter_map(|r| {
            let ontologies = r.get("ontologies")?.as_array()?;
            let acronyms: Vec<&str> = ontologies
                .iter()
                .filter_map(|o| o.get("acronym").and_then(Value::as_str))
                .collect();
            let ontology_iri = ontologies.first().and_then(|o| o.get("@id")).and_then(Value::as_str);
            let class_iri = r
                .pointer("/coverageResult/annotations/0/annotatedClass/@id")
                .and_then(Value::as_str);
            let item = class_iri.or(ontology_iri)?;
            let score = r.get("evaluationScore").and_then(Value::as_f64).unwrap_or(0.0);
            Some(Recommendation::new(
                item,
                acronyms.join("+"),
                score,
                format!("BioPortal recommends {}", acronyms.join(", ")),
            ))
        })
        .collect();
    recs.sort_by(rank_order);
    Ok(recs)
}
