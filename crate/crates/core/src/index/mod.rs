//! Inverted index from identifier tokens to the corpus terms that carry them.

#[cfg(feature = "remote")]
pub mod remote;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::ontology::{local_name, Iri, OntologyDocument, TermKind};
use crate::recommendation::{desc_score, Recommendation};
use crate::similarity::{jaro_winkler, tokenize_identifier};

/// On-disk format version written by [`CorpusIndex::save`].
pub const INDEX_VERSION: u32 = 1;

/// Term recommendations scoring below this are dropped.
pub const DEFAULT_TERM_FLOOR: f64 = 0.5;

#[derive(Debug, thiserror::Error)]
pub enum IndexError {
    #[error("duplicate ontology id {0:?}")]
    DuplicateOntologyId(String),
    #[error("query {0:?} contains no identifier tokens")]
    EmptyQuery(String),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("index version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u64, expected: u32 },
    #[error("corrupt index: {0}")]
    CorruptIndex(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Posting {
    pub term: Iri,
    pub term_kind: TermKind,
    pub ontology_id: String,
    pub ontology_label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_path: Option<String>,
    pub class_count: usize,
    pub property_count: usize,
}

/// Token → postings map over a corpus plus the registry of indexed
/// ontologies. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusIndex {
    version: u32,
    registry: BTreeMap<String, RegistryEntry>,
    postings: BTreeMap<String, Vec<Posting>>,
}

impl Default for CorpusIndex {
    fn default() -> Self {
        CorpusIndex {
            version: INDEX_VERSION,
            registry: BTreeMap::new(),
            postings: BTreeMap::new(),
        }
    }
}

impl CorpusIndex {
    /// Index every class and property of every document under each of its
    /// identifier tokens. The result does not depend on document order.
    pub fn build(docs: &[OntologyDocument]) -> Result<Self, IndexError> {
        let mut index = CorpusIndex::default();
        for doc in docs {
            let label = doc.display_label().to_string();
            let entry = RegistryEntry {
                label: label.clone(),
                source_path: doc.source_path.as_ref().map(|p| p.display().to_string()),
                class_count: doc.classes.len(),
                property_count: doc.property_count(),
            };
            if index.registry.insert(doc.ontology_id.clone(), entry).is_some() {
                return Err(IndexError::DuplicateOntologyId(doc.ontology_id.clone()));
            }
            for (term, kind) in doc.entities() {
                let tokens: BTreeSet<String> = tokenize_identifier(term.local_name()).into_iter().collect();
                for token in tokens {
                    index.postings.entry(token).or_default().push(Posting {
                        term: term.clone(),
                        term_kind: kind,
                        ontology_id: doc.ontology_id.clone(),
                        ontology_label: label.clone(),
                    });
                }
            }
        }
        for list in index.postings.values_mut() {
            list.sort();
            list.dedup();
        }
        Ok(index)
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    pub fn registry(&self) -> &BTreeMap<String, RegistryEntry> {
        &self.registry
    }

    pub fn postings(&self, token: &str) -> &[Posting] {
        self.postings.get(token).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.postings.keys().map(String::as_str)
    }

    /// Every distinct indexed (term, ontology) pair, in sorted order.
    pub fn all_postings(&self) -> Vec<&Posting> {
        let mut all: Vec<&Posting> = self.postings.values().flatten().collect();
        all.sort();
        all.dedup();
        all
    }

    pub fn is_empty(&self) -> bool {
        self.registry.is_empty()
    }

    /// Rank reusable corpus terms for `query`.
    ///
    /// Candidates are the postings of every query token; each is scored by
    /// Jaro-Winkler between the query and the term's local name. Scores under
    /// `floor` are dropped. Ties order by local name, then source ontology.
    pub fn recommend_terms(
        &self,
        query: &str,
        kind: Option<TermKind>,
        k: usize,
        floor: f64,
    ) -> Result<Vec<Recommendation>, IndexError> {
        if k == 0 {
            return Err(IndexError::ZeroK);
        }
        let tokens = tokenize_identifier(query);
        if tokens.is_empty() {
            return Err(IndexError::EmptyQuery(query.to_string()));
        }
        let query_lower = query.trim().to_lowercase();
        let candidates: BTreeSet<&Posting> = tokens
            .iter()
            .flat_map(|t| self.postings(t))
            .filter(|p| kind.is_none_or(|k| p.term_kind == k))
            .collect();
        let mut scored: Vec<(f64, &Posting)> = candidates
            .into_iter()
            .map(|p| (jaro_winkler(&query_lower, &p.term.local_name().to_lowercase()), p))
            .filter(|(score, _)| *score >= floor)
            .collect();
        scored.sort_by(|(sa, a), (sb, b)| {
            desc_score(*sa, *sb)
                .then_with(|| local_name(a.term.as_str()).cmp(local_name(b.term.as_str())))
                .then_with(|| a.ontology_id.cmp(&b.ontology_id))
                .then_with(|| a.term.cmp(&b.term))
        });
        Ok(scored
            .into_iter()
            .take(k)
            .map(|(score, p)| {
                let kind = match p.term_kind {
                    TermKind::Class => "class",
                    TermKind::ObjectProperty => "object property",
                    TermKind::DataProperty => "data property",
                };
                Recommendation::new(
                    p.term.as_str(),
                    &p.ontology_id,
                    score,
                    format!("{kind} in {}", p.ontology_label),
                )
            })
            .collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("index serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, IndexError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| IndexError::CorruptIndex(e.to_string()))?;
        let found = value
            .get("version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| IndexError::CorruptIndex("missing version".into()))?;
        if found != u64::from(INDEX_VERSION) {
            return Err(IndexError::VersionMismatch {
                found,
                expected: INDEX_VERSION,
            });
        }
        let index: CorpusIndex =
            serde_json::from_value(value).map_err(|e| IndexError::CorruptIndex(e.to_string()))?;
        index.check()?;
        Ok(index)
    }

    pub fn save(&self, path: &Path) -> Result<(), IndexError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, IndexError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    fn check(&self) -> Result<(), IndexError> {
        for (token, list) in &self.postings {
            if token.is_empty() || token.chars().any(char::is_uppercase) {
                return Err(IndexError::CorruptIndex(format!("bad token {token:?}")));
            }
            if let Some(p) = list.iter().find(|p| !self.registry.contains_key(&p.ontology_id)) {
                return Err(IndexError::CorruptIndex(format!(
                    "posting for {} references unregistered ontology {:?}",
                    p.term, p.ontology_id
                )));
            }
        }
        Ok(())
    }
}
