//! Axiom reuse: surface corpus axioms about entities whose names closely
//! match the working ontology's entities, rewritten onto the local entity.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::exec::{self, Execution};
use crate::index::{CorpusIndex, Posting};
use crate::ontology::{Axiom, Iri, OntologyDocument, TermKind};
use crate::recommendation::{desc_score, Recommendation};
use crate::similarity::jaro_winkler;

pub const DEFAULT_AXIOM_THRESHOLD: f64 = 0.85;
pub const DEFAULT_AXIOM_K: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomRecommendation {
    /// The source axiom with the matched corpus entity replaced by the
    /// working entity.
    pub axiom: Axiom,
    pub source_axiom: Axiom,
    pub source_ontology: String,
    /// Corpus entity whose name matched.
    pub matched_entity: Iri,
    /// Entity of the working ontology the axiom was rewritten onto.
    pub working_entity: Iri,
    pub similarity: f64,
}

impl AxiomRecommendation {
    pub fn to_recommendation(&self) -> Recommendation {
        Recommendation::new(
            self.axiom.to_string(),
            &self.source_ontology,
            self.similarity,
            format!(
                "{} matches {}; from {}",
                self.working_entity.local_name(),
                self.matched_entity,
                self.source_axiom
            ),
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AxiomOptions {
    /// Recommendations kept per working entity.
    pub k: usize,
    pub threshold: f64,
    pub exec: Execution,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions {
            k: DEFAULT_AXIOM_K,
            threshold: DEFAULT_AXIOM_THRESHOLD,
            exec: Execution::default(),
        }
    }
}

fn same_family(a: TermKind, b: TermKind) -> bool {
    a.is_property() == b.is_property()
}

/// Per working entity, the top-`k` rewritten corpus axioms whose matched
/// entity scores at least `threshold` by Jaro-Winkler on local names.
///
/// Corpus entities are enumerated from the index; their axioms come from
/// the corpus document with the posting's ontology id. Axioms already
/// asserted in the working ontology are never recommended. Output is grouped
/// by working entity (classes, then object and data properties, each in IRI
/// order); within a group by similarity, then rendered axiom.
pub fn recommend_axioms(
    working: &OntologyDocument,
    corpus: &[OntologyDocument],
    index: &CorpusIndex,
    options: AxiomOptions,
) -> Vec<AxiomRecommendation> {
    if options.k == 0 {
        return Vec::new();
    }
    let docs: HashMap<&str, &OntologyDocument> = corpus.iter().map(|d| (d.ontology_id.as_str(), d)).collect();
    let mut mentions: HashMap<(&str, &Iri), Vec<&Axiom>> = HashMap::new();
    for doc in corpus {
        for axiom in &doc.axioms {
            mentions.entry((&doc.ontology_id, &axiom.subject)).or_default().push(axiom);
            if let Some(object) = &axiom.object {
                if object != &axiom.subject {
                    mentions.entry((&doc.ontology_id, object)).or_default().push(axiom);
                }
            }
        }
    }
    let postings: Vec<&Posting> = index
        .all_postings()
        .into_iter()
        .filter(|p| docs.contains_key(p.ontology_id.as_str()))
        .collect();
    let entities: Vec<(&Iri, TermKind)> = working.entities().collect();

    exec::flat_map(options.exec, &entities, |&(entity, kind)| {
        let name = entity.local_name();
        let mut found: Vec<AxiomRecommendation> = Vec::new();
        for posting in &postings {
            if !same_family(kind, posting.term_kind) {
                continue;
            }
            let similarity = jaro_winkler(name, posting.term.local_name());
            if similarity < options.threshold {
                continue;
            }
            let Some(axioms) = mentions.get(&(posting.ontology_id.as_str(), &posting.term)) else {
                continue;
            };
            for source in axioms {
                let rewritten = source.substitute(&posting.term, entity);
                let collapsed = rewritten.object.is_some()
                    && rewritten.object.as_ref() == Some(&rewritten.subject)
                    && source.object.as_ref() != Some(&source.subject);
                if collapsed || working.has_axiom(&rewritten) {
                    continue;
                }
                found.push(AxiomRecommendation {
                    axiom: rewritten,
                    source_axiom: (*source).clone(),
                    source_ontology: posting.ontology_id.clone(),
                    matched_entity: posting.term.clone(),
                    working_entity: entity.clone(),
                    similarity,
                });
            }
        }
        // Best source first for each rewritten axiom, then keep one.
        found.sort_by(|a, b| {
            a.axiom
                .cmp(&b.axiom)
                .then_with(|| desc_score(a.similarity, b.similarity))
                .then_with(|| a.source_ontology.cmp(&b.source_ontology))
                .then_with(|| a.source_axiom.cmp(&b.source_axiom))
        });
        found.dedup_by(|later, kept| later.axiom == kept.axiom);
        let mut ranked: Vec<(String, AxiomRecommendation)> = found.into_iter().map(|r| (r.axiom.to_string(), r)).collect();
        ranked.sort_by(|(ra, a), (rb, b)| desc_score(a.similarity, b.similarity).then_with(|| ra.cmp(rb)));
        ranked.into_iter().take(options.k).map(|(_, r)| r).collect()
    })
}
