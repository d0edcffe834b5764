mod common;

use std::time::Instant;

use common::{corpus, corpus_and_index};
use ontoseer_core::index::{CorpusIndex, DEFAULT_TERM_FLOOR};

#[test]
fn book_query_finds_comic_book_ontology_first() {
    let (_, index) = corpus_and_index();
    let recs = index.recommend_terms("Book", None, 5, DEFAULT_TERM_FLOOR).unwrap();
    assert_eq!(recs[0].item, "http://comicmeta.org/cbo/Book");
    assert_eq!(recs[0].source, "comic-book-ontology");
    assert_eq!(recs[0].score, 1.0);
    assert!(recs.windows(2).all(|w| w[0].score >= w[1].score));
}

#[test]
fn zebra_query_is_empty() {
    let (docs, index) = corpus_and_index();
    // Candidates come from token postings only; no indexed name carries "zebra".
    assert!(index.postings("zebra").is_empty());
    assert!(docs
        .iter()
        .flat_map(|d| d.entities())
        .all(|(iri, _)| !ontoseer_core::similarity::tokenize_identifier(iri.local_name()).contains(&"zebra".to_string())));
    assert!(index.recommend_terms("Zebra", None, 5, DEFAULT_TERM_FLOOR).unwrap().is_empty());
    // Even with no floor nothing is returned.
    assert!(index.recommend_terms("Zebra", None, 5, 0.0).unwrap().is_empty());
}

#[test]
fn exact_name_recall() {
    let (docs, index) = corpus_and_index();
    let total: usize = docs.iter().map(|d| d.entities().count()).sum();
    for doc in &docs {
        for (term, _) in doc.entities() {
            let recs = index.recommend_terms(term.local_name(), None, total, DEFAULT_TERM_FLOOR).unwrap();
            assert!(
                recs.iter().any(|r| r.item == term.as_str() && r.source == doc.ontology_id && r.score == 1.0),
                "{term} missing"
            );
        }
    }
}

#[test]
fn registry_covers_every_posting() {
    let (_, index) = corpus_and_index();
    assert_eq!(index.registry().len(), 20);
    assert!(index.all_postings().iter().all(|p| index.registry().contains_key(&p.ontology_id)));
    assert_eq!(index.registry()["comic-book-ontology"].label, "comic-book-ontology");
    assert_eq!(index.registry()["http://linked.earth/ontology"].label, "LinkedEarth Ontology");
}

#[test]
fn file_order_does_not_matter() {
    let docs = corpus();
    let mut reversed = docs.clone();
    reversed.reverse();
    assert_eq!(CorpusIndex::build(&docs).unwrap(), CorpusIndex::build(&reversed).unwrap());
}

const QUERIES: [&str; 20] = [
    "Book", "Person", "hasAuthor", "Organization", "Student", "Course", "Place", "Event", "Cell", "Molecule",
    "memberOf", "knows", "Document", "Time", "Agent", "Team", "Recipe", "Sensor", "Vehicle", "Publication",
];

#[test]
fn save_load_round_trip() {
    let (_, index) = corpus_and_index();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("index.json");
    index.save(&path).unwrap();
    let loaded = CorpusIndex::load(&path).unwrap();
    assert_eq!(loaded, index);
    for q in QUERIES {
        assert_eq!(
            index.recommend_terms(q, None, 5, DEFAULT_TERM_FLOOR).unwrap(),
            loaded.recommend_terms(q, None, 5, DEFAULT_TERM_FLOOR).unwrap(),
            "{q}"
        );
    }
}

#[test]
fn build_and_query_is_fast() {
    let start = Instant::now();
    let (_, index) = corpus_and_index();
    for q in QUERIES {
        index.recommend_terms(q, None, 5, DEFAULT_TERM_FLOOR).unwrap();
    }
    assert!(start.elapsed().as_secs_f64() < 10.0);
}
