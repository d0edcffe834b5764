#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;

use ontoseer_core::exec::Execution;
use ontoseer_core::index::CorpusIndex;
use ontoseer_core::odp::{load_odp_dir, OdpRecord};
use ontoseer_core::ontology::{load_corpus, load_ontology, BlankId, Node, OntologyDocument, Term, Triple};

pub fn fixture(rel: &str) -> PathBuf {
    // Resolves from any sibling crate that includes this module.
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(rel)
}

pub fn corpus() -> Vec<OntologyDocument> {
    load_corpus(&fixture("corpus"), Execution::Sequential).expect("fixture corpus loads")
}

pub fn corpus_and_index() -> (Vec<OntologyDocument>, CorpusIndex) {
    let docs = corpus();
    let index = CorpusIndex::build(&docs).expect("fixture index builds");
    (docs, index)
}

pub fn working(name: &str) -> OntologyDocument {
    load_ontology(&fixture(&format!("working/{name}.ttl"))).expect("working fixture loads")
}

pub fn odps() -> Vec<OdpRecord> {
    load_odp_dir(&fixture("odps")).expect("fixture ODPs parse")
}

// Triple-set equality up to a bijective renaming of blank nodes, by
// brute-force search over signature-compatible assignments.

type Sig = Vec<String>;

fn ground(t: &Term) -> String {
    match t {
        Term::Blank(_) => "_".into(),
        other => format!("{other:?}"),
    }
}

fn signatures(triples: &BTreeSet<Triple>) -> BTreeMap<BlankId, Sig> {
    let mut sigs: BTreeMap<BlankId, Sig> = BTreeMap::new();
    for t in triples {
        if let Node::Blank(b) = &t.subject {
            sigs.entry(*b).or_default().push(format!("s {} {}", t.predicate, ground(&t.object)));
        }
        if let Term::Blank(b) = &t.object {
            let subject = match &t.subject {
                Node::Blank(_) => "_".to_string(),
                Node::Iri(i) => i.to_string(),
            };
            sigs.entry(*b).or_default().push(format!("o {} {subject}", t.predicate));
        }
    }
    for sig in sigs.values_mut() {
        sig.sort();
    }
    sigs
}

fn rename(t: &Triple, map: &HashMap<BlankId, BlankId>) -> Triple {
    let mut t = t.clone();
    if let Node::Blank(b) = &mut t.subject {
        *b = map[b];
    }
    if let Term::Blank(b) = &mut t.object {
        *b = map[b];
    }
    t
}

pub fn isomorphic(a: &[Triple], b: &[Triple]) -> bool {
    let a: BTreeSet<Triple> = a.iter().cloned().collect();
    let b: BTreeSet<Triple> = b.iter().cloned().collect();
    if a.len() != b.len() {
        return false;
    }
    let sa = signatures(&a);
    let sb = signatures(&b);
    if sa.len() != sb.len() {
        return false;
    }
    let blanks: Vec<(BlankId, &Sig)> = sa.iter().map(|(k, v)| (*k, v)).collect();
    let mut map = HashMap::new();
    let mut used = BTreeSet::new();
    search(&blanks, &sb, &mut map, &mut used, &a, &b)
}

fn search(
    blanks: &[(BlankId, &Sig)],
    sb: &BTreeMap<BlankId, Sig>,
    map: &mut HashMap<BlankId, BlankId>,
    used: &mut BTreeSet<BlankId>,
    a: &BTreeSet<Triple>,
    b: &BTreeSet<Triple>,
) -> bool {
    let Some(((id, sig), rest)) = blanks.split_first() else {
        return a.iter().map(|t| rename(t, map)).collect::<BTreeSet<_>>() == *b;
    };
    for (candidate, csig) in sb {
        if used.contains(candidate) || csig != *sig {
            continue;
        }
        map.insert(*id, *candidate);
        used.insert(*candidate);
        if search(rest, sb, map, used, a, b) {
            return true;
        }
        map.remove(id);
        used.remove(candidate);
    }
    false
}
