use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use super::model::{BlankId, Iri, Node, OntologyDocument, Term, Triple};
use super::parse::{valid_local, valid_prefix};
use super::vocab;

/// Serialize a document back into the supported Turtle subset.
///
/// Anonymous nodes are written inline as `[ ... ]` at their single point of
/// reference, or as a bare `[ ... ] .` statement when nothing references
/// them. Parsed documents always have this tree shape; a blank node shared
/// between several referrers is repeated at each one.
pub fn serialize_triples(doc: &OntologyDocument) -> String {
    let prefixes = prefix_table(doc);
    let mut out = String::new();
    for (name, ns) in &prefixes {
        let _ = writeln!(out, "@prefix {name}: <{ns}> .");
    }

    let mut by_subject: BTreeMap<&Node, Vec<&Triple>> = BTreeMap::new();
    let mut referenced: HashSet<BlankId> = HashSet::new();
    for t in &doc.triples {
        by_subject.entry(&t.subject).or_default().push(t);
        if let Term::Blank(b) = t.object {
            referenced.insert(b);
        }
    }
    for triples in by_subject.values_mut() {
        triples.sort_by(|a, b| (&a.predicate, &a.object).cmp(&(&b.predicate, &b.object)));
        triples.dedup();
    }
    let blanks: HashMap<BlankId, &Vec<&Triple>> = by_subject
        .iter()
        .filter_map(|(node, triples)| match node {
            Node::Blank(b) => Some((*b, triples)),
            Node::Iri(_) => None,
        })
        .collect();

    let writer = Writer {
        prefixes: &prefixes,
        blanks: &blanks,
    };

    for (subject, triples) in &by_subject {
        let head = match subject {
            Node::Iri(iri) => writer.iri(iri),
            Node::Blank(b) if referenced.contains(b) => continue,
            Node::Blank(b) => {
                let mut visiting = vec![*b];
                let body = writer.property_list(triples, 1, &mut visiting);
                out.push('\n');
                let _ = writeln!(out, "[ {body} ] .");
                continue;
            }
        };
        let mut visiting = Vec::new();
        out.push('\n');
        let _ = writeln!(out, "{head} {} .", writer.property_list(triples, 1, &mut visiting));
    }
    out
}

fn prefix_table(doc: &OntologyDocument) -> BTreeMap<String, String> {
    let mut table: BTreeMap<String, String> = doc
        .prefixes
        .iter()
        .filter(|(name, _)| valid_prefix(name))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    for (name, ns) in vocab::STANDARD_PREFIXES {
        if !table.contains_key(name) && !table.values().any(|v| v == ns) {
            table.insert(name.to_string(), ns.to_string());
        }
    }
    table
}

struct Writer<'a> {
    prefixes: &'a BTreeMap<String, String>,
    blanks: &'a HashMap<BlankId, &'a Vec<&'a Triple>>,
}

impl Writer<'_> {
    fn iri(&self, iri: &Iri) -> String {
        let value = iri.as_str();
        let best = self
            .prefixes
            .iter()
            .filter_map(|(name, ns)| value.strip_prefix(ns.as_str()).map(|local| (name, ns, local)))
            .filter(|(_, _, local)| valid_local(local))
            .max_by_key(|(_, ns, _)| ns.len());
        match best {
            Some((name, _, local)) => format!("{name}:{local}"),
            None => format!("<{value}>"),
        }
    }

    fn predicate(&self, iri: &Iri) -> String {
        if iri.as_str() == vocab::RDF_TYPE {
            "a".to_string()
        } else {
            self.iri(iri)
        }
    }

    fn property_list(&self, triples: &[&Triple], depth: usize, visiting: &mut Vec<BlankId>) -> String {
        let indent = "    ".repeat(depth);
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < triples.len() {
            let predicate = &triples[i].predicate;
            let mut objects = Vec::new();
            while i < triples.len() && &triples[i].predicate == predicate {
                objects.push(self.object(&triples[i].object, depth, visiting));
                i += 1;
            }
            parts.push(format!("{} {}", self.predicate(predicate), objects.join(", ")));
        }
        parts.join(&format!(" ;\n{indent}"))
    }

    fn object(&self, term: &Term, depth: usize, visiting: &mut Vec<BlankId>) -> String {
        match term {
            Term::Iri(iri) => self.iri(iri),
            Term::Literal { value, lang } => {
                let mut s = String::with_capacity(value.len() + 2);
                s.push('"');
                for c in value.chars() {
                    match c {
                        '"' => s.push_str("\\\""),
                        '\\' => s.push_str("\\\\"),
                        '\n' => s.push_str("\\n"),
                        '\r' => s.push_str("\\r"),
                        '\t' => s.push_str("\\t"),
                        '\u{8}' => s.push_str("\\b"),
                        '\u{c}' => s.push_str("\\f"),
                        c => s.push(c),
                    }
                }
                s.push('"');
                if let Some(lang) = lang {
                    s.push('@');
                    s.push_str(lang);
                }
                s
            }
            Term::Blank(b) => {
                let Some(triples) = self.blanks.get(b) else {
                    return "[]".to_string();
                };
                if visiting.contains(b) {
                    // Cycles cannot be expressed without labelled blank nodes.
                    return "[]".to_string();
                }
                visiting.push(*b);
                let body = self.property_list(triples, depth + 1, visiting);
                visiting.pop();
                format!("[ {body} ]")
            }
        }
    }
}
