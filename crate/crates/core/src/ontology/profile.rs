use super::model::{Axiom, AxiomKind, Characteristic, Iri, Node, OntologyDocument, Term};
use super::vocab;

/// Recompute classes, properties, axioms, ontology id/label and the
/// skipped-construct count from `doc.triples`.
///
/// Only named operands produce axioms. An axiom-bearing triple with an
/// anonymous operand (a restriction, union, list...) is kept as a triple and
/// counted in `skipped_constructs`.
pub fn extract_profile(mut doc: OntologyDocument) -> OntologyDocument {
    doc.classes.clear();
    doc.object_properties.clear();
    doc.data_properties.clear();
    doc.axioms.clear();
    doc.skipped_constructs = 0;

    let mut ontology_node: Option<Iri> = None;

    for triple in &doc.triples {
        let subject = triple.subject.as_iri();
        let predicate = triple.predicate.as_str();

        if predicate == vocab::RDF_TYPE {
            let (Some(subject), Some(ty)) = (subject, triple.object.as_iri()) else {
                continue;
            };
            match ty.as_str() {
                vocab::OWL_CLASS => {
                    doc.classes.insert(subject.clone());
                }
                vocab::OWL_OBJECT_PROPERTY => {
                    doc.object_properties.insert(subject.clone());
                }
                vocab::OWL_DATATYPE_PROPERTY => {
                    doc.data_properties.insert(subject.clone());
                }
                vocab::OWL_ONTOLOGY => {
                    ontology_node.get_or_insert_with(|| subject.clone());
                }
                other => {
                    if let Some(c) = Characteristic::from_type_iri(other) {
                        // Everything except plain functionality only applies
                        // to object properties.
                        if c != Characteristic::Functional {
                            doc.object_properties.insert(subject.clone());
                        }
                        doc.axioms.push(Axiom::characteristic(subject.clone(), c));
                    }
                }
            }
            continue;
        }

        let kind = match predicate {
            vocab::RDFS_SUBCLASS_OF => AxiomKind::SubClassOf,
            vocab::OWL_DISJOINT_WITH => AxiomKind::DisjointWith,
            vocab::OWL_EQUIVALENT_CLASS => AxiomKind::EquivalentClass,
            vocab::RDFS_DOMAIN => AxiomKind::Domain,
            vocab::RDFS_RANGE => AxiomKind::Range,
            vocab::RDFS_SUBPROPERTY_OF => AxiomKind::SubPropertyOf,
            vocab::OWL_INVERSE_OF => AxiomKind::InverseOf,
            _ => continue,
        };
        match (subject, &triple.object) {
            (Some(s), Term::Iri(o)) => {
                if kind == AxiomKind::SubClassOf {
                    doc.classes.insert(s.clone());
                    doc.classes.insert(o.clone());
                }
                doc.axioms.push(Axiom::binary(kind, s.clone(), o.clone()));
            }
            (_, Term::Literal { .. }) => {}
            _ => doc.skipped_constructs += 1,
        }
    }

    doc.axioms.sort();
    doc.axioms.dedup();

    if let Some(node) = ontology_node {
        let subject = Node::Iri(node.clone());
        doc.label = doc.triples.iter().find_map(|t| match &t.object {
            Term::Literal { value, .. } if t.subject == subject && t.predicate.as_str() == vocab::RDFS_LABEL => {
                Some(value.clone())
            }
            _ => None,
        });
        doc.ontology_id = node.as_str().to_string();
    }
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::parse_turtle;

    const HEADER: &str = "@prefix : <http://x/> .\n@prefix owl: <http://www.w3.org/2002/07/owl#> .\n@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n";

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://x/{s}")).unwrap()
    }

    #[test]
    fn subclass_operands_become_classes() {
        let doc = parse_turtle(&format!("{HEADER}:Student rdfs:subClassOf :Person .")).unwrap();
        assert!(doc.classes.contains(&iri("Student")));
        assert!(doc.classes.contains(&iri("Person")));
        assert!(doc
            .axioms
            .contains(&Axiom::binary(AxiomKind::SubClassOf, iri("Student"), iri("Person"))));
    }

    #[test]
    fn object_property_with_domain() {
        let doc = parse_turtle(&format!(
            "{HEADER}:hasAuthor a owl:ObjectProperty ; rdfs:domain :Book ."
        ))
        .unwrap();
        assert_eq!(doc.object_properties.iter().collect::<Vec<_>>(), vec![&iri("hasAuthor")]);
        assert!(doc
            .axioms
            .contains(&Axiom::binary(AxiomKind::Domain, iri("hasAuthor"), iri("Book"))));
    }

    #[test]
    fn anonymous_superclass_is_skipped() {
        let doc = parse_turtle(&format!(
            "{HEADER}:Student a owl:Class ; rdfs:subClassOf [ a owl:Restriction ; owl:onProperty :enrolledIn ; owl:someValuesFrom :Course ] ."
        ))
        .unwrap();
        assert!(doc.axioms.is_empty());
        assert_eq!(doc.skipped_constructs, 1);
        assert_eq!(doc.classes.len(), 1);
    }

    #[test]
    fn ontology_node_gives_id_and_label() {
        let doc = parse_turtle(&format!(
            "{HEADER}<http://x/onto> a owl:Ontology ; rdfs:label \"Test Onto\"@en ."
        ))
        .unwrap();
        assert_eq!(doc.ontology_id, "http://x/onto");
        assert_eq!(doc.label.as_deref(), Some("Test Onto"));
    }

    #[test]
    fn empty_profile_is_legal() {
        let doc = parse_turtle("").unwrap();
        assert!(doc.classes.is_empty() && doc.axioms.is_empty());
    }
}
