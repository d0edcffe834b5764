use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::vocab;

/// An absolute IRI.
///
/// Construction checks that the value is non-empty, whitespace-free and
/// carries a scheme separator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Iri(String);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IriError {
    #[error("IRI is empty")]
    Empty,
    #[error("IRI contains whitespace: {0:?}")]
    Whitespace(String),
    #[error("IRI is not absolute: {0:?}")]
    Relative(String),
}

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, IriError> {
        let value = value.into();
        if value.is_empty() {
            return Err(IriError::Empty);
        }
        if value.chars().any(char::is_whitespace) {
            return Err(IriError::Whitespace(value));
        }
        match value.find(':') {
            Some(i) if i > 0 => Ok(Iri(value)),
            _ => Err(IriError::Relative(value)),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Fragment after the last `#`, else after the last `/`, else the whole value.
    pub fn local_name(&self) -> &str {
        local_name(&self.0)
    }
}

/// Local name of an IRI string. See [`Iri::local_name`].
pub fn local_name(iri: &str) -> &str {
    if let Some(i) = iri.rfind('#') {
        &iri[i + 1..]
    } else if let Some(i) = iri.rfind('/') {
        &iri[i + 1..]
    } else {
        iri
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for Iri {
    type Error = IriError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        Iri::new(value)
    }
}

impl From<Iri> for String {
    fn from(iri: Iri) -> Self {
        iri.0
    }
}

/// Anonymous node identifier, printed as `_:bN`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlankId(pub u32);

impl fmt::Display for BlankId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:b{}", self.0)
    }
}

/// Subject position: a named IRI or an anonymous node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Iri(Iri),
    Blank(BlankId),
}

impl Node {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Node::Iri(iri) => Some(iri),
            Node::Blank(_) => None,
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Iri(iri) => write!(f, "<{iri}>"),
            Node::Blank(b) => b.fmt(f),
        }
    }
}

/// Object position: node or plain literal (optionally language-tagged).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Blank(BlankId),
    Literal { value: String, lang: Option<String> },
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_blank(&self) -> Option<BlankId> {
        match self {
            Term::Blank(b) => Some(*b),
            _ => None,
        }
    }
}

impl From<Node> for Term {
    fn from(node: Node) -> Self {
        match node {
            Node::Iri(iri) => Term::Iri(iri),
            Node::Blank(b) => Term::Blank(b),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Blank(b) => b.fmt(f),
            Term::Literal { value, lang } => {
                write!(f, "{value:?}")?;
                if let Some(lang) = lang {
                    write!(f, "@{lang}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Node,
    pub predicate: Iri,
    pub object: Term,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <{}> {} .", self.subject, self.predicate, self.object)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AxiomKind {
    SubClassOf,
    DisjointWith,
    EquivalentClass,
    Domain,
    Range,
    SubPropertyOf,
    InverseOf,
    Characteristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Characteristic {
    Transitive,
    Symmetric,
    Asymmetric,
    Functional,
    InverseFunctional,
    Reflexive,
    Irreflexive,
}

impl Characteristic {
    pub const ALL: [Characteristic; 7] = [
        Characteristic::Transitive,
        Characteristic::Symmetric,
        Characteristic::Asymmetric,
        Characteristic::Functional,
        Characteristic::InverseFunctional,
        Characteristic::Reflexive,
        Characteristic::Irreflexive,
    ];

    pub fn type_iri(self) -> &'static str {
        match self {
            Characteristic::Transitive => vocab::OWL_TRANSITIVE,
            Characteristic::Symmetric => vocab::OWL_SYMMETRIC,
            Characteristic::Asymmetric => vocab::OWL_ASYMMETRIC,
            Characteristic::Functional => vocab::OWL_FUNCTIONAL,
            Characteristic::InverseFunctional => vocab::OWL_INVERSE_FUNCTIONAL,
            Characteristic::Reflexive => vocab::OWL_REFLEXIVE,
            Characteristic::Irreflexive => vocab::OWL_IRREFLEXIVE,
        }
    }

    pub fn from_type_iri(iri: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.type_iri() == iri)
    }
}

/// A named-operand axiom.
///
/// `object` is `None` exactly when `kind` is [`AxiomKind::Characteristic`],
/// in which case `characteristic` is set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Axiom {
    pub kind: AxiomKind,
    pub subject: Iri,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<Iri>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<Characteristic>,
}

impl Axiom {
    pub fn binary(kind: AxiomKind, subject: Iri, object: Iri) -> Self {
        debug_assert!(kind != AxiomKind::Characteristic);
        Axiom {
            kind,
            subject,
            object: Some(object),
            characteristic: None,
        }
    }

    pub fn characteristic(subject: Iri, characteristic: Characteristic) -> Self {
        Axiom {
            kind: AxiomKind::Characteristic,
            subject,
            object: None,
            characteristic: Some(characteristic),
        }
    }

    /// Whether `iri` occurs as either operand.
    pub fn mentions(&self, iri: &Iri) -> bool {
        &self.subject == iri || self.object.as_ref() == Some(iri)
    }

    /// Replace every occurrence of `from` with `to`.
    pub fn substitute(&self, from: &Iri, to: &Iri) -> Axiom {
        let swap = |x: &Iri| if x == from { to.clone() } else { x.clone() };
        Axiom {
            kind: self.kind,
            subject: swap(&self.subject),
            object: self.object.as_ref().map(swap),
            characteristic: self.characteristic,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.object, self.characteristic) {
            (Some(object), _) => write!(f, "{:?}(<{}>, <{}>)", self.kind, self.subject, object),
            (None, Some(c)) => write!(f, "{c:?}(<{}>)", self.subject),
            (None, None) => write!(f, "{:?}(<{}>)", self.kind, self.subject),
        }
    }
}

/// Parsed triples of one ontology plus its extracted profile.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OntologyDocument {
    /// Ontology IRI when the document declares one, otherwise a file stem
    /// (or empty for anonymous in-memory documents).
    pub ontology_id: String,
    /// File the document was loaded from, if any.
    pub source_path: Option<std::path::PathBuf>,
    /// `rdfs:label` of the ontology node, if any.
    pub label: Option<String>,
    pub prefixes: BTreeMap<String, String>,
    pub triples: Vec<Triple>,
    pub classes: BTreeSet<Iri>,
    pub object_properties: BTreeSet<Iri>,
    pub data_properties: BTreeSet<Iri>,
    pub axioms: Vec<Axiom>,
    pub skipped_constructs: usize,
}

/// Kind of an indexed ontology term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermKind {
    Class,
    ObjectProperty,
    DataProperty,
}

impl TermKind {
    pub fn is_property(self) -> bool {
        !matches!(self, TermKind::Class)
    }
}

impl std::str::FromStr for TermKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "class" => Ok(TermKind::Class),
            "object_property" | "object-property" => Ok(TermKind::ObjectProperty),
            "data_property" | "data-property" => Ok(TermKind::DataProperty),
            other => Err(format!("unknown term kind {other:?}")),
        }
    }
}

impl OntologyDocument {
    /// All named entities with their kind, classes first, in IRI order.
    pub fn entities(&self) -> impl Iterator<Item = (&Iri, TermKind)> {
        self.classes
            .iter()
            .map(|c| (c, TermKind::Class))
            .chain(self.object_properties.iter().map(|p| (p, TermKind::ObjectProperty)))
            .chain(self.data_properties.iter().map(|p| (p, TermKind::DataProperty)))
    }

    pub fn property_count(&self) -> usize {
        self.object_properties.len() + self.data_properties.len()
    }

    pub fn has_axiom(&self, axiom: &Axiom) -> bool {
        self.axioms.binary_search(axiom).is_ok()
    }

    /// Label if present, else the ontology id.
    pub fn display_label(&self) -> &str {
        self.label.as_deref().unwrap_or(&self.ontology_id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_name_separators() {
        assert_eq!(local_name("http://x/onto#Book"), "Book");
        assert_eq!(local_name("http://x/onto/Book"), "Book");
        assert_eq!(local_name("urn:isbn:123"), "urn:isbn:123");
    }

    #[test]
    fn iri_validation() {
        assert!(Iri::new("http://x/a").is_ok());
        assert_eq!(Iri::new(""), Err(IriError::Empty));
        assert!(matches!(Iri::new("http://x/a b"), Err(IriError::Whitespace(_))));
        assert!(matches!(Iri::new("Book"), Err(IriError::Relative(_))));
    }

    #[test]
    fn substitute_rewrites_every_occurrence() {
        let a = Iri::new("http://x/A").unwrap();
        let b = Iri::new("http://x/B").unwrap();
        let z = Iri::new("http://y/Z").unwrap();
        let ax = Axiom::binary(AxiomKind::SubClassOf, a.clone(), b.clone());
        assert_eq!(
            ax.substitute(&a, &z),
            Axiom::binary(AxiomKind::SubClassOf, z.clone(), b.clone())
        );
        let c = Axiom::characteristic(a.clone(), Characteristic::Transitive);
        assert_eq!(c.substitute(&a, &z).subject, z);
        assert!(c.mentions(&a));
        assert!(!c.mentions(&b));
    }
}
