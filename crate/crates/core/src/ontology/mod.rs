//! RDF/OWL document model, Turtle-subset parser and serializer, and profile
//! extraction.

mod model;
mod parse;
mod profile;
pub mod vocab;
mod write;

use std::path::{Path, PathBuf};

pub use model::{
    local_name, Axiom, AxiomKind, BlankId, Characteristic, Iri, IriError, Node, OntologyDocument, TermKind,
    Term, Triple,
};
pub use parse::{parse_turtle, ParseError};
pub use profile::extract_profile;
pub use write::serialize_triples;

use crate::exec::{self, Execution};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
}

/// Read and parse one Turtle file. Documents without an `owl:Ontology` node
/// are identified (and labelled) by their file stem.
pub fn load_ontology(path: &Path) -> Result<OntologyDocument, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut doc = parse_turtle(&text).map_err(|source| LoadError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    if doc.ontology_id.is_empty() {
        doc.ontology_id = file_stem(path);
    }
    doc.source_path = Some(path.to_path_buf());
    Ok(doc)
}

pub(crate) fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// All `*.ttl` files below `dir`, sorted by path.
pub fn turtle_files(dir: &Path) -> Result<Vec<PathBuf>, LoadError> {
    let mut files = Vec::new();
    for entry in walkdir::WalkDir::new(dir).follow_links(true) {
        let entry = entry.map_err(|e| LoadError::Io {
            path: e.path().map(Path::to_path_buf).unwrap_or_else(|| dir.to_path_buf()),
            source: e.into(),
        })?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|x| x == "ttl") {
            files.push(entry.into_path());
        }
    }
    files.sort();
    Ok(files)
}

/// Load every `*.ttl` file below `dir`, in path order.
pub fn load_corpus(dir: &Path, exec: Execution) -> Result<Vec<OntologyDocument>, LoadError> {
    let files = turtle_files(dir)?;
    exec::map(exec, &files, |path| load_ontology(path)).into_iter().collect()
}
