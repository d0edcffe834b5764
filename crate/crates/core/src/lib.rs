//! Ontology quality recommendations and hierarchy checks over a Turtle
//! corpus.

pub mod axioms;
pub mod cq;
pub mod eval;
pub mod exec;
pub mod index;
pub mod lexicon;
pub mod naming;
pub mod odp;
pub mod ontoclean;
pub mod ontology;
pub mod recommendation;
pub mod similarity;

pub use exec::Execution;
pub use recommendation::Recommendation;
