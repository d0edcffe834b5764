//! Seed classes and properties from competency questions.
//!
//! Tagging is lexicon-driven: after stopword removal, a word is a verb if it
//! (or a suffix-stripped stem of it) is in the verb lexicon, otherwise a noun.

use serde::{Deserialize, Serialize};

use crate::lexicon::{self, WordSet};
use crate::naming::{recommend_name, NameKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CqError {
    #[error("competency question is empty")]
    EmptyQuestion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CqExtraction {
    pub question: String,
    pub nouns: Vec<String>,
    pub verbs: Vec<String>,
}

/// Candidate stems of an inflected form, most specific first.
fn stems(word: &str) -> Vec<String> {
    let mut out = Vec::new();
    let strip = |suffix: &str| word.strip_suffix(suffix).filter(|s| s.len() >= 2);
    if let Some(s) = strip("ies").or_else(|| strip("ied")) {
        out.push(format!("{s}y"));
    }
    if let Some(s) = strip("es") {
        out.push(s.to_string());
    }
    if let Some(s) = strip("s") {
        out.push(s.to_string());
    }
    for suffix in ["ed", "ing"] {
        if let Some(s) = strip(suffix) {
            out.push(s.to_string());
            out.push(format!("{s}e"));
            // stopped -> stop, running -> run
            let b = s.as_bytes();
            if b.len() >= 3 && b[b.len() - 1] == b[b.len() - 2] {
                out.push(s[..s.len() - 1].to_string());
            }
        }
    }
    out
}

pub fn is_verb(word: &str, verbs: &WordSet) -> bool {
    verbs.contains(word) || stems(word).iter().any(|s| verbs.contains(s))
}

pub fn extract_terms(question: &str) -> Result<CqExtraction, CqError> {
    extract_terms_with(question, lexicon::stopwords(), lexicon::verbs())
}

pub fn extract_terms_with(question: &str, stopwords: &WordSet, verbs: &WordSet) -> Result<CqExtraction, CqError> {
    if question.trim().is_empty() {
        return Err(CqError::EmptyQuestion);
    }
    let mut nouns: Vec<String> = Vec::new();
    let mut found_verbs: Vec<String> = Vec::new();
    let words = question
        .split(|c: char| !(c.is_alphanumeric() || c == '\''))
        .map(|w| w.trim_matches('\'').to_lowercase())
        .filter(|w| w.chars().any(char::is_alphabetic))
        .filter(|w| !stopwords.contains(w));
    for word in words {
        let target = if is_verb(&word, verbs) { &mut found_verbs } else { &mut nouns };
        if !target.contains(&word) {
            target.push(word);
        }
    }
    Ok(CqExtraction {
        question: question.to_string(),
        nouns,
        verbs: found_verbs,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSuggestions {
    pub class_candidates: Vec<String>,
    pub property_candidates: Vec<String>,
}

/// Class candidates from nouns and property candidates from verbs, in
/// first-occurrence order. Blank questions are skipped.
pub fn seed_suggestions<S: AsRef<str>>(cqs: &[S]) -> SeedSuggestions {
    let mut out = SeedSuggestions::default();
    let push = |list: &mut Vec<String>, word: &str, kind| {
        if let Some(name) = recommend_name(word, kind).ok().and_then(|c| c.into_iter().next()) {
            if !list.contains(&name) {
                list.push(name);
            }
        }
    };
    for question in cqs {
        let Ok(extraction) = extract_terms(question.as_ref()) else {
            continue;
        };
        for noun in &extraction.nouns {
            push(&mut out.class_candidates, noun, NameKind::Class);
        }
        for verb in &extraction.verbs {
            push(&mut out.property_candidates, verb, NameKind::Property);
        }
    }
    out
}

/// One question per non-blank line.
pub fn parse_cq_file(text: &str) -> Vec<String> {
    text.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let e = extract_terms("Who teaches a course?").unwrap();
        assert_eq!(e.nouns, ["course"]);
        assert_eq!(e.verbs, ["teaches"]);
        let e = extract_terms("What is the capacity of a stadium?").unwrap();
        assert_eq!(e.nouns, ["capacity", "stadium"]);
        assert!(e.verbs.is_empty());
        assert_eq!(extract_terms("  "), Err(CqError::EmptyQuestion));
    }

    #[test]
    fn stemming() {
        let verbs: WordSet = ["teach", "live", "stop", "study", "write"].into_iter().collect();
        for w in ["teaches", "lived", "living", "stopped", "studies", "studied", "writes", "teaching"] {
            assert!(is_verb(w, &verbs), "{w}");
        }
        assert!(!is_verb("course", &verbs));
    }

    #[test]
    fn seeds() {
        let seeds = seed_suggestions(&["Who teaches a course?", "Which course has the most students?"]);
        assert_eq!(seeds.class_candidates.iter().filter(|c| *c == "Course").count(), 1);
        assert_eq!(seeds.class_candidates[0], "Course");
        assert_eq!(seeds.property_candidates, ["teaches"]);
        assert!(seed_suggestions(&["What is the capacity of a stadium?"]).property_candidates.is_empty());
    }
}
