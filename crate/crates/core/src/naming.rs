//! Naming-convention checks and corrected-name synthesis.
//!
//! Conventions: no digits, no characters outside `[A-Za-z0-9_]`, classes in
//! UpperCamelCase and properties in lowerCamelCase. Underscores are legal
//! characters but always break camel case.

use serde::{Deserialize, Serialize};

use crate::lexicon::{self, WordSet};
use crate::ontology::OntologyDocument;
use crate::similarity::split_identifier;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NameKind {
    Class,
    Property,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NamingRule {
    ContainsDigit,
    IllegalCharacter,
    NotCamelCase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamingViolation {
    pub name: String,
    pub kind: NameKind,
    pub rule: NamingRule,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NamingError {
    #[error("name is empty")]
    EmptyName,
    #[error("no usable letters remain in {0:?}")]
    Unfixable(String),
}

/// Report each convention `name` breaks, at most once per rule.
pub fn check_name(name: &str, kind: NameKind) -> Result<Vec<NamingViolation>, NamingError> {
    if name.is_empty() {
        return Err(NamingError::EmptyName);
    }
    let violation = |rule, detail: String| NamingViolation {
        name: name.to_string(),
        kind,
        rule,
        detail,
    };
    let mut out = Vec::new();
    if name.chars().any(|c| c.is_ascii_digit()) {
        out.push(violation(NamingRule::ContainsDigit, "names should not contain digits".into()));
    }
    if let Some(c) = name.chars().find(|c| !(c.is_ascii_alphanumeric() || *c == '_')) {
        out.push(violation(
            NamingRule::IllegalCharacter,
            format!("character {c:?} is outside [A-Za-z0-9_]"),
        ));
    }
    let first_letter = name.chars().find(|c| c.is_alphabetic());
    let wrong_case = match (kind, first_letter) {
        (_, None) => false,
        (NameKind::Class, Some(c)) => !c.is_uppercase(),
        (NameKind::Property, Some(c)) => !c.is_lowercase(),
    };
    if wrong_case || name.contains('_') {
        let style = match kind {
            NameKind::Class => "UpperCamelCase",
            NameKind::Property => "lowerCamelCase",
        };
        out.push(violation(NamingRule::NotCamelCase, format!("{style} is expected")));
    }
    Ok(out)
}

/// Greedy longest-match segmentation of a lowercase word.
///
/// Single-letter dictionary entries are ignored. If some position has no
/// dictionary match the whole word is returned unsegmented.
pub fn segment_word(word: &str, dictionary: &WordSet) -> Vec<String> {
    let chars: Vec<char> = word.chars().collect();
    let mut parts = Vec::new();
    let mut start = 0;
    while start < chars.len() {
        let max_end = (start + dictionary.longest()).min(chars.len());
        let found = (start + 2..=max_end)
            .rev()
            .find(|&end| dictionary.contains(&chars[start..end].iter().collect::<String>()));
        match found {
            Some(end) => {
                parts.push(chars[start..end].iter().collect());
                start = end;
            }
            None => return vec![word.to_string()],
        }
    }
    if parts.is_empty() {
        vec![word.to_string()]
    } else {
        parts
    }
}

/// Suggest a conforming replacement for `name` using the bundled wordlist.
pub fn recommend_name(name: &str, kind: NameKind) -> Result<Vec<String>, NamingError> {
    recommend_name_with(name, kind, lexicon::wordlist())
}

/// Strip digits, split into words, segment a lone run-together word, then
/// recapitalize for `kind`. Every output contains ASCII letters only.
pub fn recommend_name_with(name: &str, kind: NameKind, dictionary: &WordSet) -> Result<Vec<String>, NamingError> {
    if name.is_empty() {
        return Err(NamingError::EmptyName);
    }
    let ascii: String = name
        .chars()
        .map(|c| if c.is_ascii_alphabetic() { c } else { ' ' })
        .collect();
    let mut words = split_identifier(&ascii);
    if words.is_empty() {
        return Err(NamingError::Unfixable(name.to_string()));
    }
    if let [only] = words.as_slice() {
        let uniform = only.chars().all(|c| c.is_ascii_lowercase()) || only.chars().all(|c| c.is_ascii_uppercase());
        if uniform {
            let parts = segment_word(&only.to_ascii_lowercase(), dictionary);
            if parts.len() > 1 {
                words = parts;
            }
        }
    }
    // Adjacent one-letter words would re-split as an acronym; join them.
    let mut merged: Vec<String> = Vec::with_capacity(words.len());
    let mut i = 0;
    while i < words.len() {
        let run = words[i..].iter().take_while(|w| w.chars().count() == 1).count();
        if run >= 2 {
            merged.push(words[i..i + run].concat());
            i += run;
        } else {
            merged.push(std::mem::take(&mut words[i]));
            i += 1;
        }
    }
    let words = merged;
    let mut out = String::with_capacity(name.len());
    for (i, word) in words.iter().enumerate() {
        let lower = word.to_ascii_lowercase();
        if i == 0 && kind == NameKind::Property {
            out.push_str(&lower);
        } else {
            let mut chars = lower.chars();
            if let Some(first) = chars.next() {
                out.push(first.to_ascii_uppercase());
                out.extend(chars);
            }
        }
    }
    Ok(vec![out])
}

/// A class or property whose local name breaks a convention, with the top
/// suggested replacement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NameFinding {
    pub iri: String,
    pub name: String,
    pub kind: NameKind,
    pub violations: Vec<NamingRule>,
    pub recommendation: Option<String>,
}

/// Check every class and property local name of a document.
pub fn check_document(doc: &OntologyDocument) -> Vec<NameFinding> {
    let mut findings = Vec::new();
    for (iri, term_kind) in doc.entities() {
        let kind = if term_kind.is_property() {
            NameKind::Property
        } else {
            NameKind::Class
        };
        let name = iri.local_name();
        let Ok(violations) = check_name(name, kind) else {
            continue;
        };
        if violations.is_empty() {
            continue;
        }
        let recommendation = recommend_name(name, kind).ok().and_then(|c| c.into_iter().next());
        findings.push(NameFinding {
            iri: iri.as_str().to_string(),
            name: name.to_string(),
            kind,
            violations: violations.into_iter().map(|v| v.rule).collect(),
            recommendation,
        });
    }
    findings
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules(name: &str, kind: NameKind) -> Vec<NamingRule> {
        check_name(name, kind).unwrap().into_iter().map(|v| v.rule).collect()
    }

    #[test]
    fn check_examples() {
        assert_eq!(rules("Human1234", NameKind::Class), [NamingRule::ContainsDigit]);
        assert_eq!(rules("Human_being", NameKind::Class), [NamingRule::NotCamelCase]);
        assert!(rules("HumanBeing", NameKind::Class).is_empty());
        assert!(rules("hasAuthor", NameKind::Property).is_empty());
        assert_eq!(rules("HasAuthor", NameKind::Property), [NamingRule::NotCamelCase]);
        assert_eq!(
            rules("human-being2", NameKind::Class),
            [NamingRule::ContainsDigit, NamingRule::IllegalCharacter, NamingRule::NotCamelCase]
        );
        assert_eq!(check_name("", NameKind::Class), Err(NamingError::EmptyName));
    }

    #[test]
    fn recommend_examples() {
        assert_eq!(recommend_name("Human1234", NameKind::Class).unwrap(), ["Human"]);
        assert_eq!(recommend_name("Human_being", NameKind::Class).unwrap(), ["HumanBeing"]);
        assert_eq!(recommend_name("nitrogenoxide", NameKind::Class).unwrap(), ["NitrogenOxide"]);
        assert_eq!(recommend_name("has_author", NameKind::Property).unwrap(), ["hasAuthor"]);
        assert_eq!(recommend_name("Teaches", NameKind::Property).unwrap(), ["teaches"]);
        assert_eq!(recommend_name("1234", NameKind::Class), Err(NamingError::Unfixable("1234".into())));
        assert_eq!(recommend_name("", NameKind::Class), Err(NamingError::EmptyName));
    }

    #[test]
    fn segmentation() {
        let dict = lexicon::wordlist();
        assert_eq!(segment_word("nitrogenoxide", dict), ["nitrogen", "oxide"]);
        assert_eq!(segment_word("person", dict), ["person"]);
        assert_eq!(segment_word("qqqq", dict), ["qqqq"]);
        assert_eq!(segment_word("", dict), [""]);
    }

    #[test]
    fn segmentation_oracle_small_dictionary() {
        let dict: WordSet = ["nitrogen", "oxide", "nit", "rogen", "a"].into_iter().collect();
        assert_eq!(segment_word("nitrogenoxide", &dict), ["nitrogen", "oxide"]);
        assert_eq!(segment_word("oxidea", &dict), ["oxidea"]);
    }
}
