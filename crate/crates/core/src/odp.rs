//! Ontology Design Pattern records and weighted similarity ranking.
//!
//! An ODP is scored against the working ontology on four components:
//! term matching (s1), description (s2), domain (s3) and competency
//! questions (s4), weighted 5, 3, 2 and 3. Components without input on
//! either side are absent and drop out of the normalization, so the final
//! score is the weighted mean of the present components and lies in [0,1].

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exec::{self, Execution};
use crate::ontology::OntologyDocument;
use crate::recommendation::{desc_score, Recommendation};
use crate::similarity::{set_similarity, text_similarity, text_tokens, tokenize_identifier};

pub const WEIGHTS: [f64; 4] = [5.0, 3.0, 2.0, 3.0];
pub const DEFAULT_ODP_THRESHOLD: f64 = 0.65;
pub const DEFAULT_ODP_K: usize = 5;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdpRecord {
    pub name: String,
    pub description: Option<String>,
    pub intent: Option<String>,
    pub domain: Option<String>,
    /// `None` when the file has no CQS section.
    pub cqs: Option<Vec<String>>,
    pub classes: BTreeSet<String>,
    pub properties: BTreeSet<String>,
    pub source_path: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OdpError {
    #[error("ODP file has no NAME section")]
    MissingName,
    #[error("malformed section at line {line}: {message}")]
    MalformedSection { line: usize, message: String },
    #[error("no similarity component could be computed")]
    NoComponents,
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Name,
    Description,
    Intent,
    Domain,
    Cqs,
    Classes,
    Properties,
    Elements,
}

impl Section {
    fn from_label(label: &str) -> Option<Self> {
        Some(match label.to_ascii_uppercase().as_str() {
            "NAME" => Section::Name,
            "DESCRIPTION" => Section::Description,
            "INTENT" => Section::Intent,
            "DOMAIN" => Section::Domain,
            "CQS" => Section::Cqs,
            "CLASSES" => Section::Classes,
            "PROPERTIES" => Section::Properties,
            "ELEMENTS" => Section::Elements,
            _ => return None,
        })
    }
}

fn split_list(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from)
}

/// Parse one ODP text file.
///
/// Sections start with an unindented `LABEL:` line; indented lines continue
/// the current section. CQS takes one question per line; CLASSES and
/// PROPERTIES are comma-separated. ELEMENTS is a comma-separated mix whose
/// lowercase-initial names are taken as properties. `#` lines are comments.
pub fn parse_odp_file(text: &str) -> Result<OdpRecord, OdpError> {
    let mut record = OdpRecord::default();
    let mut name: Option<String> = None;
    let mut seen: Vec<Section> = Vec::new();
    let mut current: Option<Section> = None;

    let append = |slot: &mut Option<String>, text: &str| {
        let text = text.trim();
        if text.is_empty() {
            return;
        }
        match slot {
            Some(s) => {
                s.push(' ');
                s.push_str(text);
            }
            None => *slot = Some(text.to_string()),
        }
    };

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let indented = raw.starts_with([' ', '\t']);
        let (section, content) = if indented {
            match current {
                Some(s) => (s, raw.trim()),
                None => {
                    return Err(OdpError::MalformedSection {
                        line: line_no,
                        message: "text before the first section label".into(),
                    })
                }
            }
        } else {
            let Some((label, rest)) = raw.split_once(':') else {
                return Err(OdpError::MalformedSection {
                    line: line_no,
                    message: format!("expected a section label, found {:?}", raw.trim()),
                });
            };
            let Some(section) = Section::from_label(label.trim()) else {
                return Err(OdpError::MalformedSection {
                    line: line_no,
                    message: format!("unknown section {:?}", label.trim()),
                });
            };
            if seen.contains(&section) {
                return Err(OdpError::MalformedSection {
                    line: line_no,
                    message: format!("duplicate section {:?}", label.trim()),
                });
            }
            seen.push(section);
            current = Some(section);
            if section == Section::Cqs {
                record.cqs.get_or_insert_with(Vec::new);
            }
            (section, rest.trim())
        };
        match section {
            Section::Name => append(&mut name, content),
            Section::Description => append(&mut record.description, content),
            Section::Intent => append(&mut record.intent, content),
            Section::Domain => append(&mut record.domain, content),
            Section::Cqs => {
                if !content.is_empty() {
                    record.cqs.get_or_insert_with(Vec::new).push(content.to_string());
                }
            }
            Section::Classes => record.classes.extend(split_list(content)),
            Section::Properties => record.properties.extend(split_list(content)),
            Section::Elements => {
                for element in split_list(content) {
                    if element.starts_with(|c: char| c.is_lowercase()) {
                        record.properties.insert(element);
                    } else {
                        record.classes.insert(element);
                    }
                }
            }
        }
    }
    record.name = name.filter(|n| !n.is_empty()).ok_or(OdpError::MissingName)?;
    Ok(record)
}

/// Parse every `*.txt` / `*.odp` file in `dir` (non-recursive), sorted by
/// path.
pub fn load_odp_dir(dir: &Path) -> Result<Vec<OdpRecord>, OdpError> {
    let io = |e: std::io::Error| OdpError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    };
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "txt" || x == "odp"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|path| {
            let text = std::fs::read_to_string(path).map_err(|e| OdpError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            let mut record = parse_odp_file(&text).map_err(|e| match e {
                OdpError::MalformedSection { line, message } => OdpError::MalformedSection {
                    line,
                    message: format!("{}: {message}", path.display()),
                },
                other => other,
            })?;
            record.source_path = Some(path.display().to_string());
            Ok(record)
        })
        .collect()
}

/// What is known about the working ontology beyond its terms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OntologyMeta {
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub domain: Option<String>,
    #[serde(default)]
    pub cqs: Vec<String>,
}

/// Inputs to [`score_odp`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OdpQuery {
    pub terms: BTreeSet<String>,
    pub description: Option<String>,
    pub domain: Option<String>,
    pub cqs: Vec<String>,
}

impl OdpQuery {
    pub fn from_document(doc: &OntologyDocument, meta: &OntologyMeta) -> Self {
        OdpQuery {
            terms: doc.entities().map(|(iri, _)| iri.local_name().to_string()).collect(),
            description: meta.description.clone(),
            domain: meta.domain.clone(),
            cqs: meta.cqs.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdpScore {
    pub s1: Option<f64>,
    pub s2: Option<f64>,
    pub s3: Option<f64>,
    pub s4: Option<f64>,
    pub normalized: f64,
}

impl OdpScore {
    /// Weighted mean of the present components; `None` if none is present.
    pub fn from_components(components: [Option<f64>; 4]) -> Option<Self> {
        let (num, den) = components
            .iter()
            .zip(WEIGHTS)
            .filter_map(|(s, w)| s.map(|s| (w * s, w)))
            .fold((0.0, 0.0), |(n, d), (ws, w)| (n + ws, d + w));
        if den == 0.0 {
            return None;
        }
        let [s1, s2, s3, s4] = components;
        Some(OdpScore {
            s1,
            s2,
            s3,
            s4,
            normalized: (num / den).clamp(0.0, 1.0),
        })
    }

    pub fn components(&self) -> [Option<f64>; 4] {
        [self.s1, self.s2, self.s3, self.s4]
    }
}

fn identifier_tokens<'a>(names: impl IntoIterator<Item = &'a String>) -> BTreeSet<String> {
    names.into_iter().flat_map(|n| tokenize_identifier(n)).collect()
}

fn non_blank(s: &Option<String>) -> Option<&str> {
    s.as_deref().map(str::trim).filter(|s| !s.is_empty())
}

pub fn score_odp(query: &OdpQuery, odp: &OdpRecord) -> Result<OdpScore, OdpError> {
    let working_terms = identifier_tokens(&query.terms);
    let odp_terms = identifier_tokens(odp.classes.iter().chain(&odp.properties).chain([&odp.name]));
    let s1 = (!working_terms.is_empty() && !odp_terms.is_empty()).then(|| set_similarity(&working_terms, &odp_terms));

    let odp_text = [non_blank(&odp.description), non_blank(&odp.intent)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join(" ");
    let s2 = match non_blank(&query.description) {
        Some(d) if !odp_text.is_empty() => Some(text_similarity(d, &odp_text)),
        _ => None,
    };
    let s3 = match (non_blank(&query.domain), non_blank(&odp.domain)) {
        (Some(a), Some(b)) => Some(text_similarity(a, b)),
        _ => None,
    };
    let cq_tokens = |cqs: &[String]| -> BTreeSet<String> { cqs.iter().flat_map(|q| text_tokens(q)).collect() };
    let s4 = match &odp.cqs {
        Some(odp_cqs) if !query.cqs.is_empty() && !odp_cqs.is_empty() => {
            Some(set_similarity(&cq_tokens(&query.cqs), &cq_tokens(odp_cqs)))
        }
        _ => None,
    };
    OdpScore::from_components([s1, s2, s3, s4]).ok_or(OdpError::NoComponents)
}

/// Every scorable ODP with its score, best first (ties by name).
pub fn rank_odps(query: &OdpQuery, odps: &[OdpRecord], exec: Execution) -> Vec<(OdpScore, OdpRecord)> {
    let mut scored: Vec<(OdpScore, OdpRecord)> =
        exec::map(exec, odps, |odp| score_odp(query, odp).ok().map(|s| (s, odp.clone())))
            .into_iter()
            .flatten()
            .collect();
    scored.sort_by(|(sa, a), (sb, b)| desc_score(sa.normalized, sb.normalized).then_with(|| a.name.cmp(&b.name)));
    scored
}

#[derive(Debug, Clone, Copy)]
pub struct OdpOptions {
    pub k: usize,
    pub threshold: f64,
    pub exec: Execution,
}

impl Default for OdpOptions {
    fn default() -> Self {
        OdpOptions {
            k: DEFAULT_ODP_K,
            threshold: DEFAULT_ODP_THRESHOLD,
            exec: Execution::default(),
        }
    }
}

/// Top-`k` ODPs whose normalized score reaches `threshold`.
pub fn recommend_odps(
    working: &OntologyDocument,
    meta: &OntologyMeta,
    odps: &[OdpRecord],
    options: OdpOptions,
) -> Vec<Recommendation> {
    let query = OdpQuery::from_document(working, meta);
    rank_odps(&query, odps, options.exec)
        .into_iter()
        .filter(|(s, _)| s.normalized >= options.threshold)
        .take(options.k)
        .map(|(score, odp)| {
            let parts: Vec<String> = score
                .components()
                .iter()
                .zip(["terms", "description", "domain", "cqs"])
                .filter_map(|(s, label)| s.map(|s| format!("{label}={s:.3}")))
                .collect();
            Recommendation::new(
                odp.name.clone(),
                odp.source_path.clone().unwrap_or_else(|| odp.name.clone()),
                score.normalized,
                parts.join(" "),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sections() {
        let record = parse_odp_file(
            "NAME: AgentRole\nDESCRIPTION: Agents and the roles\n  they play.\nELEMENTS: Agent, Role, hasRole\n",
        )
        .unwrap();
        assert_eq!(record.name, "AgentRole");
        assert_eq!(record.description.as_deref(), Some("Agents and the roles they play."));
        assert_eq!(record.classes, ["Agent".to_string(), "Role".to_string()].into());
        assert_eq!(record.properties, ["hasRole".to_string()].into());
        assert!(record.intent.is_none() && record.domain.is_none() && record.cqs.is_none());
    }

    #[test]
    fn parse_cqs_and_lists() {
        let record = parse_odp_file(
            "# comment\nNAME: Persons\nCQS:\n  Who is this person?\n  What is the gender of a person?\n  Where does a person live?\nCLASSES: Person, Man,\n  Woman\nPROPERTIES: hasGender\n",
        )
        .unwrap();
        assert_eq!(record.cqs.as_ref().unwrap().len(), 3);
        assert_eq!(record.classes.len(), 3);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_odp_file("DESCRIPTION: x\n"), Err(OdpError::MissingName));
        assert!(matches!(
            parse_odp_file("some text\nNAME: X\n"),
            Err(OdpError::MalformedSection { line: 1, .. })
        ));
        assert!(matches!(
            parse_odp_file("  indented\nNAME: X\n"),
            Err(OdpError::MalformedSection { line: 1, .. })
        ));
        assert!(matches!(
            parse_odp_file("NAME: X\nCOLOR: red\n"),
            Err(OdpError::MalformedSection { line: 2, .. })
        ));
        assert!(matches!(
            parse_odp_file("NAME: X\nNAME: Y\n"),
            Err(OdpError::MalformedSection { line: 2, .. })
        ));
    }

    #[test]
    fn normalization() {
        let all = OdpScore::from_components([Some(1.0); 4]).unwrap();
        assert_eq!(all.normalized, 1.0);
        let three = OdpScore::from_components([Some(0.8), Some(0.6), None, Some(0.5)]).unwrap();
        assert!((three.normalized - 7.3 / 11.0).abs() < 1e-12);
        let one = OdpScore::from_components([Some(0.7), None, None, None]).unwrap();
        assert!((one.normalized - 0.7).abs() < 1e-12);
        assert!(OdpScore::from_components([None; 4]).is_none());
    }

    #[test]
    fn no_components() {
        let odp = OdpRecord {
            name: "X".into(),
            ..OdpRecord::default()
        };
        assert_eq!(score_odp(&OdpQuery::default(), &odp), Err(OdpError::NoComponents));
    }

    #[test]
    fn empty_odp_list() {
        let doc = OntologyDocument::default();
        assert!(recommend_odps(&doc, &OntologyMeta::default(), &[], OdpOptions::default()).is_empty());
    }
}
