//! Class-hierarchy validation from per-class meta-property profiles.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ontology::{AxiomKind, Iri, IriError, OntologyDocument};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Value {
    Positive,
    Negative,
    #[default]
    Unknown,
}

impl Value {
    pub const ALL: [Value; 3] = [Value::Positive, Value::Negative, Value::Unknown];

    fn symbol(self) -> &'static str {
        match self {
            Value::Positive => "+",
            Value::Negative => "-",
            Value::Unknown => "?",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    Rigidity,
    Identity,
    Unity,
}

impl Rule {
    pub const ALL: [Rule; 3] = [Rule::Rigidity, Rule::Identity, Rule::Unity];

    fn letter(self) -> &'static str {
        match self {
            Rule::Rigidity => "R",
            Rule::Identity => "I",
            Rule::Unity => "U",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Status {
    Satisfied,
    Violated,
    Indeterminate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaProfile {
    pub class: Iri,
    pub rigidity: Value,
    pub identity: Value,
    pub unity: Value,
}

impl MetaProfile {
    pub fn unknown(class: Iri) -> Self {
        MetaProfile {
            class,
            rigidity: Value::Unknown,
            identity: Value::Unknown,
            unity: Value::Unknown,
        }
    }

    pub fn get(&self, rule: Rule) -> Value {
        match rule {
            Rule::Rigidity => self.rigidity,
            Rule::Identity => self.identity,
            Rule::Unity => self.unity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub subclass: Iri,
    pub superclass: Iri,
    pub rule: Rule,
    pub status: Status,
    pub explanation: String,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.subclass, self.superclass, self.rule, self.status, self.explanation
        )
    }
}

/// The three elicitation questions for `class`, in order: rigidity,
/// identity, unity.
pub fn questions_for(class: &Iri) -> [String; 3] {
    let c = class.local_name();
    [
        format!("Do the properties of the class {c} cease to exist in the future?"),
        format!("Are the properties of superclass and subclass identical for {c}?"),
        format!("Is the property of the subclass {c} part of the properties of the super class?"),
    ]
}

/// Answers to the three questions; `None` when unanswered.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Answers {
    #[serde(default)]
    pub q1: Option<bool>,
    #[serde(default)]
    pub q2: Option<bool>,
    #[serde(default)]
    pub q3: Option<bool>,
}

pub fn profile_from_answers(class: Iri, answers: Answers) -> MetaProfile {
    let yes_positive = |a: Option<bool>| match a {
        Some(true) => Value::Positive,
        Some(false) => Value::Negative,
        None => Value::Unknown,
    };
    MetaProfile {
        class,
        // A class whose properties can cease is not rigid.
        rigidity: match answers.q1 {
            Some(true) => Value::Negative,
            Some(false) => Value::Positive,
            None => Value::Unknown,
        },
        identity: yes_positive(answers.q2),
        unity: yes_positive(answers.q3),
    }
}

/// Outcome of one rule for a (super, sub) value pair.
pub fn rule_status(rule: Rule, sup: Value, sub: Value) -> Status {
    use Value::*;
    match (rule, sup, sub) {
        (_, Unknown, _) | (_, _, Unknown) => Status::Indeterminate,
        (Rule::Rigidity, Positive, _) => Status::Satisfied,
        (_, a, b) if a == b => Status::Satisfied,
        _ => Status::Violated,
    }
}

pub fn validate_edge(sup: &MetaProfile, sub: &MetaProfile) -> Vec<Verdict> {
    Rule::ALL
        .iter()
        .map(|&rule| {
            let (a, b) = (sup.get(rule), sub.get(rule));
            let status = rule_status(rule, a, b);
            let letter = rule.letter();
            let explanation = match status {
                Status::Indeterminate => {
                    let missing = if a == Value::Unknown { &sup.class } else { &sub.class };
                    format!("{letter} unknown for {}", missing.local_name())
                }
                _ => format!(
                    "super {}{letter}, sub {}{letter}",
                    a.symbol(),
                    b.symbol()
                ),
            };
            Verdict {
                subclass: sub.class.clone(),
                superclass: sup.class.clone(),
                rule,
                status,
                explanation,
            }
        })
        .collect()
}

/// Validate every asserted named subclass edge. Output is sorted by
/// subclass, superclass, then rule.
pub fn validate_hierarchy(doc: &OntologyDocument, profiles: &BTreeMap<Iri, MetaProfile>) -> Vec<Verdict> {
    let profile = |iri: &Iri| profiles.get(iri).cloned().unwrap_or_else(|| MetaProfile::unknown(iri.clone()));
    let mut out: Vec<Verdict> = doc
        .axioms
        .iter()
        .filter(|a| a.kind == AxiomKind::SubClassOf)
        .filter_map(|a| Some((&a.subject, a.object.as_ref()?)))
        .filter(|(sub, sup)| sub != sup)
        .flat_map(|(sub, sup)| validate_edge(&profile(sup), &profile(sub)))
        .collect();
    out.sort_by(|a, b| {
        (&a.subclass, &a.superclass, a.rule).cmp(&(&b.subclass, &b.superclass, b.rule))
    });
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnswersError {
    #[error("line {line}: {source}")]
    BadIri { line: usize, source: IriError },
    #[error("line {line}: bad answer {field:?} (expected q1|q2|q3=yes|no)")]
    BadAnswer { line: usize, field: String },
}

impl FromStr for Answers {
    type Err = String;

    /// `q1=yes,q3=no` style, fields separated by tabs or commas.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut answers = Answers::default();
        for field in s.split(['\t', ',']).map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field.split_once('=').ok_or_else(|| field.to_string())?;
            let value = match value.trim().to_ascii_lowercase().as_str() {
                "yes" | "y" | "true" => true,
                "no" | "n" | "false" => false,
                _ => return Err(field.to_string()),
            };
            match key.trim().to_ascii_lowercase().as_str() {
                "q1" => answers.q1 = Some(value),
                "q2" => answers.q2 = Some(value),
                "q3" => answers.q3 = Some(value),
                _ => return Err(field.to_string()),
            }
        }
        Ok(answers)
    }
}

/// Parse an answers file: `classIRI<TAB>q1=yes<TAB>q2=no<TAB>q3=yes`, any
/// question omissible, `#` comments allowed. Later lines for the same
/// class override earlier ones.
pub fn parse_answers(text: &str) -> Result<BTreeMap<Iri, MetaProfile>, AnswersError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (class, rest) = line.split_once('\t').unwrap_or((line, ""));
        let class = Iri::new(class.trim()).map_err(|source| AnswersError::BadIri { line: line_no, source })?;
        let answers: Answers = rest
            .parse()
            .map_err(|field| AnswersError::BadAnswer { line: line_no, field })?;
        out.insert(class.clone(), profile_from_answers(class, answers));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://ex.org/{s}")).unwrap()
    }

    fn profile(name: &str, r: Value, i: Value, u: Value) -> MetaProfile {
        MetaProfile {
            class: iri(name),
            rigidity: r,
            identity: i,
            unity: u,
        }
    }

    #[test]
    fn questions() {
        let q = questions_for(&iri("Person"));
        assert!(q[0].contains("Person") && q[0].contains("cease to exist in the future"));
        assert!(q[2].contains("part of the properties of the super class"));
    }

    #[test]
    fn answers_map_to_values() {
        let p = profile_from_answers(iri("Person"), Answers { q1: Some(false), ..Answers::default() });
        assert_eq!(p.rigidity, Value::Positive);
        assert_eq!((p.identity, p.unity), (Value::Unknown, Value::Unknown));
        let s = profile_from_answers(iri("Student"), Answers { q1: Some(true), q2: Some(true), q3: Some(false) });
        assert_eq!((s.rigidity, s.identity, s.unity), (Value::Negative, Value::Positive, Value::Negative));
    }

    #[test]
    fn edge_examples() {
        use Value::*;
        let sup = profile("A", Positive, Negative, Positive);
        let sub = profile("B", Negative, Positive, Negative);
        let v = validate_edge(&sup, &sub);
        assert_eq!(v.iter().map(|v| v.status).collect::<Vec<_>>(), [Status::Satisfied, Status::Violated, Status::Violated]);
    }

    #[test]
    fn answers_file() {
        let map = parse_answers("# c\nhttp://ex.org/Person\tq1=no\tq2=yes\nhttp://ex.org/Student\tq1=yes\n").unwrap();
        assert_eq!(map[&iri("Person")].identity, Value::Positive);
        assert_eq!(map[&iri("Student")].rigidity, Value::Negative);
        assert!(matches!(parse_answers("http://ex.org/X\tq4=yes"), Err(AnswersError::BadAnswer { line: 1, .. })));
        assert!(matches!(parse_answers("not an iri\tq1=yes"), Err(AnswersError::BadIri { line: 1, .. })));
    }
}
