//! Recursive-descent parser for the supported Turtle subset.
//!
//! Accepted: `@prefix` directives, IRIs, prefixed names, `a`, predicate and
//! object lists, plain and language-tagged string literals, blank node
//! property lists, collections and `#` comments. Everything else is a
//! positioned syntax error.

use std::collections::BTreeMap;

use super::model::{BlankId, Iri, Node, OntologyDocument, Term, Triple};
use super::profile::extract_profile;
use super::vocab;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared prefix {prefix:?} at {line}:{column}")]
    UnknownPrefix {
        prefix: String,
        line: usize,
        column: usize,
    },
}

impl ParseError {
    /// 1-based (line, column) of the offending input.
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, column, .. } | ParseError::UnknownPrefix { line, column, .. } => {
                (*line, *column)
            }
        }
    }
}

/// Parse a Turtle document and extract its profile.
///
/// The ontology id is the IRI of the first `owl:Ontology` node, or empty.
/// Callers loading from disk usually fall back to the file stem, see
/// [`crate::ontology::load_ontology`].
pub fn parse_turtle(text: &str) -> Result<OntologyDocument, ParseError> {
    let mut parser = Parser::new(text);
    parser.document()?;
    let doc = OntologyDocument {
        prefixes: parser.prefixes,
        triples: parser.triples,
        ..OntologyDocument::default()
    };
    Ok(extract_profile(doc))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
    next_blank: u32,
    prefixes: BTreeMap<String, String>,
    triples: Vec<Triple>,
}

type PResult<T> = Result<T, ParseError>;

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':')
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            line: 1,
            column: 1,
            next_blank: 0,
            prefixes: BTreeMap::new(),
            triples: Vec::new(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(self.error_at(self.line, self.column, message))
    }

    fn error_at(&self, line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> PResult<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => self.error(format!("expected '{want}', found '{c}'")),
            None => self.error(format!("expected '{want}', found end of input")),
        }
    }

    fn fresh_blank(&mut self) -> BlankId {
        let id = BlankId(self.next_blank);
        self.next_blank += 1;
        id
    }

    fn emit(&mut self, subject: Node, predicate: Iri, object: Term) {
        self.triples.push(Triple {
            subject,
            predicate,
            object,
        });
    }

    fn document(&mut self) -> PResult<()> {
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(()),
                Some('@') => self.directive()?,
                Some(_) => self.statement()?,
            }
        }
    }

    fn directive(&mut self) -> PResult<()> {
        let (line, column) = (self.line, self.column);
        self.bump();
        let keyword: String = self.rest().chars().take_while(|c| c.is_ascii_alphabetic()).collect();
        if keyword != "prefix" {
            return Err(self.error_at(line, column, format!("unsupported directive '@{keyword}'")));
        }
        for _ in 0..keyword.len() {
            self.bump();
        }
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        let token = self.name_token();
        let Some(prefix) = token.strip_suffix(':') else {
            return Err(self.error_at(line, column, "expected prefix name ending in ':'"));
        };
        if prefix.contains(':') || !valid_prefix(prefix) {
            return Err(self.error_at(line, column, format!("invalid prefix name '{token}'")));
        }
        let prefix = prefix.to_string();
        self.skip_ws();
        if self.peek() != Some('<') {
            return self.error("expected '<' starting the namespace IRI");
        }
        let iri = self.iri_ref()?;
        self.expect('.')?;
        self.prefixes.insert(prefix, iri.as_str().to_string());
        Ok(())
    }

    fn statement(&mut self) -> PResult<()> {
        self.skip_ws();
        let subject = match self.peek() {
            Some('[') => {
                let node = self.blank_property_list()?;
                self.skip_ws();
                if self.peek() == Some('.') {
                    self.bump();
                    return Ok(());
                }
                node
            }
            Some('(') => self.collection()?,
            Some('"') => return self.error("literal cannot be a subject"),
            _ => Node::Iri(self.iri()?),
        };
        self.predicate_object_list(&subject)?;
        self.expect('.')
    }

    fn predicate_object_list(&mut self, subject: &Node) -> PResult<()> {
        loop {
            let predicate = self.verb()?;
            loop {
                let object = self.object()?;
                self.emit(subject.clone(), predicate.clone(), object);
                self.skip_ws();
                if self.peek() == Some(',') {
                    self.bump();
                } else {
                    break;
                }
            }
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            // A trailing ';' may close the list.
            if matches!(self.peek(), Some('.') | Some(']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<Iri> {
        self.skip_ws();
        if self.peek() == Some('a') {
            let after = self.rest()[1..].chars().next();
            if after.is_none_or(|c| !is_name_char(c)) {
                self.bump();
                return Ok(Iri::new(vocab::RDF_TYPE).expect("static IRI"));
            }
        }
        match self.peek() {
            Some('[') | Some('(') => self.error("predicate must be an IRI"),
            Some('"') => self.error("predicate must be an IRI, found a literal"),
            _ => self.iri(),
        }
    }

    fn object(&mut self) -> PResult<Term> {
        self.skip_ws();
        match self.peek() {
            Some('"') => self.literal(),
            Some('[') => Ok(self.blank_property_list()?.into()),
            Some('(') => Ok(self.collection()?.into()),
            None => self.error("expected object, found end of input"),
            _ => Ok(Term::Iri(self.iri()?)),
        }
    }

    fn blank_property_list(&mut self) -> PResult<Node> {
        self.bump(); // '['
        let node = Node::Blank(self.fresh_blank());
        self.skip_ws();
        if self.peek() != Some(']') {
            self.predicate_object_list(&node)?;
        }
        self.expect(']')?;
        Ok(node)
    }

    fn collection(&mut self) -> PResult<Node> {
        self.bump(); // '('
        let nil = Iri::new(vocab::RDF_NIL).expect("static IRI");
        let first = Iri::new(vocab::RDF_FIRST).expect("static IRI");
        let rest = Iri::new(vocab::RDF_REST).expect("static IRI");
        let mut head: Option<Node> = None;
        let mut tail: Option<Node> = None;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.bump();
                    break;
                }
                None => return self.error("unterminated collection"),
                _ => {}
            }
            let cell = Node::Blank(self.fresh_blank());
            let item = self.object()?;
            self.emit(cell.clone(), first.clone(), item);
            match tail.replace(cell.clone()) {
                Some(prev) => self.emit(prev, rest.clone(), cell.into()),
                None => head = Some(cell),
            }
        }
        match (head, tail) {
            (Some(head), Some(tail)) => {
                self.emit(tail, rest, Term::Iri(nil));
                Ok(head)
            }
            _ => Ok(Node::Iri(nil)),
        }
    }

    fn iri(&mut self) -> PResult<Iri> {
        self.skip_ws();
        match self.peek() {
            Some('<') => self.iri_ref(),
            Some(c) if c.is_alphabetic() || c == ':' || c == '_' => self.prefixed_name(),
            Some(c) => self.error(format!("unexpected character '{c}'")),
            None => self.error("unexpected end of input"),
        }
    }

    fn iri_ref(&mut self) -> PResult<Iri> {
        let (line, column) = (self.line, self.column);
        self.bump(); // '<'
        let mut value = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some(c) if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') => {
                    return Err(self.error_at(line, column, format!("illegal character {c:?} in IRI")));
                }
                Some(c) => value.push(c),
                None => return Err(self.error_at(line, column, "unterminated IRI")),
            }
        }
        Iri::new(value).map_err(|e| self.error_at(line, column, e.to_string()))
    }

    /// Longest run of name characters, not consuming a trailing '.'.
    fn name_token(&mut self) -> String {
        let run: String = self.rest().chars().take_while(|&c| is_name_char(c)).collect();
        let token = run.trim_end_matches('.').to_string();
        for _ in token.chars() {
            self.bump();
        }
        token
    }

    fn prefixed_name(&mut self) -> PResult<Iri> {
        let (line, column) = (self.line, self.column);
        let token = self.name_token();
        if token.starts_with("_:") {
            return Err(self.error_at(line, column, "labelled blank nodes are not supported"));
        }
        let Some((prefix, local)) = token.split_once(':') else {
            return Err(self.error_at(line, column, format!("unexpected token '{token}'")));
        };
        if !valid_prefix(prefix) || !valid_local(local) {
            return Err(self.error_at(line, column, format!("invalid prefixed name '{token}'")));
        }
        let Some(ns) = self.prefixes.get(prefix) else {
            return Err(ParseError::UnknownPrefix {
                prefix: prefix.to_string(),
                line,
                column,
            });
        };
        Iri::new(format!("{ns}{local}")).map_err(|e| self.error_at(line, column, e.to_string()))
    }

    fn literal(&mut self) -> PResult<Term> {
        let (line, column) = (self.line, self.column);
        self.bump(); // '"'
        let mut value = String::new();
        loop {
            match self.bump() {
                Some('"') => break,
                Some('\\') => value.push(self.escape()?),
                Some('\n') | Some('\r') => {
                    return Err(self.error_at(line, column, "newline in string literal"));
                }
                Some(c) => value.push(c),
                None => return Err(self.error_at(line, column, "unterminated string literal")),
            }
        }
        let lang = if self.peek() == Some('@') {
            self.bump();
            let tag: String = self
                .rest()
                .chars()
                .take_while(|c| c.is_ascii_alphanumeric() || *c == '-')
                .collect();
            let mut parts = tag.split('-');
            let primary_ok = parts
                .next()
                .is_some_and(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphabetic()));
            if !primary_ok || parts.any(str::is_empty) {
                return self.error(format!("invalid language tag '{tag}'"));
            }
            for _ in 0..tag.len() {
                self.bump();
            }
            Some(tag)
        } else {
            None
        };
        if self.rest().starts_with("^^") {
            return self.error("typed literals are not supported");
        }
        Ok(Term::Literal { value, lang })
    }

    fn escape(&mut self) -> PResult<char> {
        let c = match self.bump() {
            Some('t') => '\t',
            Some('n') => '\n',
            Some('r') => '\r',
            Some('b') => '\u{8}',
            Some('f') => '\u{c}',
            Some('"') => '"',
            Some('\'') => '\'',
            Some('\\') => '\\',
            Some(u @ ('u' | 'U')) => {
                let len = if u == 'u' { 4 } else { 8 };
                let hex: String = self.rest().chars().take(len).collect();
                if hex.len() != len || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
                    return self.error("invalid unicode escape");
                }
                for _ in 0..len {
                    self.bump();
                }
                let code = u32::from_str_radix(&hex, 16).expect("checked hex");
                match char::from_u32(code) {
                    Some(c) => c,
                    None => return self.error("invalid unicode scalar value"),
                }
            }
            Some(c) => return self.error(format!("invalid escape '\\{c}'")),
            None => return self.error("unterminated escape"),
        };
        Ok(c)
    }
}

pub(crate) fn valid_prefix(prefix: &str) -> bool {
    let mut chars = prefix.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_alphabetic() => {
            !prefix.ends_with('.') && chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
        }
        _ => false,
    }
}

pub(crate) fn valid_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_alphanumeric() || c == '_' => {
            !local.ends_with('.') && chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
        }
        _ => false,
    }
}
