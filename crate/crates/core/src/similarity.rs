//! String similarity kernel shared by every recommender.
//!
//! Jaro and Jaro-Winkler follow the canonical definitions: match window
//! `max(|a|,|b|)/2 - 1`, transpositions halved, Winkler scaling factor 0.1
//! and a common-prefix cap of 4. Comparison is case-insensitive.

use std::collections::BTreeSet;

use crate::lexicon::{self, WordSet};

const WINKLER_SCALE: f64 = 0.1;
const WINKLER_PREFIX_CAP: usize = 4;

/// Jaro similarity of `a` and `b` after lowercasing. Returns 0 when there
/// are no matching characters (including two empty strings).
pub fn jaro(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.to_lowercase().chars().collect();
    let b: Vec<char> = b.to_lowercase().chars().collect();
    jaro_chars(&a, &b)
}

fn jaro_chars(a: &[char], b: &[char]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let window = (a.len().max(b.len()) / 2).saturating_sub(1);
    let mut a_matched = vec![false; a.len()];
    let mut b_matched = vec![false; b.len()];
    let mut matches = 0usize;
    for (i, &ca) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(b.len());
        for j in lo..hi {
            if !b_matched[j] && b[j] == ca {
                a_matched[i] = true;
                b_matched[j] = true;
                matches += 1;
                break;
            }
        }
    }
    if matches == 0 {
        return 0.0;
    }
    let a_seq = a.iter().zip(&a_matched).filter(|(_, m)| **m).map(|(c, _)| c);
    let b_seq = b.iter().zip(&b_matched).filter(|(_, m)| **m).map(|(c, _)| c);
    let transpositions = a_seq.zip(b_seq).filter(|(x, y)| x != y).count() as f64 / 2.0;
    let m = matches as f64;
    (m / a.len() as f64 + m / b.len() as f64 + (m - transpositions) / m) / 3.0
}

/// Jaro-Winkler similarity. Two empty strings score 1 by convention.
pub fn jaro_winkler(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.to_lowercase().chars().collect();
    let b: Vec<char> = b.to_lowercase().chars().collect();
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let j = jaro_chars(&a, &b);
    let prefix = a
        .iter()
        .zip(&b)
        .take(WINKLER_PREFIX_CAP)
        .take_while(|(x, y)| x == y)
        .count();
    (j + prefix as f64 * WINKLER_SCALE * (1.0 - j)).clamp(0.0, 1.0)
}

/// Split an identifier into words, keeping their original case.
///
/// Boundaries are lower→upper transitions, the last capital of an acronym
/// run followed by a lowercase letter (`HTMLParser` → `HTML`, `Parser`), and
/// any non-letter character. Digits are dropped.
pub fn split_identifier(name: &str) -> Vec<String> {
    let chars: Vec<char> = name.chars().collect();
    let mut words = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if !c.is_alphabetic() {
            if !current.is_empty() {
                words.push(std::mem::take(&mut current));
            }
            continue;
        }
        if c.is_uppercase() && !current.is_empty() {
            let prev = chars[i - 1];
            let next_lower = chars.get(i + 1).is_some_and(|n| n.is_lowercase());
            if prev.is_lowercase() || (prev.is_uppercase() && next_lower) {
                words.push(std::mem::take(&mut current));
            }
        }
        current.push(c);
    }
    if !current.is_empty() {
        words.push(current);
    }
    words
}

/// Lowercase identifier tokens: camel-case, underscore, hyphen and digit
/// boundaries; digits discarded.
pub fn tokenize_identifier(name: &str) -> Vec<String> {
    split_identifier(name).into_iter().map(|w| w.to_lowercase()).collect()
}

/// Lowercase word tokens of free text with stopwords removed.
pub fn text_tokens(text: &str) -> BTreeSet<String> {
    text_tokens_with(text, lexicon::stopwords())
}

pub fn text_tokens_with(text: &str, stopwords: &WordSet) -> BTreeSet<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .filter(|w| !stopwords.contains(w))
        .collect()
}

/// Symmetric best-match average of Jaro-Winkler scores between two sets.
///
/// Both empty → 1; exactly one empty → 0.
pub fn set_similarity<A, B>(a: &BTreeSet<A>, b: &BTreeSet<B>) -> f64
where
    A: AsRef<str>,
    B: AsRef<str>,
{
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return 1.0,
        (true, false) | (false, true) => return 0.0,
        _ => {}
    }
    let a: Vec<&str> = a.iter().map(AsRef::as_ref).collect();
    let b: Vec<&str> = b.iter().map(AsRef::as_ref).collect();
    let scores: Vec<Vec<f64>> = a
        .iter()
        .map(|x| b.iter().map(|y| jaro_winkler(x, y)).collect())
        .collect();
    let a_side = scores
        .iter()
        .map(|row| row.iter().copied().fold(0.0, f64::max))
        .sum::<f64>()
        / a.len() as f64;
    let b_side = (0..b.len())
        .map(|j| scores.iter().map(|row| row[j]).fold(0.0, f64::max))
        .sum::<f64>()
        / b.len() as f64;
    ((a_side + b_side) / 2.0).clamp(0.0, 1.0)
}

/// Set similarity over the stopword-filtered word tokens of two texts.
pub fn text_similarity(a: &str, b: &str) -> f64 {
    set_similarity(&text_tokens(a), &text_tokens(b))
}
