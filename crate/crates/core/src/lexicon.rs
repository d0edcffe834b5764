//! Bundled word lists: stopwords, the segmentation dictionary and the verb
//! lexicon. All three share one format: UTF-8, one lowercase word per line,
//! `#` starts a comment, blank lines ignored.

use std::collections::HashSet;
use std::path::Path;
use std::sync::OnceLock;

const STOPWORDS: &str = include_str!("../data/stopwords.txt");
const WORDLIST: &str = include_str!("../data/wordlist.txt");
const VERBS: &str = include_str!("../data/verbs.txt");

/// An immutable set of lowercase words.
#[derive(Debug, Clone, Default)]
pub struct WordSet {
    words: HashSet<String>,
    longest: usize,
}

impl WordSet {
    pub fn parse(text: &str) -> Self {
        let mut set = WordSet::default();
        for line in text.lines() {
            let word = line.split('#').next().unwrap_or("").trim();
            if !word.is_empty() {
                set.insert(word.to_lowercase());
            }
        }
        set
    }

    pub fn from_file(path: &Path) -> std::io::Result<Self> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    fn insert(&mut self, word: String) {
        self.longest = self.longest.max(word.chars().count());
        self.words.insert(word);
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Length in chars of the longest entry.
    pub fn longest(&self) -> usize {
        self.longest
    }
}

impl<S: Into<String>> FromIterator<S> for WordSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut set = WordSet::default();
        for w in iter {
            set.insert(w.into().to_lowercase());
        }
        set
    }
}

pub fn stopwords() -> &'static WordSet {
    static SET: OnceLock<WordSet> = OnceLock::new();
    SET.get_or_init(|| WordSet::parse(STOPWORDS))
}

pub fn wordlist() -> &'static WordSet {
    static SET: OnceLock<WordSet> = OnceLock::new();
    SET.get_or_init(|| WordSet::parse(WORDLIST))
}

pub fn verbs() -> &'static WordSet {
    static SET: OnceLock<WordSet> = OnceLock::new();
    SET.get_or_init(|| WordSet::parse(VERBS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_sizes() {
        assert!(stopwords().len() >= 100);
        assert!(wordlist().len() >= 10_000);
        assert!(verbs().len() >= 900);
    }

    #[test]
    fn bundled_contents() {
        for w in ["who", "what", "is", "a", "the", "of", "in"] {
            assert!(stopwords().contains(w), "{w}");
        }
        for w in ["nitrogen", "oxide", "person", "human", "being"] {
            assert!(wordlist().contains(w), "{w}");
        }
        assert!(verbs().contains("teach"));
        assert!(!verbs().contains("course"));
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let set = WordSet::parse("# header\nfoo\n\n  Bar  # trailing\n");
        assert_eq!(set.len(), 2);
        assert!(set.contains("bar"));
        assert_eq!(set.longest(), 3);
    }
}
