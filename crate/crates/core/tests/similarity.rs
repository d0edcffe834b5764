use std::collections::BTreeSet;

use ontoseer_core::similarity::{jaro, jaro_winkler, set_similarity, split_identifier, text_similarity, tokenize_identifier};
use proptest::prelude::*;

// Textbook Jaro-Winkler written independently of the kernel.
fn oracle_jaro(s: &str, t: &str) -> f64 {
    let s: Vec<char> = s.to_lowercase().chars().collect();
    let t: Vec<char> = t.to_lowercase().chars().collect();
    if s.is_empty() || t.is_empty() {
        return 0.0;
    }
    let window = (s.len().max(t.len()) / 2).saturating_sub(1);
    let mut t_used = vec![false; t.len()];
    let mut s_matched = Vec::new();
    for (i, c) in s.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(t.len());
        if let Some(j) = (lo..hi).find(|&j| !t_used[j] && t[j] == *c) {
            t_used[j] = true;
            s_matched.push(*c);
        }
    }
    let m = s_matched.len() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let t_matched: Vec<char> = t.iter().zip(&t_used).filter(|(_, u)| **u).map(|(c, _)| *c).collect();
    let half_transpositions = s_matched.iter().zip(&t_matched).filter(|(a, b)| a != b).count() as f64;
    (m / s.len() as f64 + m / t.len() as f64 + (m - half_transpositions / 2.0) / m) / 3.0
}

fn oracle_jw(s: &str, t: &str) -> f64 {
    if s.to_lowercase() == t.to_lowercase() {
        return 1.0;
    }
    let j = oracle_jaro(s, t);
    let prefix = s
        .to_lowercase()
        .chars()
        .zip(t.to_lowercase().chars())
        .take(4)
        .take_while(|(a, b)| a == b)
        .count() as f64;
    (j + prefix * 0.1 * (1.0 - j)).min(1.0)
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

#[test]
fn reference_pairs() {
    assert!((jaro_winkler("martha", "marhta") - 0.961111).abs() < 1e-6);
    assert!((jaro_winkler("dwayne", "duane") - 0.84).abs() < 1e-6);
    assert!((jaro("martha", "marhta") - 17.0 / 18.0).abs() < 1e-12);
    assert_eq!(jaro_winkler("", ""), 1.0);
    assert_eq!(jaro_winkler("abc", ""), 0.0);
    assert_eq!(jaro_winkler("Person", "PERSON"), 1.0);
}

#[test]
fn set_similarity_frozen() {
    // Computed by an independent best-match-average evaluation.
    let v = set_similarity(&set(&["person", "professor"]), &set(&["person", "professor", "student"]));
    assert!((v - 0.906084656084656).abs() < 1e-12, "{v}");
    assert_eq!(set_similarity(&set(&[]), &set(&[])), 1.0);
    assert_eq!(set_similarity(&set(&["a"]), &set(&[])), 0.0);
}

#[test]
fn tokenization() {
    assert_eq!(split_identifier("ComicBook"), ["Comic", "Book"]);
    assert_eq!(split_identifier("HTTPServer2Config"), ["HTTP", "Server", "Config"]);
    assert_eq!(tokenize_identifier("has_author-name"), ["has", "author", "name"]);
    assert!(tokenize_identifier("1234").is_empty());
    assert_eq!(text_similarity("College", "college"), 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn kernel_properties(a in "[a-zA-Z]{0,12}", b in "[a-zA-Z]{0,12}") {
        let ab = jaro_winkler(&a, &b);
        prop_assert_eq!(ab, jaro_winkler(&b, &a));
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(jaro_winkler(&a, &a), 1.0);
        prop_assert!((ab - oracle_jw(&a, &b)).abs() < 1e-12, "{} vs {}", ab, oracle_jw(&a, &b));
        let j = jaro(&a, &b);
        prop_assert!((0.0..=1.0).contains(&j));
        prop_assert!(ab >= j || a.to_lowercase() == b.to_lowercase());
    }
}

proptest! {
    #[test]
    fn set_similarity_properties(
        a in prop::collection::btree_set("[a-z]{1,8}", 0..5),
        b in prop::collection::btree_set("[a-z]{1,8}", 0..5),
    ) {
        let ab = set_similarity(&a, &b);
        prop_assert_eq!(ab, set_similarity(&b, &a));
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(set_similarity(&a, &a), 1.0);
    }
}
