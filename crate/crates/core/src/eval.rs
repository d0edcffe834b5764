//! Precision@k and recall@k against gold sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("gold set is empty")]
    EmptyGold,
    #[error("no gold set for feature {0:?}")]
    MissingGold(String),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("line {line}: {message}")]
    BadLine { line: usize, message: String },
}

pub fn canonicalize(item: &str) -> String {
    item.trim().to_lowercase()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldSet {
    pub feature: String,
    items: BTreeSet<String>,
}

impl GoldSet {
    pub fn new<I, S>(feature: impl Into<String>, items: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        GoldSet {
            feature: feature.into(),
            items: items
                .into_iter()
                .map(|s| canonicalize(s.as_ref()))
                .filter(|s| !s.is_empty())
                .collect(),
        }
    }

    pub fn contains(&self, item: &str) -> bool {
        self.items.contains(&canonicalize(item))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &BTreeSet<String> {
        &self.items
    }
}

/// Distinct gold items among the first `k` recommendations.
pub fn hits_at_k<S: AsRef<str>>(recs: &[S], gold: &GoldSet, k: usize) -> usize {
    let mut seen = BTreeSet::new();
    recs.iter()
        .take(k)
        .map(|r| canonicalize(r.as_ref()))
        .filter(|r| gold.items.contains(r) && seen.insert(r.clone()))
        .count()
}

fn check(gold: &GoldSet, k: usize) -> Result<(), EvalError> {
    if gold.is_empty() {
        return Err(EvalError::EmptyGold);
    }
    if k == 0 {
        return Err(EvalError::ZeroK);
    }
    Ok(())
}

/// Hits over `k`, counting slots past the end of `recs` as misses.
pub fn precision_at_k<S: AsRef<str>>(recs: &[S], gold: &GoldSet, k: usize) -> Result<f64, EvalError> {
    check(gold, k)?;
    Ok(hits_at_k(recs, gold, k) as f64 / k as f64)
}

pub fn recall_at_k<S: AsRef<str>>(recs: &[S], gold: &GoldSet, k: usize) -> Result<f64, EvalError> {
    check(gold, k)?;
    Ok(hits_at_k(recs, gold, k) as f64 / gold.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalEntry {
    pub k: usize,
    pub precision: f64,
    pub recall: f64,
    pub hits: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub feature: String,
    pub entries: Vec<EvalEntry>,
}

/// One report per feature of `recs` (in feature order), one entry per k in
/// ascending order.
pub fn evaluate(
    recs: &BTreeMap<String, Vec<String>>,
    gold: &BTreeMap<String, GoldSet>,
    ks: &[usize],
) -> Result<Vec<EvalReport>, EvalError> {
    let mut ks: Vec<usize> = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    recs.iter()
        .map(|(feature, list)| {
            let g = gold.get(feature).ok_or_else(|| EvalError::MissingGold(feature.clone()))?;
            let entries = ks
                .iter()
                .map(|&k| {
                    Ok(EvalEntry {
                        k,
                        precision: precision_at_k(list, g, k)?,
                        recall: recall_at_k(list, g, k)?,
                        hits: hits_at_k(list, g, k),
                    })
                })
                .collect::<Result<_, EvalError>>()?;
            Ok(EvalReport {
                feature: feature.clone(),
                entries,
            })
        })
        .collect()
}

/// Two-decimal display value, truncated toward zero.
pub fn display_2dp(value: f64) -> String {
    // Nudge past representation error so exact values like 0.29 stay 0.29.
    let cents = (value * 100.0 + 1e-9).floor() / 100.0;
    format!("{cents:.2}")
}

/// `feature<TAB>item` lines.
pub fn parse_gold(text: &str) -> Result<BTreeMap<String, GoldSet>, EvalError> {
    let mut items: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (i, line) in data_lines(text) {
        let (feature, item) = line.split_once('\t').ok_or_else(|| EvalError::BadLine {
            line: i,
            message: "expected feature<TAB>item".into(),
        })?;
        items.entry(feature.trim().to_string()).or_default().push(item.to_string());
    }
    Ok(items
        .into_iter()
        .map(|(f, list)| (f.clone(), GoldSet::new(f, list)))
        .collect())
}

/// `feature<TAB>rank<TAB>item` lines; each feature's list is ordered by rank.
pub fn parse_recs(text: &str) -> Result<BTreeMap<String, Vec<String>>, EvalError> {
    let mut ranked: BTreeMap<String, Vec<(usize, String)>> = BTreeMap::new();
    for (i, line) in data_lines(text) {
        let bad = |message: &str| EvalError::BadLine {
            line: i,
            message: message.to_string(),
        };
        let mut parts = line.splitn(3, '\t');
        let (Some(feature), Some(rank), Some(item)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad("expected feature<TAB>rank<TAB>item"));
        };
        let rank: usize = rank.trim().parse().map_err(|_| bad("rank is not an integer"))?;
        ranked.entry(feature.trim().to_string()).or_default().push((rank, item.to_string()));
    }
    Ok(ranked
        .into_iter()
        .map(|(f, mut list)| {
            list.sort_by_key(|(rank, _)| *rank);
            (f, list.into_iter().map(|(_, item)| item).collect())
        })
        .collect())
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

/// Table with one row per feature and a Precision@k / Recall@k column pair
/// per k, using two-decimal display values.
pub fn format_table(reports: &[EvalReport]) -> String {
    let mut out = String::new();
    let ks: Vec<usize> = reports.first().map(|r| r.entries.iter().map(|e| e.k).collect()).unwrap_or_default();
    out.push_str("Feature");
    for k in &ks {
        let _ = write!(out, "\tPrecision@{k}\tRecall@{k}");
    }
    out.push('\n');
    for report in reports {
        out.push_str(&report.feature);
        for e in &report.entries {
            let _ = write!(out, "\t{}\t{}", display_2dp(e.precision), display_2dp(e.recall));
        }
        out.push('\n');
    }
    out
}
