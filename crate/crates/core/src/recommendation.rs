use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// One ranked suggestion: a reusable term, axiom, design pattern or
/// vocabulary, the corpus entry it comes from and its similarity score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recommendation {
    pub item: String,
    pub source: String,
    pub score: f64,
    pub rationale: String,
}

impl Recommendation {
    pub fn new(item: impl Into<String>, source: impl Into<String>, score: f64, rationale: impl Into<String>) -> Self {
        Recommendation {
            item: item.into(),
            source: source.into(),
            score: score.clamp(0.0, 1.0),
            rationale: rationale.into(),
        }
    }
}

/// Score descending, then item, then source.
pub fn rank_order(a: &Recommendation, b: &Recommendation) -> Ordering {
    desc_score(a.score, b.score)
        .then_with(|| a.item.cmp(&b.item))
        .then_with(|| a.source.cmp(&b.source))
}

/// Descending comparison for scores in [0,1].
pub(crate) fn desc_score(a: f64, b: f64) -> Ordering {
    b.total_cmp(&a)
}

/// Sort by [`rank_order`] and keep the first `k`.
pub fn top_k(mut recs: Vec<Recommendation>, k: usize) -> Vec<Recommendation> {
    recs.sort_by(rank_order);
    recs.truncate(k);
    recs
}
