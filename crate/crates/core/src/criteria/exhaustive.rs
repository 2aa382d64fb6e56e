use serde::{Deserialize, Serialize};

use super::impurity::{ClassCounts, SplitCriterion};
use crate::dataset::{Label, NodeView};
use crate::error::{Error, Result};

/// Best axis-parallel split found by a search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitScore {
    pub feature: usize,
    pub threshold: f64,
    pub score: f64,
    pub criterion: SplitCriterion,
}

/// Threshold between two consecutive distinct sorted values `a < b`.
///
/// Always satisfies `a <= t < b`, so `x <= t` sends `a` left and `b` right
/// even when the halfway point rounds up to `b`.
pub fn midpoint(a: f64, b: f64) -> f64 {
    let m = a / 2.0 + b / 2.0;
    if m >= a && m < b {
        m
    } else {
        a
    }
}

/// Evaluates the criterion at every midpoint of every candidate feature and
/// returns the best. Ties go to the smaller feature index, then the smaller
/// threshold.
pub fn best_exhaustive_split(
    node: &NodeView<'_>,
    candidates: &[usize],
    criterion: SplitCriterion,
) -> Result<SplitScore> {
    if node.len() < 2 || node.class_counts().is_pure() {
        return Err(Error::Contract("exhaustive search needs at least two samples of both classes".into()));
    }
    search(node, candidates, criterion, 1).ok_or(Error::NoValidSplit)
}

/// Same as [`best_exhaustive_split`], restricted to thresholds that leave
/// at least `min_child` samples on each side.
pub(crate) fn search(
    node: &NodeView<'_>,
    candidates: &[usize],
    criterion: SplitCriterion,
    min_child: usize,
) -> Option<SplitScore> {
    let ds = node.dataset();
    let parent = node.class_counts();
    let n = node.len();
    let mut features = candidates.to_vec();
    features.sort_unstable();
    features.dedup();

    let mut best: Option<SplitScore> = None;
    let mut pairs: Vec<(f64, Label)> = Vec::with_capacity(n);
    for j in features {
        let col = ds.column(j);
        pairs.clear();
        pairs.extend(node.indices().iter().map(|&i| (col[i], ds.label(i))));
        pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));

        let mut left = ClassCounts::default();
        for p in 0..n - 1 {
            left.add(pairs[p].1);
            let (a, b) = (pairs[p].0, pairs[p + 1].0);
            if a == b || p + 1 < min_child || n - p - 1 < min_child {
                continue;
            }
            let right = ClassCounts::new(parent.pos - left.pos, parent.neg - left.neg);
            let score = criterion.score(parent, left, right);
            if best.is_none_or(|s| score > s.score) {
                best = Some(SplitScore { feature: j, threshold: midpoint(a, b), score, criterion });
            }
        }
    }
    best
}
